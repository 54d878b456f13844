import json

import pytest

from teamgaze.io_report import (
    analyze_report,
    build_sessions,
    detect_table_kind,
    emit_report,
    load_config,
    load_frames,
    load_summary_fixture,
    load_team_rows,
    load_teams,
    paper_fixture_path,
    stats_report_from_summaries,
    stats_report_from_team_rows,
)
from teamgaze.jva import DenominatorPolicy, JvaConfig, ScaleMode
from teamgaze.model import Condition, GenderComposition, Group

FRAME_HEADER = (
    "team_id,frame_id,timestamp_s,image_w,image_h,person_id,"
    "gaze_x,gaze_y,head_x,head_y,confidence,discarded\n"
)


def write_frames(tmp_path, rows, name="frames.csv"):
    path = tmp_path / name
    path.write_text(FRAME_HEADER + "".join(r + "\n" for r in rows))
    return path


def test_two_rows_become_one_frame(tmp_path):
    path = write_frames(
        tmp_path,
        [
            "t1,f1,0.0,2560,1440,p1,100,100,,,1.0,0",
            "t1,f1,0.0,2560,1440,p2,150,150,90,90,0.8,0",
        ],
    )
    loaded = load_frames(path)
    assert loaded.row_errors == []
    (frame,) = loaded.frames_by_team["t1"]
    assert len(frame.observations) == 2
    assert frame.observations[1].head is not None
    assert frame.observations[1].confidence == 0.8


def test_out_of_bounds_gaze_row_skipped_and_logged(tmp_path):
    path = write_frames(
        tmp_path,
        [
            "t1,f1,0.0,2560,1440,p1,-5,100,,,1.0,0",
            "t1,f1,0.0,2560,1440,p2,150,150,,,1.0,0",
        ],
    )
    loaded = load_frames(path)
    assert len(loaded.row_errors) == 1
    assert "line 2" in loaded.row_errors[0]
    (frame,) = loaded.frames_by_team["t1"]
    assert len(frame.observations) == 1


def test_missing_header_is_hard_error(tmp_path):
    path = tmp_path / "frames.csv"
    path.write_text("t1,f1,0.0,2560,1440,p1,100,100\n")
    with pytest.raises(ValueError, match="missing mandatory columns"):
        load_frames(path)


def test_unparseable_column_is_hard_error(tmp_path):
    path = write_frames(tmp_path, ["t1,f1,abc,2560,1440,p1,100,100,,,1.0,0"])
    with pytest.raises(ValueError, match="timestamp_s"):
        load_frames(path)


def test_frames_sorted_by_timestamp(tmp_path):
    path = write_frames(
        tmp_path,
        [
            "t1,f2,20.0,2560,1440,p1,1,1,,,1.0,0",
            "t1,f1,10.0,2560,1440,p1,1,1,,,1.0,0",
        ],
    )
    loaded = load_frames(path)
    assert [f.frame_id for f in loaded.frames_by_team["t1"]] == ["f1", "f2"]


def test_load_teams_happy_path(tmp_path):
    path = tmp_path / "teams.csv"
    path.write_text(
        "team_id,condition,gender,post_test_1,post_test_2\n"
        "t1,Tablet,mx,3,2\n"
    )
    teams = load_teams(path)
    meta = teams["t1"]
    assert meta.condition is Condition.TABLET
    assert meta.gender is GenderComposition.MIXED
    assert meta.post_test_scores == (3.0, 2.0)


def test_load_teams_rejects_unknown_condition(tmp_path):
    path = tmp_path / "teams.csv"
    path.write_text(
        "team_id,condition,gender,post_test_1,post_test_2\nt1,chalkboard,FF,1,2\n"
    )
    with pytest.raises(ValueError, match="line 2.*chalkboard"):
        load_teams(path)


def test_load_teams_rejects_score_out_of_range(tmp_path):
    path = tmp_path / "teams.csv"
    path.write_text(
        "team_id,condition,gender,post_test_1,post_test_2\nt1,ar,FF,7,2\n"
    )
    with pytest.raises(ValueError, match="out of \\[0,5\\]"):
        load_teams(path)


def test_build_sessions_requires_metadata(tmp_path):
    frames = load_frames(
        write_frames(tmp_path, ["tX,f1,0.0,2560,1440,p1,1,1,,,1.0,0"])
    )
    with pytest.raises(ValueError, match="unknown teams"):
        build_sessions(frames.frames_by_team, {})


def fixture_report():
    summaries, totals = load_summary_fixture(paper_fixture_path())
    return stats_report_from_summaries(summaries, totals)


def test_fixture_reproduces_published_f_values():
    report = fixture_report()
    assert report.anovas["group_jva_ratio_pct"].f == pytest.approx(6.65, abs=0.05)
    assert report.anovas["group_post_test"].f == pytest.approx(7.56, abs=0.05)
    assert report.anovas["condition_jva_ratio_pct"].f == pytest.approx(3.26, abs=0.05)
    assert report.anovas["gender_jva_ratio_pct"].f == pytest.approx(1.10, abs=0.05)
    assert report.anovas["gender_post_test"].f == pytest.approx(1.29, abs=0.05)
    assert report.effect_d["group_jva_ratio_pct"] == pytest.approx(1.00, abs=0.02)
    assert report.effect_d["group_post_test"] == pytest.approx(1.06, abs=0.02)


def test_fixture_total_row_renders_exactly():
    text = emit_report(fixture_report(), fmt="text")
    assert "40.80 ± 15.59" in text
    assert "1.95 ± 1.25" in text


def test_emit_deterministic(tmp_path):
    report = fixture_report()
    assert emit_report(report, "text") == emit_report(report, "text")
    assert emit_report(report, "json") == emit_report(report, "json")


def test_emit_json_is_valid_and_rounded():
    payload = json.loads(emit_report(fixture_report(), "json"))
    assert payload["anovas"]["condition_jva_ratio_pct"]["p"] == 0.054
    assert payload["totals"]["jva_ratio_pct"]["mean"] == 40.80


def test_empty_report_renders():
    report = stats_report_from_summaries({})
    text = emit_report(report, "text")
    assert "summary statistics" in text


def test_csv_bundle_round_trip(tmp_path):
    from teamgaze.io_report import TeamRow

    rows = [
        TeamRow("t1", Condition.TEXTBOOK, Group.CONTROL, GenderComposition.FEMALES, 30.0, 1.0),
        TeamRow("t2", Condition.TABLET, Group.EXPERIMENT, GenderComposition.MALES, 50.0, 2.5),
        TeamRow("t3", Condition.AR, Group.EXPERIMENT, GenderComposition.MIXED, 45.0, 3.0),
    ]
    report = stats_report_from_team_rows(rows)
    emit_report(report, "csv-bundle", tmp_path / "bundle")
    reloaded = load_team_rows(tmp_path / "bundle" / "teams.csv")
    assert [r.team_id for r in reloaded] == ["t1", "t2", "t3"]
    assert detect_table_kind(tmp_path / "bundle" / "teams.csv") == "teams"
    assert detect_table_kind(paper_fixture_path()) == "summary"


def test_analyze_report_correlation_present_with_enough_teams(tmp_path):
    from teamgaze.io_report import TeamRow

    rows = [
        TeamRow(f"t{i}", Condition.AR, Group.EXPERIMENT, GenderComposition.MIXED,
                float(20 + 3 * i), 0.5 + 0.4 * i)
        for i in range(8)
    ]
    report = stats_report_from_team_rows(rows)
    assert report.correlation is not None
    assert report.correlation.r == pytest.approx(1.0)
    assert len(report.scatter) == 8


def test_config_precedence(tmp_path, monkeypatch):
    config_file = tmp_path / "jva.conf"
    config_file.write_text(
        "threshold = 80  # tighter criterion\nscale_mode = diagonal-normalized\n"
    )
    config = load_config(config_file)
    assert config.threshold == 80.0
    assert config.scale_mode is ScaleMode.DIAGONAL_NORMALIZED
    # flag overrides file
    config = load_config(config_file, threshold=120.0)
    assert config.threshold == 120.0
    assert config.scale_mode is ScaleMode.DIAGONAL_NORMALIZED
    # defaults when nothing is given
    default = load_config(None)
    assert default.threshold == 100.0
    assert default.denominator_policy is DenominatorPolicy.VALID_PAIR_FRAMES


def test_config_unknown_key_rejected(tmp_path):
    config_file = tmp_path / "jva.conf"
    config_file.write_text("thresold = 80\n")
    with pytest.raises(ValueError, match="unknown key"):
        load_config(config_file)
