"""CSV ingestion, report assembly and deterministic report emission.

Two input files drive the pipeline: a frame table (one row per frame and
person) and a team table (one row per team with condition, gender and the
two individual post-test scores). Reports render the same content as
machine-readable JSON, an aligned plain-text table, or a CSV bundle, with
fixed decimal formatting (2 decimals for M/SD/F/d, 3 for p, 4 for r) so
output is byte-identical across runs.
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

from .jva import DenominatorPolicy, JvaConfig, ScaleMode, session_jva
from .model import (
    Condition,
    FrameRecord,
    GazeObservation,
    GenderComposition,
    Group,
    Point2D,
    TeamSession,
    group_for_condition,
)
from .stats import (
    AnovaResult,
    CorrelationResult,
    GroupSummary,
    anova_from_summary,
    cohens_d,
    pairwise_comparisons,
    pearson,
    summarize,
)
from .synth import FRAME_COLUMNS, TEAM_COLUMNS

__all__ = [
    "LoadResult",
    "TeamMeta",
    "Report",
    "load_frames",
    "load_teams",
    "build_sessions",
    "analyze_report",
    "stats_report_from_team_rows",
    "stats_report_from_summaries",
    "load_summary_fixture",
    "load_team_rows",
    "emit_report",
    "load_config",
    "config_path_from_env",
    "paper_fixture_path",
    "CONFIG_ENV_VAR",
]

CONFIG_ENV_VAR = "TEAMGAZE_CONFIG"

_CONDITION_TOKENS = {c.value: c for c in Condition}
_GENDER_TOKENS = {g.value.lower(): g for g in GenderComposition}

_MANDATORY_FRAME_COLUMNS = [
    "team_id",
    "frame_id",
    "timestamp_s",
    "image_w",
    "image_h",
    "person_id",
    "gaze_x",
    "gaze_y",
]


@dataclass(frozen=True)
class TeamMeta:
    team_id: str
    condition: Condition
    gender: GenderComposition
    post_test_scores: tuple[float, float]


@dataclass
class LoadResult:
    frames_by_team: dict[str, list[FrameRecord]]
    row_errors: list[str] = field(default_factory=list)


def _parse_float(value: str, column: str, line: int) -> float:
    try:
        return float(value)
    except ValueError:
        raise ValueError(f"line {line}: column {column!r} not numeric: {value!r}")


def load_frames(path: Union[str, Path]) -> LoadResult:
    """Load a frame table, grouping rows into per-team FrameRecords.

    Rows for the same (team_id, frame_id) merge into one frame. Hard
    errors (missing header, unparseable mandatory column) raise; rows with
    out-of-bounds gaze points are skipped and logged with their line
    number, so no row disappears silently.
    """
    frames_by_team: dict[str, dict[str, dict]] = {}
    row_errors: list[str] = []

    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty file, header row required")
        missing = [c for c in _MANDATORY_FRAME_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise ValueError(f"{path}: missing mandatory columns {missing}")

        for line, row in enumerate(reader, start=2):
            team = row["team_id"].strip()
            frame_id = row["frame_id"].strip()
            if not team or not frame_id:
                raise ValueError(f"line {line}: empty team_id or frame_id")
            ts = _parse_float(row["timestamp_s"], "timestamp_s", line)
            w = int(_parse_float(row["image_w"], "image_w", line))
            h = int(_parse_float(row["image_h"], "image_h", line))
            if w <= 0 or h <= 0:
                raise ValueError(f"line {line}: non-positive image dimensions")
            gx = _parse_float(row["gaze_x"], "gaze_x", line)
            gy = _parse_float(row["gaze_y"], "gaze_y", line)
            discarded = str(row.get("discarded", "0")).strip() in ("1", "true", "True")

            if not (0 <= gx <= w and 0 <= gy <= h):
                row_errors.append(
                    f"line {line}: gaze ({gx}, {gy}) outside {w}x{h} image, row skipped"
                )
                continue

            head = None
            hx, hy = row.get("head_x", ""), row.get("head_y", "")
            if hx.strip() and hy.strip():
                head = Point2D(
                    _parse_float(hx, "head_x", line), _parse_float(hy, "head_y", line)
                )
            conf_raw = row.get("confidence", "").strip()
            confidence = _parse_float(conf_raw, "confidence", line) if conf_raw else 1.0

            obs = GazeObservation(
                person_id=row["person_id"].strip(),
                gaze=Point2D(gx, gy),
                head=head,
                confidence=confidence,
            )
            bucket = frames_by_team.setdefault(team, {}).setdefault(
                frame_id,
                {
                    "timestamp": ts,
                    "w": w,
                    "h": h,
                    "observations": [],
                    "discarded": discarded,
                },
            )
            bucket["observations"].append(obs)
            bucket["discarded"] = bucket["discarded"] or discarded

    result: dict[str, list[FrameRecord]] = {}
    for team, frames in frames_by_team.items():
        records = [
            FrameRecord(
                frame_id=fid,
                timestamp=info["timestamp"],
                image_width=info["w"],
                image_height=info["h"],
                observations=tuple(info["observations"]),
                discarded=info["discarded"],
                discard_reason="flagged in input" if info["discarded"] else "",
            )
            for fid, info in frames.items()
        ]
        records.sort(key=lambda r: (r.timestamp, r.frame_id))
        result[team] = records
    return LoadResult(frames_by_team=result, row_errors=row_errors)


def load_teams(path: Union[str, Path]) -> dict[str, TeamMeta]:
    """Load team metadata; unknown condition/gender tokens are hard errors."""
    out: dict[str, TeamMeta] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty file, header row required")
        missing = [c for c in TEAM_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise ValueError(f"{path}: missing mandatory columns {missing}")
        for line, row in enumerate(reader, start=2):
            team = row["team_id"].strip()
            cond_token = row["condition"].strip().lower()
            if cond_token not in _CONDITION_TOKENS:
                raise ValueError(f"line {line}: unknown condition {row['condition']!r}")
            gender_token = row["gender"].strip().lower()
            if gender_token not in _GENDER_TOKENS:
                raise ValueError(f"line {line}: unknown gender {row['gender']!r}")
            s1 = _parse_float(row["post_test_1"], "post_test_1", line)
            s2 = _parse_float(row["post_test_2"], "post_test_2", line)
            if not (0 <= s1 <= 5 and 0 <= s2 <= 5):
                raise ValueError(f"line {line}: post-test score out of [0,5]")
            out[team] = TeamMeta(
                team_id=team,
                condition=_CONDITION_TOKENS[cond_token],
                gender=_GENDER_TOKENS[gender_token],
                post_test_scores=(s1, s2),
            )
    return out


def build_sessions(
    frames_by_team: dict[str, list[FrameRecord]], teams: dict[str, TeamMeta]
) -> list[TeamSession]:
    """Join frames with metadata; teams lacking either side are an error."""
    missing_meta = sorted(set(frames_by_team) - set(teams))
    if missing_meta:
        raise ValueError(f"frames reference unknown teams: {missing_meta}")
    sessions = []
    for team_id in sorted(teams):
        meta = teams[team_id]
        sessions.append(
            TeamSession(
                team_id=team_id,
                condition=meta.condition,
                gender_composition=meta.gender,
                post_test_scores=meta.post_test_scores,
                frames=tuple(frames_by_team.get(team_id, [])),
            )
        )
    return sessions


# --- report assembly -------------------------------------------------------


@dataclass(frozen=True)
class TeamRow:
    team_id: str
    condition: Condition
    group: Group
    gender: GenderComposition
    jva_ratio_pct: Optional[float]
    team_post_test: float


@dataclass
class Report:
    """Everything the emitters render.

    ``summaries`` maps grouping name -> measure -> list of GroupSummary;
    ``anovas`` maps "<grouping>_<measure>" -> AnovaResult. Two-group
    comparisons carry Cohen's d in ``effect_d``; three-group ANOVAs carry
    uncorrected pairwise comparisons in ``posthoc``.
    """

    teams: list[TeamRow] = field(default_factory=list)
    summaries: dict[str, dict[str, list[GroupSummary]]] = field(default_factory=dict)
    totals: dict[str, GroupSummary] = field(default_factory=dict)
    anovas: dict[str, AnovaResult] = field(default_factory=dict)
    effect_d: dict[str, float] = field(default_factory=dict)
    posthoc: dict[str, list[dict]] = field(default_factory=dict)
    correlation: Optional[CorrelationResult] = None
    scatter: list[tuple[float, float]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


_MEASURES = ("jva_ratio_pct", "post_test")

_GROUPING_LABELS = {
    "condition": [c.value for c in Condition],
    "group": [g.value for g in Group],
    "gender": [g.value for g in GenderComposition],
}


def _row_label(row: TeamRow, grouping: str) -> str:
    if grouping == "condition":
        return row.condition.value
    if grouping == "group":
        return row.group.value
    return row.gender.value


def _row_measure(row: TeamRow, measure: str) -> Optional[float]:
    return row.jva_ratio_pct if measure == "jva_ratio_pct" else row.team_post_test


def stats_report_from_team_rows(rows: Sequence[TeamRow]) -> Report:
    """Full inferential report from per-team JVA ratios and post-tests."""
    report = Report(teams=sorted(rows, key=lambda r: r.team_id))

    for grouping, labels in _GROUPING_LABELS.items():
        report.summaries[grouping] = {}
        for measure in _MEASURES:
            groups = []
            for label in labels:
                values = [
                    v
                    for row in rows
                    if _row_label(row, grouping) == label
                    and (v := _row_measure(row, measure)) is not None
                ]
                if len(values) >= 2:
                    groups.append(summarize(values, label=label))
            report.summaries[grouping][measure] = groups
            if len(groups) >= 2:
                _add_anova(report, grouping, measure, groups)

    for measure in _MEASURES:
        values = [
            v for row in rows if (v := _row_measure(row, measure)) is not None
        ]
        if len(values) >= 2:
            report.totals[measure] = summarize(values, label="total")

    pairs = [
        (row.jva_ratio_pct, row.team_post_test)
        for row in report.teams
        if row.jva_ratio_pct is not None
    ]
    report.scatter = pairs
    if len(pairs) >= 3:
        x = [p[0] for p in pairs]
        y = [p[1] for p in pairs]
        try:
            report.correlation = pearson(x, y)
        except ValueError as exc:
            report.notes.append(f"correlation skipped: {exc}")
    return report


def stats_report_from_summaries(
    summaries: dict[str, dict[str, list[GroupSummary]]],
    totals: Optional[dict[str, GroupSummary]] = None,
) -> Report:
    """Inferential report when only (n, M, SD) group summaries are known."""
    report = Report(summaries=summaries, totals=dict(totals or {}))
    for grouping, by_measure in summaries.items():
        for measure, groups in by_measure.items():
            if len(groups) >= 2:
                _add_anova(report, grouping, measure, groups)
    report.notes.append("built from summary statistics; no per-team rows")
    return report


def _add_anova(
    report: Report, grouping: str, measure: str, groups: list[GroupSummary]
) -> None:
    key = f"{grouping}_{measure}"
    try:
        report.anovas[key] = anova_from_summary(groups)
    except ValueError as exc:
        report.notes.append(f"anova {key} skipped: {exc}")
        return
    if len(groups) == 2:
        report.effect_d[key] = cohens_d(groups[0], groups[1])
    else:
        report.posthoc[key] = pairwise_comparisons(groups)


def analyze_report(
    sessions: Sequence[TeamSession], config: JvaConfig = JvaConfig()
) -> Report:
    """Run JVA scoring over every session and assemble the full report."""
    rows = []
    for session in sorted(sessions, key=lambda s: s.team_id):
        result = session_jva(session, config)
        rows.append(
            TeamRow(
                team_id=session.team_id,
                condition=session.condition,
                group=session.group,
                gender=session.gender_composition,
                jva_ratio_pct=result.jva_ratio_pct,
                team_post_test=session.team_post_test,
            )
        )
    report = stats_report_from_team_rows(rows)
    no_frames = [r.team_id for r in rows if r.jva_ratio_pct is None]
    if no_frames:
        report.notes.append(f"no countable frames for teams: {no_frames}")
    return report


# --- fixture and team-row files -------------------------------------------


def paper_fixture_path() -> Path:
    """Bundled summary-statistics fixture (published condition/gender tables)."""
    return Path(__file__).parent / "fixtures" / "paper_fixture.csv"


def load_summary_fixture(
    path: Union[str, Path],
) -> tuple[dict[str, dict[str, list[GroupSummary]]], dict[str, GroupSummary]]:
    """Read a summary CSV with columns grouping,label,measure,n,mean,sd."""
    summaries: dict[str, dict[str, list[GroupSummary]]] = {}
    totals: dict[str, GroupSummary] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.DictReader(_strip_comments(fh))]
    for line, row in enumerate(rows, start=2):
        grouping = row["grouping"].strip()
        measure = row["measure"].strip()
        if measure not in _MEASURES:
            raise ValueError(f"line {line}: unknown measure {measure!r}")
        summary = GroupSummary(
            label=row["label"].strip(),
            n=int(row["n"]),
            mean=float(row["mean"]),
            sd=float(row["sd"]),
        )
        if grouping == "total":
            totals[measure] = summary
        else:
            summaries.setdefault(grouping, {}).setdefault(measure, []).append(summary)
    return summaries, totals


def _strip_comments(fh):
    for line in fh:
        if not line.lstrip().startswith("#"):
            yield line


def load_team_rows(path: Union[str, Path]) -> list[TeamRow]:
    """Read a per-team results table (the analyze output's teams.csv)."""
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(_strip_comments(fh))
        for line, row in enumerate(reader, start=2):
            cond = _CONDITION_TOKENS[row["condition"].strip().lower()]
            ratio_raw = row.get("jva_ratio_pct", "").strip()
            out.append(
                TeamRow(
                    team_id=row["team_id"].strip(),
                    condition=cond,
                    group=group_for_condition(cond),
                    gender=_GENDER_TOKENS[row["gender"].strip().lower()],
                    jva_ratio_pct=float(ratio_raw) if ratio_raw else None,
                    team_post_test=float(row["team_post_test"]),
                )
            )
    return out


def detect_table_kind(path: Union[str, Path]) -> str:
    """'summary' for (grouping,label,measure,n,mean,sd) files, else 'teams'."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(_strip_comments(fh))
        header = next(reader, None)
    if header is None:
        raise ValueError(f"{path}: empty file")
    cols = {c.strip() for c in header}
    if {"grouping", "label", "measure", "n", "mean", "sd"} <= cols:
        return "summary"
    if {"team_id", "condition", "gender", "team_post_test"} <= cols:
        return "teams"
    raise ValueError(f"{path}: unrecognized table header {sorted(cols)}")


# --- emission --------------------------------------------------------------


def _fmt(value: Optional[float], decimals: int) -> str:
    if value is None:
        return "NA"
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return f"{value:.{decimals}f}"


def _round(value: Optional[float], decimals: int):
    if value is None:
        return None
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return round(value, decimals)


def _report_dict(report: Report) -> dict:
    data: dict = {
        "teams": [
            {
                "team_id": r.team_id,
                "condition": r.condition.value,
                "group": r.group.value,
                "gender": r.gender.value,
                "jva_ratio_pct": _round(r.jva_ratio_pct, 2),
                "team_post_test": _round(r.team_post_test, 2),
            }
            for r in report.teams
        ],
        "summaries": {
            grouping: {
                measure: [
                    {
                        "label": g.label,
                        "n": g.n,
                        "mean": _round(g.mean, 2),
                        "sd": _round(g.sd, 2),
                    }
                    for g in groups
                ]
                for measure, groups in by_measure.items()
            }
            for grouping, by_measure in report.summaries.items()
        },
        "totals": {
            measure: {
                "n": g.n,
                "mean": _round(g.mean, 2),
                "sd": _round(g.sd, 2),
            }
            for measure, g in report.totals.items()
        },
        "anovas": {
            key: {
                "f": _round(a.f, 2),
                "df": [a.df_between, a.df_within],
                "p": _round(a.p, 3),
                "eta_squared": _round(a.eta_squared, 4),
                "omega_squared": _round(a.omega_squared, 4),
                **(
                    {"cohens_d": _round(report.effect_d[key], 2)}
                    if key in report.effect_d
                    else {}
                ),
            }
            for key, a in report.anovas.items()
        },
        "posthoc": {
            key: [
                {
                    "a": c["a"],
                    "b": c["b"],
                    "f": _round(c["f"], 2),
                    "p": _round(c["p"], 3),
                    "cohens_d": _round(c["cohens_d"], 2),
                    "correction": c["correction"],
                }
                for c in comparisons
            ]
            for key, comparisons in report.posthoc.items()
        },
        "scatter": [
            [_round(x, 2), _round(y, 2)] for x, y in report.scatter
        ],
        "notes": list(report.notes),
    }
    if report.correlation is not None:
        c = report.correlation
        data["correlation"] = {
            "r": _round(c.r, 4),
            "r_squared": _round(c.r_squared, 4),
            "n": c.n,
            "f_equivalent": _round(c.f_equivalent, 2),
            "p": _round(c.p, 3),
            "slope": _round(c.slope, 4),
            "intercept": _round(c.intercept, 4),
        }
    return data


_MEASURE_TITLES = {"jva_ratio_pct": "JVA ratio (%)", "post_test": "Post-test"}


def _render_text(report: Report) -> str:
    lines: list[str] = []

    if report.teams:
        lines.append("Per-team results")
        lines.append(
            f"{'team':<10}{'condition':<12}{'group':<12}{'gender':<8}"
            f"{'JVA ratio (%)':>14}{'post-test':>11}"
        )
        for r in report.teams:
            lines.append(
                f"{r.team_id:<10}{r.condition.value:<12}{r.group.value:<12}"
                f"{r.gender.value:<8}{_fmt(r.jva_ratio_pct, 2):>14}"
                f"{_fmt(r.team_post_test, 2):>11}"
            )
        lines.append("")

    for grouping in sorted(report.summaries):
        by_measure = report.summaries[grouping]
        lines.append(f"Summary by {grouping}")
        header = f"{'label':<14}{'n':>4}"
        for measure in _MEASURES:
            if measure in by_measure:
                header += f"{_MEASURE_TITLES[measure]:>22}"
        lines.append(header)
        labels = []
        for measure in _MEASURES:
            for g in by_measure.get(measure, []):
                if g.label not in labels:
                    labels.append(g.label)
        for label in labels:
            cells = f"{label:<14}"
            n_cell = ""
            body = ""
            for measure in _MEASURES:
                match = [g for g in by_measure.get(measure, []) if g.label == label]
                if measure in by_measure:
                    if match:
                        g = match[0]
                        n_cell = f"{g.n:>4}"
                        body += f"{_fmt(g.mean, 2) + ' ± ' + _fmt(g.sd, 2):>22}"
                    else:
                        body += f"{'NA':>22}"
            lines.append(cells + n_cell + body)
        lines.append("")

    if report.totals:
        lines.append("Total")
        for measure in _MEASURES:
            if measure in report.totals:
                g = report.totals[measure]
                lines.append(
                    f"{_MEASURE_TITLES[measure]:<16}n={g.n:<4}"
                    f"{_fmt(g.mean, 2)} ± {_fmt(g.sd, 2)}"
                )
        lines.append("")

    if report.anovas:
        lines.append("One-way ANOVA")
        for key in sorted(report.anovas):
            a = report.anovas[key]
            line = (
                f"{key:<26}F({a.df_between},{a.df_within}) = {_fmt(a.f, 2)}, "
                f"p = {_fmt(a.p, 3)}, eta2 = {a.eta_squared:.4f}, "
                f"omega2 = {a.omega_squared:.4f}"
            )
            if key in report.effect_d:
                line += f", Cohen's d = {_fmt(report.effect_d[key], 2)}"
            lines.append(line)
        lines.append("")

    for key in sorted(report.posthoc):
        lines.append(f"Pairwise comparisons for {key} (uncorrected)")
        for c in report.posthoc[key]:
            lines.append(
                f"  {c['a']} vs {c['b']}: F = {_fmt(c['f'], 2)}, "
                f"p = {_fmt(c['p'], 3)}, d = {_fmt(c['cohens_d'], 2)}"
            )
        lines.append("")

    if report.correlation is not None:
        c = report.correlation
        lines.append("Correlation (JVA ratio vs post-test)")
        lines.append(
            f"r = {_fmt(c.r, 4)}, r2 = {_fmt(c.r_squared, 4)}, n = {c.n}, "
            f"F(1,{c.n - 2}) = {_fmt(c.f_equivalent, 2)}, p = {_fmt(c.p, 3)}"
        )
        if math.isfinite(c.slope):
            lines.append(
                f"fit: post_test = {_fmt(c.slope, 4)} * jva_pct + {_fmt(c.intercept, 4)}"
            )
        lines.append("")

    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines).rstrip() + "\n"


def emit_report(
    report: Report,
    fmt: str = "text",
    out: Optional[Union[str, Path]] = None,
) -> str:
    """Render a report; write to ``out`` when given, return the text.

    ``csv-bundle`` needs ``out`` to be a directory; it returns the
    directory path and writes teams.csv, summaries.csv and anovas.csv.
    """
    if fmt == "json":
        text = json.dumps(_report_dict(report), indent=2, sort_keys=True) + "\n"
    elif fmt == "text":
        text = _render_text(report)
    elif fmt == "csv-bundle":
        if out is None:
            raise ValueError("csv-bundle format needs an output directory")
        _write_csv_bundle(report, Path(out))
        return str(out)
    else:
        raise ValueError(f"unknown report format {fmt!r}")

    if out is not None:
        Path(out).write_text(text, encoding="utf-8")
    return text


def _write_csv_bundle(report: Report, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "teams.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["team_id", "condition", "group", "gender", "jva_ratio_pct", "team_post_test"]
        )
        for r in report.teams:
            writer.writerow(
                [
                    r.team_id,
                    r.condition.value,
                    r.group.value,
                    r.gender.value,
                    _fmt(r.jva_ratio_pct, 2) if r.jva_ratio_pct is not None else "",
                    _fmt(r.team_post_test, 2),
                ]
            )
    with open(out_dir / "summaries.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["grouping", "label", "measure", "n", "mean", "sd"])
        for grouping in sorted(report.summaries):
            for measure in _MEASURES:
                for g in report.summaries[grouping].get(measure, []):
                    writer.writerow(
                        [grouping, g.label, measure, g.n, _fmt(g.mean, 2), _fmt(g.sd, 2)]
                    )
        for measure in _MEASURES:
            if measure in report.totals:
                g = report.totals[measure]
                writer.writerow(
                    ["total", "total", measure, g.n, _fmt(g.mean, 2), _fmt(g.sd, 2)]
                )
    with open(out_dir / "anovas.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["analysis", "f", "df1", "df2", "p", "eta_squared", "omega_squared", "cohens_d"]
        )
        for key in sorted(report.anovas):
            a = report.anovas[key]
            writer.writerow(
                [
                    key,
                    _fmt(a.f, 2),
                    a.df_between,
                    a.df_within,
                    _fmt(a.p, 3),
                    f"{a.eta_squared:.4f}",
                    f"{a.omega_squared:.4f}",
                    _fmt(report.effect_d[key], 2) if key in report.effect_d else "",
                ]
            )
    if report.correlation is not None:
        c = report.correlation
        with open(out_dir / "correlation.csv", "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["r", "r_squared", "n", "f_equivalent", "p", "slope", "intercept"])
            writer.writerow(
                [
                    _fmt(c.r, 4),
                    _fmt(c.r_squared, 4),
                    c.n,
                    _fmt(c.f_equivalent, 2),
                    _fmt(c.p, 3),
                    _fmt(c.slope, 4) if math.isfinite(c.slope) else "",
                    _fmt(c.intercept, 4) if math.isfinite(c.intercept) else "",
                ]
            )


# --- configuration ---------------------------------------------------------

_SCALE_TOKENS = {m.value: m for m in ScaleMode}
_POLICY_TOKENS = {p.value: p for p in DenominatorPolicy}


def config_path_from_env() -> Optional[Path]:
    raw = os.environ.get(CONFIG_ENV_VAR)
    return Path(raw) if raw else None


def load_config(path: Optional[Union[str, Path]] = None, **overrides) -> JvaConfig:
    """Build a JvaConfig with standard precedence: defaults < file < overrides.

    The file is simple key=value lines; '#' starts a comment. Recognized
    keys: threshold, scale_mode, denominator_policy, reference_diagonal.
    """
    values: dict = {}
    if path is not None:
        for line_no, raw in enumerate(
            Path(path).read_text(encoding="utf-8").splitlines(), start=1
        ):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{line_no}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            if key in ("threshold", "reference_diagonal"):
                values[key] = float(value)
            elif key == "scale_mode":
                values[key] = _SCALE_TOKENS[value]
            elif key == "denominator_policy":
                values[key] = _POLICY_TOKENS[value]
            else:
                raise ValueError(f"{path}:{line_no}: unknown key {key!r}")
    for key, value in overrides.items():
        if value is not None:
            values[key] = value
    return JvaConfig(**values)
