"""Synthetic-session generator with known ground truth.

Produces the same frame/team CSV formats the loaders consume, plus a JSON
sidecar recording each frame's intended JVA label and each team's intended
ratio. This is the end-to-end oracle for the pipeline: at zero noise the
analysis must recover the generated ratios exactly.

Randomness comes from numpy's Philox counter-based generator, keyed by
(seed, team index) through a SeedSequence, so output is reproducible
across platforms and teams are independent streams.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence, Union

import numpy as np

from .model import Condition, GenderComposition

__all__ = ["SynthSpec", "GroundTruth", "generate", "moment_matched_groups"]

FRAME_COLUMNS = [
    "team_id",
    "frame_id",
    "timestamp_s",
    "image_w",
    "image_h",
    "person_id",
    "gaze_x",
    "gaze_y",
    "head_x",
    "head_y",
    "confidence",
    "discarded",
]
TEAM_COLUMNS = ["team_id", "condition", "gender", "post_test_1", "post_test_2"]

# Non-JVA gaze targets are separated by this multiple of the threshold, so
# Gaussian noise up to sigma = threshold/3 leaves roughly a 3-sigma margin
# on each side of the decision boundary.
SEPARATION_FACTOR = 3.0

_CONDITION_CYCLE = (Condition.TEXTBOOK, Condition.TABLET, Condition.AR)
_GENDER_CYCLE = (
    GenderComposition.FEMALES,
    GenderComposition.MALES,
    GenderComposition.MIXED,
)

JvaProbability = Union[float, Mapping[str, float]]


@dataclass(frozen=True)
class SynthSpec:
    """Parameters for one synthetic study.

    ``jva_probability`` is either a single probability, a mapping from
    team_id (e.g. "team01") to probability, or a mapping from condition
    value ("textbook"/"tablet"/"ar") to probability.
    """

    teams: int = 30
    frames_per_team: int = 155
    image_w: int = 2560
    image_h: int = 1440
    jva_probability: JvaProbability = 0.4
    gaze_noise_sigma: float = 0.0
    threshold: float = 100.0
    frame_interval_s: float = 10.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.teams <= 0 or self.frames_per_team <= 0:
            raise ValueError("counts must be positive")
        if self.image_w <= 0 or self.image_h <= 0:
            raise ValueError("image dimensions must be positive")
        if self.gaze_noise_sigma < 0:
            raise ValueError("noise sigma must be non-negative")
        if self.threshold <= 0:
            raise ValueError("threshold must be positive")


@dataclass(frozen=True)
class GroundTruth:
    """Intended per-frame labels and per-team ratios."""

    frame_labels: dict[str, list[bool]]
    team_ratios: dict[str, float]

    def to_json(self) -> str:
        payload = {
            "team_ratios": self.team_ratios,
            "frame_labels": {
                team: [int(v) for v in labels]
                for team, labels in self.frame_labels.items()
            },
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def _team_id(index: int) -> str:
    return f"team{index + 1:02d}"


def _probability_for(spec: SynthSpec, team_id: str, condition: Condition) -> float:
    p = spec.jva_probability
    if isinstance(p, Mapping):
        if team_id in p:
            p = p[team_id]
        elif condition.value in p:
            p = p[condition.value]
        else:
            raise KeyError(f"no jva_probability for {team_id} / {condition.value}")
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise ValueError("jva_probability must lie in [0, 1]")
    return p


def _sample_targets(rng: np.random.Generator, spec: SynthSpec, coincident: bool):
    """True gaze targets for both persons in one frame.

    Targets live inside an inner box one separation-length away from each
    border, so the separated partner point always stays in bounds.
    """
    sep = SEPARATION_FACTOR * spec.threshold
    margin_x = min(sep, spec.image_w / 4)
    margin_y = min(sep, spec.image_h / 4)
    ax = rng.uniform(margin_x, spec.image_w - margin_x)
    ay = rng.uniform(margin_y, spec.image_h - margin_y)
    if coincident:
        return (ax, ay), (ax, ay)
    angle = rng.uniform(0.0, 2.0 * math.pi)
    bx = ax + sep * math.cos(angle)
    by = ay + sep * math.sin(angle)
    if not (0 <= bx <= spec.image_w):
        bx = ax - sep * math.cos(angle)
    if not (0 <= by <= spec.image_h):
        by = ay - sep * math.sin(angle)
    return (ax, ay), (bx, by)


def _noisy(rng: np.random.Generator, point, sigma: float, w: int, h: int):
    x, y = point
    if sigma > 0:
        x += rng.normal(0.0, sigma)
        y += rng.normal(0.0, sigma)
    return min(max(x, 0.0), float(w)), min(max(y, 0.0), float(h))


def generate(
    spec: SynthSpec, out_dir: Union[str, Path]
) -> tuple[Path, Path, Path, GroundTruth]:
    """Write frames.csv, teams.csv and ground_truth.json under ``out_dir``.

    Files rather than in-memory records: the generator exercises the real
    ingestion path. Returns the three paths and the ground truth.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    frames_path = out / "frames.csv"
    teams_path = out / "teams.csv"
    truth_path = out / "ground_truth.json"

    frame_labels: dict[str, list[bool]] = {}
    team_ratios: dict[str, float] = {}

    with open(frames_path, "w", newline="", encoding="utf-8") as ff, open(
        teams_path, "w", newline="", encoding="utf-8"
    ) as tf:
        frame_writer = csv.writer(ff)
        frame_writer.writerow(FRAME_COLUMNS)
        team_writer = csv.writer(tf)
        team_writer.writerow(TEAM_COLUMNS)

        for idx in range(spec.teams):
            team = _team_id(idx)
            condition = _CONDITION_CYCLE[idx % len(_CONDITION_CYCLE)]
            gender = _GENDER_CYCLE[idx % len(_GENDER_CYCLE)]
            rng = np.random.Generator(
                np.random.Philox(np.random.SeedSequence(spec.seed, spawn_key=(idx,)))
            )
            p = _probability_for(spec, team, condition)

            scores = rng.integers(0, 6, size=2)
            team_writer.writerow(
                [team, condition.value, gender.value, int(scores[0]), int(scores[1])]
            )

            labels: list[bool] = []
            for f_idx in range(spec.frames_per_team):
                coincident = bool(rng.random() < p)
                labels.append(coincident)
                target_a, target_b = _sample_targets(rng, spec, coincident)
                ts = f_idx * spec.frame_interval_s
                frame_id = f"f{f_idx:05d}"
                for person, target in (("p1", target_a), ("p2", target_b)):
                    gx, gy = _noisy(
                        rng, target, spec.gaze_noise_sigma, spec.image_w, spec.image_h
                    )
                    frame_writer.writerow(
                        [
                            team,
                            frame_id,
                            f"{ts:.1f}",
                            spec.image_w,
                            spec.image_h,
                            person,
                            f"{gx:.4f}",
                            f"{gy:.4f}",
                            "",
                            "",
                            "1.0",
                            0,
                        ]
                    )
            frame_labels[team] = labels
            team_ratios[team] = sum(labels) / len(labels)

    truth = GroundTruth(frame_labels=frame_labels, team_ratios=team_ratios)
    truth_path.write_text(truth.to_json(), encoding="utf-8")
    return frames_path, teams_path, truth_path, truth


def moment_matched_groups(
    specs: Sequence[tuple[int, float, float]],
) -> list[np.ndarray]:
    """Raw samples whose sample mean and SD match each (n, mean, sd) exactly.

    Built by affinely rescaling a fixed base pattern (0..n-1) to zero mean
    and unit sample SD, then shifting/scaling to the target moments. With
    sd = 0 the sample is constant.
    """
    out = []
    for n, mean, sd in specs:
        if n < 2:
            raise ValueError("insufficient data: need n >= 2")
        if sd < 0:
            raise ValueError("sd must be non-negative")
        if sd == 0:
            out.append(np.full(n, float(mean)))
            continue
        base = np.arange(n, dtype=float)
        z = (base - base.mean()) / base.std(ddof=1)
        out.append(mean + sd * z)
    return out
