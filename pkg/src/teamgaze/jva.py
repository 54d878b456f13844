"""Per-frame joint-visual-attention classification and per-team aggregation.

A frame exhibits JVA when the Euclidean distance between the two persons'
gaze points is strictly smaller than the threshold (100 px by default, at
the reference 2560x1440 capture resolution).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .model import FrameRecord, TeamSession

__all__ = [
    "ScaleMode",
    "DenominatorPolicy",
    "JvaConfig",
    "JvaFrameResult",
    "JvaSessionResult",
    "classify_frame",
    "session_jva",
    "REFERENCE_DIAGONAL",
]

# Diagonal of the reference 2560x1440 capture resolution, in pixels.
REFERENCE_DIAGONAL = math.hypot(2560.0, 1440.0)


class ScaleMode(Enum):
    ABSOLUTE = "absolute"
    DIAGONAL_NORMALIZED = "diagonal-normalized"


class DenominatorPolicy(Enum):
    # Frames with exactly two valid observations (default: defective frames
    # were removed upstream, so they cannot count against JVA).
    VALID_PAIR_FRAMES = "valid-pair-frames"
    # Every non-discarded frame counts; for sensitivity analysis.
    ALL_CAPTURED_FRAMES = "all-captured-frames"


@dataclass(frozen=True)
class JvaConfig:
    threshold: float = 100.0
    reference_diagonal: float = REFERENCE_DIAGONAL
    scale_mode: ScaleMode = ScaleMode.ABSOLUTE
    denominator_policy: DenominatorPolicy = DenominatorPolicy.VALID_PAIR_FRAMES

    def __post_init__(self) -> None:
        if self.threshold <= 0:
            raise ValueError("threshold must be positive")
        if self.reference_diagonal <= 0:
            raise ValueError("reference diagonal must be positive")

    def effective_threshold(self, image_width: int, image_height: int) -> float:
        """Threshold in this frame's pixels, rescaled when normalizing."""
        if self.scale_mode is ScaleMode.ABSOLUTE:
            return self.threshold
        diagonal = math.hypot(image_width, image_height)
        return self.threshold * diagonal / self.reference_diagonal


@dataclass(frozen=True)
class JvaFrameResult:
    frame_id: str
    distance: Optional[float]
    is_jva: bool
    counted_in_denominator: bool


@dataclass(frozen=True)
class JvaSessionResult:
    team_id: str
    jva_frames: int
    denominator_frames: int
    jva_ratio: Optional[float]

    @property
    def jva_ratio_pct(self) -> Optional[float]:
        return None if self.jva_ratio is None else 100.0 * self.jva_ratio


def classify_frame(frame: FrameRecord, config: JvaConfig = JvaConfig()) -> JvaFrameResult:
    """Decide JVA for one frame; false by default.

    Frames without exactly two valid observations (or discarded frames)
    cannot be positive; whether they count in the denominator depends on
    the configured policy. Comparison against the threshold is strict: a
    distance exactly equal to the threshold is not JVA.
    """
    valid = () if frame.discarded else frame.valid_observations()
    if frame.discarded or len(valid) != 2:
        counted = (
            config.denominator_policy is DenominatorPolicy.ALL_CAPTURED_FRAMES
            and not frame.discarded
        )
        return JvaFrameResult(
            frame_id=frame.frame_id,
            distance=None,
            is_jva=False,
            counted_in_denominator=counted,
        )

    distance = valid[0].gaze.distance_to(valid[1].gaze)
    threshold = config.effective_threshold(frame.image_width, frame.image_height)
    return JvaFrameResult(
        frame_id=frame.frame_id,
        distance=distance,
        is_jva=distance < threshold,
        counted_in_denominator=True,
    )


def session_jva(session: TeamSession, config: JvaConfig = JvaConfig()) -> JvaSessionResult:
    """Aggregate frame classifications into the team's JVA ratio.

    With a zero denominator the ratio is None ("no countable frames");
    callers decide whether that is an error.
    """
    jva_count = 0
    denominator = 0
    for frame in session.frames:
        result = classify_frame(frame, config)
        if result.counted_in_denominator:
            denominator += 1
        if result.is_jva:
            jva_count += 1
    ratio = jva_count / denominator if denominator > 0 else None
    return JvaSessionResult(
        team_id=session.team_id,
        jva_frames=jva_count,
        denominator_frames=denominator,
        jva_ratio=ratio,
    )
