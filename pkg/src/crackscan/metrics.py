"""Region-level detection metrics: confusion counts and precision/recall/F1.

Only the crack label counts as a positive prediction; homogeneous and
inhomogeneous both count as material. Degenerate 0/0 ratios are defined
as 0 so empty or all-negative runs still produce a metrics row.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .classify import RegionLabel
from .errors import ParameterError

__all__ = ["ConfusionCounts", "Metrics", "confusion", "metrics"]


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.tn, self.fn) < 0:
            raise ParameterError("confusion counts must be nonnegative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class Metrics:
    precision: float
    recall: float
    f1: float


def confusion(pred: Sequence[RegionLabel], truth: Sequence[bool]) -> ConfusionCounts:
    """Count region outcomes; ``pred`` and ``truth`` must align region-for-region."""
    if len(pred) != len(truth):
        raise ParameterError(f"got {len(pred)} predictions for {len(truth)} truth regions")
    tp = fp = tn = fn = 0
    for label, is_crack in zip(pred, truth):
        positive = label is RegionLabel.CRACK
        if positive and is_crack:
            tp += 1
        elif positive:
            fp += 1
        elif is_crack:
            fn += 1
        else:
            tn += 1
    return ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn)


def metrics(c: ConfusionCounts) -> Metrics:
    """Precision, recall, F1 from counts, with 0/0 defined as 0."""
    precision = c.tp / (c.tp + c.fp) if c.tp + c.fp else 0.0
    recall = c.tp / (c.tp + c.fn) if c.tp + c.fn else 0.0
    f1 = 2.0 * precision * recall / (precision + recall) if precision + recall else 0.0
    return Metrics(precision=precision, recall=recall, f1=f1)
