"""Confusion-matrix evaluation with the ten standard derived measures.

A measure whose denominator is zero is reported as None (undefined), which
is distinct from 0: a classifier with no negatives has no false positive
rate at all, not a perfect one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

METRIC_LABELS = (
    ("sensitivity", "Sensitivity"),
    ("specificity", "Specificity"),
    ("precision", "Precision"),
    ("npv", "Negative Predictive Value"),
    ("fpr", "False Positive Rate"),
    ("fdr", "False Discovery Rate"),
    ("fnr", "False Negative Rate"),
    ("accuracy", "Accuracy"),
    ("f1", "F1 Score"),
    ("mcc", "Matthews Correlation Coefficient"),
)


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self) -> None:
        for name in ("tp", "fp", "fn", "tn"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {value!r}")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class MetricsReport:
    sensitivity: float | None
    specificity: float | None
    precision: float | None
    npv: float | None
    fpr: float | None
    fdr: float | None
    fnr: float | None
    accuracy: float | None
    f1: float | None
    mcc: float | None

    def to_dict(self) -> dict[str, float | None]:
        return {key: getattr(self, key) for key, _ in METRIC_LABELS}

    def as_table(self) -> str:
        """Two-column plain-text table: measure name, value to 4 decimals."""
        width = max(len(label) for _, label in METRIC_LABELS)
        lines = []
        for key, label in METRIC_LABELS:
            value = getattr(self, key)
            rendered = "undefined" if value is None else f"{value:.4f}"
            lines.append(f"{label:<{width}}  {rendered}")
        return "\n".join(lines)


def confusion_from_labels(
    predicted: Iterable[int], relevant: Iterable[int], universe: Iterable[int]
) -> ConfusionMatrix:
    """Count TP/FP/FN/TN from predicted and relevant id sets over a universe."""
    predicted_set = set(predicted)
    relevant_set = set(relevant)
    universe_set = set(universe)
    if not predicted_set <= universe_set:
        raise ValueError("predicted ids must be a subset of the universe")
    if not relevant_set <= universe_set:
        raise ValueError("relevant ids must be a subset of the universe")
    tp = len(predicted_set & relevant_set)
    fp = len(predicted_set - relevant_set)
    fn = len(relevant_set - predicted_set)
    tn = len(universe_set - (predicted_set | relevant_set))
    return ConfusionMatrix(tp=tp, fp=fp, fn=fn, tn=tn)


def _ratio(numerator: float, denominator: float) -> float | None:
    if denominator == 0:
        return None
    return numerator / denominator


def compute_metrics(cm: ConfusionMatrix) -> MetricsReport:
    """All ten measures; any zero-denominator measure comes back as None."""
    if cm.total == 0:
        raise ValueError("confusion matrix is all zeros")
    tp, fp, fn, tn = cm.tp, cm.fp, cm.fn, cm.tn
    mcc_den = math.sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn))
    return MetricsReport(
        sensitivity=_ratio(tp, tp + fn),
        specificity=_ratio(tn, fp + tn),
        precision=_ratio(tp, tp + fp),
        npv=_ratio(tn, tn + fn),
        fpr=_ratio(fp, fp + tn),
        fdr=_ratio(fp, fp + tp),
        fnr=_ratio(fn, fn + tp),
        accuracy=(tp + tn) / cm.total,
        f1=_ratio(2 * tp, 2 * tp + fp + fn),
        mcc=_ratio(tp * tn - fp * fn, mcc_den),
    )
