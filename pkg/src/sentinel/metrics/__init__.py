"""Evaluation: confusion matrices and classification reports."""

from .report import (
    ClassMetrics,
    ConfusionMatrix,
    EvalReport,
    SplitEval,
    accuracy,
    classification_report,
    confusion,
    evaluate_split,
)

__all__ = [
    "ClassMetrics",
    "ConfusionMatrix",
    "EvalReport",
    "SplitEval",
    "accuracy",
    "classification_report",
    "confusion",
    "evaluate_split",
]
