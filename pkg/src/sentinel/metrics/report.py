"""Confusion matrices, accuracy, and per-class precision/recall/F1.

Zero-denominator metrics are defined as 0 rather than NaN, and every
such case is flagged in the report so the convention stays visible.
"""

import io
from dataclasses import dataclass, field

import numpy as np

from ..errors import ValidationError


class ConfusionMatrix:
    """K x K counts; entry (i, j) = samples of true class i predicted j."""

    def __init__(self, counts, class_ids):
        self.counts = np.asarray(counts, dtype=np.int64)
        self.class_ids = list(class_ids)
        if self.counts.shape != (len(self.class_ids), len(self.class_ids)):
            raise ValidationError("confusion counts must be square over class_ids")
        if (self.counts < 0).any():
            raise ValidationError("confusion counts must be non-negative")

    @property
    def total(self):
        return int(self.counts.sum())

    def row_sums(self):
        return self.counts.sum(axis=1)

    def col_sums(self):
        return self.counts.sum(axis=0)

    def to_csv(self):
        out = io.StringIO()
        out.write("true\\pred," + ",".join(str(c) for c in self.class_ids) + "\n")
        for cid, row in zip(self.class_ids, self.counts):
            out.write(str(cid) + "," + ",".join(str(v) for v in row) + "\n")
        return out.getvalue()

    def to_dict(self):
        return {"class_ids": self.class_ids, "counts": self.counts.tolist()}

    def __repr__(self):
        return f"ConfusionMatrix(classes={self.class_ids}, total={self.total})"


def confusion(y_true, y_pred, class_ids=None):
    """Exact counts of (true, predicted) class pairs.

    Classes present in either sequence get rows and columns; pass
    ``class_ids`` to force a fixed class set (e.g. [0, 1] even when a
    small split contains no positives).
    """
    y_true = np.asarray(y_true, dtype=np.int64)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if y_true.shape != y_pred.shape or y_true.ndim != 1:
        raise ValidationError("y_true and y_pred must be equal-length 1-d sequences")
    if y_true.size == 0:
        raise ValidationError("cannot build a confusion matrix from zero samples")
    if class_ids is None:
        class_ids = sorted(set(y_true.tolist()) | set(y_pred.tolist()))
    index = {c: k for k, c in enumerate(class_ids)}
    counts = np.zeros((len(class_ids), len(class_ids)), dtype=np.int64)
    for t, p in zip(y_true, y_pred):
        counts[index[int(t)], index[int(p)]] += 1
    return ConfusionMatrix(counts, class_ids)


def accuracy(cm):
    """Trace over total."""
    if cm.total == 0:
        raise ValidationError("accuracy of an empty confusion matrix is undefined")
    return float(np.trace(cm.counts) / cm.total)


@dataclass(frozen=True)
class ClassMetrics:
    class_id: int
    precision: float
    recall: float
    f1: float
    support: int


@dataclass
class SplitEval:
    """Classification report for one evaluated split."""

    accuracy: float
    confusion: ConfusionMatrix
    per_class: list
    macro: ClassMetrics
    weighted: ClassMetrics
    zero_division_flags: list = field(default_factory=list)


def classification_report(cm):
    """Per-class precision/recall/F1 plus macro and weighted averages."""
    if cm.total == 0:
        raise ValidationError("cannot report on an empty confusion matrix")
    rows = cm.row_sums()
    cols = cm.col_sums()
    per_class, flags = [], []
    for k, cid in enumerate(cm.class_ids):
        tp = float(cm.counts[k, k])
        if cols[k] > 0:
            precision = tp / cols[k]
        else:
            precision = 0.0
            flags.append(f"precision[class={cid}]")
        if rows[k] > 0:
            recall = tp / rows[k]
        else:
            recall = 0.0
            flags.append(f"recall[class={cid}]")
        if precision + recall > 0:
            f1 = 2.0 * precision * recall / (precision + recall)
        else:
            f1 = 0.0
            flags.append(f"f1[class={cid}]")
        per_class.append(ClassMetrics(cid, precision, recall, f1, int(rows[k])))

    n = float(cm.total)
    macro = ClassMetrics(
        class_id=-1,
        precision=float(np.mean([m.precision for m in per_class])),
        recall=float(np.mean([m.recall for m in per_class])),
        f1=float(np.mean([m.f1 for m in per_class])),
        support=cm.total,
    )
    weighted = ClassMetrics(
        class_id=-1,
        precision=float(sum(m.precision * m.support for m in per_class) / n),
        recall=float(sum(m.recall * m.support for m in per_class) / n),
        f1=float(sum(m.f1 * m.support for m in per_class) / n),
        support=cm.total,
    )
    return SplitEval(
        accuracy=accuracy(cm),
        confusion=cm,
        per_class=per_class,
        macro=macro,
        weighted=weighted,
        zero_division_flags=flags,
    )


def evaluate_split(y_true, y_pred, class_ids=None):
    return classification_report(confusion(y_true, y_pred, class_ids))


@dataclass
class EvalReport:
    """Train/test accuracy pair plus both classification reports."""

    train: SplitEval
    test: SplitEval

    @property
    def train_accuracy(self):
        return self.train.accuracy

    @property
    def test_accuracy(self):
        return self.test.accuracy

    def to_csv(self):
        out = io.StringIO()
        out.write("split,label,precision,recall,f1,support,accuracy\n")
        for name, ev in (("train", self.train), ("test", self.test)):
            for m in ev.per_class:
                out.write(f"{name},{m.class_id},{m.precision:.6f},{m.recall:.6f},"
                          f"{m.f1:.6f},{m.support},\n")
            for label, m in (("macro", ev.macro), ("weighted", ev.weighted)):
                out.write(f"{name},{label},{m.precision:.6f},{m.recall:.6f},"
                          f"{m.f1:.6f},{m.support},\n")
            out.write(f"{name},overall,,,,{ev.confusion.total},{ev.accuracy:.6f}\n")
        return out.getvalue()

    def to_text(self):
        lines = []
        for name, ev in (("train", self.train), ("test", self.test)):
            lines.append(f"== {name} (accuracy {ev.accuracy:.4f}) ==")
            lines.append(f"{'':>10}{'precision':>11}{'recall':>9}{'f1':>9}{'support':>10}")
            for m in ev.per_class:
                lines.append(
                    f"{m.class_id:>10}{m.precision:>11.4f}{m.recall:>9.4f}"
                    f"{m.f1:>9.4f}{m.support:>10}"
                )
            for label, m in (("macro", ev.macro), ("weighted", ev.weighted)):
                lines.append(
                    f"{label:>10}{m.precision:>11.4f}{m.recall:>9.4f}"
                    f"{m.f1:>9.4f}{m.support:>10}"
                )
            if ev.zero_division_flags:
                lines.append(f"  zero-division cases reported as 0: "
                             f"{', '.join(ev.zero_division_flags)}")
            lines.append("")
        return "\n".join(lines)
