import numpy as np
import pytest

from sentinel.errors import ValidationError
from sentinel.metrics import (
    EvalReport,
    accuracy,
    classification_report,
    confusion,
    evaluate_split,
)


def oracle_tally(y_true, y_pred, class_ids):
    """Brute-force recount, independent of the implementation."""
    counts = {(t, p): 0 for t in class_ids for p in class_ids}
    for t, p in zip(y_true, y_pred):
        counts[(t, p)] += 1
    return counts


def test_confusion_direct_count():
    cm = confusion([1, 0, 1, 0], [1, 0, 0, 0])
    assert cm.class_ids == [0, 1]
    assert cm.counts.tolist() == [[2, 0], [1, 1]]


def test_confusion_perfect_predictions_diagonal():
    cm = confusion([0, 1, 2, 1], [0, 1, 2, 1])
    assert np.all(cm.counts == np.diag(np.diag(cm.counts)))


def test_confusion_matches_oracle_recount(rng):
    y_true = rng.integers(0, 4, size=200)
    y_pred = rng.integers(0, 4, size=200)
    cm = confusion(y_true, y_pred)
    tally = oracle_tally(y_true.tolist(), y_pred.tolist(), cm.class_ids)
    for i, t in enumerate(cm.class_ids):
        for j, p in enumerate(cm.class_ids):
            assert cm.counts[i, j] == tally[(t, p)]


def test_confusion_includes_classes_from_either_side():
    cm = confusion([0, 0], [2, 0])
    assert cm.class_ids == [0, 2]


def test_confusion_forced_class_ids():
    cm = confusion([0, 0], [0, 0], class_ids=[0, 1])
    assert cm.counts.tolist() == [[2, 0], [0, 0]]


def test_confusion_length_mismatch():
    with pytest.raises(ValidationError):
        confusion([0, 1], [0])


def test_accuracy_diagonal_is_one():
    cm = confusion([0, 1, 1], [0, 1, 1])
    assert accuracy(cm) == 1.0


def test_classification_report_known_case():
    cm = confusion([1, 0, 1, 0], [1, 0, 0, 0])
    ev = classification_report(cm)
    by_class = {m.class_id: m for m in ev.per_class}
    assert by_class[1].precision == pytest.approx(1.0)
    assert by_class[1].recall == pytest.approx(0.5)
    assert by_class[1].f1 == pytest.approx(2.0 / 3.0)
    assert by_class[0].support == 2


def test_zero_denominator_is_zero_and_flagged():
    # Model that never predicts class 1: its precision divides by zero.
    ev = evaluate_split([0, 1, 1], [0, 0, 0])
    by_class = {m.class_id: m for m in ev.per_class}
    assert by_class[1].precision == 0.0
    assert by_class[1].f1 == 0.0
    assert "precision[class=1]" in ev.zero_division_flags
    for m in ev.per_class:
        for v in (m.precision, m.recall, m.f1):
            assert np.isfinite(v)


def test_row_sums_are_supports_and_trace_is_accuracy(rng):
    for _ in range(30):
        n = int(rng.integers(1, 120))
        k = int(rng.integers(1, 5))
        y_true = rng.integers(0, k, size=n)
        y_pred = rng.integers(0, k, size=n)
        cm = confusion(y_true, y_pred)
        ev = classification_report(cm)
        supports = {m.class_id: m.support for m in ev.per_class}
        for cid, row in zip(cm.class_ids, cm.row_sums()):
            assert supports[cid] == row
        assert ev.accuracy == pytest.approx(np.trace(cm.counts) / n)
        assert sum(supports.values()) == n


def test_weighted_recall_equals_accuracy(rng):
    # Algebraic identity checked numerically on random label sequences.
    for _ in range(30):
        n = int(rng.integers(2, 150))
        k = int(rng.integers(2, 5))
        y_true = rng.integers(0, k, size=n)
        y_pred = rng.integers(0, k, size=n)
        ev = evaluate_split(y_true, y_pred)
        assert ev.weighted.recall == pytest.approx(ev.accuracy, abs=1e-12)


def test_positive_recall_invariant_under_negative_relabel():
    y_true = [1, 1, 0, 0, 1]
    y_pred = [1, 0, 0, 1, 1]
    before = {m.class_id: m for m in evaluate_split(y_true, y_pred).per_class}
    # Relabel negatives 0 -> 2 on both sides.
    y_true2 = [1 if v == 1 else 2 for v in y_true]
    y_pred2 = [1 if v == 1 else 2 for v in y_pred]
    after = {m.class_id: m for m in evaluate_split(y_true2, y_pred2).per_class}
    assert before[1].recall == after[1].recall


def test_eval_report_serialization(rng):
    train = evaluate_split([0, 1, 1, 0], [0, 1, 0, 0], class_ids=[0, 1])
    test = evaluate_split([0, 1], [0, 1], class_ids=[0, 1])
    report = EvalReport(train=train, test=test)
    assert report.train_accuracy == pytest.approx(0.75)
    assert report.test_accuracy == 1.0

    csv_text = report.to_csv()
    lines = csv_text.strip().splitlines()
    assert lines[0] == "split,label,precision,recall,f1,support,accuracy"
    assert any(line.startswith("train,overall") for line in lines)
    assert any(line.startswith("test,overall") for line in lines)

    text = report.to_text()
    assert "accuracy 0.7500" in text
    assert "weighted" in text


def test_confusion_csv():
    cm = confusion([0, 1], [1, 1])
    text = cm.to_csv()
    assert text.splitlines()[0] == "true\\pred,0,1"
