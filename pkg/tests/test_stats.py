import numpy as np
import pytest

from sentinel.errors import ValidationError
from sentinel.tabular import class_balance, correlation_matrix, describe, describe_to_csv

from conftest import make_table


def test_describe_present_cells_only():
    t = make_table(["age"], [[10], [None], [20], [30]])
    s = describe(t)[0]
    assert s.count == 3
    assert s.mean == pytest.approx(20.0)
    assert s.min == 10 and s.max == 30
    # population std of [10, 20, 30]
    assert s.std == pytest.approx(np.sqrt(200.0 / 3.0))


def test_describe_empty_column():
    t = make_table(["v"], [[None], [None]])
    s = describe(t)[0]
    assert s.count == 0
    assert s.mean is None and s.std is None


def test_describe_csv_roundtrip_shape():
    t = make_table(["a", "b"], [[1, 2], [3, 4]])
    text = describe_to_csv(describe(t))
    lines = text.strip().splitlines()
    assert lines[0] == "column,count,mean,std,min,max"
    assert len(lines) == 3


def test_class_balance():
    t = make_table(["y"], [[0], [0], [0], [1]])
    assert class_balance(t, "y") == pytest.approx(0.25)


def test_class_balance_all_positive():
    t = make_table(["y"], [[1], [1]])
    assert class_balance(t, "y") == 1.0


def test_class_balance_rejects_non_binary():
    t = make_table(["y"], [[0], [2]])
    with pytest.raises(ValidationError):
        class_balance(t, "y")


def test_class_balance_rejects_missing():
    t = make_table(["y"], [[0], [None]])
    with pytest.raises(ValidationError):
        class_balance(t, "y")


def test_correlation_diagonal_is_one(rng):
    t = make_table(["a", "b", "c"], rng.normal(size=(30, 3)).tolist())
    corr = correlation_matrix(t)
    assert np.allclose(np.diag(corr), 1.0)


def test_correlation_exact_linear_relations():
    t = make_table(["x", "double", "neg"], [[1, 2, 3], [2, 4, 2], [3, 6, 1]])
    corr = correlation_matrix(t)
    assert corr[0, 1] == pytest.approx(1.0)
    assert corr[0, 2] == pytest.approx(-1.0)


def test_correlation_constant_column_convention():
    t = make_table(["const", "x"], [[5, 1], [5, 2], [5, 3]])
    corr = correlation_matrix(t)
    assert corr[0, 0] == 1.0
    assert corr[0, 1] == 0.0 and corr[1, 0] == 0.0


def test_correlation_symmetric_and_bounded(rng):
    t = make_table(list("abcd"), rng.normal(size=(50, 4)).tolist())
    corr = correlation_matrix(t)
    assert np.allclose(corr, corr.T)
    assert np.all(corr <= 1.0) and np.all(corr >= -1.0)
