import numpy as np
import pytest

from sentinel.errors import ValidationError
from sentinel.tabular import (
    clean,
    dedupe,
    drop_rows_with_missing,
    drop_sparse_columns,
    drop_zero_variance,
    expand_rows_by_count,
)

from conftest import make_table


def test_dedupe_distinct_rows_is_identity():
    t = make_table(["a", "b"], [[1, 2], [3, 4], [5, 6]])
    out, removed = dedupe(t)
    assert removed == 0
    assert out.values.tolist() == t.values.tolist()


def test_dedupe_five_copies_keep_one():
    t = make_table(["a"], [[7]] * 5)
    out, removed = dedupe(t)
    assert out.n_rows == 1
    assert removed == 4


def test_dedupe_keeps_first_occurrence_order():
    t = make_table(["a"], [[3], [1], [3], [2], [1]])
    out, removed = dedupe(t)
    assert removed == 2
    assert out.values[:, 0].tolist() == [3, 1, 2]


def test_dedupe_missing_compares_equal_to_missing():
    t = make_table(["a", "b"], [[None, 2], [None, 2], [0, 2]])
    out, removed = dedupe(t)
    # Row [0, 2] stores the same bytes as the masked row; the mask must
    # keep them distinct while the two masked rows collapse.
    assert removed == 1
    assert out.n_rows == 2


def test_dedupe_idempotent(rng):
    values = rng.integers(0, 3, size=(60, 4)).astype(float)
    t = make_table(["a", "b", "c", "d"], values.tolist())
    once, r1 = dedupe(t)
    twice, r2 = dedupe(once)
    assert r2 == 0
    assert once.values.tolist() == twice.values.tolist()


def test_drop_sparse_thresholds():
    t = make_table(["ok", "holey"], [[1, None], [2, None], [3, 5]])
    out, report = drop_sparse_columns(t, 0.5)
    assert out.column_names == ("ok",)
    assert report.columns_dropped == [("holey", "sparse")]

    out, report = drop_sparse_columns(t, 1.0)
    assert out.column_names == ("ok", "holey")
    assert report.columns_dropped == []

    out, report = drop_sparse_columns(t, 0.0)
    assert out.column_names == ("ok",)


def test_drop_sparse_rejects_bad_threshold():
    t = make_table(["a"], [[1]])
    with pytest.raises(ValidationError):
        drop_sparse_columns(t, 1.5)


def test_drop_zero_variance():
    t = make_table(["const", "varies"], [[0, 1], [0, 2], [0, 3]])
    out, report = drop_zero_variance(t)
    assert out.column_names == ("varies",)
    assert report.columns_dropped == [("const", "zero_variance")]


def test_drop_zero_variance_nonconstant_identity():
    t = make_table(["a", "b"], [[1, 0], [2, 1]])
    out, report = drop_zero_variance(t)
    assert out.column_names == ("a", "b")
    assert report.columns_dropped == []


def test_drop_zero_variance_single_row_drops_everything():
    t = make_table(["a", "b"], [[1, 2]])
    out, _ = drop_zero_variance(t)
    assert out.n_cols == 0


def test_drop_rows_with_missing():
    t = make_table(["a", "b"], [[1, 2], [None, 3], [4, None], [5, 6]])
    out, report = drop_rows_with_missing(t)
    assert out.n_rows == 2
    assert not out.missing.any()
    assert report.missing_rows_removed == 2


def test_drop_rows_with_missing_identity():
    t = make_table(["a"], [[1], [2]])
    out, report = drop_rows_with_missing(t)
    assert out.n_rows == 2
    assert report.missing_rows_removed == 0


def test_clean_pipeline_report_arithmetic(rng):
    # Random table with duplicates, missing cells, a constant column and a
    # sparse column; the merged report must balance exactly.
    rows = []
    for _ in range(80):
        row = [
            float(rng.integers(0, 3)),
            float(rng.integers(0, 2)),
            0.0,  # constant
            None if rng.random() < 0.8 else 1.0,  # sparse
            None if rng.random() < 0.1 else float(rng.integers(0, 4)),
        ]
        rows.append(row)
    rows += rows[:7]  # guaranteed duplicates
    t = make_table(["a", "b", "const", "sparse", "holey"], rows)

    out, report = clean(t, max_missing_fraction=0.5)
    assert report.rows_in == t.n_rows
    assert report.rows_out == out.n_rows
    assert report.rows_out == report.rows_in - report.duplicates_removed - report.missing_rows_removed
    assert not out.missing.any()
    dropped_names = {name for name, _ in report.columns_dropped}
    assert "sparse" in dropped_names and "const" in dropped_names
    for name, _ in report.columns_dropped:
        assert name not in out.column_names


def test_clean_excluded_columns():
    t = make_table(["keep", "flag"], [[1, 0], [2, 1]])
    out, report = clean(t, exclude_columns=("flag", "not_there"))
    assert ("flag", "excluded_by_config") in report.columns_dropped
    assert "flag" not in out.column_names
    assert all(name != "not_there" for name, _ in report.columns_dropped)


def test_expand_rows_by_count():
    t = make_table(["x", "count"], [[5, 3], [7, 1]])
    out = expand_rows_by_count(t, "count")
    assert out.column_names == ("x",)
    assert out.values[:, 0].tolist() == [5, 5, 5, 7]


def test_expand_rows_by_count_rejects_bad_counts():
    with pytest.raises(ValidationError):
        expand_rows_by_count(make_table(["x", "count"], [[5, 0]]), "count")
    with pytest.raises(ValidationError):
        expand_rows_by_count(make_table(["x", "count"], [[5, 1.5]]), "count")
    with pytest.raises(ValidationError):
        expand_rows_by_count(make_table(["x", "count"], [[5, None]]), "count")


def test_cleaning_report_serialization():
    t = make_table(["a", "sparse"], [[1, None], [1, None], [2, 3]])
    out, report = clean(t, max_missing_fraction=0.5)
    csv_text = report.to_csv()
    assert csv_text.splitlines()[0] == "metric,name,value"
    assert f"rows_out,,{out.n_rows}" in csv_text
    log = report.to_log_lines()
    assert any("duplicate" in line for line in log)
