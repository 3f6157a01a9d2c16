"""Tabular ingestion, cleaning, scaling, and splitting."""

from .table import (
    DEFAULT_MISSING_MARKERS,
    KIND_BINARY,
    KIND_LABEL,
    KIND_NUMERIC,
    ColumnMeta,
    LabeledMatrix,
    Table,
    load_csv,
)
from .cleaning import (
    REASON_EXCLUDED,
    REASON_SPARSE,
    REASON_ZERO_VARIANCE,
    CleaningReport,
    clean,
    dedupe,
    drop_excluded_columns,
    drop_rows_with_missing,
    drop_sparse_columns,
    drop_zero_variance,
    expand_rows_by_count,
)
from .scaler import StandardizationParams, standardize
from .split import SplitSpec, split
from .stats import (
    ColumnSummary,
    class_balance,
    correlation_matrix,
    describe,
    describe_to_csv,
    describe_to_log_lines,
)

__all__ = [
    "DEFAULT_MISSING_MARKERS",
    "KIND_BINARY",
    "KIND_LABEL",
    "KIND_NUMERIC",
    "ColumnMeta",
    "ColumnSummary",
    "CleaningReport",
    "LabeledMatrix",
    "REASON_EXCLUDED",
    "REASON_SPARSE",
    "REASON_ZERO_VARIANCE",
    "SplitSpec",
    "StandardizationParams",
    "Table",
    "class_balance",
    "clean",
    "correlation_matrix",
    "dedupe",
    "describe",
    "describe_to_csv",
    "describe_to_log_lines",
    "drop_excluded_columns",
    "drop_rows_with_missing",
    "drop_sparse_columns",
    "drop_zero_variance",
    "expand_rows_by_count",
    "load_csv",
    "split",
    "standardize",
]
