"""Row and column cleaning operations.

The normative order for the full pipeline is fixed because it changes
the resulting counts: drop configured and sparse columns, then
deduplicate rows, then drop rows with missing cells, then drop
zero-variance columns.
"""

import io
from dataclasses import dataclass, field

import numpy as np

from ..errors import InvariantViolation, ValidationError

REASON_SPARSE = "sparse"
REASON_ZERO_VARIANCE = "zero_variance"
REASON_EXCLUDED = "excluded_by_config"


@dataclass
class CleaningReport:
    """Arithmetic audit trail of a cleaning run."""

    rows_in: int
    rows_out: int
    duplicates_removed: int = 0
    missing_rows_removed: int = 0
    columns_dropped: list = field(default_factory=list)  # (name, reason)

    def check(self):
        if self.rows_out != self.rows_in - self.duplicates_removed - self.missing_rows_removed:
            raise InvariantViolation(
                f"cleaning arithmetic broken: {self.rows_in} - {self.duplicates_removed} "
                f"- {self.missing_rows_removed} != {self.rows_out}"
            )
        return self

    def merge(self, other):
        merged = CleaningReport(
            rows_in=self.rows_in,
            rows_out=other.rows_out,
            duplicates_removed=self.duplicates_removed + other.duplicates_removed,
            missing_rows_removed=self.missing_rows_removed + other.missing_rows_removed,
            columns_dropped=self.columns_dropped + other.columns_dropped,
        )
        return merged.check()

    def to_csv(self):
        out = io.StringIO()
        out.write("metric,name,value\n")
        out.write(f"rows_in,,{self.rows_in}\n")
        out.write(f"rows_out,,{self.rows_out}\n")
        out.write(f"duplicates_removed,,{self.duplicates_removed}\n")
        out.write(f"missing_rows_removed,,{self.missing_rows_removed}\n")
        for name, reason in self.columns_dropped:
            quoted = '"' + name.replace('"', '""') + '"'
            out.write(f"column_dropped,{quoted},{reason}\n")
        return out.getvalue()

    def to_log_lines(self):
        lines = [f"rows in: {self.rows_in}"]
        for name, reason in self.columns_dropped:
            lines.append(f"dropped column {name!r} ({reason})")
        lines.append(f"removed {self.duplicates_removed} duplicate rows")
        lines.append(f"removed {self.missing_rows_removed} rows with missing cells")
        lines.append(f"rows out: {self.rows_out}")
        return lines


def dedupe(table):
    """Keep the first occurrence of each identical full row.

    Missing cells compare equal to missing. Returns the deduplicated
    table and the number of rows removed.
    """
    n = table.n_rows
    if n == 0:
        return table, 0
    # Masked values are stored as 0, so stacking values next to the mask
    # makes bytewise-equal rows exactly the duplicate rows.
    combined = np.hstack([table.values, table.missing.astype(np.float64)])
    _, first_idx = np.unique(combined, axis=0, return_index=True)
    keep = np.sort(first_idx)
    return table.take_rows(keep), n - keep.size


def drop_sparse_columns(table, max_missing_fraction):
    """Drop columns whose missing fraction strictly exceeds the threshold."""
    if not 0.0 <= max_missing_fraction <= 1.0:
        raise ValidationError("max_missing_fraction must be within [0, 1]")
    dropped = []
    if table.n_rows > 0:
        frac = table.missing.sum(axis=0) / table.n_rows
        dropped = [table.column_names[j] for j in np.nonzero(frac > max_missing_fraction)[0]]
    out = table.drop_columns(dropped) if dropped else table
    report = CleaningReport(
        rows_in=table.n_rows, rows_out=out.n_rows,
        columns_dropped=[(c, REASON_SPARSE) for c in dropped],
    )
    return out, report.check()


def drop_zero_variance(table):
    """Drop columns whose present cells are all equal (or all absent)."""
    dropped = []
    for j, name in enumerate(table.column_names):
        present = table.values[~table.missing[:, j], j]
        if np.unique(present).size <= 1:
            dropped.append(name)
    out = table.drop_columns(dropped) if dropped else table
    report = CleaningReport(
        rows_in=table.n_rows, rows_out=out.n_rows,
        columns_dropped=[(c, REASON_ZERO_VARIANCE) for c in dropped],
    )
    return out, report.check()


def drop_excluded_columns(table, columns):
    """Drop explicitly configured columns (e.g. a pre-made split flag)."""
    columns = [c for c in columns if c in table.column_names]
    out = table.drop_columns(columns) if columns else table
    report = CleaningReport(
        rows_in=table.n_rows, rows_out=out.n_rows,
        columns_dropped=[(c, REASON_EXCLUDED) for c in columns],
    )
    return out, report.check()


def drop_rows_with_missing(table):
    """Remove every row that has at least one absent cell."""
    keep = np.nonzero(~table.missing.any(axis=1))[0]
    removed = table.n_rows - keep.size
    out = table.take_rows(keep) if removed else table
    report = CleaningReport(
        rows_in=table.n_rows, rows_out=out.n_rows, missing_rows_removed=removed
    )
    return out, report.check()


def expand_rows_by_count(table, column):
    """Replicate each row by its integer count and drop the count column.

    Turns an aggregated table (one row per covariate combination) into
    one row per observation. Not part of the normative reproduction
    pipeline, which treats the count as an ordinary feature.
    """
    j = table.column_index(column)
    if table.missing[:, j].any():
        raise ValidationError(f"count column {column!r} has missing cells")
    counts = table.values[:, j]
    if not np.all((counts == np.floor(counts)) & (counts >= 1)):
        raise ValidationError(f"count column {column!r} must hold integers >= 1")
    indices = np.repeat(np.arange(table.n_rows), counts.astype(np.int64))
    return table.take_rows(indices).drop_columns([column])


def clean(table, max_missing_fraction=0.5, exclude_columns=()):
    """Run the full normative cleaning pipeline.

    Order: drop configured columns -> drop sparse columns -> dedupe ->
    drop rows with missing cells -> drop zero-variance columns.
    """
    out, report = drop_excluded_columns(table, exclude_columns)
    out, r = drop_sparse_columns(out, max_missing_fraction)
    report = report.merge(r)
    out, removed = dedupe(out)
    report = report.merge(CleaningReport(
        rows_in=report.rows_out, rows_out=out.n_rows, duplicates_removed=removed
    ).check())
    out, r = drop_rows_with_missing(out)
    report = report.merge(r)
    out, r = drop_zero_variance(out)
    report = report.merge(r)
    for name, _ in report.columns_dropped:
        if name in out.column_names:
            raise InvariantViolation(f"dropped column {name!r} still present")
    return out, report
