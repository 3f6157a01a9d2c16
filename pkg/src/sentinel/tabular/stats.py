"""Summary statistics, class balance, and correlation."""

import io
from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError


@dataclass(frozen=True)
class ColumnSummary:
    name: str
    count: int
    mean: float | None
    std: float | None
    min: float | None
    max: float | None


def describe(table):
    """Per-column count/mean/std/min/max over present cells only.

    Standard deviation uses the population convention (divide by n) to
    match the scaling step.
    """
    summaries = []
    for name in table.column_names:
        present = table.column_present(name)
        if present.size == 0:
            summaries.append(ColumnSummary(name, 0, None, None, None, None))
            continue
        summaries.append(ColumnSummary(
            name=name,
            count=int(present.size),
            mean=float(present.mean()),
            std=float(present.std()),
            min=float(present.min()),
            max=float(present.max()),
        ))
    return summaries


def describe_to_csv(summaries):
    out = io.StringIO()
    out.write("column,count,mean,std,min,max\n")
    for s in summaries:
        quoted = '"' + s.name.replace('"', '""') + '"'
        cells = [quoted, str(s.count)] + [
            "" if v is None else repr(v) for v in (s.mean, s.std, s.min, s.max)
        ]
        out.write(",".join(cells) + "\n")
    return out.getvalue()


def describe_to_log_lines(summaries):
    lines = []
    for s in summaries:
        if s.count == 0:
            lines.append(f"{s.name}: no present cells")
        else:
            lines.append(
                f"{s.name}: count={s.count} mean={s.mean:.4f} std={s.std:.4f} "
                f"min={s.min:g} max={s.max:g}"
            )
    return lines


def class_balance(table, label):
    """Mean of a binary label column; equals positive-class prevalence."""
    j = table.column_index(label)
    if table.missing[:, j].any():
        raise ValidationError(f"label column {label!r} has missing cells")
    col = table.values[:, j]
    if col.size == 0:
        raise ValidationError("empty table has no class balance")
    if not np.all((col == 0.0) | (col == 1.0)):
        raise ValidationError(f"label column {label!r} is not binary")
    return float(col.mean())


def correlation_matrix(table):
    """Pearson correlation between all column pairs.

    Requires a fully observed table. Constant columns get correlation 0
    with everything else (and 1 with themselves) so downstream feature
    screens are not poisoned by undefined values.
    """
    if table.missing.any():
        raise ValidationError("correlation requires a table with no missing cells")
    X = table.values
    n, m = X.shape
    centered = X - X.mean(axis=0)
    std = X.std(axis=0)
    cov = centered.T @ centered / n
    denom = np.outer(std, std)
    with np.errstate(divide="ignore", invalid="ignore"):
        corr = np.where(denom > 0, cov / np.where(denom > 0, denom, 1.0), 0.0)
    np.fill_diagonal(corr, 1.0)
    return np.clip(corr, -1.0, 1.0)
