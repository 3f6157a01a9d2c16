"""Unit-variance scaling with reusable per-column parameters."""

from dataclasses import dataclass, field

import numpy as np

from ..errors import ValidationError


@dataclass(frozen=True)
class StandardizationParams:
    """Fitted (mean, std) per scaled column, reusable on unseen records.

    Standard deviation is population-style (divide by n). Constant
    columns are never scaled; they are listed in ``skipped``.
    """

    columns: tuple
    means: tuple
    stds: tuple
    skipped: tuple = field(default_factory=tuple)
    fitted_on: str = ""

    def __post_init__(self):
        if len(self.columns) != len(self.means) or len(self.columns) != len(self.stds):
            raise ValidationError("columns, means, and stds must align")
        if any(s <= 0 for s in self.stds):
            raise ValidationError("stds of scaled columns must be positive")

    def transform_record(self, record):
        """Scale a {column: value} mapping; unscaled keys pass through."""
        missing = [c for c in self.columns if c not in record]
        if missing:
            raise ValidationError(
                f"record lacks scaled columns: {missing}", fields=missing
            )
        out = dict(record)
        for c, mu, sd in zip(self.columns, self.means, self.stds):
            out[c] = (record[c] - mu) / sd
        return out

    def inverse_record(self, record):
        out = dict(record)
        for c, mu, sd in zip(self.columns, self.means, self.stds):
            out[c] = record[c] * sd + mu
        return out

    def transform_vector(self, x, feature_names):
        """Scale a feature vector laid out as ``feature_names``."""
        x = np.asarray(x, dtype=np.float64)
        if x.shape[-1] != len(feature_names):
            raise ValidationError("vector length differs from feature_names")
        index = {c: i for i, c in enumerate(feature_names)}
        missing = [c for c in self.columns if c not in index]
        if missing:
            raise ValidationError(f"vector lacks scaled columns: {missing}", fields=missing)
        out = x.astype(np.float64).copy()
        for c, mu, sd in zip(self.columns, self.means, self.stds):
            out[..., index[c]] = (x[..., index[c]] - mu) / sd
        return out

    def to_dict(self):
        return {
            "columns": list(self.columns),
            "means": [float(v) for v in self.means],
            "stds": [float(v) for v in self.stds],
            "skipped": list(self.skipped),
            "fitted_on": self.fitted_on,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            columns=tuple(d["columns"]),
            means=tuple(float(v) for v in d["means"]),
            stds=tuple(float(v) for v in d["stds"]),
            skipped=tuple(d.get("skipped", ())),
            fitted_on=d.get("fitted_on", ""),
        )


def standardize(table, exclude=()):
    """Scale every scalable column to mean 0 and unit population variance.

    The label column and any ``exclude`` names are left untouched.
    Constant columns are skipped (never divided by zero) and recorded in
    the returned params.
    """
    exclude = set(exclude)
    if table.label:
        exclude.add(table.label)

    cols, means, stds, skipped = [], [], [], []
    values = np.array(table.values)
    for j, name in enumerate(table.column_names):
        if name in exclude:
            continue
        if table.missing[:, j].any():
            raise ValidationError(f"column {name!r} has missing cells; clean before scaling")
        col = values[:, j]
        mu = float(col.mean())
        sd = float(col.std())
        if sd == 0.0:
            skipped.append(name)
            continue
        values[:, j] = (col - mu) / sd
        cols.append(name)
        means.append(mu)
        stds.append(sd)

    params = StandardizationParams(
        columns=tuple(cols), means=tuple(means), stds=tuple(stds),
        skipped=tuple(skipped), fitted_on=table.name,
    )
    return table.replace_values(values), params
