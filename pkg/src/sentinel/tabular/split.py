"""Deterministic train/test splitting."""

from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError


@dataclass(frozen=True)
class SplitSpec:
    """Seeded split request.

    ``train_fraction`` may be any ratio in (0, 1); the two reproduction
    pipelines use 0.75 and 0.5. When ``stratify_on`` names a column,
    per-value proportions are preserved within one row.
    """

    train_fraction: float
    seed: int = 42
    stratify_on: str | None = None


def split(table, spec):
    """Partition rows into (train, test) tables.

    The train table receives ``floor(rows * train_fraction)`` rows. The
    result is a permutation of the input: no row is lost or duplicated,
    and the same seed always yields the same partition.
    """
    if not 0.0 < spec.train_fraction < 1.0:
        raise ValidationError("train_fraction must be strictly between 0 and 1")
    n = table.n_rows
    if n < 2:
        raise ValidationError("need at least 2 rows to split")
    rng = np.random.default_rng(spec.seed)
    n_train = int(np.floor(n * spec.train_fraction))

    if spec.stratify_on is None:
        perm = rng.permutation(n)
        train_idx, test_idx = perm[:n_train], perm[n_train:]
    else:
        train_idx, test_idx = _stratified_indices(table, spec, rng, n_train)

    return (
        table.take_rows(train_idx, name=f"{table.name}/train"),
        table.take_rows(test_idx, name=f"{table.name}/test"),
    )


def _stratified_indices(table, spec, rng, n_train):
    j = table.column_index(spec.stratify_on)
    # Missing cells form their own stratum.
    keys = np.where(table.missing[:, j], np.nan, table.values[:, j])

    strata = {}
    for i, key in enumerate(keys):
        strata.setdefault(repr(key), []).append(i)
    ordered = sorted(strata.items())

    frac = spec.train_fraction
    quotas = [(name, idx, frac * len(idx)) for name, idx in ordered]
    base = {name: int(np.floor(q)) for name, _, q in quotas}
    leftover = n_train - sum(base.values())
    # Hand out the remaining slots by largest fractional part, ties by key.
    by_frac = sorted(quotas, key=lambda t: (-(t[2] - np.floor(t[2])), t[0]))
    for name, idx, q in by_frac:
        if leftover <= 0:
            break
        if base[name] < len(idx):
            base[name] += 1
            leftover -= 1

    train_parts, test_parts = [], []
    for name, idx, _ in quotas:
        idx = np.asarray(idx)
        order = rng.permutation(idx.size)
        take = base[name]
        train_parts.append(idx[order[:take]])
        test_parts.append(idx[order[take:]])
    train_idx = np.concatenate(train_parts)
    test_idx = np.concatenate(test_parts)
    # Avoid emitting rows grouped by stratum.
    return rng.permutation(train_idx), rng.permutation(test_idx)
