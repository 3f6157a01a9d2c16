"""Column-oriented numeric table with an explicit missingness mask.

A cell is either a finite float or absent; NaN and infinities are never
stored. Tables are immutable: every operation returns a new table.
"""

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import CellValueError, CsvParseError, ValidationError

DEFAULT_MISSING_MARKERS = frozenset({"?", "", "NA"})

KIND_NUMERIC = "numeric"
KIND_BINARY = "binary"
KIND_LABEL = "label"


@dataclass(frozen=True)
class ColumnMeta:
    name: str
    kind: str
    missing_count: int


@dataclass(frozen=True)
class LabeledMatrix:
    """Dense feature matrix plus contiguous integer class labels."""

    features: np.ndarray
    labels: np.ndarray
    feature_names: tuple


class Table:
    """n x m numeric grid where absence is tracked by a boolean mask.

    Parameters
    ----------
    name : str
        Identifier used in reports and provenance notes.
    column_names : sequence of str
        Unique header names, one per column.
    values : (n, m) float array
        Cell values; entries under the mask are ignored (stored as 0).
    missing : (n, m) bool array
        True where the cell is absent.
    label : str, optional
        Name of the single label column for the current modeling task.
    provenance : str
        Free-text note on where the data came from.
    """

    def __init__(self, name, column_names, values, missing=None, label=None, provenance=""):
        column_names = [str(c) for c in column_names]
        if len(set(column_names)) != len(column_names):
            dupes = sorted({c for c in column_names if column_names.count(c) > 1})
            raise ValidationError(f"duplicate column names: {dupes}")
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 2:
            values = values.reshape(-1, len(column_names))
        if values.shape[1] != len(column_names):
            raise ValidationError(
                f"values have {values.shape[1]} columns, expected {len(column_names)}"
            )
        if missing is None:
            missing = np.zeros(values.shape, dtype=bool)
        missing = np.asarray(missing, dtype=bool)
        if missing.shape != values.shape:
            raise ValidationError("missing mask shape differs from values shape")
        present = values[~missing]
        if present.size and not np.all(np.isfinite(present)):
            raise ValidationError("present cells must be finite (absence is the only missing state)")
        if label is not None and label not in column_names:
            raise ValidationError(f"label column {label!r} not in table")

        # Zero out masked cells so identical rows compare equal bytewise.
        values = np.where(missing, 0.0, values)
        values.setflags(write=False)
        missing.setflags(write=False)

        self.name = name
        self.column_names = tuple(column_names)
        self.values = values
        self.missing = missing
        self.label = label
        self.provenance = provenance

    # -- basic shape ---------------------------------------------------

    @property
    def n_rows(self):
        return self.values.shape[0]

    @property
    def n_cols(self):
        return self.values.shape[1]

    def column_index(self, name):
        try:
            return self.column_names.index(name)
        except ValueError:
            raise ValidationError(f"no column named {name!r} in table {self.name!r}") from None

    @property
    def columns(self):
        """Per-column metadata with inferred kinds and missing counts."""
        metas = []
        miss_counts = self.missing.sum(axis=0)
        for j, name in enumerate(self.column_names):
            present = self.values[~self.missing[:, j], j]
            if name == self.label:
                kind = KIND_LABEL
            elif present.size and np.all((present == 0.0) | (present == 1.0)):
                kind = KIND_BINARY
            else:
                kind = KIND_NUMERIC
            metas.append(ColumnMeta(name=name, kind=kind, missing_count=int(miss_counts[j])))
        return metas

    def column_present(self, name):
        """Present (non-missing) cell values of one column."""
        j = self.column_index(name)
        return self.values[~self.missing[:, j], j]

    # -- derivation helpers (used by the cleaning ops) ------------------

    def with_label(self, label):
        return Table(self.name, self.column_names, self.values, self.missing,
                     label=label, provenance=self.provenance)

    def take_rows(self, indices, name=None):
        indices = np.asarray(indices, dtype=np.int64)
        return Table(name or self.name, self.column_names,
                     self.values[indices], self.missing[indices],
                     label=self.label, provenance=self.provenance)

    def drop_columns(self, names, name=None):
        drop = set(names)
        unknown = drop - set(self.column_names)
        if unknown:
            raise ValidationError(f"cannot drop unknown columns: {sorted(unknown)}")
        keep = [j for j, c in enumerate(self.column_names) if c not in drop]
        label = self.label if self.label not in drop else None
        return Table(name or self.name, [self.column_names[j] for j in keep],
                     self.values[:, keep], self.missing[:, keep],
                     label=label, provenance=self.provenance)

    def replace_values(self, values, name=None):
        return Table(name or self.name, self.column_names, values, self.missing,
                     label=self.label, provenance=self.provenance)

    def to_labeled_matrix(self, label=None):
        """Split into features/labels; requires a fully observed table."""
        label = label or self.label
        if label is None:
            raise ValidationError("no label column set on table and none supplied")
        if self.missing.any():
            raise ValidationError("table still has missing cells; clean before modeling")
        j = self.column_index(label)
        y = self.values[:, j]
        if not np.all((y == np.floor(y)) & (y >= 0)):
            raise ValidationError(f"label column {label!r} must hold non-negative integers")
        keep = [k for k in range(self.n_cols) if k != j]
        return LabeledMatrix(
            features=self.values[:, keep].copy(),
            labels=y.astype(np.int64),
            feature_names=tuple(self.column_names[k] for k in keep),
        )

    def __repr__(self):
        return f"Table({self.name!r}, {self.n_rows} rows x {self.n_cols} cols)"


def load_csv(source, missing_markers=DEFAULT_MISSING_MARKERS, name=None, provenance=None):
    """Parse an RFC-4180 CSV with a header row into a :class:`Table`.

    Cells whose stripped text matches one of ``missing_markers`` become
    absent; every other cell must parse as a finite number.

    Raises
    ------
    CsvParseError
        Ragged rows, duplicate or empty headers.
    CellValueError
        A cell that is neither a marker nor a finite number, with its
        1-based row and the column name.
    """
    text, src_name = _read_text(source)
    markers = {m.strip() for m in missing_markers}
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise CsvParseError("empty input: expected a header row") from None
    header = [h.strip() for h in header]
    if any(not h for h in header):
        raise CsvParseError("blank column name in header", row=1)
    if len(set(header)) != len(header):
        dupes = sorted({h for h in header if header.count(h) > 1})
        raise CsvParseError(f"duplicate column names in header: {dupes}", row=1)

    m = len(header)
    rows, mask_rows = [], []
    for i, record in enumerate(reader, start=2):
        if len(record) != m:
            raise CsvParseError(
                f"row {i} has {len(record)} cells, expected {m}", row=i
            )
        vals = np.zeros(m, dtype=np.float64)
        miss = np.zeros(m, dtype=bool)
        for j, cell in enumerate(record):
            cell = cell.strip()
            if cell in markers:
                miss[j] = True
                continue
            try:
                v = float(cell)
            except ValueError:
                raise CellValueError(
                    f"row {i}, column {header[j]!r}: cannot parse {cell!r} as a number",
                    row=i, column=header[j],
                ) from None
            if not math.isfinite(v):
                raise CellValueError(
                    f"row {i}, column {header[j]!r}: non-finite value {cell!r}",
                    row=i, column=header[j],
                )
            vals[j] = v
        rows.append(vals)
        mask_rows.append(miss)

    values = np.vstack(rows) if rows else np.zeros((0, m))
    missing = np.vstack(mask_rows) if mask_rows else np.zeros((0, m), dtype=bool)
    return Table(name or src_name, header, values, missing,
                 provenance=provenance or f"loaded from {src_name}")


def _read_text(source):
    if isinstance(source, (str, Path)):
        data = Path(source).read_bytes()
        return data.decode("utf-8-sig"), Path(source).name
    if isinstance(source, bytes):
        return source.decode("utf-8-sig"), "<bytes>"
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8-sig")
    return data, getattr(source, "name", "<stream>")
