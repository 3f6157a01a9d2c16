"""Care facility store with nearest-k ranking."""

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import CsvParseError, DuplicateIdError, ValidationError
from .points import EARTH_RADIUS_KM, GeoPoint, haversine_km

FACILITY_KINDS = ("hospital", "cancer_centre", "screening_camp")


@dataclass(frozen=True)
class Facility:
    id: str
    name: str
    kind: str
    location: GeoPoint
    district: str

    def __post_init__(self):
        if not self.id:
            raise ValidationError("facility id must be non-empty")
        if not self.name:
            raise ValidationError("facility name must be non-empty")
        if self.kind not in FACILITY_KINDS:
            raise ValidationError(f"unknown facility kind {self.kind!r}")


class FacilityStore:
    """Immutable collection of facilities, queryable by distance."""

    def __init__(self, facilities):
        self.facilities = list(facilities)
        by_id = {}
        for f in self.facilities:
            if f.id in by_id:
                raise DuplicateIdError(f"duplicate facility id {f.id!r}")
            by_id[f.id] = f
        self._by_id = by_id
        self._lats = np.array([f.location.lat for f in self.facilities])
        self._lons = np.array([f.location.lon for f in self.facilities])

    def __len__(self):
        return len(self.facilities)

    def get(self, facility_id):
        return self._by_id.get(facility_id)

    def nearest(self, origin, k, kind=None):
        """At most k (facility, distance_km) pairs, nearest first.

        Ascending by distance with ties broken by facility id. An empty
        store yields an empty list.
        """
        if k < 1:
            raise ValidationError("k must be at least 1")
        if kind is not None and kind not in FACILITY_KINDS:
            raise ValidationError(f"unknown facility kind {kind!r}")
        candidates = [
            f for f in self.facilities if kind is None or f.kind == kind
        ]
        if not candidates:
            return []
        scored = [(haversine_km(origin, f.location), f.id, f) for f in candidates]
        scored.sort(key=lambda t: (t[0], t[1]))
        return [(f, d) for d, _, f in scored[:k]]


def load_facilities(source):
    """Parse and validate a facility CSV (id,name,kind,lat,lon,district)."""
    text, src = _read_text(source)
    reader = csv.DictReader(io.StringIO(text))
    required = {"id", "name", "kind", "lat", "lon", "district"}
    header = set(reader.fieldnames or [])
    if not required <= header:
        raise CsvParseError(f"{src}: facility CSV needs columns {sorted(required)}")
    facilities = []
    for i, row in enumerate(reader, start=2):
        try:
            point = GeoPoint(float(row["lat"]), float(row["lon"]))
        except (TypeError, ValueError):
            raise CsvParseError(f"{src}: row {i}: bad coordinates", row=i) from None
        except ValidationError as exc:
            raise CsvParseError(f"{src}: row {i}: {exc}", row=i) from None
        try:
            facilities.append(Facility(
                id=row["id"].strip(),
                name=row["name"].strip(),
                kind=row["kind"].strip(),
                location=point,
                district=row["district"].strip(),
            ))
        except ValidationError as exc:
            raise CsvParseError(f"{src}: row {i}: {exc}", row=i) from None
    return FacilityStore(facilities)


def _read_text(source):
    if isinstance(source, (str, Path)):
        return Path(source).read_text(encoding="utf-8-sig"), str(source)
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8-sig")
    return data, getattr(source, "name", "<stream>")
