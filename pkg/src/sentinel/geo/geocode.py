"""Forward geocoding: a generic HTTP client plus an offline gazetteer.

The remote contract is deliberately minimal so any forward-geocoding
provider can be adapted: one GET request with ``query`` and ``key``
parameters returning ``{"results": [{"name", "lat", "lon",
"confidence"}, ...]}`` with the best candidate first. The API key comes
from an environment variable, never from code or config values.
"""

import csv
import io
import os
from dataclasses import dataclass
from pathlib import Path

import requests

from ..errors import CsvParseError, GeocodeNotFound, GeocodeTransportError, ValidationError
from .points import GeoPoint

DEFAULT_KEY_ENV = "SENTINEL_GEOCODER_KEY"

SOURCE_REMOTE = "remote"
SOURCE_GAZETTEER = "gazetteer"


@dataclass(frozen=True)
class GeocodeResult:
    query: str
    point: GeoPoint
    source: str
    confidence: float

    def __post_init__(self):
        if not 0.0 <= self.confidence <= 1.0:
            raise ValidationError("confidence must be within [0, 1]")


@dataclass(frozen=True)
class GazetteerEntry:
    name: str
    point: GeoPoint
    district: str


class Gazetteer:
    """Offline place-name lookup: case-insensitive exact, then prefix.

    A unique prefix match returns the entry at confidence 0.9; an
    ambiguous prefix returns the alphabetically first candidate at 0.5.
    Never touches the network.
    """

    EXACT_CONFIDENCE = 1.0
    UNIQUE_PREFIX_CONFIDENCE = 0.9
    AMBIGUOUS_PREFIX_CONFIDENCE = 0.5

    def __init__(self, entries):
        self.entries = sorted(entries, key=lambda e: e.name.lower())
        self._by_lower = {e.name.lower(): e for e in self.entries}

    def __len__(self):
        return len(self.entries)

    def lookup(self, query):
        q = query.strip().lower()
        if not q:
            raise ValidationError("geocode query must be non-empty")
        entry = self._by_lower.get(q)
        if entry is not None:
            return GeocodeResult(query, entry.point, SOURCE_GAZETTEER, self.EXACT_CONFIDENCE)
        matches = [e for e in self.entries if e.name.lower().startswith(q)]
        if not matches:
            raise GeocodeNotFound(f"no gazetteer entry matches {query!r}")
        confidence = (
            self.UNIQUE_PREFIX_CONFIDENCE if len(matches) == 1
            else self.AMBIGUOUS_PREFIX_CONFIDENCE
        )
        return GeocodeResult(query, matches[0].point, SOURCE_GAZETTEER, confidence)


def load_gazetteer(source):
    """Parse a gazetteer CSV (name,lat,lon,district)."""
    if isinstance(source, (str, Path)):
        text, src = Path(source).read_text(encoding="utf-8-sig"), str(source)
    else:
        data = source.read()
        text = data.decode("utf-8-sig") if isinstance(data, bytes) else data
        src = getattr(source, "name", "<stream>")
    reader = csv.DictReader(io.StringIO(text))
    required = {"name", "lat", "lon", "district"}
    if not required <= set(reader.fieldnames or []):
        raise CsvParseError(f"{src}: gazetteer CSV needs columns {sorted(required)}")
    entries = []
    for i, row in enumerate(reader, start=2):
        try:
            point = GeoPoint(float(row["lat"]), float(row["lon"]))
        except (TypeError, ValueError, ValidationError) as exc:
            raise CsvParseError(f"{src}: row {i}: {exc}", row=i) from None
        entries.append(GazetteerEntry(row["name"].strip(), point, row["district"].strip()))
    return Gazetteer(entries)


class RemoteGeocoder:
    """Client for the minimal forward-geocoding HTTP contract."""

    def __init__(self, endpoint, key_env=DEFAULT_KEY_ENV, timeout_s=5.0):
        if not endpoint:
            raise ValidationError("remote geocoder needs an endpoint URL")
        self.endpoint = endpoint
        self.key_env = key_env
        self.timeout_s = timeout_s

    def geocode(self, query):
        q = query.strip()
        if not q:
            raise ValidationError("geocode query must be non-empty")
        params = {"query": q}
        key = os.environ.get(self.key_env, "")
        if key:
            params["key"] = key
        try:
            resp = requests.get(self.endpoint, params=params, timeout=self.timeout_s)
        except requests.RequestException as exc:
            raise GeocodeTransportError(f"geocoder unreachable: {exc}") from exc
        if resp.status_code == 429:
            raise GeocodeTransportError(
                "geocoder over quota",
                retry_after=_retry_after_seconds(resp),
            )
        if resp.status_code >= 400:
            raise GeocodeTransportError(f"geocoder returned HTTP {resp.status_code}")
        try:
            payload = resp.json()
            results = payload["results"]
        except (ValueError, KeyError) as exc:
            raise GeocodeTransportError(f"geocoder payload not understood: {exc}") from exc
        if not results:
            raise GeocodeNotFound(f"no remote candidate for {query!r}")
        top = results[0]
        point = GeoPoint(float(top["lat"]), float(top["lon"]))
        confidence = float(top.get("confidence", 1.0))
        return GeocodeResult(q, point, SOURCE_REMOTE, min(max(confidence, 0.0), 1.0))


def _retry_after_seconds(resp):
    value = resp.headers.get("Retry-After")
    try:
        return float(value) if value is not None else None
    except ValueError:
        return None


def geocode(query, mode, gazetteer=None, remote=None):
    """Dispatch to the requested geocoding mode."""
    if mode == SOURCE_GAZETTEER:
        if gazetteer is None:
            raise ValidationError("gazetteer mode requires a loaded gazetteer")
        return gazetteer.lookup(query)
    if mode == SOURCE_REMOTE:
        if remote is None:
            raise ValidationError("remote mode requires a configured endpoint")
        return remote.geocode(query)
    raise ValidationError(f"unknown geocode mode {mode!r}")
