"""Geocoding and facility lookup."""

from .facilities import FACILITY_KINDS, Facility, FacilityStore, load_facilities
from .geocode import (
    DEFAULT_KEY_ENV,
    SOURCE_GAZETTEER,
    SOURCE_REMOTE,
    Gazetteer,
    GazetteerEntry,
    GeocodeResult,
    RemoteGeocoder,
    geocode,
    load_gazetteer,
)
from .points import EARTH_RADIUS_KM, GeoPoint, haversine_km

__all__ = [
    "DEFAULT_KEY_ENV",
    "EARTH_RADIUS_KM",
    "FACILITY_KINDS",
    "Facility",
    "FacilityStore",
    "Gazetteer",
    "GazetteerEntry",
    "GeocodeResult",
    "GeoPoint",
    "RemoteGeocoder",
    "SOURCE_GAZETTEER",
    "SOURCE_REMOTE",
    "geocode",
    "haversine_km",
    "load_facilities",
    "load_gazetteer",
]
