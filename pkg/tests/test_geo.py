import io
import math

import numpy as np
import pytest

from sentinel.errors import (
    CsvParseError,
    DuplicateIdError,
    GeocodeNotFound,
    GeocodeTransportError,
    ValidationError,
)
from sentinel.geo import (
    EARTH_RADIUS_KM,
    Facility,
    FacilityStore,
    Gazetteer,
    GazetteerEntry,
    GeoPoint,
    RemoteGeocoder,
    geocode,
    haversine_km,
    load_facilities,
    load_gazetteer,
)


# --- independent oracle -------------------------------------------------------

def law_of_cosines_km(a, b):
    """Second great-circle formula, used only to cross-check haversine."""
    phi1, phi2 = math.radians(a.lat), math.radians(b.lat)
    dlam = math.radians(b.lon - a.lon)
    c = (math.sin(phi1) * math.sin(phi2)
         + math.cos(phi1) * math.cos(phi2) * math.cos(dlam))
    return EARTH_RADIUS_KM * math.acos(min(1.0, max(-1.0, c)))


# --- points and distance --------------------------------------------------------

def test_geopoint_range_checked():
    GeoPoint(90.0, 180.0)
    with pytest.raises(ValidationError):
        GeoPoint(91.0, 0.0)
    with pytest.raises(ValidationError):
        GeoPoint(0.0, -180.5)
    with pytest.raises(ValidationError):
        GeoPoint(float("nan"), 0.0)


def test_haversine_identity():
    p = GeoPoint(17.4, 78.5)
    assert haversine_km(p, p) == 0.0


def test_haversine_equatorial_antipodes():
    d = haversine_km(GeoPoint(0.0, 0.0), GeoPoint(0.0, 180.0))
    assert d == pytest.approx(math.pi * EARTH_RADIUS_KM, rel=1e-12)


def test_haversine_hyderabad_warangal_vs_second_formula():
    hyd = GeoPoint(17.3850, 78.4867)
    wgl = GeoPoint(17.9689, 79.5941)
    d = haversine_km(hyd, wgl)
    oracle = law_of_cosines_km(hyd, wgl)
    assert abs(d - oracle) / oracle < 0.005
    assert 120 < d < 140  # sanity: the two cities are ~130 km apart


def test_haversine_symmetric_nonnegative(rng):
    for _ in range(200):
        a = GeoPoint(float(rng.uniform(-89, 89)), float(rng.uniform(-179, 179)))
        b = GeoPoint(float(rng.uniform(-89, 89)), float(rng.uniform(-179, 179)))
        d_ab, d_ba = haversine_km(a, b), haversine_km(b, a)
        assert d_ab == d_ba
        assert d_ab >= 0.0


def test_haversine_cross_check_oracle_1000_pairs(rng):
    # Spherical law of cosines loses precision only for tiny distances;
    # keep the pairs at least a tenth of a degree apart.
    checked = 0
    while checked < 1000:
        a = GeoPoint(float(rng.uniform(-80, 80)), float(rng.uniform(-179, 179)))
        b = GeoPoint(float(rng.uniform(-80, 80)), float(rng.uniform(-179, 179)))
        if abs(a.lat - b.lat) + abs(a.lon - b.lon) < 0.1:
            continue
        d = haversine_km(a, b)
        oracle = law_of_cosines_km(a, b)
        assert abs(d - oracle) <= 0.005 * max(oracle, 1e-9)
        checked += 1


# --- facility store ----------------------------------------------------------

FACILITIES_CSV = """id,name,kind,lat,lon,district
h1,General Hospital,hospital,17.40,78.50,Hyderabad
c1,Oncology Centre,cancer_centre,17.45,78.40,Hyderabad
h2,District Hospital,hospital,18.00,79.60,Warangal
"""


def make_store(n, rng):
    facs = []
    for i in range(n):
        facs.append(Facility(
            id=f"f{i:04d}",
            name=f"Facility {i}",
            kind=("hospital", "cancer_centre", "screening_camp")[i % 3],
            location=GeoPoint(float(rng.uniform(15, 20)), float(rng.uniform(76, 82))),
            district="D",
        ))
    return FacilityStore(facs)


def test_load_facilities_csv():
    store = load_facilities(io.StringIO(FACILITIES_CSV))
    assert len(store) == 3
    assert store.get("h1").name == "General Hospital"


def test_load_facilities_bad_latitude():
    bad = FACILITIES_CSV + "x1,Broken,hospital,91.0,78.0,Nowhere\n"
    with pytest.raises(CsvParseError) as exc:
        load_facilities(io.StringIO(bad))
    assert exc.value.row == 5


def test_load_facilities_unknown_kind():
    bad = FACILITIES_CSV + "x1,Odd,clinic,17.0,78.0,Nowhere\n"
    with pytest.raises(CsvParseError):
        load_facilities(io.StringIO(bad))


def test_load_facilities_duplicate_id():
    bad = FACILITIES_CSV + "h1,Clone,hospital,17.0,78.0,Nowhere\n"
    with pytest.raises(DuplicateIdError):
        load_facilities(io.StringIO(bad))


def test_nearest_origin_at_facility():
    store = load_facilities(io.StringIO(FACILITIES_CSV))
    ranked = store.nearest(GeoPoint(17.40, 78.50), k=2)
    assert ranked[0][0].id == "h1"
    assert ranked[0][1] == 0.0
    assert ranked[0][1] <= ranked[1][1]


def test_nearest_k_larger_than_store():
    store = load_facilities(io.StringIO(FACILITIES_CSV))
    ranked = store.nearest(GeoPoint(17.0, 78.0), k=50)
    assert len(ranked) == 3
    dists = [d for _, d in ranked]
    assert dists == sorted(dists)


def test_nearest_kind_filter():
    store = load_facilities(io.StringIO(FACILITIES_CSV))
    ranked = store.nearest(GeoPoint(17.40, 78.50), k=5, kind="cancer_centre")
    assert [f.id for f, _ in ranked] == ["c1"]


def test_nearest_empty_store():
    assert FacilityStore([]).nearest(GeoPoint(0, 0), k=3) == []


def test_nearest_matches_brute_force(rng):
    # Independent oracle: full scan + sort over every facility.
    for trial in range(10):
        store = make_store(int(rng.integers(5, 400)), rng)
        origin = GeoPoint(float(rng.uniform(15, 20)), float(rng.uniform(76, 82)))
        k = int(rng.integers(1, 12))
        got = store.nearest(origin, k=k)
        oracle = sorted(
            ((haversine_km(origin, f.location), f.id) for f in store.facilities)
        )[:k]
        assert [(d, f.id) for f, d in got] == [(d, i) for d, i in oracle]


def test_nearest_tie_broken_by_id():
    p = GeoPoint(17.0, 78.0)
    store = FacilityStore([
        Facility("b", "B", "hospital", p, "D"),
        Facility("a", "A", "hospital", p, "D"),
    ])
    ranked = store.nearest(GeoPoint(17.5, 78.0), k=2)
    assert [f.id for f, _ in ranked] == ["a", "b"]


# --- gazetteer ----------------------------------------------------------------

GAZETTEER_CSV = """name,lat,lon,district
Warangal,17.9689,79.5941,Warangal
Hyderabad,17.3850,78.4867,Hyderabad
Nizamabad,18.6725,78.0941,Nizamabad
"""


def test_gazetteer_exact_lookup():
    gaz = load_gazetteer(io.StringIO(GAZETTEER_CSV))
    res = gaz.lookup("Warangal")
    assert res.point == GeoPoint(17.9689, 79.5941)
    assert res.source == "gazetteer"
    assert res.confidence == 1.0


def test_gazetteer_exact_is_case_insensitive():
    gaz = load_gazetteer(io.StringIO(GAZETTEER_CSV))
    assert gaz.lookup("wArAnGaL").point == GeoPoint(17.9689, 79.5941)


def test_gazetteer_unique_prefix():
    gaz = load_gazetteer(io.StringIO(GAZETTEER_CSV))
    res = gaz.lookup("war")
    assert res.point == GeoPoint(17.9689, 79.5941)
    assert res.confidence < 1.0


def test_gazetteer_ambiguous_prefix_picks_alphabetical():
    gaz = Gazetteer([
        GazetteerEntry("Karimnagar", GeoPoint(18.44, 79.13), "Karimnagar"),
        GazetteerEntry("Kamareddy", GeoPoint(18.32, 78.34), "Kamareddy"),
    ])
    res = gaz.lookup("ka")
    assert res.point == GeoPoint(18.32, 78.34)
    assert res.confidence == Gazetteer.AMBIGUOUS_PREFIX_CONFIDENCE


def test_gazetteer_not_found():
    gaz = load_gazetteer(io.StringIO(GAZETTEER_CSV))
    with pytest.raises(GeocodeNotFound):
        gaz.lookup("Atlantis")


# --- remote client ---------------------------------------------------------------

def test_remote_geocoder_parses_stub_payload(stub_geocoder, monkeypatch):
    monkeypatch.setenv("SENTINEL_GEOCODER_KEY", "test-key-123")
    client = RemoteGeocoder(stub_geocoder.endpoint)
    res = client.geocode("Warangal")
    assert res.source == "remote"
    assert res.point == GeoPoint(17.9689, 79.5941)
    assert 0.0 <= res.confidence <= 1.0
    assert stub_geocoder.seen_requests[-1]["key"] == "test-key-123"


def test_remote_geocoder_not_found(stub_geocoder):
    client = RemoteGeocoder(stub_geocoder.endpoint)
    with pytest.raises(GeocodeNotFound):
        client.geocode("NowhereSpecial")


def test_remote_geocoder_over_quota_retry_after(stub_geocoder):
    client = RemoteGeocoder(stub_geocoder.base_url + "/overloaded")
    with pytest.raises(GeocodeTransportError) as exc:
        client.geocode("Warangal")
    assert exc.value.retry_after == 7.0


def test_remote_geocoder_unreachable():
    client = RemoteGeocoder("http://127.0.0.1:1/geocode", timeout_s=0.2)
    with pytest.raises(GeocodeTransportError):
        client.geocode("Warangal")


def test_geocode_dispatch(stub_geocoder):
    gaz = load_gazetteer(io.StringIO(GAZETTEER_CSV))
    remote = RemoteGeocoder(stub_geocoder.endpoint)
    assert geocode("Warangal", "gazetteer", gazetteer=gaz).source == "gazetteer"
    assert geocode("Warangal", "remote", remote=remote).source == "remote"
    with pytest.raises(ValidationError):
        geocode("Warangal", "satellite")


def test_geocode_empty_query_rejected():
    gaz = load_gazetteer(io.StringIO(GAZETTEER_CSV))
    with pytest.raises(ValidationError):
        gaz.lookup("   ")
