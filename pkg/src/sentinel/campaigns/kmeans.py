"""Weighted k-means for siting awareness campaigns.

Distances use a local equirectangular projection of (lat, lon): at
district scale (well under 500 km) the deviation from great-circle
distance is below half a percent, and centroid updates stay closed-form
weighted means. Input points are put in a canonical (lat, lon, weight)
order before seeding, so permuting the input changes nothing.
"""

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..base import BaseEstimator
from ..errors import CsvParseError, InvariantViolation, ValidationError
from ..geo import EARTH_RADIUS_KM, GeoPoint, haversine_km


@dataclass(frozen=True)
class CasePoint:
    """A located case count (or record density) to be covered."""

    location: GeoPoint
    weight: float = 1.0

    def __post_init__(self):
        if not self.weight > 0:
            raise ValidationError("case weight must be positive")


def load_case_points(source):
    """Parse a lat,lon[,weight] CSV into case points."""
    if isinstance(source, (str, Path)):
        text, src = Path(source).read_text(encoding="utf-8-sig"), str(source)
    else:
        data = source.read()
        text = data.decode("utf-8-sig") if isinstance(data, bytes) else data
        src = getattr(source, "name", "<stream>")
    reader = csv.DictReader(io.StringIO(text))
    if not {"lat", "lon"} <= set(reader.fieldnames or []):
        raise CsvParseError(f"{src}: case CSV needs lat and lon columns")
    points = []
    for i, row in enumerate(reader, start=2):
        try:
            points.append(CasePoint(
                location=GeoPoint(float(row["lat"]), float(row["lon"])),
                weight=float(row.get("weight") or 1.0),
            ))
        except (ValueError, ValidationError) as exc:
            raise CsvParseError(f"{src}: row {i}: {exc}", row=i) from None
    return points


@dataclass
class CampaignPlan:
    """K-means outcome: centroids, assignments, and quality numbers."""

    k: int
    centroids: list            # GeoPoints
    assignments: list          # case index -> centroid index, input order
    inertia: float
    iterations: int
    inertia_history: list = field(default_factory=list)
    district_labels: list | None = None

    def to_csv(self, cases=None):
        out = io.StringIO()
        out.write("centroid,lat,lon,cases,weight,district\n")
        counts = [0] * self.k
        weights = [0.0] * self.k
        if cases is not None:
            for case, a in zip(cases, self.assignments):
                counts[a] += 1
                weights[a] += case.weight
        for i, c in enumerate(self.centroids):
            label = self.district_labels[i] if self.district_labels else ""
            out.write(f"{i},{c.lat!r},{c.lon!r},{counts[i]},{weights[i]!r},{label}\n")
        return out.getvalue()

    def to_dict(self):
        return {
            "k": self.k,
            "centroids": [
                {
                    "lat": c.lat,
                    "lon": c.lon,
                    "district": self.district_labels[i] if self.district_labels else None,
                }
                for i, c in enumerate(self.centroids)
            ],
            "assignments": list(self.assignments),
            "inertia": self.inertia,
            "iterations": self.iterations,
        }


class KMeansPlanner(BaseEstimator):
    """Lloyd's algorithm with k-means++ (or plain random) seeding.

    Deterministic for a given seed. Empty clusters are repaired by
    re-seeding at the point farthest from its assigned centroid.
    """

    def __init__(self, k, seed=42, max_iter=300, tol_km=1e-6, init="kmeans++"):
        self.k = k
        self.seed = seed
        self.max_iter = max_iter
        self.tol_km = tol_km
        self.init = init

    def fit(self, cases):
        if self.k < 1:
            raise ValidationError("k must be at least 1")
        if self.init not in ("kmeans++", "random"):
            raise ValidationError("init must be 'kmeans++' or 'random'")
        if not cases:
            raise ValidationError("no case points supplied")

        order = sorted(
            range(len(cases)),
            key=lambda i: (cases[i].location.lat, cases[i].location.lon, cases[i].weight),
        )
        lat = np.array([cases[i].location.lat for i in order])
        lon = np.array([cases[i].location.lon for i in order])
        w = np.array([cases[i].weight for i in order])

        distinct = np.unique(np.column_stack([lat, lon]), axis=0).shape[0]
        if self.k > distinct:
            raise ValidationError(
                f"k={self.k} exceeds the {distinct} distinct point locations"
            )

        # Per-degree scale factors of the local projection.
        lat0 = float(np.average(lat, weights=w))
        kx = EARTH_RADIUS_KM * np.cos(np.radians(lat0)) * np.pi / 180.0
        ky = EARTH_RADIUS_KM * np.pi / 180.0

        def dist2(clat, clon):
            dy = ky * (lat[:, None] - clat[None, :])
            dx = kx * (lon[:, None] - clon[None, :])
            return dy * dy + dx * dx

        rng = np.random.default_rng(self.seed)
        clat, clon = self._seed_centroids(rng, lat, lon, w, dist2)

        history = []
        iterations = 0
        for _ in range(self.max_iter):
            iterations += 1
            d2 = dist2(clat, clon)
            assign = np.argmin(d2, axis=1)
            clat, clon, assign, d2 = self._repair_empty(
                clat, clon, assign, d2, lat, lon, dist2
            )
            inertia = float(np.sum(w * d2[np.arange(len(w)), assign]))
            if history and inertia > history[-1] + 1e-9 * max(1.0, history[-1]):
                raise InvariantViolation(
                    f"inertia increased {history[-1]} -> {inertia}"
                )
            history.append(inertia)

            new_clat = np.empty_like(clat)
            new_clon = np.empty_like(clon)
            for c in range(self.k):
                members = assign == c
                wm = w[members]
                new_clat[c] = np.average(lat[members], weights=wm)
                new_clon[c] = np.average(lon[members], weights=wm)
            shift = np.sqrt(np.max(
                (ky * (new_clat - clat)) ** 2 + (kx * (new_clon - clon)) ** 2
            ))
            clat, clon = new_clat, new_clon
            if shift < self.tol_km:
                break

        # Final assignment against the final centroids.
        d2 = dist2(clat, clon)
        assign = np.argmin(d2, axis=1)
        clat, clon, assign, d2 = self._repair_empty(
            clat, clon, assign, d2, lat, lon, dist2
        )
        inertia = float(np.sum(w * d2[np.arange(len(w)), assign]))

        inverse = np.empty(len(cases), dtype=np.int64)
        inverse[order] = np.arange(len(cases))

        self.centroids_ = [GeoPoint(float(a), float(o)) for a, o in zip(clat, clon)]
        self.assignments_ = assign[inverse].tolist()
        self.inertia_ = inertia
        self.n_iter_ = iterations
        self.inertia_history_ = history
        return self

    def _seed_centroids(self, rng, lat, lon, w, dist2):
        n = lat.size
        if self.init == "random":
            coords = np.column_stack([lat, lon])
            _, first_idx = np.unique(coords, axis=0, return_index=True)
            chosen = rng.choice(np.sort(first_idx), size=self.k, replace=False)
            return lat[chosen].copy(), lon[chosen].copy()

        chosen = [int(rng.choice(n, p=w / w.sum()))]
        while len(chosen) < self.k:
            d2 = dist2(lat[chosen], lon[chosen]).min(axis=1)
            mass = w * d2
            total = mass.sum()
            if total <= 0.0:
                # All remaining candidates coincide with a centroid;
                # guarded against by the distinct-count precondition.
                raise InvariantViolation("k-means++ ran out of distinct points")
            chosen.append(int(rng.choice(n, p=mass / total)))
        return lat[chosen].copy(), lon[chosen].copy()

    def _repair_empty(self, clat, clon, assign, d2, lat, lon, dist2):
        for c in range(self.k):
            if np.any(assign == c):
                continue
            costs = d2[np.arange(lat.size), assign]
            far = int(np.argmax(costs))
            clat[c], clon[c] = lat[far], lon[far]
            d2 = dist2(clat, clon)
            assign = np.argmin(d2, axis=1)
        return clat, clon, assign, d2


def kmeans(points, k, seed=42, max_iter=300, tol=1e-6, init="kmeans++"):
    """Cluster case points; returns a CampaignPlan."""
    planner = KMeansPlanner(k=k, seed=seed, max_iter=max_iter, tol_km=tol, init=init)
    planner.fit(points)
    return CampaignPlan(
        k=k,
        centroids=planner.centroids_,
        assignments=planner.assignments_,
        inertia=planner.inertia_,
        iterations=planner.n_iter_,
        inertia_history=planner.inertia_history_,
    )


def plan_campaigns(stats, cases, k, seed=42, max_iter=300, tol=1e-6):
    """K-means siting plus a nearest-district label per centroid."""
    if not stats:
        raise ValidationError("district stats required for labeling")
    plan = kmeans(cases, k, seed=seed, max_iter=max_iter, tol=tol)
    labels = []
    for centroid in plan.centroids:
        ranked = sorted(
            stats, key=lambda s: (haversine_km(centroid, s.centroid), s.district)
        )
        labels.append(ranked[0].district)
    plan.district_labels = labels
    return plan
