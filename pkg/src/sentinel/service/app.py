"""HTTP facade over the toolkit.

Endpoints:
    GET  /health
    GET  /schema/{task}
    POST /assess/{task}
    GET  /facilities/near
    POST /records
    GET  /records/{record_id}
    GET  /districts/ranking
    POST /campaigns/plan

All immutable state (models, scaler params, facility store, district
stats) lives in one snapshot object on ``app.state``; replacing the
snapshot swaps everything atomically. The record store serializes its
own writes.
"""

import logging
from dataclasses import dataclass, field

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .. import DISCLAIMER
from ..campaigns import (
    INDICATORS,
    CasePoint,
    load_district_stats,
    plan_campaigns,
    rank_districts,
    statewide_means,
)
from ..errors import (
    ConsentError,
    DuplicateIdError,
    GeocodeError,
    GeocodeNotFound,
    GeocodeTransportError,
    NotFoundError,
    ValidationError,
)
from ..geo import GeoPoint, RemoteGeocoder, load_facilities, load_gazetteer
from ..models import load_bundle
from .config import ServiceConfig
from .records import RecordStore

logger = logging.getLogger("sentinel.service")

LABEL_SUSCEPTIBLE = "susceptible"
LABEL_NOT_SUSCEPTIBLE = "not_susceptible"


@dataclass
class Snapshot:
    """Immutable shared state served by the app."""

    bundles: dict = field(default_factory=dict)      # task -> ModelBundle
    facilities: object | None = None
    gazetteer: object | None = None
    district_stats: list = field(default_factory=list)
    remote_geocoder: RemoteGeocoder | None = None
    record_store: RecordStore | None = None


def build_snapshot(config: ServiceConfig):
    bundles = {task: load_bundle(path) for task, path in config.models.items()}
    facilities = load_facilities(config.facilities_csv) if config.facilities_csv else None
    gazetteer = load_gazetteer(config.gazetteer_csv) if config.gazetteer_csv else None
    stats = load_district_stats(config.district_stats_csv) if config.district_stats_csv else []
    remote = None
    if config.geocoder.endpoint:
        remote = RemoteGeocoder(
            config.geocoder.endpoint,
            key_env=config.geocoder.key_env,
            timeout_s=config.geocoder.timeout_s,
        )
    store = RecordStore(config.record_store_path) if config.record_store_path else None
    return Snapshot(
        bundles=bundles,
        facilities=facilities,
        gazetteer=gazetteer,
        district_stats=stats,
        remote_geocoder=remote,
        record_store=store,
    )


class AssessBody(BaseModel):
    answers: dict[str, float]
    consent: dict[str, bool] = {}


class RecordBody(BaseModel):
    task: str
    answers: dict[str, float]
    consent_flags: dict[str, bool] = {}
    record_id: str | None = None


class PlanCase(BaseModel):
    lat: float
    lon: float
    weight: float = 1.0


class PlanBody(BaseModel):
    k: int
    cases: list[PlanCase]
    seed: int = 42


def validate_answers(bundle, answers):
    """Completeness and range validation against the bundle's schema."""
    missing = [n for n in bundle.feature_names if n not in answers]
    unknown = [n for n in answers if n not in bundle.feature_names]
    if missing or unknown:
        parts = []
        if missing:
            parts.append(f"missing: {missing}")
        if unknown:
            parts.append(f"unknown: {sorted(unknown)}")
        raise ValidationError("; ".join(parts), fields=missing + sorted(unknown))
    out_of_range = []
    for f in bundle.schema:
        v = answers[f.name]
        if not f.min <= v <= f.max:
            out_of_range.append(f"{f.name}={v} outside [{f.min:g}, {f.max:g}]")
    if out_of_range:
        raise ValidationError(
            "out of range: " + "; ".join(out_of_range),
            fields=[s.split("=")[0] for s in out_of_range],
        )


def create_app(snapshot: Snapshot):
    app = FastAPI(title="sentinel", version="0.1.0")
    app.state.snapshot = snapshot

    def snap() -> Snapshot:
        return app.state.snapshot

    @app.exception_handler(ValidationError)
    async def _validation(request, exc):
        return JSONResponse(
            status_code=422,
            content={"error": "validation", "detail": str(exc), "fields": exc.fields},
        )

    @app.exception_handler(NotFoundError)
    async def _not_found(request, exc):
        return JSONResponse(status_code=404, content={"error": "not_found", "detail": str(exc)})

    @app.exception_handler(GeocodeNotFound)
    async def _geo_not_found(request, exc):
        return JSONResponse(status_code=404, content={"error": "geocode_not_found", "detail": str(exc)})

    @app.exception_handler(GeocodeTransportError)
    async def _geo_transport(request, exc):
        return JSONResponse(
            status_code=502,
            content={
                "error": "geocode_transport",
                "detail": str(exc),
                "retry_after": exc.retry_after,
            },
        )

    @app.exception_handler(DuplicateIdError)
    async def _duplicate(request, exc):
        return JSONResponse(status_code=409, content={"error": "duplicate_id", "detail": str(exc)})

    @app.exception_handler(ConsentError)
    async def _consent(request, exc):
        return JSONResponse(status_code=403, content={"error": "consent_denied", "detail": str(exc)})

    @app.get("/health")
    def health():
        s = snap()
        return {
            "status": "ok",
            "tasks": sorted(s.bundles),
            "facilities": len(s.facilities) if s.facilities else 0,
            "districts": len(s.district_stats),
            "records": len(s.record_store) if s.record_store else 0,
        }

    def bundle_for(task):
        s = snap()
        if task not in ("cervical", "breast"):
            raise ValidationError(f"unknown task {task!r}")
        bundle = s.bundles.get(task)
        if bundle is None:
            return None
        return bundle

    @app.get("/schema/{task}")
    def schema(task: str):
        bundle = bundle_for(task)
        if bundle is None:
            return JSONResponse(status_code=503, content={
                "error": "model_unavailable",
                "detail": f"no model loaded for task {task!r}",
            })
        return {
            "task": task,
            "model_id": bundle.model_id,
            "fields": [
                {
                    "name": f.name,
                    "label": f.name,
                    "kind": f.kind,
                    "min": f.min,
                    "max": f.max,
                    "help": "",
                }
                for f in bundle.schema
            ],
        }

    @app.post("/assess/{task}")
    def assess(task: str, body: AssessBody):
        bundle = bundle_for(task)
        if bundle is None:
            return JSONResponse(status_code=503, content={
                "error": "model_unavailable",
                "detail": f"no model loaded for task {task!r}",
            })
        validate_answers(bundle, body.answers)
        class_id, confidence = bundle.predict_record(body.answers)
        label = LABEL_SUSCEPTIBLE if class_id == 1 else LABEL_NOT_SUSCEPTIBLE
        if body.consent.get("research", False):
            logger.info("assess task=%s model=%s label=%s", task, bundle.model_id, label)
        else:
            logger.info("assess task=%s model=%s label=<redacted>", task, bundle.model_id)
        return {
            "label": label,
            "confidence": confidence,
            "model_id": bundle.model_id,
            "disclaimer": DISCLAIMER,
        }

    @app.get("/facilities/near")
    def facilities_near(
        lat: float | None = None,
        lon: float | None = None,
        address: str | None = None,
        k: int = Query(default=5, ge=1),
        kind: str | None = None,
    ):
        s = snap()
        if s.facilities is None:
            return JSONResponse(status_code=503, content={
                "error": "facilities_unavailable",
                "detail": "no facility store configured",
            })
        has_point = lat is not None and lon is not None
        if has_point == bool(address):
            raise ValidationError("supply either lat+lon or address, not both")
        geocode_info = None
        if has_point:
            origin = GeoPoint(lat, lon)
        else:
            result, fallback_used = _geocode_with_fallback(s, address)
            origin = result.point
            geocode_info = {
                "source": result.source,
                "confidence": result.confidence,
                "fallback_used": fallback_used,
            }
        ranked = s.facilities.nearest(origin, k=k, kind=kind)
        return {
            "origin": {"lat": origin.lat, "lon": origin.lon},
            "geocode": geocode_info,
            "results": [
                {
                    "id": f.id,
                    "name": f.name,
                    "kind": f.kind,
                    "district": f.district,
                    "lat": f.location.lat,
                    "lon": f.location.lon,
                    "distance_km": d,
                }
                for f, d in ranked
            ],
        }

    @app.post("/records", status_code=201)
    def store_record(body: RecordBody):
        s = snap()
        if s.record_store is None:
            return JSONResponse(status_code=503, content={
                "error": "records_unavailable",
                "detail": "no record store configured",
            })
        bundle = bundle_for(body.task)
        if bundle is None:
            return JSONResponse(status_code=503, content={
                "error": "model_unavailable",
                "detail": f"no model loaded for task {body.task!r}; schema unknown",
            })
        validate_answers(bundle, body.answers)
        record = s.record_store.store(
            body.task, body.answers, body.consent_flags, record_id=body.record_id
        )
        return record

    @app.get("/records/{record_id}")
    def get_record(record_id: str):
        s = snap()
        if s.record_store is None:
            return JSONResponse(status_code=503, content={
                "error": "records_unavailable",
                "detail": "no record store configured",
            })
        return s.record_store.get(record_id)

    @app.get("/districts/ranking")
    def districts_ranking(indicator: str = "cervical"):
        s = snap()
        if not s.district_stats:
            return JSONResponse(status_code=503, content={
                "error": "districts_unavailable",
                "detail": "no district stats configured",
            })
        if indicator not in INDICATORS:
            raise ValidationError(f"indicator must be one of {INDICATORS}")
        means = statewide_means(s.district_stats)
        ranked = rank_districts(s.district_stats, indicator)
        return {
            "indicator": indicator,
            "statewide_means": {f"{k}_pct": v for k, v in means.items()},
            "ranking": [
                {"rank": i, "district": st.district, "value_pct": st.value(indicator)}
                for i, st in enumerate(ranked, start=1)
            ],
        }

    @app.post("/campaigns/plan")
    def campaigns_plan(body: PlanBody):
        s = snap()
        if not s.district_stats:
            return JSONResponse(status_code=503, content={
                "error": "districts_unavailable",
                "detail": "district stats are required for centroid labels",
            })
        cases = [CasePoint(GeoPoint(c.lat, c.lon), c.weight) for c in body.cases]
        plan = plan_campaigns(s.district_stats, cases, body.k, seed=body.seed)
        return plan.to_dict()

    @app.middleware("http")
    async def access_log(request: Request, call_next):
        response = await call_next(request)
        # Bodies are never logged here; assess logs its own redacted line.
        logger.info("%s %s -> %d", request.method, request.url.path, response.status_code)
        return response

    return app


def _geocode_with_fallback(snapshot, address):
    """Remote first when configured, falling back to the gazetteer."""
    remote_error = None
    if snapshot.remote_geocoder is not None:
        try:
            return snapshot.remote_geocoder.geocode(address), False
        except GeocodeError as exc:
            remote_error = exc
    if snapshot.gazetteer is not None:
        try:
            return snapshot.gazetteer.lookup(address), remote_error is not None
        except GeocodeNotFound:
            if remote_error is not None:
                raise remote_error from None
            raise
    if remote_error is not None:
        raise remote_error
    raise ValidationError("no geocoder configured; supply lat+lon instead")
