"""Service configuration file handling."""

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ValidationError
from ..geo.geocode import DEFAULT_KEY_ENV


@dataclass
class GeocoderConfig:
    endpoint: str | None = None
    key_env: str = DEFAULT_KEY_ENV
    timeout_s: float = 5.0


@dataclass
class ServiceConfig:
    """Paths and knobs for one service process.

    Relative paths are resolved against the config file's directory.
    """

    listen: str = "127.0.0.1:8756"
    models: dict = field(default_factory=dict)          # task -> model file
    facilities_csv: str | None = None
    gazetteer_csv: str | None = None
    district_stats_csv: str | None = None
    record_store_path: str = "records.jsonl"
    geocoder: GeocoderConfig = field(default_factory=GeocoderConfig)

    @property
    def host(self):
        return self.listen.rsplit(":", 1)[0]

    @property
    def port(self):
        try:
            return int(self.listen.rsplit(":", 1)[1])
        except (IndexError, ValueError):
            raise ValidationError(f"listen address {self.listen!r} must be host:port") from None


def load_config(path):
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: config is not valid JSON: {exc}") from exc
    base = path.parent

    def resolve(p):
        return str((base / p).resolve()) if p else None

    geo_raw = raw.get("geocoder", {})
    config = ServiceConfig(
        listen=raw.get("listen", "127.0.0.1:8756"),
        models={task: resolve(p) for task, p in raw.get("models", {}).items()},
        facilities_csv=resolve(raw.get("facilities_csv")),
        gazetteer_csv=resolve(raw.get("gazetteer_csv")),
        district_stats_csv=resolve(raw.get("district_stats_csv")),
        record_store_path=resolve(raw.get("record_store_path", "records.jsonl")),
        geocoder=GeocoderConfig(
            endpoint=geo_raw.get("endpoint"),
            key_env=geo_raw.get("key_env", DEFAULT_KEY_ENV),
            timeout_s=float(geo_raw.get("timeout_s", 5.0)),
        ),
    )
    for task, model_path in config.models.items():
        if not Path(model_path).exists():
            raise ValidationError(f"model file for task {task!r} not found: {model_path}")
    return config
