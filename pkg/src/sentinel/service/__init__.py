"""HTTP service assembling models, geo lookup, records, and reports."""

from .app import Snapshot, build_snapshot, create_app, validate_answers
from .config import GeocoderConfig, ServiceConfig, load_config
from .records import RecordStore

__all__ = [
    "GeocoderConfig",
    "RecordStore",
    "ServiceConfig",
    "Snapshot",
    "build_snapshot",
    "create_app",
    "load_config",
    "validate_answers",
]
