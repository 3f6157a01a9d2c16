"""Access to the demo data bundled with the package."""

from importlib import resources
from pathlib import Path

DISTRICT_STATS = "district_stats_telangana.csv"
FACILITIES = "facilities_telangana.csv"
GAZETTEER = "gazetteer_telangana.csv"
CERVICAL_SAMPLE = "samples/cervical_synthetic.csv"
BCSC_SAMPLE = "samples/bcsc_synthetic.csv"


def data_path(name):
    """Filesystem path of a bundled data file."""
    path = Path(str(resources.files("sentinel").joinpath("data", name)))
    if not path.exists():
        raise FileNotFoundError(f"bundled data file {name!r} not found at {path}")
    return path
