"""District screening statistics and indicator rankings."""

import csv
import io
from dataclasses import dataclass
from pathlib import Path

from ..errors import CsvParseError, ValidationError
from ..geo import GeoPoint

INDICATORS = ("cervical", "breast", "oral")


@dataclass(frozen=True)
class DistrictStat:
    district: str
    cervical_pct: float
    breast_pct: float
    oral_pct: float
    centroid: GeoPoint

    def __post_init__(self):
        for name in ("cervical_pct", "breast_pct", "oral_pct"):
            v = getattr(self, name)
            if not 0.0 <= v <= 100.0:
                raise ValidationError(f"{self.district}: {name}={v} outside [0, 100]")

    def value(self, indicator):
        if indicator not in INDICATORS:
            raise ValidationError(f"unknown indicator {indicator!r}")
        return getattr(self, f"{indicator}_pct")


def load_district_stats(source):
    """Parse district,cervical_pct,breast_pct,oral_pct,lat,lon CSV."""
    if isinstance(source, (str, Path)):
        text, src = Path(source).read_text(encoding="utf-8-sig"), str(source)
    else:
        data = source.read()
        text = data.decode("utf-8-sig") if isinstance(data, bytes) else data
        src = getattr(source, "name", "<stream>")
    reader = csv.DictReader(io.StringIO(text))
    required = {"district", "cervical_pct", "breast_pct", "oral_pct", "lat", "lon"}
    if not required <= set(reader.fieldnames or []):
        raise CsvParseError(f"{src}: district CSV needs columns {sorted(required)}")
    stats, seen = [], set()
    for i, row in enumerate(reader, start=2):
        name = row["district"].strip()
        if name in seen:
            raise CsvParseError(f"{src}: row {i}: duplicate district {name!r}", row=i)
        seen.add(name)
        try:
            stats.append(DistrictStat(
                district=name,
                cervical_pct=float(row["cervical_pct"]),
                breast_pct=float(row["breast_pct"]),
                oral_pct=float(row["oral_pct"]),
                centroid=GeoPoint(float(row["lat"]), float(row["lon"])),
            ))
        except (ValueError, ValidationError) as exc:
            raise CsvParseError(f"{src}: row {i}: {exc}", row=i) from None
    return stats


def statewide_means(stats):
    """Unweighted mean of each indicator across districts."""
    if not stats:
        raise ValidationError("no district stats loaded")
    n = len(stats)
    return {ind: sum(s.value(ind) for s in stats) / n for ind in INDICATORS}


def rank_districts(stats, indicator):
    """Districts ordered by the indicator, highest first, ties by name."""
    if not stats:
        raise ValidationError("no district stats to rank")
    return sorted(stats, key=lambda s: (-s.value(indicator), s.district))


def ranking_to_csv(stats, indicator):
    """Machine-readable ranking; line 1 carries the statewide means."""
    means = statewide_means(stats)
    out = io.StringIO()
    out.write(
        "# statewide_means cervical={:.1f} breast={:.1f} oral={:.1f}\n".format(
            means["cervical"], means["breast"], means["oral"]
        )
    )
    out.write("rank,district,indicator,value_pct\n")
    for rank, s in enumerate(rank_districts(stats, indicator), start=1):
        out.write(f"{rank},{s.district},{indicator},{s.value(indicator)}\n")
    return out.getvalue()
