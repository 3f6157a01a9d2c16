"""District rankings and k-means campaign siting."""

from .districts import (
    INDICATORS,
    DistrictStat,
    load_district_stats,
    rank_districts,
    ranking_to_csv,
    statewide_means,
)
from .kmeans import (
    CampaignPlan,
    CasePoint,
    KMeansPlanner,
    kmeans,
    load_case_points,
    plan_campaigns,
)

__all__ = [
    "CampaignPlan",
    "CasePoint",
    "DistrictStat",
    "INDICATORS",
    "KMeansPlanner",
    "kmeans",
    "load_case_points",
    "load_district_stats",
    "plan_campaigns",
    "rank_districts",
    "ranking_to_csv",
    "statewide_means",
]
