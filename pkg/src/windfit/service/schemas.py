"""Request/response models for the HTTP service."""

from typing import Any, Literal

from pydantic import BaseModel, Field

from ..families import FamilyId

_ALL_FAMILIES = [f.value for f in FamilyId]

Season = Literal["winter", "spring", "summer", "autumn"]


class FitRequest(BaseModel):
    """A CSV document plus the full set of pipeline knobs.

    ``csv_text`` must carry the header ``timestamp,speed_ms`` with
    ISO-8601 timestamps; missing speeds are encoded as an empty field or
    ``NA``.
    """

    csv_text: str
    families: list[str] = Field(default_factory=lambda: list(_ALL_FAMILIES))
    plotting_a: float = Field(0.0, ge=0.0, le=1.0)
    rho: float = Field(1.0, gt=0.0)
    area: float = Field(2.0, gt=0.0)
    seed: int = 42
    n_starts: int | None = Field(None, ge=1)
    missing_policy: Literal["carry-forward", "drop"] = "carry-forward"
    bins: int = Field(30, ge=5)
    season_months: dict[int, Season] | None = None
    include_plot_data: bool = False


class FitResponse(BaseModel):
    """The pipeline report document.

    Sections are keyed season-first (``annual``, ``winter``, ...), then by
    family token; ``errors`` lists per-family failures with their stage.
    ``plot_data`` is present when requested: histogram rows
    ``[bin_left, bin_right, density]`` per season and density-curve rows
    ``[x, density]`` per season and family.
    """

    meta: dict[str, Any]
    descriptive: dict[str, Any]
    parameters: dict[str, Any]
    gof: dict[str, Any]
    power: dict[str, Any]
    errors: list[dict[str, Any]]
    plot_data: dict[str, Any] | None = None


class DescribeRequest(BaseModel):
    speeds: list[float] = Field(min_length=2)


class DescribeResponse(BaseModel):
    n: int
    max: float
    mean: float
    sd: float
    se_mean: float
    skewness: float
    kurtosis: float
    q1: float
    q2: float
    q3: float


class FamilyInfo(BaseModel):
    id: str
    params: list[str]
    composite: bool


class FamiliesResponse(BaseModel):
    families: list[FamilyInfo]
