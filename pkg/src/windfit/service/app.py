"""FastAPI application exposing the fitting pipeline."""

from dataclasses import asdict

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..errors import CsvParseError, MissingTimestampError
from ..families import FamilyId, param_names
from ..pipeline import RunConfig, run_pipeline
from ..stats import describe
from .schemas import (DescribeRequest, DescribeResponse, FamiliesResponse,
                      FamilyInfo, FitRequest, FitResponse)


def create_app() -> FastAPI:
    app = FastAPI(
        title="windfit",
        version=__version__,
        description="Fit wind-speed distributions, rank them by "
                    "goodness of fit, and estimate wind power density.",
    )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.get("/families", response_model=FamiliesResponse)
    def families() -> FamiliesResponse:
        return FamiliesResponse(families=[
            FamilyInfo(id=f.value, params=list(param_names(f)),
                       composite=f.is_composite)
            for f in FamilyId
        ])

    @app.post("/fit", response_model=FitResponse,
              response_model_exclude_none=True)
    def fit(req: FitRequest) -> FitResponse:
        try:
            fams = tuple(FamilyId.from_token(t) for t in req.families)
            extra = {}
            if req.season_months is not None:
                extra["season_months"] = req.season_months
            cfg = RunConfig(
                csv_text=req.csv_text,
                families=fams,
                plotting_a=req.plotting_a,
                rho=req.rho,
                area=req.area,
                seed=req.seed,
                n_starts=req.n_starts,
                missing_policy=req.missing_policy,
                bins=req.bins,
                include_plot_data=req.include_plot_data,
                **extra,
            )
            report = run_pipeline(cfg)
        except (CsvParseError, MissingTimestampError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return FitResponse(**report)

    @app.post("/describe", response_model=DescribeResponse)
    def describe_sample(req: DescribeRequest) -> DescribeResponse:
        try:
            stats = describe(req.speeds)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return DescribeResponse(**asdict(stats))

    return app


app = create_app()
