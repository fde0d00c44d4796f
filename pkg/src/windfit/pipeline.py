"""End-to-end pipeline: CSV in, fitted/ranked/powered report out.

The report document is a plain JSON-ready dict with top-level keys
``meta``, ``descriptive``, ``parameters``, ``gof``, ``power`` and
``errors``, each report section keyed season-first (``annual`` plus the
four seasons), then by family token.  Everything is deterministic for a
fixed :class:`RunConfig`, including the serialized bytes.
"""

import json
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime

import numpy as np

from . import __version__
from . import distributions as dist
from .errors import (CsvParseError, MissingTimestampError, NegativeSpeedError,
                     WindfitError)
from .estimation import SimplexConfig, fit_mle
from .families import FamilyId
from .gof import GofConfig, GofReport, ProbabilityPairs, rank_models
from .power import PowerConfig, PowerReport, p_model, p_ref, pde
from .sample import Sample
from .stats import describe

SEASONS = ("winter", "spring", "summer", "autumn")
SEASON_ORDER = ("annual",) + SEASONS

DEFAULT_SEASON_MONTHS = {
    1: "winter", 2: "winter", 3: "winter",
    4: "spring", 5: "spring", 6: "spring",
    7: "summer", 8: "summer", 9: "summer",
    10: "autumn", 11: "autumn", 12: "autumn",
}

_HEADER = "timestamp,speed_ms"
_MISSING = ("", "NA")


@dataclass(frozen=True)
class Record:
    timestamp: datetime | None
    speed: float


@dataclass(frozen=True)
class IngestStats:
    rows_read: int
    missing_replaced: int
    missing_dropped: int


def validate_season_months(months: dict) -> dict[int, str]:
    """Check a month->season mapping covers all twelve months exactly once."""
    clean = {}
    for k, v in months.items():
        m = int(k)
        if not 1 <= m <= 12:
            raise ValueError(f"month {k!r} outside 1..12")
        if v not in SEASONS:
            raise ValueError(f"season {v!r} not one of {SEASONS}")
        if m in clean:
            raise ValueError(f"month {m} mapped twice")
        clean[m] = v
    if len(clean) != 12:
        raise ValueError("every month must be mapped to a season")
    return clean


@dataclass(frozen=True)
class RunConfig:
    """All knobs for one pipeline run.

    Exactly one of ``input_path`` and ``csv_text`` supplies the data.
    """

    input_path: str | None = None
    csv_text: str | None = None
    families: tuple = tuple(FamilyId)
    plotting_a: float = 0.0
    rho: float = 1.0
    area: float = 2.0
    seed: int = 42
    n_starts: int | None = None
    season_months: dict = field(default_factory=lambda: dict(DEFAULT_SEASON_MONTHS))
    missing_policy: str = "carry-forward"
    output_format: str = "text"
    plot_dir: str | None = None
    bins: int = 30
    include_plot_data: bool = False
    simplex: SimplexConfig = SimplexConfig()

    def __post_init__(self):
        if (self.input_path is None) == (self.csv_text is None):
            raise ValueError("provide exactly one of input_path or csv_text")
        fams = tuple(self.families)
        if not fams or len(set(fams)) != len(fams):
            raise ValueError("families must be a nonempty list without duplicates")
        for f in fams:
            if not isinstance(f, FamilyId):
                raise ValueError(f"not a FamilyId: {f!r}")
        object.__setattr__(self, "families", fams)
        if self.missing_policy not in ("carry-forward", "drop"):
            raise ValueError("missing_policy must be 'carry-forward' or 'drop'")
        if self.output_format not in ("text", "json"):
            raise ValueError("output format must be 'text' or 'json'")
        if self.bins < 5:
            raise ValueError("bins must be >= 5")
        object.__setattr__(self, "season_months",
                           validate_season_months(self.season_months))


# ---------------------------------------------------------------------------
# ingestion


def ingest_text(text: str, missing_policy: str = "carry-forward"):
    """Parse CSV content into records, applying the missing-value policy.

    Carry-forward replaces a missing speed with the most recent known one
    (leading missings are dropped); drop removes missing rows.  Returns
    ``(records, IngestStats)``.
    """
    if missing_policy not in ("carry-forward", "drop"):
        raise ValueError("missing_policy must be 'carry-forward' or 'drop'")
    lines = text.splitlines()
    if not lines:
        raise CsvParseError("empty input", 1)
    if lines[0].strip() != _HEADER:
        raise CsvParseError(f"expected header '{_HEADER}'", 1)

    records: list[Record] = []
    rows_read = replaced = dropped = 0
    last_speed: float | None = None
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        parts = raw.split(",")
        if len(parts) != 2:
            raise CsvParseError(f"expected 2 fields, got {len(parts)}", lineno)
        rows_read += 1
        ts_field, speed_field = parts[0].strip(), parts[1].strip()
        if ts_field:
            try:
                ts = datetime.fromisoformat(ts_field)
            except ValueError:
                raise CsvParseError(f"bad timestamp {ts_field!r}", lineno) from None
        else:
            ts = None
        if speed_field in _MISSING:
            if missing_policy == "drop" or last_speed is None:
                dropped += 1
                continue
            replaced += 1
            records.append(Record(ts, last_speed))
            continue
        try:
            speed = float(speed_field)
        except ValueError:
            raise CsvParseError(f"bad speed {speed_field!r}", lineno) from None
        if not np.isfinite(speed):
            raise CsvParseError(f"non-finite speed {speed_field!r}", lineno)
        if speed < 0:
            raise NegativeSpeedError(f"negative speed {speed}", lineno)
        last_speed = speed
        records.append(Record(ts, speed))
    return records, IngestStats(rows_read, replaced, dropped)


def ingest(path: str, missing_policy: str = "carry-forward"):
    with open(path, "r", encoding="utf-8") as fh:
        return ingest_text(fh.read(), missing_policy)


def season_split(records, season_months=None) -> dict[str, Sample]:
    """Partition records by month into seasons, plus the full 'annual' set."""
    months = validate_season_months(season_months or DEFAULT_SEASON_MONTHS)
    buckets: dict[str, list[float]] = {s: [] for s in SEASONS}
    annual = []
    for i, rec in enumerate(records):
        if rec.timestamp is None:
            raise MissingTimestampError(
                f"record {i + 1} has no timestamp; season splitting "
                "requires one on every record")
        buckets[months[rec.timestamp.month]].append(rec.speed)
        annual.append(rec.speed)
    out = {"annual": Sample(np.asarray(annual, dtype=float), label="annual")}
    for s in SEASONS:
        out[s] = Sample(np.asarray(buckets[s], dtype=float), label=s)
    return out


# ---------------------------------------------------------------------------
# report assembly


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    return obj


def _histogram(values: np.ndarray, bins: int):
    density, edges = np.histogram(values, bins=bins,
                                  range=(float(values.min()), float(values.max())),
                                  density=True)
    return [[float(edges[i]), float(edges[i + 1]), float(density[i])]
            for i in range(len(density))]


def run_pipeline(cfg: RunConfig) -> dict:
    """Ingest, split, fit, score, and power-check every requested family.

    Failures of a single family (or a single statistic) land in the
    ``errors`` array with their season/family/stage; the rest of the
    report is still produced.
    """
    if cfg.csv_text is not None:
        records, ingest_stats = ingest_text(cfg.csv_text, cfg.missing_policy)
    else:
        records, ingest_stats = ingest(cfg.input_path, cfg.missing_policy)
    seasons = season_split(records, cfg.season_months)

    gof_cfg = GofConfig(plotting_a=cfg.plotting_a)
    pow_cfg = PowerConfig(rho=cfg.rho, area=cfg.area)

    warnings: list[str] = []
    errors: list[dict] = []
    descriptive: dict = {}
    parameters: dict = {}
    gof_out: dict = {}
    power_out: dict = {}
    plot_data = {"hist": {}, "pdf": {}} if (cfg.plot_dir or cfg.include_plot_data) else None

    for season in SEASON_ORDER:
        samp = seasons[season]
        n = len(samp)
        if n < 2:
            descriptive[season] = {"n": n}
            warnings.append(f"season '{season}' has n={n}; reports skipped")
            continue
        descriptive[season] = _jsonable(asdict(describe(samp)))

        fits = {}
        parameters[season] = {}
        for fam in cfg.families:
            try:
                fr = fit_mle(fam, samp, cfg=cfg.simplex,
                             n_starts=cfg.n_starts, seed=cfg.seed)
            except (WindfitError, ValueError) as exc:
                errors.append({"season": season, "family": fam.value,
                               "stage": "fit", "error": str(exc)})
                continue
            fits[fam] = fr
            parameters[season][fam.value] = dict(
                fr.params.as_dict(),
                loglik=fr.loglik, iterations=fr.iterations,
                converged=fr.converged, n_restarts_used=fr.n_restarts_used)

        reports = []
        for fam, fr in fits.items():
            try:
                pairs = ProbabilityPairs.from_sample(
                    samp, lambda xs, p=fr.params: dist.cdf(p, xs), gof_cfg)
                reports.append((fam, GofReport.from_pairs(pairs, gof_cfg)))
            except (WindfitError, ValueError) as exc:
                errors.append({"season": season, "family": fam.value,
                               "stage": "gof", "error": str(exc)})
        gof_out[season] = {}
        for fam, rep in rank_models(reports):
            gof_out[season][fam.value] = {
                "ks": rep.ks, "r2": rep.r2, "rmse": rep.rmse,
                "chi2": rep.chi2, "rank": rep.rank}

        ref = p_ref(samp, pow_cfg)
        p_models: dict = {}
        pdes: dict = {}
        for fam, fr in fits.items():
            try:
                pm = p_model(fr.params, pow_cfg)
            except (WindfitError, ValueError) as exc:
                errors.append({"season": season, "family": fam.value,
                               "stage": "power", "error": str(exc)})
                continue
            p_models[fam.value] = pm
            pdes[fam.value] = pde(ref, pm)
        power_out[season] = PowerReport(ref, p_models, pdes).as_dict()

        if plot_data is not None:
            lo, hi = float(samp.values.min()), float(samp.values.max())
            if hi > lo:
                plot_data["hist"][season] = _histogram(samp.values, cfg.bins)
                grid = np.linspace(lo, hi, 400)
                plot_data["pdf"][season] = {
                    fam.value: [[float(x), float(y)] for x, y in
                                zip(grid, dist.pdf(fr.params, grid))]
                    for fam, fr in fits.items()}
            else:
                warnings.append(f"season '{season}' is constant; plots skipped")

    meta = {
        "tool": "windfit",
        "version": __version__,
        "input": cfg.input_path or "inline",
        "families": [f.value for f in cfg.families],
        "plotting_a": cfg.plotting_a,
        "rho": cfg.rho,
        "area": cfg.area,
        "seed": cfg.seed,
        "n_starts": cfg.n_starts,
        "missing_policy": cfg.missing_policy,
        "bins": cfg.bins,
        "season_months": {str(m): cfg.season_months[m] for m in range(1, 13)},
        "rows_read": ingest_stats.rows_read,
        "missing_replaced": ingest_stats.missing_replaced,
        "missing_dropped": ingest_stats.missing_dropped,
        "warnings": warnings,
    }
    report = {
        "meta": meta,
        "descriptive": descriptive,
        "parameters": parameters,
        "gof": gof_out,
        "power": power_out,
        "errors": errors,
    }
    if plot_data is not None and cfg.include_plot_data:
        report["plot_data"] = plot_data
    if cfg.plot_dir and plot_data is not None:
        write_plot_files(plot_data, cfg.plot_dir)
    return _jsonable(report)


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def fit_error_count(report: dict) -> int:
    return sum(1 for e in report.get("errors", []) if e.get("stage") == "fit")


def write_plot_files(plot_data: dict, plot_dir: str) -> list[str]:
    """Write per-season histogram and per-family density-curve CSVs."""
    os.makedirs(plot_dir, exist_ok=True)
    written = []
    for season, rows in plot_data["hist"].items():
        path = os.path.join(plot_dir, f"hist_{season}.csv")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("bin_left,bin_right,density\n")
            for left, right, density in rows:
                fh.write(f"{left!r},{right!r},{density!r}\n")
        written.append(path)
    for season, fams in plot_data["pdf"].items():
        for fam, rows in fams.items():
            path = os.path.join(plot_dir, f"pdf_{season}_{fam}.csv")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write("x,density\n")
                for x, y in rows:
                    fh.write(f"{x!r},{y!r}\n")
            written.append(path)
    return written


def render_text(report: dict) -> str:
    """Human-readable tables mirroring the JSON document."""
    out = []
    meta = report["meta"]
    out.append(f"windfit {meta['version']}  input={meta['input']}  "
               f"seed={meta['seed']}  families={','.join(meta['families'])}")
    out.append(f"rows read {meta['rows_read']}, missing replaced "
               f"{meta['missing_replaced']}, dropped {meta['missing_dropped']}")
    for w in meta["warnings"]:
        out.append(f"warning: {w}")
    for season in SEASON_ORDER:
        if season not in report["descriptive"]:
            continue
        d = report["descriptive"][season]
        out.append("")
        out.append(f"== {season} ==")
        if "mean" not in d:
            out.append(f"  n={d['n']} (skipped)")
            continue
        out.append(f"  n={d['n']}  max={d['max']:.2f}  mean={d['mean']:.2f}  "
                   f"sd={d['sd']:.2f}  se={d['se_mean']:.2f}  "
                   f"skew={d['skewness']:.2f}  kurt={d['kurtosis']:.2f}  "
                   f"q1={d['q1']:.2f}  q2={d['q2']:.2f}  q3={d['q3']:.2f}")
        params = report["parameters"].get(season, {})
        if params:
            out.append("  model      " + "  ".join(
                f"{k:>9}" for k in ("mu", "omega", "delta", "lambda", "beta", "xi")))
            for fam, pr in params.items():
                cells = []
                for k in ("mu", "omega", "delta", "lambda", "beta", "xi"):
                    cells.append(f"{pr[k]:9.4f}" if k in pr else " " * 9)
                out.append(f"  {fam:<9}  " + "  ".join(cells)
                           + f"  loglik={pr['loglik']:.3f}")
        gof = report["gof"].get(season, {})
        if gof:
            out.append(f"  {'model':<9}  {'KS':>8}  {'R2':>8}  {'RMSE':>8}  "
                       f"{'chi2':>10}  rank")
            for fam, g in gof.items():
                out.append(f"  {fam:<9}  {g['ks']:8.4f}  {g['r2']:8.4f}  "
                           f"{g['rmse']:8.4f}  {g['chi2']:10.4f}  {g['rank']:>4}")
        power = report["power"].get(season)
        if power:
            out.append(f"  P_ref = {power['p_ref']:.2f}")
            for fam in power["p_model"]:
                out.append(f"  {fam:<9}  P_D={power['p_model'][fam]:10.2f}  "
                           f"PDE={power['pde'][fam]:7.2f}%")
    if report["errors"]:
        out.append("")
        out.append("errors:")
        for e in report["errors"]:
            out.append(f"  [{e['stage']}] {e['season']}/{e['family']}: {e['error']}")
    return "\n".join(line.rstrip() for line in out) + "\n"
