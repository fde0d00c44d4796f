"""Command-line client for the fitting pipeline.

``windfit fit`` runs the pipeline on a CSV file, printing the report as
text or JSON; with ``--server`` it posts the file to a running windfit
service instead of computing locally.  ``windfit serve`` starts that
service.

Exit codes: 0 success, 1 usage or input parse error, 2 when at least one
family failed to fit (the rest of the report is still emitted).
"""

import argparse
import sys

from .errors import CsvParseError, MissingTimestampError, WindfitError
from .families import FamilyId
from .pipeline import (RunConfig, fit_error_count, render_json, render_text,
                       run_pipeline, write_plot_files)

_ALL = ",".join(f.value for f in FamilyId)


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; this tool reserves 2 for fit failures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="windfit",
                     description="Fit wind-speed distributions and report "
                                 "goodness of fit and power density.")
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="fit families to a CSV of wind speeds",
                         description="Fit the requested families to a CSV "
                                     "with header 'timestamp,speed_ms'.")
    fit.add_argument("--input", required=True, help="input CSV path")
    fit.add_argument("--families", default=_ALL,
                     help=f"comma-separated family list (default {_ALL})")
    fit.add_argument("--plotting-a", type=float, default=0.0,
                     help="plotting position constant in [0,1] (default 0)")
    fit.add_argument("--rho", type=float, default=1.0,
                     help="air density kg/m^3 (default 1.0)")
    fit.add_argument("--area", type=float, default=2.0,
                     help="swept area m^2 (default 2.0)")
    fit.add_argument("--seed", type=int, default=42,
                     help="seed for multi-start jitter (default 42)")
    fit.add_argument("--starts", type=int, default=None,
                     help="multi-start count for every family "
                          "(default: 1 classical, 8 composite)")
    fit.add_argument("--missing", choices=["carry-forward", "drop"],
                     default="carry-forward", help="missing-speed policy")
    fit.add_argument("--format", choices=["text", "json"], default="text",
                     dest="out_format", help="report format (default text)")
    fit.add_argument("--plot-dir", default=None,
                     help="write histogram/density CSVs into this directory")
    fit.add_argument("--bins", type=int, default=30,
                     help="histogram bin count (default 30)")
    fit.add_argument("--season-map", default=None,
                     help="override month->season mapping, e.g. "
                          "'12=winter,1=winter,2=winter,...' (all 12 months)")
    fit.add_argument("--server", default=None,
                     help="base URL of a windfit service; when set the CSV "
                          "is posted there instead of fitted locally")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _parse_season_map(text: str) -> dict[int, str]:
    months = {}
    for pair in text.split(","):
        if "=" not in pair:
            raise ValueError(f"bad season-map entry {pair!r}; expected MONTH=SEASON")
        m, s = pair.split("=", 1)
        months[int(m.strip())] = s.strip().lower()
    return months


def _fit_remote(server: str, path: str, args, families, season_months) -> dict:
    import httpx

    with open(path, "r", encoding="utf-8") as fh:
        csv_text = fh.read()
    payload = {
        "csv_text": csv_text,
        "families": [f.value for f in families],
        "plotting_a": args.plotting_a,
        "rho": args.rho,
        "area": args.area,
        "seed": args.seed,
        "n_starts": args.starts,
        "missing_policy": args.missing,
        "bins": args.bins,
        "include_plot_data": bool(args.plot_dir),
    }
    if season_months is not None:
        payload["season_months"] = {str(k): v for k, v in season_months.items()}
    resp = httpx.post(server.rstrip("/") + "/fit", json=payload, timeout=600.0)
    if resp.status_code != 200:
        detail = resp.json().get("detail", resp.text) if resp.content else resp.text
        raise CsvParseError(f"server rejected request: {detail}", 1)
    return resp.json()


def _run_fit(args) -> int:
    try:
        families = tuple(FamilyId.from_token(t)
                         for t in args.families.split(",") if t.strip())
        season_months = (_parse_season_map(args.season_map)
                         if args.season_map else None)
        if args.server:
            report = _fit_remote(args.server, args.input, args, families,
                                 season_months)
            if args.plot_dir and report.get("plot_data"):
                write_plot_files(report["plot_data"], args.plot_dir)
            report.pop("plot_data", None)
        else:
            extra = {"season_months": season_months} if season_months else {}
            cfg = RunConfig(
                input_path=args.input,
                families=families,
                plotting_a=args.plotting_a,
                rho=args.rho,
                area=args.area,
                seed=args.seed,
                n_starts=args.starts,
                missing_policy=args.missing,
                output_format=args.out_format,
                plot_dir=args.plot_dir,
                bins=args.bins,
                **extra,
            )
            report = run_pipeline(cfg)
    except (CsvParseError, MissingTimestampError, WindfitError, ValueError,
            OSError) as exc:
        sys.stderr.write(f"windfit: error: {exc}\n")
        return 1

    if args.out_format == "json":
        sys.stdout.write(render_json(report))
    else:
        sys.stdout.write(render_text(report))
    return 2 if fit_error_count(report) else 0


def _run_serve(args) -> int:
    import uvicorn

    from .service import app
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "fit":
        return _run_fit(args)
    return _run_serve(args)


if __name__ == "__main__":
    sys.exit(main())
