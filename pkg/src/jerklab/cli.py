"""Command-line front end.

Three subcommands cover the pipeline end to end:

* ``jerklab simulate`` — integrate the oscillator and write a trace CSV;
* ``jerklab compare``  — score candidate traces against a measured one,
  writing a JSON report plus a per-window CSV;
* ``jerklab horizon``  — report per-candidate prediction horizons.

Exit statuses: 0 success; 1 I/O or data failure; 2 usage/validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .core import JerkParams, Sign, SystemState
from .errors import DataError, JerkLabError, ValidationError
from .ingest import format_float, load_trace, write_series_csv
from .integrate import IntegratorConfig, Method, simulate
from .metrics import MeanFrom, build_comparison

_TRACE_FORMATS = ("auto", "csv", "spice")


@dataclass(frozen=True)
class RunConfig:
    """One declarative document holding every tunable the CLI accepts.

    A JSON config file (``--config``) populates it; individual flags
    override single fields. Unknown keys in the file are rejected.
    """

    a: float = JerkParams().a
    sign: str = "minus"
    time_scale_s: float = JerkParams().time_scale_s
    ic: tuple[float, float, float] = (0.0, 0.0, 0.1)
    method: str = "rk4"
    step: float = 1.0e-3
    t_start: float = 0.0
    t_end: float = 100.0
    output_points: int = 4700
    grid_points: int = 4700
    n_windows: int = 10
    threshold: float | None = None
    mean_from: str = "simulated"
    format: str = "auto"

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        try:
            raw = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise DataError(f"cannot open config {path}: {exc}") from None
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"config {path} is not valid JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise ValidationError(f"config {path} must hold a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(doc) - known)
        if unknown:
            raise ValidationError(
                f"config {path} has unknown keys: {', '.join(unknown)}"
            )
        if "ic" in doc:
            doc["ic"] = _parse_ic_list(doc["ic"])
        try:
            return replace(cls(), **doc)
        except TypeError as exc:
            raise ValidationError(f"config {path}: {exc}") from None


def _parse_ic_list(value) -> tuple[float, float, float]:
    if isinstance(value, str):
        parts = value.split(",")
    elif isinstance(value, (list, tuple)):
        parts = list(value)
    else:
        raise ValidationError(f"ic must be three numbers, got {value!r}")
    if len(parts) != 3:
        raise ValidationError(f"ic must have exactly 3 components, got {len(parts)}")
    try:
        return tuple(float(p) for p in parts)  # type: ignore[return-value]
    except (TypeError, ValueError):
        raise ValidationError(f"ic components must be numbers, got {value!r}") from None


def _merged_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
    overrides = {}
    for name in (f.name for f in fields(RunConfig)):
        flag_val = getattr(args, name, None)
        if flag_val is not None:
            overrides[name] = flag_val
    if "ic" in overrides:
        overrides["ic"] = _parse_ic_list(overrides["ic"])
    return replace(cfg, **overrides)


def _load_traces(args: argparse.Namespace, cfg: RunConfig):
    def load(path, source_id):
        try:
            return load_trace(path, fmt=cfg.format, source_id=source_id)
        except OSError as exc:
            raise DataError(f"cannot open {path}: {exc}") from None

    measured = load(args.measured, "measured")
    candidates = {}
    for spec_text in args.candidate:
        name, sep, path = spec_text.partition("=")
        if not sep or not name or not path:
            raise ValidationError(
                f"--candidate expects NAME=FILE, got {spec_text!r}"
            )
        if name in candidates:
            raise ValidationError(f"duplicate candidate name {name!r}")
        candidates[name] = load(path, name)
    return measured, candidates


def _report_payload(report, threshold):
    payload = {
        "grid": {
            "t0": report.grid.t0,
            "t1": report.grid.t1,
            "n": report.grid.n,
            "dt": report.grid.dt,
        },
        "n_windows": report.n_windows,
        "mean_from": report.mean_from.value,
        "threshold": threshold,
        "reference_id": report.reference_id,
        "candidates": [],
    }
    for cand in report.candidates:
        entry = {
            "id": cand.id,
            "full_nrmse": cand.full_nrmse,
            "boundaries": list(cand.windowed.boundaries),
            "scores": list(cand.windowed.scores),
        }
        if cand.horizon is not None:
            entry["horizon_time"] = cand.horizon.time
            entry["horizon_exceeded"] = cand.horizon.exceeded
        payload["candidates"].append(entry)
    return payload


def _write_report_json(path: str, payload) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    Path(path).write_text(text, encoding="utf-8")


def _write_windows_csv(path: str, report) -> None:
    ids = [c.id for c in report.candidates]
    lines = ["prefix_end," + ",".join(ids)]
    boundaries = report.candidates[0].windowed.boundaries
    for row, boundary in enumerate(boundaries):
        cells = [str(boundary)]
        cells.extend(format_float(c.windowed.scores[row]) for c in report.candidates)
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _default_windows_path(report_path: str) -> str:
    p = Path(report_path)
    return str(p.with_name(p.stem + "_windows.csv"))


# ---------------------------------------------------------------------------

def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _merged_config(args)
    params = JerkParams(a=cfg.a, sign=Sign.parse(cfg.sign),
                        time_scale_s=cfg.time_scale_s)
    config = IntegratorConfig(
        method=Method.parse(cfg.method),
        t_start=cfg.t_start,
        t_end=cfg.t_end,
        step=cfg.step,
        initial_state=SystemState(*cfg.ic),
        output_points=cfg.output_points,
    )
    result = simulate(config, params)
    # The trace carries the xdd channel: the measurable node in the analogue
    # realization this pipeline's comparisons are styled after.
    Path(args.out).write_bytes(write_series_csv(result.xdd))
    print(
        f"wrote {config.output_points} samples over "
        f"[{format_float(config.t_start)}, {format_float(config.t_end)}] "
        f"({config.method.value}, step {format_float(config.step)}) to {args.out}"
    )
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    cfg = _merged_config(args)
    measured, candidates = _load_traces(args, cfg)
    report = build_comparison(
        measured, candidates,
        grid_points=cfg.grid_points,
        n_windows=cfg.n_windows,
        mean_from=MeanFrom.parse(cfg.mean_from),
        threshold=cfg.threshold,
    )
    _write_report_json(args.report, _report_payload(report, cfg.threshold))
    windows_path = args.windows_out or _default_windows_path(args.report)
    _write_windows_csv(windows_path, report)
    for cand in report.candidates:
        marker = "  <- reference" if cand.id == report.reference_id else ""
        print(f"{cand.id}: full NRMSE {cand.full_nrmse:.6g}{marker}")
    print(f"reference: {report.reference_id}")
    print(f"report: {args.report}")
    print(f"windows: {windows_path}")
    return 0


def cmd_horizon(args: argparse.Namespace) -> int:
    cfg = _merged_config(args)
    if cfg.threshold is None:
        cfg = replace(cfg, threshold=1.0)
    if not cfg.threshold > 0.0:
        raise ValidationError(f"threshold must be > 0, got {cfg.threshold!r}")
    measured, candidates = _load_traces(args, cfg)
    report = build_comparison(
        measured, candidates,
        grid_points=cfg.grid_points,
        n_windows=cfg.n_windows,
        mean_from=MeanFrom.parse(cfg.mean_from),
        threshold=cfg.threshold,
    )
    best_id = None
    best_time = None
    for cand in report.candidates:
        hz = cand.horizon
        state = "exceeded" if hz.exceeded else "not exceeded"
        print(f"{cand.id}: horizon={format_float(hz.time)} ({state})")
        if best_time is None or hz.time > best_time:
            best_id, best_time = cand.id, hz.time
    print(f"winner: {best_id} (horizon={format_float(best_time)})")
    if args.report:
        _write_report_json(args.report, _report_payload(report, cfg.threshold))
    return 0


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jerklab",
        description="Simulate a quadratic jerk chaotic oscillator and "
                    "analyze the reproducibility of its traces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="integrate the system, write a trace CSV")
    sim.add_argument("--config", help="JSON config file (flags override it)")
    sim.add_argument("--a", type=float, dest="a",
                     help="bifurcation parameter (default 2.03)")
    sim.add_argument("--sign", choices=("minus", "plus"),
                     help="sign of the quadratic term (default minus)")
    sim.add_argument("--ic", help="initial state as X,XD,XDD (default 0,0,0.1)")
    sim.add_argument("--method", choices=("euler", "rk4", "rk45"),
                     help="integration method (default rk4)")
    sim.add_argument("--h", type=float, dest="step",
                     help="step ceiling (fixed-step) or initial step (rk45); "
                          "default 1e-3")
    sim.add_argument("--t-end", type=float, dest="t_end",
                     help="end of the integration span (default 100)")
    sim.add_argument("--points", type=int, dest="output_points",
                     help="number of output samples (default 4700)")
    sim.add_argument("--out", required=True, help="output trace CSV path")
    sim.set_defaults(func=cmd_simulate)

    comp = sub.add_parser("compare",
                          help="score candidate traces against a measured trace")
    comp.add_argument("--config", help="JSON config file (flags override it)")
    comp.add_argument("--measured", required=True, help="measured trace file")
    comp.add_argument("--candidate", action="append", required=True,
                      metavar="NAME=FILE", help="candidate trace (repeatable)")
    comp.add_argument("--windows", type=int, dest="n_windows",
                      help="number of cumulative windows (default 10)")
    comp.add_argument("--grid-points", type=int, dest="grid_points",
                      help="common-grid sample count (default 4700)")
    comp.add_argument("--threshold", type=float,
                      help="also compute prediction horizons at this NRMSE "
                           "threshold")
    comp.add_argument("--nrmse-mean", choices=("simulated", "measured"),
                      dest="mean_from", help="which series supplies the "
                      "normalizing mean (default simulated)")
    comp.add_argument("--format", choices=_TRACE_FORMATS,
                      help="trace file format (default auto-sniff)")
    comp.add_argument("--report", default="report.json",
                      help="JSON report path (default report.json)")
    comp.add_argument("--windows-out",
                      help="per-window CSV path (default <report>_windows.csv)")
    comp.set_defaults(func=cmd_compare)

    hor = sub.add_parser("horizon", help="per-candidate prediction horizons")
    hor.add_argument("--config", help="JSON config file (flags override it)")
    hor.add_argument("--measured", required=True, help="measured trace file")
    hor.add_argument("--candidate", action="append", required=True,
                     metavar="NAME=FILE", help="candidate trace (repeatable)")
    hor.add_argument("--threshold", type=float,
                     help="NRMSE threshold (default 1.0)")
    hor.add_argument("--windows", type=int, dest="n_windows",
                     help="number of cumulative windows (default 10)")
    hor.add_argument("--grid-points", type=int, dest="grid_points",
                     help="common-grid sample count (default 4700)")
    hor.add_argument("--nrmse-mean", choices=("simulated", "measured"),
                     dest="mean_from", help="which series supplies the "
                     "normalizing mean (default simulated)")
    hor.add_argument("--format", choices=_TRACE_FORMATS,
                     help="trace file format (default auto-sniff)")
    hor.add_argument("--report", help="optional JSON report path")
    hor.set_defaults(func=cmd_horizon)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except JerkLabError as exc:  # pragma: no cover - defensive catch-all
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
