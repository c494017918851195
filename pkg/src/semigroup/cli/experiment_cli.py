#!/usr/bin/env python
"""
Batch front-end: ``python -m src.semigroup <command> --config <file>``.

Every command writes its CSVs, ``manifest.json`` and ``summary.txt`` under
``--out``. Exit codes: 0 success, 2 invalid config, 3 diagnostics that forbid
trusting the result (partial outputs are still written), 4 numerical abort.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any

from dotenv import load_dotenv

from src.semigroup.bowen import (
    TRACE_COLUMNS,
    bowen_root,
    box_counting_dimension,
    moran_dimension,
    pressure_at_t,
)
from src.semigroup.cli.acceptance import ACCEPTANCE_COLUMNS, run_acceptance
from src.semigroup.cli.experiment_config import Experiment, load_config, validate_config
from src.semigroup.cli.outputs import RunOutputs
from src.semigroup.errors import ConfigError, DiagnosticError, Flag, NumericalAbort, SemigroupError
from src.semigroup.localmeasure import LOCAL_COLUMNS, local_pressure, sandwich_check
from src.semigroup.lyapunov import classify_point, lyapunov_envelope
from src.semigroup.numerics_config import CARATHEODORY_EXTENSION, P_TOL, T_TOL
from src.semigroup.parallel import default_threads, set_default_threads
from src.semigroup.pressure import (
    CELL_COLUMNS,
    PressureEstimate,
    caratheodory_pressure,
    capacity_pressure,
    entropy,
)
from src.semigroup.skew import BOUND_COLUMNS, verify_pressure_identity

logger = logging.getLogger(__name__)

COMMANDS = (
    "pressure",
    "entropy",
    "bowen-root",
    "lyapunov",
    "classify",
    "local-pressure",
    "skew-check",
    "dimension",
    "acceptance",
)

# Flags that turn a finished run into exit code 3
FAILING_FLAGS = frozenset({Flag.UNRESOLVED, Flag.NONMONOTONE, Flag.COVER_FAIL, Flag.CHECK_FAIL})

SLOPE_COLUMNS = ("epsilon", "slope", "intercept", "residual", "resolved")
LYAPUNOV_COLUMNS = ("x", "n", "min_lambda", "max_lambda", "mode")
CLASSIFY_COLUMNS = ("x", "n_max", "lower", "upper", "in_A_positive", "in_A_interval", "in_B", "certificate")
IDENTITY_COLUMNS = ("c", "left", "right", "fibre_pressure", "log_m", "passed", "bounds_hold", "bounds_checked")
DIMENSION_COLUMNS = ("method", "value", "flags")
SANDWICH_COLUMNS = ("inf_lower", "pressure", "sup_upper", "tol", "passed")


def _pressure_rows(outputs: RunOutputs, estimate: PressureEstimate) -> None:
    outputs.write_csv("pressure.csv", CELL_COLUMNS, (cell.to_row() for cell in estimate.per_cell))
    outputs.write_csv(
        "slopes.csv",
        SLOPE_COLUMNS,
        (
            {
                "epsilon": fit.epsilon,
                "slope": fit.slope,
                "intercept": fit.intercept,
                "residual": fit.residual,
                "resolved": fit.resolved,
            }
            for fit in estimate.slope_fits
        ),
    )


def _plus_minus(estimate: PressureEstimate) -> float:
    spread = estimate.spread
    return 0.05 if math.isnan(spread) else max(0.05, spread)


def run_pressure(experiment: Experiment, outputs: RunOutputs, threads: int) -> set[Flag]:
    section = experiment.command("pressure")
    method = section.get("method", "capacity")
    cloud = experiment.cloud()
    if method == "capacity":
        estimate = capacity_pressure(
            experiment.system, cloud, experiment.schedule, section.get("variant", "separated"), threads
        )
    elif method == "caratheodory":
        options = experiment.command("caratheodory")
        estimate = caratheodory_pressure(
            experiment.system,
            cloud,
            experiment.schedule,
            weighting=options.get("weighting", "center"),
            extension=int(options.get("extension", CARATHEODORY_EXTENSION)),
            threads=threads,
        )
    else:
        raise ConfigError(f"unknown method {method!r}", "config.commands.pressure.method")
    _pressure_rows(outputs, estimate)
    outputs.add_summary(f"P = {estimate.value:.3f} ± {_plus_minus(estimate):.2f}")
    return set(estimate.flags)


def run_entropy(experiment: Experiment, outputs: RunOutputs, threads: int) -> set[Flag]:
    section = experiment.command("pressure")
    estimate = entropy(
        experiment.system,
        experiment.cloud(),
        experiment.schedule,
        section.get("variant", "separated"),
        threads,
    )
    _pressure_rows(outputs, estimate)
    outputs.add_summary(f"h = {estimate.value:.3f} ± {_plus_minus(estimate):.2f}")
    return set(estimate.flags)


def run_bowen(experiment: Experiment, outputs: RunOutputs, threads: int) -> set[Flag]:
    section = experiment.command("bowen")
    cloud = experiment.cloud()
    t_tol = float(section.get("t_tol", T_TOL))
    result = bowen_root(
        experiment.system,
        cloud,
        experiment.schedule,
        t_tol=t_tol,
        p_tol=float(section.get("p_tol", P_TOL)),
        variant=section.get("variant", "separated"),
        threads=threads,
        box_scales=section.get("box_scales"),
        moran_ratios=section.get("moran_ratios"),
    )
    trace = dict(result.pressure_trace)
    for t in section.get("t_grid", []):
        t = float(t)
        if t not in trace:
            trace[t] = pressure_at_t(experiment.system, cloud, t, experiment.schedule, threads=threads)
    outputs.write_csv(
        "bowen_trace.csv", TRACE_COLUMNS, ({"t": t, "pressure": p} for t, p in sorted(trace.items()))
    )
    outputs.add_summary(f"t* = {result.t_star:.2f} ± {2 * t_tol:.2f}")
    outputs.add_summary(f"h = {result.entropy:.3f}, log a in [{result.alpha:.3f}, {result.beta:.3f}]")
    if result.dim_box is not None:
        outputs.add_summary(f"box-counting dimension = {result.dim_box:.3f} (proxy)")
    if result.dim_moran is not None:
        outputs.add_summary(f"Moran dimension = {result.dim_moran:.4f}")
    return set(result.flags)


def _points(section: dict[str, Any], name: str) -> list[float]:
    points = section.get("points")
    if not isinstance(points, list) or not points:
        raise ConfigError("at least one point is required", f"config.commands.{name}.points")
    return [float(x) for x in points]


def run_lyapunov(experiment: Experiment, outputs: RunOutputs, threads: int) -> set[Flag]:
    section = experiment.command("lyapunov")
    schedule = experiment.schedule
    n_max = int(section.get("n_max", max(schedule.word_lengths)))
    rows = []
    for x in _points(section, "lyapunov"):
        report = lyapunov_envelope(
            experiment.system, x, n_max, schedule.word_budget, schedule.seed, schedule.mc_samples
        )
        rows.extend({"x": x, **row} for row in report.rows())
        outputs.add_summary(f"x = {x:g}: lambda in [{report.lower:.4f}, {report.upper:.4f}] at n = {n_max}")
    outputs.write_csv("lyapunov.csv", LYAPUNOV_COLUMNS, rows)
    return set()


def run_classify(experiment: Experiment, outputs: RunOutputs, threads: int) -> set[Flag]:
    section = experiment.command("classify")
    schedule = experiment.schedule
    n_max = int(section.get("n_max", max(schedule.word_lengths)))
    interval = section.get("interval")
    kwargs: dict[str, Any] = {}
    if "tau" in section:
        kwargs["tau"] = float(section["tau"])
    if "m_cap" in section:
        kwargs["m_cap"] = float(section["m_cap"])
    if "epsilons" in section:
        kwargs["epsilons"] = tuple(float(e) for e in section["epsilons"])
    rows = []
    for x in _points(section, "classify"):
        report = classify_point(
            experiment.system,
            x,
            n_max,
            interval=None if interval is None else (float(interval[0]), float(interval[1])),
            word_budget=schedule.word_budget,
            seed=schedule.seed,
            **kwargs,
        )
        rows.append(
            {
                "x": x,
                "n_max": n_max,
                "lower": report.lower,
                "upper": report.upper,
                "in_A_positive": report.in_A_positive,
                "in_A_interval": report.in_A_interval,
                "in_B": report.in_B,
                "certificate": report.certificate.description if report.certificate else None,
            }
        )
        outputs.add_summary(f"x = {x:g}: A(0,inf) {report.in_A_positive}, B {report.in_B}")
    outputs.write_csv("classify.csv", CLASSIFY_COLUMNS, rows)
    return set()


def run_local_pressure(experiment: Experiment, outputs: RunOutputs, threads: int) -> set[Flag]:
    section = experiment.command("local_pressure")
    measure = experiment.measure()
    points = _points(section, "local_pressure")
    horizons = section.get("horizons", [6, 8, 10])
    radii = section.get("radii", [0.1, 0.05])
    flags: set[Flag] = set()
    if section.get("sandwich", False):
        report = sandwich_check(
            measure,
            experiment.system,
            experiment.cloud(),
            experiment.schedule,
            points,
            horizons,
            radii,
            tol=float(section.get("tol", 0.1)),
            method=section.get("method", "caratheodory"),
            word_budget=experiment.schedule.word_budget,
            threads=threads,
        )
        reports = list(report.points)
        outputs.write_csv("sandwich.csv", SANDWICH_COLUMNS, [report.to_dict()])
        outputs.add_summary(
            f"inf lower = {report.inf_lower:.3f} <= P = {report.pressure:.3f} <= sup upper = {report.sup_upper:.3f}"
            f" ({'holds' if report.passed else 'fails'})"
        )
        flags |= report.flags
    else:
        reports = [
            local_pressure(measure, experiment.system, x, horizons, radii, experiment.schedule.word_budget, threads)
            for x in points
        ]
    rows = []
    for item in reports:
        rows.extend(item.rows())
        flags |= item.flags
        outputs.add_summary(f"x = {item.x:g}: local pressure in [{item.lower:.3f}, {item.upper:.3f}]")
    outputs.write_csv("local_pressure.csv", LOCAL_COLUMNS, rows)
    return flags


def run_skew(experiment: Experiment, outputs: RunOutputs, threads: int) -> set[Flag]:
    section = experiment.command("skew")
    cs = section.get("c", [0.0])
    cs = [float(c) for c in (cs if isinstance(cs, list) else [cs])]
    cloud = experiment.cloud()
    flags: set[Flag] = set()
    bound_rows: list[dict[str, Any]] = []
    identity_rows: list[dict[str, Any]] = []
    for c in cs:
        check = verify_pressure_identity(
            experiment.system,
            experiment.system.potentials,
            c,
            cloud,
            experiment.schedule,
            tol=float(section.get("tol", 0.1)),
            one_sided=bool(section.get("one_sided", False)),
            threads=threads,
        )
        bound_rows.extend({"c": c, **row.to_row()} for row in check.bounds)
        identity_rows.append({"c": c, **check.to_dict()})
        flags |= check.flags
        if not check.passed:
            flags.add(Flag.CHECK_FAIL)
        outputs.add_summary(
            f"c = {c:g}: skew pressure {check.left:.3f} vs {check.right:.3f} ({'holds' if check.passed else 'fails'})"
        )
    outputs.write_csv("skew_bounds.csv", ("c", *BOUND_COLUMNS), bound_rows)
    outputs.write_csv("skew_identity.csv", IDENTITY_COLUMNS, identity_rows)
    return flags


def run_dimension(experiment: Experiment, outputs: RunOutputs, threads: int) -> set[Flag]:
    section = experiment.command("dimension")
    rows = []
    scales = section.get("scales")
    if scales is not None:
        value = box_counting_dimension(experiment.cloud(), [float(r) for r in scales])
        rows.append({"method": "box_counting", "value": value, "flags": Flag.PROXY})
        outputs.add_summary(f"box-counting dimension = {value:.4f} (proxy)")
    ratios = section.get("moran_ratios")
    if ratios is not None:
        value = moran_dimension([float(r) for r in ratios])
        rows.append({"method": "moran", "value": value, "flags": ""})
        outputs.add_summary(f"Moran dimension = {value:.4f}")
    if not rows:
        raise ConfigError("give scales, moran_ratios or both", "config.commands.dimension")
    outputs.write_csv("dimension.csv", DIMENSION_COLUMNS, rows)
    return {Flag.PROXY} if scales is not None else set()


def run_acceptance_command(experiment: Experiment | None, outputs: RunOutputs, threads: int) -> set[Flag]:
    section = experiment.command("acceptance") if experiment is not None else {}
    results = run_acceptance(section.get("criteria"), threads)
    outputs.write_csv("acceptance.csv", ACCEPTANCE_COLUMNS, (r.to_row() for r in results))
    for r in results:
        outputs.add_summary(f"criterion {r.criterion:2d} {'PASS' if r.passed else 'FAIL'}  {r.name}")
    passed = sum(r.passed for r in results)
    outputs.add_summary(f"{passed}/{len(results)} criteria passed")
    return set() if passed == len(results) else {Flag.CHECK_FAIL}


RUNNERS: dict[str, Callable[..., set[Flag]]] = {
    "pressure": run_pressure,
    "entropy": run_entropy,
    "bowen-root": run_bowen,
    "lyapunov": run_lyapunov,
    "classify": run_classify,
    "local-pressure": run_local_pressure,
    "skew-check": run_skew,
    "dimension": run_dimension,
    "acceptance": run_acceptance_command,
}


def run_command(command: str, experiment: Experiment | None, outputs: RunOutputs, threads: int) -> set[Flag]:
    """
    Run one command and write its CSVs and summary lines.

    Args:
        command: One of COMMANDS
        experiment: Validated config; only ``acceptance`` runs without one
        outputs: Writer for the run directory
        threads: Worker count

    Returns:
        Diagnostic flags raised by the computation
    """
    if command not in RUNNERS:
        raise ConfigError(f"unknown command {command!r}", "command")
    if experiment is None and command != "acceptance":
        raise ConfigError(f"{command} requires --config", "config")
    return RUNNERS[command](experiment, outputs, threads)


def _write_partial(outputs: RunOutputs, partial: Any) -> None:
    if isinstance(partial, PressureEstimate):
        _pressure_rows(outputs, partial)


def _exit_code(flags: set[Flag]) -> int:
    return 3 if flags & FAILING_FLAGS else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semigroup",
        description="Pressure, entropy, Lyapunov exponents and Bowen dimension of free semigroup actions.",
    )
    parser.add_argument("command", choices=COMMANDS, help="What to compute")
    parser.add_argument("--config", help="Path to the JSON experiment config")
    parser.add_argument("--out", help="Output directory (default: runs/<name>/<command>)")
    parser.add_argument("--threads", type=int, help="Worker threads (default: $SEMIGROUP_THREADS or 1)")
    parser.add_argument("--seed", type=int, help="Overrides schedule.seed in the config")
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    return parser


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the CLI application."""
    load_dotenv()
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.threads is not None and args.threads < 1:
            raise ConfigError("must be a positive integer", "threads")
        if args.seed is not None and args.seed < 0:
            raise ConfigError("must be a non-negative integer", "seed")
        set_default_threads(args.threads)
        threads = default_threads()
        raw: dict[str, Any] = {}
        experiment = None
        if args.config is not None:
            raw = load_config(args.config)
            experiment = validate_config(raw, args.seed)
        elif args.command != "acceptance":
            raise ConfigError(f"{args.command} requires --config", "config")
    except ConfigError as error:
        print(f"Error: {error}", file=sys.stderr)
        return error.exit_code

    name = experiment.name if experiment is not None else "acceptance"
    outputs = RunOutputs(args.out or Path("runs") / name / args.command)
    seed = experiment.schedule.seed if experiment is not None else None
    extra: dict[str, Any] = {}
    try:
        flags = run_command(args.command, experiment, outputs, threads)
        code = _exit_code(flags)
        extra["flags"] = sorted(str(f) for f in flags)
    except ConfigError as error:
        print(f"Error: {error}", file=sys.stderr)
        return error.exit_code
    except DiagnosticError as error:
        logger.warning("%s", error)
        _write_partial(outputs, error.partial)
        outputs.add_summary(f"diagnostic: {error}")
        extra["flags"] = [str(error.flag)]
        code = error.exit_code
    except NumericalAbort as error:
        print(f"Error: {error}", file=sys.stderr)
        outputs.add_summary(f"aborted: {error}")
        extra["flags"] = []
        code = error.exit_code
    except SemigroupError as error:
        print(f"Error: {error}", file=sys.stderr)
        return error.exit_code
    outputs.write_manifest(args.command, raw, seed, threads, {"exit_code": code, **extra})
    outputs.write_summary()
    return code


if __name__ == "__main__":
    sys.exit(main())
