"""Command-line surface: figure reproduction sweeps and verification checks.

Subcommands: simulate range-angle | simulate time-range | focus | verify |
compare. Exit codes: 0 success, 1 validation error, 2 expected-property
failure in verify.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace

from .analysis import (
    check_causality,
    check_naive_focus_constancy,
    check_retarded_invariance,
    compare_models,
    estimate_focus_velocity,
)
from .arrayfactor import GatingMode
from .config import ConfigError, ValidationError, load_config
from .grid import AXIS_TIME, find_focus, sweep_range_angle, sweep_time_range
from .gridio import grid_to_text, read_grid, write_grid
from .model import C_VACUUM, CausalTimeModulated, ExcitationWindow, NaiveTimeModulated

_TIME_UNITS = {"ns": 1e-9, "s": 1.0}
_ANGLE_UNITS = {"deg": math.pi / 180.0, "rad": 1.0}


def parse_time(text: str) -> float:
    """Time with optional suffix (ns, s); bare numbers are seconds."""
    return _parse_quantity(text, _TIME_UNITS)


def parse_angle(text: str) -> float:
    """Angle with optional suffix (deg, rad); bare numbers are radians."""
    return _parse_quantity(text, _ANGLE_UNITS)


def _parse_quantity(text: str, units: dict) -> float:
    text = text.strip()
    for suffix in sorted(units, key=len, reverse=True):
        if text.endswith(suffix):
            head = text[: -len(suffix)].strip()
            # "s" alone is also the tail of "ns"; only accept a numeric head
            try:
                return float(head) * units[suffix]
            except ValueError:
                continue
    return float(text)


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    if args.kind == "range-angle":
        if args.t is None:
            raise ValidationError("simulate range-angle requires --t")
        grid = sweep_range_angle(cfg.sim, cfg.r_axis, cfg.theta_axis,
                                 parse_time(args.t), workers=args.workers,
                                 metadata=cfg.resolved)
    else:
        theta = parse_angle(args.theta) if args.theta is not None else cfg.sim.focus.theta0
        grid = sweep_time_range(cfg.sim, cfg.t_axis, cfg.r_axis, theta,
                                workers=args.workers, metadata=cfg.resolved)
    _emit(grid_to_text(grid), args.out)
    return 0


def _cmd_focus(args) -> int:
    grid = read_grid(args.grid)
    traj = find_focus(grid, slice_axis=AXIS_TIME if AXIS_TIME in
                      (grid.axis1.kind, grid.axis2.kind) else None)
    c = (grid.metadata.get("array") or {}).get("c_m_per_s", C_VACUUM)
    report = estimate_focus_velocity(traj, c=c, min_peak_db=args.min_peak_db)
    lines = [
        f"slices: {len(traj.slice_coords)} (omitted {traj.omitted_slices})",
        f"fit points: {report.n_points}",
        f"slope: {report.slope:.6g} m/s",
        f"intercept: {report.intercept:.6g} m",
        f"residual: {report.residual:.6g} m",
        f"relative error vs c={c:.6g}: {report.relative_error_vs_c:.3e}",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    if args.json:
        doc = report.to_dict()
        doc["trajectory"] = {
            "slice_kind": traj.slice_kind,
            "peak_kind": traj.peak_kind,
            "slice_coords": traj.slice_coords.tolist(),
            "peak_coords": traj.peak_coords.tolist(),
            "peak_db": traj.peak_db.tolist(),
        }
        with open(args.json, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def _verify_battery(cfg, samples: int):
    """Run every check; yields (name, expected_held, detail, report_dict)."""
    sim = cfg.sim
    r1 = cfg.r1
    t_m = cfg.t_m
    if r1 is None:
        if t_m is None or t_m >= 0:
            raise ValidationError("verify requires focus.r1_m (or a negative focus.t_m_ns)")
        r1 = -t_m * sim.geom.c
    T = cfg.T if cfg.T is not None else 30e-9

    from .model import ConstantOffset  # local to keep module top uncluttered

    constant = ConstantOffset(t_m=t_m if t_m is not None else -r1 / sim.geom.c)
    naive = NaiveTimeModulated(r1=r1, T=T)
    causal = CausalTimeModulated(r1=r1, T=T)
    ungated = replace(sim, gating=GatingMode.NONE)
    seed = cfg.seed

    rep = check_retarded_invariance(replace(ungated, model=constant),
                                    sample_count=samples, seed=seed)
    yield ("constant retarded invariance", rep.passed,
           f"max dev {rep.max_relative_deviation:.3e} (tol {rep.tolerance:g})", rep.to_dict())

    rep = check_retarded_invariance(replace(ungated, model=causal),
                                    sample_count=samples, seed=seed)
    yield ("causal retarded invariance", rep.passed,
           f"max dev {rep.max_relative_deviation:.3e} (tol {rep.tolerance:g})", rep.to_dict())

    rep = check_retarded_invariance(replace(ungated, model=naive),
                                    sample_count=samples, tolerance=1e-3, seed=seed)
    yield ("naive violates retarded invariance", not rep.passed,
           f"max dev {rep.max_relative_deviation:.3e} (must exceed {rep.tolerance:g})",
           rep.to_dict())

    rep = check_naive_focus_constancy(replace(ungated, model=naive), n_time_samples=samples)
    yield ("naive focus constancy", rep.passed,
           f"spread {rep.max_relative_deviation:.3e}, |AF| = {rep.magnitude:.6f}",
           rep.to_dict())

    window = cfg.sim.window
    if not math.isfinite(window.t_start):
        window = ExcitationWindow(t_start=0.0, t_end=window.t_end)

    grid = sweep_time_range(replace(ungated, model=naive), cfg.t_axis, cfg.r_axis,
                            sim.focus.theta0, metadata=cfg.resolved)
    rep = check_causality(grid, window, c=sim.geom.c)
    yield ("naive model breaks causality", not rep.passed,
           f"{rep.violation_count} cells outside the light cone", rep.to_dict())

    gated_sim = replace(sim, model=causal, window=window, gating=GatingMode.EMISSION_TIME)
    grid = sweep_time_range(gated_sim, cfg.t_axis, cfg.r_axis, sim.focus.theta0,
                            metadata=cfg.resolved)
    rep = check_causality(grid, window, c=sim.geom.c)
    yield ("gated causal model is causal", rep.passed,
           f"{rep.violation_count} violations", rep.to_dict())


def _cmd_verify(args) -> int:
    cfg = load_config(args.config)
    lines = []
    reports = {}
    all_ok = True
    for name, ok, detail, doc in _verify_battery(cfg, args.samples):
        status = "PASS" if ok else "FAIL"
        all_ok &= ok
        lines.append(f"{status} {name}: {detail}")
        reports[name] = {"expected_outcome_held": ok, "report": doc}
    lines.append("verify: " + ("all expected outcomes hold" if all_ok
                               else "expected-property failure"))
    _emit("\n".join(lines) + "\n", args.out)
    if args.json:
        with open(args.json, "w", encoding="utf-8", newline="\n") as fh:
            json.dump({"passed": all_ok, "checks": reports}, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if all_ok else 2


def _cmd_compare(args) -> int:
    cfg = load_config(args.config)
    sim = cfg.sim
    if not isinstance(sim.model, (NaiveTimeModulated, CausalTimeModulated)):
        r1, T = cfg.r1, cfg.T if cfg.T is not None else 30e-9
        if r1 is None:
            raise ValidationError("compare requires focus.r1_m")
        sim = replace(sim, model=NaiveTimeModulated(r1=r1, T=T))
    theta = parse_angle(args.theta) if args.theta is not None else sim.focus.theta0
    cmp = compare_models(sim, cfg.t_axis, cfg.r_axis, theta, workers=args.workers)
    cmp.naive.metadata = dict(cfg.resolved, variant="naive")
    cmp.causal.metadata = dict(cfg.resolved, variant="causal")
    if args.out:
        write_grid(cmp.naive, args.out + "-naive.csv")
        write_grid(cmp.causal, args.out + "-causal.csv")
        with open(args.out + "-diff.csv", "w", encoding="utf-8", newline="\n") as fh:
            _write_diff(cmp, fh)
    else:
        sys.stdout.write(grid_to_text(cmp.naive))
        sys.stdout.write(grid_to_text(cmp.causal))
        _write_diff(cmp, sys.stdout)
    return 0


def _write_diff(cmp, fh) -> None:
    fh.write("# per-cell dB difference, naive minus causal, each grid's own normalization\n")
    fh.write("t_ns,r_m,delta_db\n")
    t = cmp.naive.axis1.values() * 1e9
    r = cmp.naive.axis2.values()
    for i in range(cmp.naive.axis1.count):
        for j in range(cmp.naive.axis2.count):
            fh.write(f"{t[i]:.9g},{r[j]:.9g},{cmp.difference_db[i, j]:.9g}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdasim",
        description="Frequency diverse array beampattern simulator and causality checker",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="sweep a power grid and emit CSV")
    sim.add_argument("kind", choices=["range-angle", "time-range"])
    sim.add_argument("--config", required=True)
    sim.add_argument("--t", help="observation time for range-angle grids (e.g. 0ns)")
    sim.add_argument("--theta", help="observation angle for time-range grids (e.g. -30deg)")
    sim.add_argument("--out")
    sim.add_argument("--workers", type=int, default=1)
    sim.set_defaults(func=_cmd_simulate)

    foc = sub.add_parser("focus", help="extract the focus ridge from a grid CSV")
    foc.add_argument("--grid", required=True)
    foc.add_argument("--min-peak-db", type=float, default=None,
                     help="fit only slices whose peak reaches this level")
    foc.add_argument("--out")
    foc.add_argument("--json")
    foc.set_defaults(func=_cmd_focus)

    ver = sub.add_parser("verify", help="run the causality and invariance battery")
    ver.add_argument("--config", required=True)
    ver.add_argument("--samples", type=int, default=1000)
    ver.add_argument("--out")
    ver.add_argument("--json")
    ver.set_defaults(func=_cmd_verify)

    cmp_ = sub.add_parser("compare", help="naive vs causal grids under identical parameters")
    cmp_.add_argument("--config", required=True)
    cmp_.add_argument("--theta")
    cmp_.add_argument("--out", help="path prefix for -naive/-causal/-diff CSV files")
    cmp_.add_argument("--workers", type=int, default=1)
    cmp_.set_defaults(func=_cmd_compare)

    return parser


def _normalize_argv(argv):
    """Glue negative quantities onto their flags so argparse accepts -30deg."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (tok in ("--t", "--theta", "--min-peak-db") and i + 1 < len(argv)
                and argv[i + 1].startswith("-") and len(argv[i + 1]) > 1
                and argv[i + 1][1].isdigit()):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def cli_main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_normalize_argv(list(argv)))
        return args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
