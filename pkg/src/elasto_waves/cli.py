"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 unsupported configuration, 4 grid too small for the requested time.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from .core import ModelParams, State
from .interaction import (
    UNSUPPORTED_EXPLANATION,
    BoundaryKind,
    Fan,
    PiecewiseSolution,
    Scenario,
    UnsupportedConfiguration,
    build,
    level_set_family,
)
from .riemann import WaveKind, middle_state, solve_riemann
from .verify import corrupt_shock_speeds, default_horizon, sampling_window, verify_solution

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3
EXIT_DOMAIN = 4

TOL_ENV = "ELASTO_WAVES_TOL"


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _num(x: float):
    """JSON-safe float: infinities become null."""
    x = float(x)
    return x if math.isfinite(x) else None


def _pair(st: State) -> list:
    return [float(st.u), float(st.sigma)]


def parse_state(text: str) -> State:
    parts = text.split(",")
    if len(parts) != 2:
        raise CliError(EXIT_USAGE, f"expected 'u,sigma', got {text!r}")
    try:
        return State(float(parts[0]), float(parts[1]))
    except ValueError as e:
        raise CliError(EXIT_USAGE, f"bad state {text!r}: {e}") from None


def _params(k: float) -> ModelParams:
    try:
        return ModelParams(k)
    except ValueError as e:
        raise CliError(EXIT_USAGE, str(e)) from None


def env_tolerance() -> float | None:
    raw = os.environ.get(TOL_ENV)
    if raw is None or raw == "":
        return None
    try:
        tol = float(raw)
    except ValueError:
        raise CliError(EXIT_USAGE, f"{TOL_ENV} must be a number, got {raw!r}") from None
    if not (tol >= 0 and math.isfinite(tol)):
        raise CliError(EXIT_USAGE, f"{TOL_ENV} must be finite and non-negative")
    return tol


def scenario_from_dict(doc) -> Scenario:
    if not isinstance(doc, dict):
        raise CliError(EXIT_USAGE, "scenario must be a JSON object")
    missing = [key for key in ("k", "left", "middle", "right", "x0", "x1") if key not in doc]
    if missing:
        raise CliError(EXIT_USAGE, f"scenario is missing {', '.join(missing)}")

    def real(key, v):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise CliError(EXIT_USAGE, f"{key} must be a number")
        return float(v)

    def state(key):
        v = doc[key]
        if not isinstance(v, list) or len(v) != 2:
            raise CliError(EXIT_USAGE, f"{key} must be [u, sigma]")
        try:
            return State(real(key, v[0]), real(key, v[1]))
        except ValueError as e:
            raise CliError(EXIT_USAGE, f"{key}: {e}") from None

    p = _params(real("k", doc["k"]))
    try:
        return Scenario(p, state("left"), state("middle"), state("right"),
                        real("x0", doc["x0"]), real("x1", doc["x1"]))
    except ValueError as e:
        raise CliError(EXIT_USAGE, str(e)) from None


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise CliError(EXIT_USAGE, f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise CliError(EXIT_USAGE, f"{path} is not valid JSON: {e}") from None
    return scenario_from_dict(doc)


def build_solution(s: Scenario) -> PiecewiseSolution:
    try:
        return build(s, env_tolerance())
    except UnsupportedConfiguration as e:
        raise CliError(EXIT_UNSUPPORTED, f"unsupported configuration: {e}") from None


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as e:
        raise CliError(EXIT_USAGE, f"cannot write {out}: {e.strerror}") from None


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


# -- documents ----------------------------------------------------------------

def riemann_document(p: ModelParams, left: State, right: State, origin: float) -> dict:
    fan = solve_riemann(p, left, right, origin)
    waves = []
    for w in fan.waves:
        item = {
            "family": w.family,
            "kind": w.kind.value,
            "left_state": _pair(w.left_state),
            "right_state": _pair(w.right_state),
        }
        if w.kind is WaveKind.SHOCK:
            item["speed"] = w.speed
        else:
            item["xi_range"] = list(w.speed_range)
        waves.append(item)
    return {
        "k": p.k,
        "origin": origin,
        "left": _pair(left),
        "right": _pair(right),
        "middle_state": _pair(middle_state(p, left, right)),
        "waves": waves,
    }


def _curve_doc(curve, kind: BoundaryKind, family: int | None = None) -> dict:
    doc = {
        "kind": kind.value,
        "shape": curve.kind,
        "a": curve.a,
        "c": curve.c,
        "x_ref": curve.x_ref,
        "t_offset": curve.t_offset,
        "valid_t": [_num(curve.valid_t[0]), _num(curve.valid_t[1])],
    }
    if family is not None:
        doc["family"] = family
    return doc


def _tag_doc(sol: PiecewiseSolution) -> dict:
    return {
        "case": sol.tag.case_no,
        "subcase": sol.tag.subcase,
        "branch": sol.tag.branch.value,
        "family": sol.tag.family,
    }


def events_document(sol: PiecewiseSolution) -> dict:
    doc = _tag_doc(sol)
    doc["events"] = [{"t": e.t, "x": e.x, "kind": e.kind.value} for e in sol.events]
    doc["curves"] = [_curve_doc(c, kind) for c, kind in sol.curves()]
    return doc


def solution_document(sol: PiecewiseSolution) -> dict:
    from .fixtures import scenario_to_dict

    phases = []
    for ph in sol.phases:
        regions = []
        for r in ph.regions:
            if isinstance(r, Fan):
                regions.append({"type": "fan", "family": r.family, "center": r.center, "ref": _pair(r.ref)})
            else:
                regions.append({"type": "constant", "state": _pair(r.state)})
        phases.append({
            "t_start": ph.t_start,
            "t_end": _num(ph.t_end),
            "boundaries": [_curve_doc(b.curve, b.kind, b.family) for b in ph.boundaries],
            "regions": regions,
        })
    doc = {"scenario": scenario_to_dict(sol.scenario)}
    doc.update(_tag_doc(sol))
    doc["events"] = [{"t": e.t, "x": e.x, "kind": e.kind.value} for e in sol.events]
    doc["phases"] = phases
    doc["diagnostics"] = list(sol.diagnostics)
    return doc


def solution_csv(sol: PiecewiseSolution, t_max: float, nx: int, nt: int) -> str:
    x_lo, x_hi = sampling_window(sol, t_max)
    xs = np.linspace(x_lo, x_hi, nx)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "x", "u", "sigma", "region"])
    for j in range(1, nt + 1):
        t = t_max * j / nt
        u, sg = sol.eval_many(xs, t)
        i = sol.phase_index(t)
        reg = np.searchsorted(np.asarray(sol.phases[i].positions(t), dtype=float), xs, side="right")
        for x, a, b, r in zip(xs, u, sg, reg):
            w.writerow([format(t, ".17g"), format(x, ".17g"), format(a, ".17g"), format(b, ".17g"), f"{i}:{r}"])
    return buf.getvalue()


# -- commands -----------------------------------------------------------------

def cmd_riemann(args) -> int:
    p = _params(args.k)
    left, right = parse_state(args.left), parse_state(args.right)
    _write(_dumps(riemann_document(p, left, right, args.origin)), args.out)
    return EXIT_OK


def cmd_interact(args) -> int:
    s = load_scenario(args.scenario)
    sol = build_solution(s)
    if args.emit == "events":
        text = _dumps(events_document(sol))
    elif args.emit == "solution":
        text = _dumps(solution_document(sol))
    else:
        t_max = default_horizon(sol) if args.t_max is None else args.t_max
        if not t_max > 0:
            raise CliError(EXIT_USAGE, "--t-max must be positive")
        if args.nx < 2 or args.nt < 1:
            raise CliError(EXIT_USAGE, "--nx must be >= 2 and --nt >= 1")
        text = solution_csv(sol, t_max, args.nx, args.nt)
    _write(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    s = load_scenario(args.scenario)
    sol = build_solution(s)
    if args.samples < 1:
        raise CliError(EXIT_USAGE, "--samples must be >= 1")
    if args.t_max is not None and not args.t_max > 0:
        raise CliError(EXIT_USAGE, "--t-max must be positive")
    if args.inject_speed_error:
        sol = corrupt_shock_speeds(sol, args.inject_speed_error)
    rep = verify_solution(sol, args.samples, t_max=args.t_max)
    _write(_dumps(rep.to_dict()), args.out)
    return EXIT_OK if rep.passed else EXIT_VERIFY


def _frontrack_cells(s: Scenario, centers: np.ndarray, t: float, tol):
    from .core import invariant
    from .numerics import front_track_scalar

    fam = level_set_family(s, tol)
    if fam is None:
        raise CliError(EXIT_UNSUPPORTED, "unsupported configuration: " + UNSUPPORTED_EXPLANATION)
    k = s.k
    shift = k if fam == 2 else -k
    w = invariant(s.params, fam, s.left)
    try:
        st = front_track_scalar(s.left.u + shift, s.middle.u + shift, s.right.u + shift, s.x0, s.x1, t)
    except NotImplementedError as e:
        raise CliError(EXIT_UNSUPPORTED, f"front tracking cannot continue: {e}") from None
    v = np.array([st.value(float(x)) for x in centers])
    u = v - shift
    # w = sigma + shift * u on the level set
    sg = w - shift * u
    fronts = []
    for f in st.fronts:
        ul, ur = f.left - shift, f.right - shift
        fronts.append({"x": f.position, "kind": f.kind,
                       "left": [ul, w - shift * ul], "right": [ur, w - shift * ur]})
    return (u, sg), fronts


def cmd_oracle(args) -> int:
    from .numerics import (DomainTooSmall, Grid1D, check_domain, fv_path_conservative,
                           glimm_evolve, grid_for, initial_cells, l1_distance, cells_to_csv)
    from .numerics import kernels

    s = load_scenario(args.scenario)
    if not (args.t > 0 and math.isfinite(args.t)):
        raise CliError(EXIT_USAGE, "--t must be positive")
    if args.cells < 10:
        raise CliError(EXIT_USAGE, "--cells must be >= 10")
    if args.seed < 0:
        raise CliError(EXIT_USAGE, "--seed must be non-negative")
    tol = env_tolerance()
    sol = build_solution(s)
    try:
        if args.x_min is None and args.x_max is None:
            grid = grid_for(s, args.t, args.cells)
        else:
            auto = grid_for(s, args.t, args.cells)
            grid = Grid1D(auto.x_min if args.x_min is None else args.x_min,
                          auto.x_max if args.x_max is None else args.x_max, args.cells)
        check_domain(s, grid, args.t)
    except DomainTooSmall as e:
        raise CliError(EXIT_DOMAIN, f"domain too small: {e}") from None
    except ValueError as e:
        raise CliError(EXIT_USAGE, str(e)) from None

    fronts = None
    if args.method == "fv":
        cells = fv_path_conservative(s.params, s, grid, args.t)
    elif args.method == "glimm":
        cells = glimm_evolve(s.params, *initial_cells(s, grid), grid, args.t, seed=args.seed)
    else:
        cells, fronts = _frontrack_cells(s, grid.centers, args.t, tol)
    if args.out is not None:
        _write(cells_to_csv(grid, cells), args.out)
    summary = {
        "method": args.method,
        "cells": args.cells,
        "seed": args.seed,
        "t": args.t,
        "x_min": grid.x_min,
        "x_max": grid.x_max,
        "dx": grid.dx,
        "backend": kernels.BACKEND,
        "l1_distance_to_exact": l1_distance(cells, sol, grid, args.t),
    }
    if fronts is not None:
        summary["fronts"] = fronts
    sys.stdout.write(_dumps(summary))
    return EXIT_OK


# -- parser -------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(EXIT_USAGE, message)


def make_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="elasto-waves", description="Exact wave solutions of the velocity-stress system.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("riemann", help="solve a two-state Riemann problem")
    r.add_argument("--k", type=float, required=True, help="wave speed parameter (> 0)")
    r.add_argument("--left", required=True, metavar="U,SIGMA")
    r.add_argument("--right", required=True, metavar="U,SIGMA")
    r.add_argument("--origin", type=float, default=0.0)
    r.add_argument("--out", help="output path (default stdout)")
    r.set_defaults(func=cmd_riemann)

    i = sub.add_parser("interact", help="build the exact solution of a three-state scenario")
    i.add_argument("--scenario", required=True, help="scenario JSON file")
    i.add_argument("--emit", choices=("events", "solution", "csv"), default="events")
    i.add_argument("--t-max", type=float, default=None, help="csv: final time (default: twice the last event time, at least 4)")
    i.add_argument("--nx", type=int, default=201, help="csv: points in x")
    i.add_argument("--nt", type=int, default=100, help="csv: points in t")
    i.add_argument("--out", help="output path (default stdout)")
    i.set_defaults(func=cmd_interact)

    v = sub.add_parser("verify", help="check the exact solution against the jump and smoothness conditions")
    v.add_argument("--scenario", required=True)
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--t-max", type=float, default=None)
    v.add_argument("--out", help="output path (default stdout)")
    v.add_argument("--inject-speed-error", type=float, default=0.0, help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="compare a numerical solution with the exact one")
    o.add_argument("--scenario", required=True)
    o.add_argument("--method", choices=("fv", "glimm", "frontrack"), required=True)
    o.add_argument("--t", type=float, required=True)
    o.add_argument("--cells", type=int, default=400)
    o.add_argument("--seed", type=int, default=0, help="glimm: sequence offset")
    o.add_argument("--x-min", type=float, default=None)
    o.add_argument("--x-max", type=float, default=None)
    o.add_argument("--out", help="cell CSV path (x_center,u,sigma); omitted: summary only")
    o.set_defaults(func=cmd_oracle)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
        return args.func(args)
    except CliError as e:
        print(f"elasto-waves: error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
