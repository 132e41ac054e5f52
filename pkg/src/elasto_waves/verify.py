"""Weak-form checks for piecewise solutions.

Products ``u sigma_x`` and ``u u_x`` at a jump are taken with the arithmetic
mean of the two traces, i.e. along the straight segment joining them. With
that choice the jump conditions for a discontinuity moving with speed ``s`` are

    -s [u] + [u^2]/2 - [sigma] = 0
    -s [sigma] + mean(u) [sigma] - k^2 [u] = 0
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .core import ModelParams, State, char_speed, invariant, volpert_mean
from .interaction import BoundaryKind, PiecewiseSolution, level_set_family

RH_STRAIGHT_TOL = 1e-12
RH_CURVED_TOL = 1e-8
CONTINUITY_TOL = 1e-9
SMOOTH_TOL = 1e-7
INVARIANT_TOL = 1e-13
LAX_TOL = 1e-12


class TooCloseToBoundary(ValueError):
    pass


@dataclass(frozen=True)
class RHResidual:
    r1: float
    r2: float

    def max_abs(self) -> float:
        return max(abs(self.r1), abs(self.r2))


@dataclass(frozen=True)
class JumpSample:
    t: float
    x: float
    left: State
    right: State
    speed: float

    @property
    def normal(self) -> tuple[float, float]:
        """Unit normal ``(nu_t, nu_x)`` of the curve ``x = phi(t)``."""
        n = math.sqrt(1.0 + self.speed * self.speed)
        return (-self.speed / n, 1.0 / n)


def rh_residual(p: ModelParams, s: float, left: State, right: State) -> RHResidual:
    du = right.u - left.u
    ds = right.sigma - left.sigma
    ubar = volpert_mean(left.u, right.u)
    r1 = -s * du + 0.5 * (right.u ** 2 - left.u ** 2) - ds
    r2 = -s * ds + ubar * ds - p.k ** 2 * du
    return RHResidual(r1, r2)


def jump_measure_contribution(p: ModelParams, j: JumpSample) -> tuple[float, float]:
    """Point-mass densities of the two equations on the jump set."""
    nu_t, nu_x = j.normal
    du = j.right.u - j.left.u
    ds = j.right.sigma - j.left.sigma
    ubar = volpert_mean(j.left.u, j.right.u)
    m1 = nu_t * du + ubar * du * nu_x - ds * nu_x
    m2 = nu_t * ds + ubar * ds * nu_x - p.k ** 2 * du * nu_x
    return (m1, m2)


def _boundary_positions(sol: PiecewiseSolution, t: float) -> list[float]:
    if t <= 0:
        return []
    return sol.phase_at(t).positions(t)


def smooth_residual(sol: PiecewiseSolution, x: float, t: float, h: float | None = None) -> tuple[float, float]:
    """Central-difference residual of both equations at a point of smoothness."""
    if h is None:
        h = 1e-4 * (1.0 + abs(x) + t)
    if h <= 0:
        raise ValueError("h must be positive")
    if t - h <= 0:
        raise TooCloseToBoundary(f"t={t} is within h of the initial line")
    for tt in (t - h, t, t + h):
        for pos in _boundary_positions(sol, tt):
            if abs(x - pos) <= 2 * h:
                raise TooCloseToBoundary(f"({x}, {t}) is within 2h of a boundary curve")
    k = sol.k
    c = sol.eval(x, t)
    xp, xm = sol.eval(x + h, t), sol.eval(x - h, t)
    tp, tm = sol.eval(x, t + h), sol.eval(x, t - h)
    u_x = (xp.u - xm.u) / (2 * h)
    s_x = (xp.sigma - xm.sigma) / (2 * h)
    u_t = (tp.u - tm.u) / (2 * h)
    s_t = (tp.sigma - tm.sigma) / (2 * h)
    return (u_t + c.u * u_x - s_x, s_t + c.u * s_x - k * k * u_x)


@dataclass
class CategoryResult:
    tol: float
    max_residual: float = 0.0
    worst_point: tuple[float, float] | None = None
    samples: int = 0
    applicable: bool = True

    @property
    def passed(self) -> bool:
        return bool((not self.applicable) or self.max_residual <= self.tol)

    def update(self, value: float, t: float, x: float) -> None:
        self.samples += 1
        if not math.isfinite(value):
            value = math.inf
        if value > self.max_residual or self.worst_point is None:
            self.max_residual = max(self.max_residual, value)
            self.worst_point = (float(t), float(x))

    def to_dict(self) -> dict:
        return {
            "max_residual": float(self.max_residual),
            "worst_point": None if self.worst_point is None else {"t": self.worst_point[0], "x": self.worst_point[1]},
            "tol": self.tol,
            "samples": self.samples,
            "applicable": self.applicable,
            "pass": bool(self.passed),
        }


@dataclass
class VerificationReport:
    categories: dict[str, CategoryResult] = field(default_factory=dict)
    t_max: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.categories.values())

    def to_dict(self) -> dict:
        out = {"pass": self.passed, "t_max": float(self.t_max)}
        out.update((name, c.to_dict()) for name, c in self.categories.items())
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def default_horizon(sol: PiecewiseSolution) -> float:
    last = sol.last_event_time or 0.0
    return 2.0 * max(last, 2.0)


def sampling_window(sol: PiecewiseSolution, t_max: float) -> tuple[float, float]:
    s = sol.scenario
    pad = (s.max_speed() + 1.0) * t_max
    return s.x0 - pad, s.x1 + pad


def _sample_times(t0: float, t1: float, n: int) -> np.ndarray:
    return t0 + (np.arange(n) + 0.5) / n * (t1 - t0)


def verify_solution(sol: PiecewiseSolution, n_samples: int = 100, *, t_max: float | None = None,
                    h: float = 1e-4) -> VerificationReport:
    """Sample every boundary curve and an interior grid, reporting the worst residuals.

    Categories: ``rh`` (straight shocks), ``rh_curved`` (square-root shocks),
    ``lax`` (entropy inequalities, violation amount), ``continuity`` (fan
    edges), ``smooth`` (finite-difference residual in smooth regions) and
    ``invariant`` (deviation of the shared Riemann invariant).

    Interior samples cover ``t`` in ``[t_max/4, t_max]``; the central
    difference error in a fan grows like ``h^2 / t^3`` so the earliest times
    are left to the curve checks.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if t_max is None:
        t_max = default_horizon(sol)
    p = sol.scenario.params
    k = p.k
    rep = VerificationReport(t_max=t_max)
    cats = rep.categories
    cats["rh"] = CategoryResult(RH_STRAIGHT_TOL)
    cats["rh_curved"] = CategoryResult(RH_CURVED_TOL)
    cats["lax"] = CategoryResult(LAX_TOL)
    cats["continuity"] = CategoryResult(CONTINUITY_TOL)
    cats["smooth"] = CategoryResult(SMOOTH_TOL)
    cats["invariant"] = CategoryResult(INVARIANT_TOL)

    for ph in sol.phases:
        t1 = min(ph.t_end, t_max) if math.isfinite(ph.t_end) else max(t_max, ph.t_start * 2.0 + 1.0)
        if t1 <= ph.t_start:
            continue
        times = _sample_times(ph.t_start, t1, n_samples)
        for j, b in enumerate(ph.boundaries):
            left_rule, right_rule = ph.regions[j], ph.regions[j + 1]
            for t in times:
                x = float(b.curve.position(t))
                a = left_rule.value(k, x, t)
                c = right_rule.value(k, x, t)
                if b.kind is BoundaryKind.SHOCK:
                    spd = float(b.curve.slope(t))
                    res = rh_residual(p, spd, a, c).max_abs()
                    cats["rh" if b.curve.kind == "line" else "rh_curved"].update(res, t, x)
                    lam_l = char_speed(p, b.family, a.u)
                    lam_r = char_speed(p, b.family, c.u)
                    violation = max(lam_r - spd, spd - lam_l, 0.0)
                    cats["lax"].update(violation, t, x)
                else:
                    gap = max(abs(a.u - c.u), abs(a.sigma - c.sigma))
                    cats["continuity"].update(gap, t, x)

    fam = sol.tag.family or level_set_family(sol.scenario)
    if fam is None:
        cats["invariant"].applicable = False
    x_lo, x_hi = sampling_window(sol, t_max)
    xs = np.linspace(x_lo, x_hi, n_samples + 2)[1:-1]
    for t in np.linspace(t_max / 4.0, t_max, n_samples):
        t = float(t)
        u, sg = sol.eval_many(xs, t)
        if fam is not None:
            w_ref = invariant(p, fam, sol.scenario.left)
            w = sg + (k if fam == 2 else -k) * u
            dev = np.abs(w - w_ref)
            i = int(np.argmax(dev))
            cats["invariant"].update(float(dev[i]), t, xs[i])
        far = np.ones(xs.shape, dtype=bool)
        for tt in (t - h, t, t + h):
            for pos in _boundary_positions(sol, tt):
                far &= np.abs(xs - pos) > 2 * h
        if t - h <= 0 or not far.any():
            continue
        xf = xs[far]
        up, sp = sol.eval_many(xf + h, t)
        um, sm = sol.eval_many(xf - h, t)
        utp, stp = sol.eval_many(xf, t + h)
        utm, stm = sol.eval_many(xf, t - h)
        uc = u[far]
        u_x = (up - um) / (2 * h)
        s_x = (sp - sm) / (2 * h)
        u_t = (utp - utm) / (2 * h)
        s_t = (stp - stm) / (2 * h)
        res = np.maximum(np.abs(u_t + uc * u_x - s_x), np.abs(s_t + uc * s_x - k * k * u_x))
        i = int(np.argmax(res))
        cats["smooth"].update(float(res[i]), t, xf[i])
        cats["smooth"].samples += len(xf) - 1
    return rep


def corrupt_shock_speeds(sol: PiecewiseSolution, delta: float) -> PiecewiseSolution:
    """Copy of ``sol`` with every straight shock's speed shifted by ``delta`` (negative tests)."""
    phases = []
    for ph in sol.phases:
        bounds = tuple(
            replace(b, curve=replace(b.curve, a=b.curve.a + delta))
            if b.kind is BoundaryKind.SHOCK and b.curve.kind == "line" else b
            for b in ph.boundaries
        )
        phases.append(replace(ph, boundaries=bounds))
    return replace(sol, phases=tuple(phases))
