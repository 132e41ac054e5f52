"""Exact solution of the three-state problem on a Riemann-invariant level set.

Initial data take the constant values ``left`` for ``x < x0``, ``middle`` for
``x0 < x < x1`` and ``right`` for ``x > x1``. When all three states share the
invariant of one family, that family's waves are the only ones present and the
velocity satisfies ``v_t + v v_x = 0`` with ``v = u +/- k``. The solution is
then built in closed form: straight shocks and fan edges, a first collision,
a shock penetrating a centred fan along ``x = a t + c sqrt(t) + x_center``, and
possibly a second collision after which a single shock remains.

Case numbering follows the position of ``middle`` relative to ``left``:
1 = on R2, 2 = on S2, 3 = on S1, 4 = on R1.
"""
from __future__ import annotations

import bisect
import enum
import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .core import ModelParams, State, char_speed, invariant
from .riemann import NonPositiveTime, WaveKind, fan_value, solve_riemann
from .wave_curves import RelativePosition, classify, default_tol, shock_speed


class UnsupportedConfiguration(ValueError):
    """The three states do not lie on one level set of a Riemann invariant."""


class DegenerateScenario(ValueError):
    """The middle state coincides with a neighbour; the data is a single Riemann problem."""


class ParallelCurves(ValueError):
    pass


UNSUPPORTED_EXPLANATION = (
    "the three states do not share a level set of one Riemann invariant; "
    "such data leads to interactions of a rarefaction with a shock of the "
    "other family (or of two rarefactions), which this solver does not handle"
)


class Branch(str, enum.Enum):
    NO_SECOND_INTERSECTION = "NoSecondIntersection"
    SECOND_INTERSECTION_SHOCK = "SecondIntersectionShock"
    SECOND_INTERSECTION_RAREFACTION = "SecondIntersectionRarefaction"
    NO_INTERACTION = "NoInteraction"
    SHOCK_MERGE = "ShockMerge"
    DEGENERATE = "Degenerate"


class EventKind(str, enum.Enum):
    SHOCK_FAN_COLLISION = "ShockFanCollision"
    SHOCK_SHOCK_COLLISION = "ShockShockCollision"
    FAN_ABSORBED = "FanAbsorbed"


class BoundaryKind(str, enum.Enum):
    SHOCK = "shock"
    EDGE = "edge"


@dataclass(frozen=True)
class Scenario:
    params: ModelParams
    left: State
    middle: State
    right: State
    x0: float
    x1: float

    def __post_init__(self):
        if not self.x0 < self.x1:
            raise ValueError(f"x0 must be < x1, got x0={self.x0}, x1={self.x1}")

    @property
    def k(self) -> float:
        return self.params.k

    @property
    def states(self) -> tuple[State, State, State]:
        return (self.left, self.middle, self.right)

    def max_speed(self) -> float:
        return max(abs(s.u) for s in self.states) + self.k

    def initial_value(self, x: float) -> State:
        if x < self.x0:
            return self.left
        if x < self.x1:
            return self.middle
        return self.right


@dataclass(frozen=True)
class Curve:
    """A path ``x(t)`` in the half plane.

    Lines: ``x = x_ref + a (t - t_offset)``. Square-root curves:
    ``x = x_ref + a t + c sqrt(t)``, always centred at ``t = 0``.
    """

    kind: str
    a: float
    x_ref: float
    c: float = 0.0
    t_offset: float = 0.0
    valid_t: tuple[float, float] = (0.0, math.inf)

    @classmethod
    def line(cls, a, x_ref, t_offset=0.0, valid_t=(0.0, math.inf)) -> "Curve":
        return cls("line", a, x_ref, 0.0, t_offset, valid_t)

    @classmethod
    def sqrt(cls, a, c, x_ref, valid_t=(0.0, math.inf)) -> "Curve":
        return cls("sqrt", a, x_ref, c, 0.0, valid_t)

    def position(self, t):
        if self.kind == "line":
            return self.x_ref + self.a * (t - self.t_offset)
        return self.x_ref + self.a * t + self.c * np.sqrt(t)

    def slope(self, t):
        if self.kind == "line":
            return self.a + 0.0 * t
        return self.a + self.c / (2.0 * np.sqrt(t))

    def restricted(self, t_lo: float, t_hi: float) -> "Curve":
        return replace(self, valid_t=(t_lo, t_hi))


@dataclass(frozen=True)
class Event:
    t: float
    x: float
    kind: EventKind


@dataclass(frozen=True)
class CaseTag:
    case_no: int
    subcase: int
    branch: Branch

    @property
    def family(self) -> int | None:
        if self.case_no in (1, 2):
            return 2
        if self.case_no in (3, 4):
            return 1
        return None


@dataclass(frozen=True)
class Constant:
    state: State

    def value(self, k, x, t) -> State:
        return self.state


@dataclass(frozen=True)
class Fan:
    """Centred rarefaction of ``family`` at ``(center, 0)`` whose left state is ``ref``."""

    family: int
    center: float
    ref: State

    def value(self, k, x, t) -> State:
        return fan_value(k, self.family, (x - self.center) / t, self.ref)


@dataclass(frozen=True)
class Boundary:
    curve: Curve
    kind: BoundaryKind
    family: int


@dataclass(frozen=True)
class Phase:
    t_start: float
    t_end: float
    boundaries: tuple[Boundary, ...]
    regions: tuple  # Constant | Fan, len(boundaries) + 1

    def positions(self, t) -> list[float]:
        return [b.curve.position(t) for b in self.boundaries]

    def locate(self, x: float, t: float) -> int:
        return bisect.bisect_right(self.positions(t), x)


@dataclass(frozen=True)
class PiecewiseSolution:
    scenario: Scenario
    tag: CaseTag
    events: tuple[Event, ...]
    phases: tuple[Phase, ...]
    diagnostics: tuple[str, ...] = field(default=())

    @property
    def k(self) -> float:
        return self.scenario.k

    def phase_index(self, t: float) -> int:
        starts = [ph.t_start for ph in self.phases]
        # phase i covers (t_start, t_end]
        return max(bisect.bisect_left(starts, t) - 1, 0)

    def phase_at(self, t: float) -> Phase:
        return self.phases[self.phase_index(t)]

    def region_at(self, x: float, t: float) -> tuple[int, int]:
        if t <= 0:
            raise NonPositiveTime(f"t must be positive, got {t}")
        i = self.phase_index(t)
        return i, self.phases[i].locate(x, t)

    def eval(self, x: float, t: float) -> State:
        i, j = self.region_at(x, t)
        return self.phases[i].regions[j].value(self.k, x, t)

    def eval_many(self, xs, t: float) -> tuple[np.ndarray, np.ndarray]:
        """Vectorised ``eval`` at a fixed time; returns ``(u, sigma)`` arrays."""
        if t <= 0:
            raise NonPositiveTime(f"t must be positive, got {t}")
        xs = np.asarray(xs, dtype=float)
        ph = self.phase_at(t)
        idx = np.searchsorted(np.asarray(ph.positions(t), dtype=float), xs, side="right")
        u = np.empty_like(xs)
        s = np.empty_like(xs)
        k = self.k
        for j, rule in enumerate(ph.regions):
            mask = idx == j
            if not mask.any():
                continue
            if isinstance(rule, Constant):
                u[mask] = rule.state.u
                s[mask] = rule.state.sigma
            else:
                xi = (xs[mask] - rule.center) / t
                ref = rule.ref
                if rule.family == 1:
                    u[mask] = xi + k
                    s[mask] = k * xi + ref.sigma - k * (ref.u - k)
                else:
                    u[mask] = xi - k
                    s[mask] = -k * xi + ref.sigma + k * (ref.u + k)
        return u, s

    def curves(self) -> list[tuple[Curve, BoundaryKind]]:
        """Distinct boundary curves with their validity intervals merged across phases."""
        out: dict[tuple, list] = {}
        for ph in self.phases:
            for b in ph.boundaries:
                key = (b.curve.kind, b.curve.a, b.curve.c, b.curve.x_ref, b.curve.t_offset, b.kind)
                if key in out:
                    lo, _ = out[key][0].valid_t
                    out[key][0] = out[key][0].restricted(lo, ph.t_end)
                else:
                    out[key] = [b.curve.restricted(ph.t_start, ph.t_end), b.kind]
        return [(c, kind) for c, kind in out.values()]

    @property
    def last_event_time(self) -> float | None:
        return self.events[-1].t if self.events else None


# -- intersections -----------------------------------------------------------

def intersect_line_line(c1: Curve, c2: Curve) -> Event | None:
    """Meeting point of two lines, or None if it lies at or before both start times.

    Raises ParallelCurves for distinct parallel lines.
    """
    if c1.kind != "line" or c2.kind != "line":
        raise ValueError("intersect_line_line needs two lines")
    b1 = c1.x_ref - c1.a * c1.t_offset
    b2 = c2.x_ref - c2.a * c2.t_offset
    da = c1.a - c2.a
    if da == 0.0:
        if b1 == b2:
            raise ParallelCurves("lines coincide")
        raise ParallelCurves("lines are parallel")
    t = (b2 - b1) / da
    if not t > max(c1.t_offset, c2.t_offset):
        return None
    # evaluate on the line whose slope is smaller in magnitude
    x = c1.position(t) if abs(c1.a) <= abs(c2.a) else c2.position(t)
    return Event(t=float(t), x=float(x), kind=EventKind.SHOCK_FAN_COLLISION)


def _sqrt_roots(qa: float, qb: float, qc: float) -> list[float]:
    """Non-negative real roots s of qa s^2 + qb s + qc = 0."""
    if qa == 0.0:
        if qb == 0.0:
            return []
        roots = [-qc / qb]
    else:
        disc = qb * qb - 4.0 * qa * qc
        if disc < 0.0:
            return []
        sq = math.sqrt(disc)
        q = -0.5 * (qb + math.copysign(sq, qb)) if qb != 0.0 else -0.5 * sq
        roots = []
        if q != 0.0:
            roots.append(q / qa)
            roots.append(qc / q)
        else:
            roots.append(0.0)
    return sorted(r for r in roots if r >= 0.0)


def intersect_sqrt_line(c1: Curve, c2: Curve, after_t: float) -> Event | None:
    """First meeting time ``t > after_t`` of a square-root curve and a line."""
    if c1.kind != "sqrt" or c2.kind != "line":
        raise ValueError("intersect_sqrt_line needs (sqrt curve, line)")
    b2 = c2.x_ref - c2.a * c2.t_offset
    roots = _sqrt_roots(c1.a - c2.a, c1.c, c1.x_ref - b2)
    eps = 1e-12 * max(1.0, after_t)
    for s in roots:
        t = s * s
        if t > after_t + eps:
            return Event(t=float(t), x=float(c2.position(t)), kind=EventKind.FAN_ABSORBED)
    return None


# -- classification ----------------------------------------------------------

_CASE_OF = {
    RelativePosition.ON_R2: 1,
    RelativePosition.ON_S2: 2,
    RelativePosition.ON_S1: 3,
    RelativePosition.ON_R1: 4,
}


def classify_case(s: Scenario, tol: float | None = None) -> CaseTag:
    p, L, m, R = s.params, s.left, s.middle, s.right
    if tol is None:
        tol = default_tol(L, m, R)
    if classify(p, L, m, tol) is RelativePosition.COINCIDENT or \
            classify(p, m, R, tol) is RelativePosition.COINCIDENT:
        raise DegenerateScenario("middle state coincides with a neighbour; use solve_riemann")
    pos_m = classify(p, L, m, tol)
    fam = pos_m.family
    if fam is None:
        raise UnsupportedConfiguration(f"middle state lies in {pos_m.value}: " + UNSUPPORTED_EXPLANATION)
    pos_r = classify(p, L, R, tol)
    if pos_r is not RelativePosition.COINCIDENT and pos_r.family != fam:
        raise UnsupportedConfiguration(
            f"middle is on the family-{fam} line but right is {pos_r.value}: " + UNSUPPORTED_EXPLANATION)
    case_no = _CASE_OF[pos_m]
    rarefaction_first = m.u > L.u
    if rarefaction_first:
        subcase = 1 if R.u < m.u else 2
    else:
        subcase = 1 if R.u > m.u else 2
    if subcase == 2:
        branch = Branch.NO_INTERACTION if rarefaction_first else Branch.SHOCK_MERGE
    else:
        # the curved shock has c > 0 (enters the fan from the right) when the
        # fan is on the left and c < 0 otherwise; it only reaches the far edge
        # when the outer states form a shock
        branch = Branch.SECOND_INTERSECTION_SHOCK if R.u < L.u else Branch.NO_SECOND_INTERSECTION
    return CaseTag(case_no, subcase, branch)


# -- construction ------------------------------------------------------------

def _curved_shock(event: Event, a: float, center: float) -> Curve:
    c = (event.x - center - a * event.t) / math.sqrt(event.t)
    return Curve.sqrt(a=a, c=c, x_ref=center)


def _phase(t0, t1, items, regions) -> Phase:
    bounds = tuple(Boundary(c.restricted(t0, t1), kind, fam) for c, kind, fam in items)
    return Phase(t0, t1, bounds, tuple(regions))


def _fan_then_shock(s: Scenario, fam: int, tag: CaseTag):
    """Cases 1 and 4, subcase 1: fan at x0 overtaken by a shock from x1."""
    p, L, m, R = s.params, s.left, s.middle, s.right
    lam = lambda u: char_speed(p, fam, u)
    edge_l = Curve.line(lam(L.u), s.x0)
    edge_m = Curve.line(lam(m.u), s.x0)
    sh = Curve.line(shock_speed(p, fam, m.u, R.u), s.x1)
    ev1 = intersect_line_line(edge_m, sh)
    fan = Fan(fam, s.x0, L)
    E, S = BoundaryKind.EDGE, BoundaryKind.SHOCK
    phases = [_phase(0.0, ev1.t, [(edge_l, E, fam), (edge_m, E, fam), (sh, S, fam)],
                     [Constant(L), fan, Constant(m), Constant(R)])]
    events = [ev1]
    curved = _curved_shock(ev1, lam(R.u), s.x0)
    diagnostics = []
    if tag.branch is Branch.NO_SECOND_INTERSECTION:
        phases.append(_phase(ev1.t, math.inf, [(edge_l, E, fam), (curved, S, fam)],
                             [Constant(L), fan, Constant(R)]))
        return events, phases, diagnostics
    ev2 = intersect_sqrt_line(curved, edge_l, ev1.t)
    if ev2 is None:
        raise RuntimeError("curved shock does not reach the fan's trailing edge")
    events.append(ev2)
    phases.append(_phase(ev1.t, ev2.t, [(edge_l, E, fam), (curved, S, fam)],
                         [Constant(L), fan, Constant(R)]))
    if tag.branch is Branch.SECOND_INTERSECTION_SHOCK:
        final = Curve.line(shock_speed(p, fam, L.u, R.u), ev2.x, t_offset=ev2.t)
        phases.append(_phase(ev2.t, math.inf, [(final, S, fam)], [Constant(L), Constant(R)]))
    else:
        diagnostics.append("rarefaction re-emerging after a second intersection was selected; "
                           "this branch is not reachable for data on a shared level set")
        warnings.warn(diagnostics[-1], RuntimeWarning, stacklevel=3)
        phases.append(_phase(ev2.t, math.inf,
                             [(Curve.line(lam(L.u), s.x0), E, fam), (Curve.line(lam(R.u), s.x0), E, fam)],
                             [Constant(L), fan, Constant(R)]))
    return events, phases, diagnostics


def _shock_then_fan(s: Scenario, fam: int, tag: CaseTag):
    """Cases 2 and 3, subcase 1: shock from x0 running into a fan at x1."""
    p, L, m, R = s.params, s.left, s.middle, s.right
    lam = lambda u: char_speed(p, fam, u)
    sh = Curve.line(shock_speed(p, fam, L.u, m.u), s.x0)
    edge_m = Curve.line(lam(m.u), s.x1)
    edge_r = Curve.line(lam(R.u), s.x1)
    ev1 = intersect_line_line(sh, edge_m)
    fan = Fan(fam, s.x1, m)
    E, S = BoundaryKind.EDGE, BoundaryKind.SHOCK
    phases = [_phase(0.0, ev1.t, [(sh, S, fam), (edge_m, E, fam), (edge_r, E, fam)],
                     [Constant(L), Constant(m), fan, Constant(R)])]
    events = [ev1]
    curved = _curved_shock(ev1, lam(L.u), s.x1)
    diagnostics = []
    if tag.branch is Branch.NO_SECOND_INTERSECTION:
        phases.append(_phase(ev1.t, math.inf, [(curved, S, fam), (edge_r, E, fam)],
                             [Constant(L), fan, Constant(R)]))
        return events, phases, diagnostics
    ev2 = intersect_sqrt_line(curved, edge_r, ev1.t)
    if ev2 is None:
        raise RuntimeError("curved shock does not reach the fan's leading edge")
    events.append(ev2)
    phases.append(_phase(ev1.t, ev2.t, [(curved, S, fam), (edge_r, E, fam)],
                         [Constant(L), fan, Constant(R)]))
    if tag.branch is Branch.SECOND_INTERSECTION_SHOCK:
        final = Curve.line(shock_speed(p, fam, L.u, R.u), ev2.x, t_offset=ev2.t)
        phases.append(_phase(ev2.t, math.inf, [(final, S, fam)], [Constant(L), Constant(R)]))
    else:
        diagnostics.append("rarefaction re-emerging after a second intersection was selected; "
                           "this branch is not reachable for data on a shared level set")
        warnings.warn(diagnostics[-1], RuntimeWarning, stacklevel=3)
        phases.append(_phase(ev2.t, math.inf,
                             [(Curve.line(lam(L.u), s.x1), E, fam), (edge_r, E, fam)],
                             [Constant(L), Fan(fam, s.x1, L), Constant(R)]))
    return events, phases, diagnostics


def _two_fans(s: Scenario, fam: int):
    p, L, m, R = s.params, s.left, s.middle, s.right
    lam = lambda u: char_speed(p, fam, u)
    E = BoundaryKind.EDGE
    items = [
        (Curve.line(lam(L.u), s.x0), E, fam),
        (Curve.line(lam(m.u), s.x0), E, fam),
        (Curve.line(lam(m.u), s.x1), E, fam),
        (Curve.line(lam(R.u), s.x1), E, fam),
    ]
    regions = [Constant(L), Fan(fam, s.x0, L), Constant(m), Fan(fam, s.x1, m), Constant(R)]
    return [], [_phase(0.0, math.inf, items, regions)], []


def _shock_merge(s: Scenario, fam: int):
    p, L, m, R = s.params, s.left, s.middle, s.right
    S = BoundaryKind.SHOCK
    sh1 = Curve.line(shock_speed(p, fam, L.u, m.u), s.x0)
    sh2 = Curve.line(shock_speed(p, fam, m.u, R.u), s.x1)
    ev = replace(intersect_line_line(sh1, sh2), kind=EventKind.SHOCK_SHOCK_COLLISION)
    final = Curve.line(shock_speed(p, fam, L.u, R.u), ev.x, t_offset=ev.t)
    phases = [
        _phase(0.0, ev.t, [(sh1, S, fam), (sh2, S, fam)], [Constant(L), Constant(m), Constant(R)]),
        _phase(ev.t, math.inf, [(final, S, fam)], [Constant(L), Constant(R)]),
    ]
    return [ev], phases, []


def _fan_phase(s: Scenario, left: State, right: State, origin: float) -> Phase:
    fan = solve_riemann(s.params, left, right, origin)
    items, regions = [], [Constant(fan.left)]
    for w in fan.waves:
        lo, hi = w.speed_range
        if w.kind is WaveKind.SHOCK:
            items.append((Curve.line(lo, origin), BoundaryKind.SHOCK, w.family))
        else:
            items.append((Curve.line(lo, origin), BoundaryKind.EDGE, w.family))
            items.append((Curve.line(hi, origin), BoundaryKind.EDGE, w.family))
            regions.append(Fan(w.family, origin, w.left_state))
        regions.append(Constant(w.right_state))
    return _phase(0.0, math.inf, items, regions)


def _build_degenerate(s: Scenario, tol: float) -> PiecewiseSolution:
    p, L, m, R = s.params, s.left, s.middle, s.right
    # a zero-strength jump is dropped; what remains is one Riemann problem
    if classify(p, L, m, tol) is RelativePosition.COINCIDENT:
        phase = _fan_phase(s, L, R, s.x1)
    else:
        phase = _fan_phase(s, L, R, s.x0)
    return PiecewiseSolution(s, CaseTag(0, 0, Branch.DEGENERATE), (), (phase,))


def build(s: Scenario, tol: float | None = None) -> PiecewiseSolution:
    """Construct the exact piecewise solution for ``s``.

    Degenerate data (middle equal to a neighbour) collapses to the single
    Riemann problem that remains.
    """
    if tol is None:
        tol = default_tol(*s.states)
    try:
        tag = classify_case(s, tol)
    except DegenerateScenario:
        return _build_degenerate(s, tol)
    fam = tag.family
    if tag.branch is Branch.NO_INTERACTION:
        events, phases, diag = _two_fans(s, fam)
    elif tag.branch is Branch.SHOCK_MERGE:
        events, phases, diag = _shock_merge(s, fam)
    elif tag.case_no in (1, 4):
        events, phases, diag = _fan_then_shock(s, fam, tag)
    else:
        events, phases, diag = _shock_then_fan(s, fam, tag)
    return PiecewiseSolution(s, tag, tuple(events), tuple(phases), tuple(diag))


def eval(sol: PiecewiseSolution, x: float, t: float) -> State:  # noqa: A001
    return sol.eval(x, t)


def level_set_family(s: Scenario, tol: float | None = None) -> int | None:
    """Family whose invariant is shared by all three states, if any."""
    if tol is None:
        tol = default_tol(*s.states)
    for fam in (2, 1):
        w = [invariant(s.params, fam, st) for st in s.states]
        if max(w) - min(w) <= tol * (1.0 + s.k):
            return fam
    return None
