"""Event-driven front tracking for ``v_t + v v_x = 0`` with piecewise constant data.

The solution is kept as an ordered list of pieces (constants or centred fans)
separated by fronts. Every front is a path ``x = a t + c sqrt(t) + b``: lines
for shocks between constants and for fan edges, square-root curves for shocks
bordering a fan centred at ``t = 0``. Adjacent fronts meet at roots of a
quadratic in ``sqrt(t)``; at each meeting the piece between them disappears
and a new front is created from the two outer pieces.

This code knows nothing about the velocity-stress system and is used to
cross-check the closed-form interaction solutions.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ConstPiece:
    v: float

    def value(self, x, t):
        return self.v


@dataclass(frozen=True)
class FanPiece:
    center: float

    def value(self, x, t):
        return (x - self.center) / t


@dataclass(frozen=True)
class Front:
    a: float
    c: float
    b: float
    kind: str  # "shock" or "edge"

    def position(self, t: float) -> float:
        return self.a * t + self.c * math.sqrt(t) + self.b


@dataclass(frozen=True)
class TrackedFront:
    position: float
    kind: str
    left: float
    right: float


@dataclass
class FrontState:
    t: float
    fronts: list[TrackedFront]
    pieces: list
    paths: list[Front]
    events: list[tuple[float, float]]

    def value(self, x: float) -> float:
        """Value at ``x``; a point on a front takes the right piece."""
        i = bisect.bisect_right([f.position for f in self.fronts], x)
        return self.pieces[i].value(x, self.t)


def _meeting_time(f: Front, g: Front, t_now: float) -> float | None:
    qa, qb, qc = f.a - g.a, f.c - g.c, f.b - g.b
    roots = []
    if qa == 0.0:
        if qb != 0.0:
            roots.append(-qc / qb)
    else:
        disc = qb * qb - 4.0 * qa * qc
        if disc >= 0.0:
            sq = math.sqrt(disc)
            q = -0.5 * (qb + (sq if qb >= 0 else -sq))
            if q != 0.0:
                roots += [q / qa, qc / q]
            else:
                roots.append(0.0)
    best = None
    for s in roots:
        if s < 0.0:
            continue
        t = s * s
        if t > t_now + 1e-12 * max(1.0, t_now) and (best is None or t < best):
            best = t
    return best


def _join(left, right, t: float, x: float) -> Front | None:
    """Front between two pieces that become adjacent at ``(x, t)``; None if they merge."""
    if isinstance(left, FanPiece) and isinstance(right, FanPiece):
        raise NotImplementedError("two adjacent fans")
    vl, vr = left.value(x, t), right.value(x, t)
    if isinstance(left, ConstPiece) and isinstance(right, ConstPiece):
        if vl == vr:
            return None
        if vl < vr:
            raise NotImplementedError("rarefaction created at t > 0")
        a = 0.5 * (vl + vr)
        return Front(a, 0.0, x - a * t, "shock")
    if isinstance(right, FanPiece):
        const, center = vl, right.center
        is_shock = vl > vr
    else:
        const, center = vr, left.center
        is_shock = vl > vr
    if not is_shock:
        return Front(const, 0.0, center, "edge")
    # shock with a constant on one side and the fan on the other:
    # dx/dt = (const + (x - center)/t) / 2
    c = (x - center - const * t) / math.sqrt(t)
    return Front(const, c, center, "shock")


def _initial(v_L: float, v_m: float, v_R: float, x0: float, x1: float):
    pieces = [ConstPiece(v_L)]
    fronts = []
    for xj, vr in ((x0, v_m), (x1, v_R)):
        vl = pieces[-1].v
        if vl == vr:
            continue
        if vl > vr:
            a = 0.5 * (vl + vr)
            fronts.append(Front(a, 0.0, xj, "shock"))
        else:
            fronts.append(Front(vl, 0.0, xj, "edge"))
            pieces.append(FanPiece(xj))
            fronts.append(Front(vr, 0.0, xj, "edge"))
        pieces.append(ConstPiece(vr))
    return pieces, fronts


def front_track_scalar(v_L: float, v_m: float, v_R: float, x0: float, x1: float, t: float) -> FrontState:
    """Exact entropy solution at time ``t`` for three-state data."""
    if t <= 0:
        raise ValueError("t must be positive")
    if not x0 < x1:
        raise ValueError("x0 must be < x1")
    pieces, fronts = _initial(v_L, v_m, v_R, x0, x1)
    t_now = 0.0
    events = []
    while True:
        best, where = None, None
        for i in range(len(fronts) - 1):
            tm = _meeting_time(fronts[i], fronts[i + 1], t_now)
            if tm is not None and (best is None or tm < best):
                best, where = tm, i
        if best is None or best > t:
            break
        t_now = best
        x = fronts[where + 1].position(t_now) if fronts[where].c != 0.0 else fronts[where].position(t_now)
        events.append((t_now, x))
        left, right = pieces[where], pieces[where + 2]
        new = _join(left, right, t_now, x)
        if new is None:
            del fronts[where:where + 2]
            del pieces[where + 1:where + 3]
        else:
            fronts[where:where + 2] = [new]
            del pieces[where + 1]
    tracked = []
    for i, f in enumerate(fronts):
        xf = f.position(t)
        tracked.append(TrackedFront(xf, f.kind, pieces[i].value(xf, t), pieces[i + 1].value(xf, t)))
    return FrontState(t=t, fronts=tracked, pieces=pieces, paths=fronts, events=events)
