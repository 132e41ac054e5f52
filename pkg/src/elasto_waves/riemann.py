"""Exact self-similar solver for the two-state Riemann problem."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import ModelParams, State, char_speed
from .wave_curves import shock_speed


class NonPositiveTime(ValueError):
    pass


class WaveKind(str, enum.Enum):
    SHOCK = "shock"
    RAREFACTION = "rarefaction"


@dataclass(frozen=True)
class Wave:
    family: int
    kind: WaveKind
    left_state: State
    right_state: State
    speed_range: tuple[float, float]

    @property
    def speed(self) -> float:
        if self.kind is not WaveKind.SHOCK:
            raise AttributeError("only shocks have a single speed")
        return self.speed_range[0]


@dataclass(frozen=True)
class WaveFan:
    k: float
    origin: float
    waves: tuple[Wave, ...]
    states: tuple[State, ...]

    @property
    def left(self) -> State:
        return self.states[0]

    @property
    def right(self) -> State:
        return self.states[-1]


def fan_value(k: float, family: int, xi: float, left: State) -> State:
    """Value inside a centred rarefaction whose left state is ``left``."""
    if family == 1:
        return State(xi + k, k * xi + left.sigma - k * (left.u - k))
    return State(xi - k, -k * xi + left.sigma + k * (left.u + k))


def middle_state(p: ModelParams, left: State, right: State) -> State:
    """Intersection of the 1-line through ``left`` and the 2-line through ``right``."""
    k = p.k
    u = 0.5 * (left.u + right.u) + (right.sigma - left.sigma) / (2.0 * k)
    sigma = 0.5 * (left.sigma + right.sigma) + 0.5 * k * (right.u - left.u)
    return State(u, sigma)


_ROUNDING = 8.0 * 2.0**-52


def _negligible(a: State, b: State) -> bool:
    scale = 1.0 + max(abs(a.u), abs(a.sigma), abs(b.u), abs(b.sigma))
    return abs(b.u - a.u) <= _ROUNDING * scale and abs(b.sigma - a.sigma) <= _ROUNDING * scale


def _wave(p: ModelParams, family: int, a: State, b: State) -> Wave | None:
    if _negligible(a, b):
        return None
    # equal velocities with a real stress jump only arise through rounding;
    # they become a shock at the characteristic speed
    if b.u > a.u:
        return Wave(family, WaveKind.RAREFACTION, a, b,
                    (char_speed(p, family, a.u), char_speed(p, family, b.u)))
    s = shock_speed(p, family, a.u, b.u)
    return Wave(family, WaveKind.SHOCK, a, b, (s, s))


def solve_riemann(p: ModelParams, left: State, right: State, x_origin: float = 0.0) -> WaveFan:
    mid = middle_state(p, left, right)
    w1 = _wave(p, 1, left, mid)
    w2 = _wave(p, 2, mid, right)
    # the surviving wave joins the outer states, not a rounded middle state
    if w1 is None and w2 is not None:
        w2 = _wave(p, 2, left, right)
    elif w2 is None and w1 is not None:
        w1 = _wave(p, 1, left, right)
    waves = tuple(w for w in (w1, w2) if w is not None)
    if len(waves) == 2:
        states = (left, mid, right)
    elif len(waves) == 1:
        states = (left, right)
    else:
        states = (left,)
    return WaveFan(k=p.k, origin=x_origin, waves=waves, states=states)


def sample_fan(fan: WaveFan, xi: float) -> State:
    """Self-similar value at ``xi``; a point exactly on a shock takes the right state."""
    for w in fan.waves:
        lo, hi = w.speed_range
        if xi < lo:
            return w.left_state
        if w.kind is WaveKind.RAREFACTION and xi < hi:
            return fan_value(fan.k, w.family, xi, w.left_state)
    return fan.right


def eval_fan(fan: WaveFan, x: float, t: float) -> State:
    if t <= 0:
        raise NonPositiveTime(f"t must be positive, got {t}")
    return sample_fan(fan, (x - fan.origin) / t)
