"""Phase-space primitives for the velocity-stress system.

The system is

    u_t + u u_x - sigma_x = 0
    sigma_t + u sigma_x - k^2 u_x = 0

with characteristic speeds u - k and u + k. All states are plain float pairs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ModelParams:
    """Model parameter: the elastic wave speed ``k > 0``."""

    k: float

    def __post_init__(self):
        if not (math.isfinite(self.k) and self.k > 0):
            raise ValueError("k must be positive")


@dataclass(frozen=True)
class State:
    u: float
    sigma: float

    def __post_init__(self):
        if not (math.isfinite(self.u) and math.isfinite(self.sigma)):
            raise ValueError(f"state components must be finite, got ({self.u}, {self.sigma})")

    def as_tuple(self) -> tuple[float, float]:
        return (self.u, self.sigma)


@dataclass(frozen=True)
class CharStructure:
    lambda1: float
    lambda2: float
    r1: tuple[float, float]
    r2: tuple[float, float]


@dataclass(frozen=True)
class InvariantPair:
    w1: float
    w2: float


def char_speeds(p: ModelParams, s: State) -> CharStructure:
    return CharStructure(
        lambda1=s.u - p.k,
        lambda2=s.u + p.k,
        r1=(1.0, p.k),
        r2=(1.0, -p.k),
    )


def char_speed(p: ModelParams, family: int, u: float) -> float:
    """Characteristic speed of ``family`` (1 or 2) at velocity ``u``."""
    if family == 1:
        return u - p.k
    if family == 2:
        return u + p.k
    raise ValueError(f"family must be 1 or 2, got {family}")


def riemann_invariants(p: ModelParams, s: State) -> InvariantPair:
    return InvariantPair(w1=s.sigma - p.k * s.u, w2=s.sigma + p.k * s.u)


def invariant(p: ModelParams, family: int, s: State) -> float:
    """The invariant that is constant across waves of ``family``.

    ``w1`` is constant across 1-waves and ``w2`` across 2-waves.
    """
    w = riemann_invariants(p, s)
    return w.w1 if family == 1 else w.w2


def state_from_invariants(p: ModelParams, w: InvariantPair) -> State:
    return State(u=(w.w2 - w.w1) / (2.0 * p.k), sigma=0.5 * (w.w1 + w.w2))


def volpert_mean(left: float, right: float) -> float:
    """Average of the identity along the straight segment from left to right."""
    return 0.5 * (left + right)
