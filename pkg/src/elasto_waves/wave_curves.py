"""Wave-curve geometry in the (u, sigma) plane.

Through a base state the two straight lines ``sigma - sigma_b = +k (u - u_b)``
(family 1) and ``sigma - sigma_b = -k (u - u_b)`` (family 2) split into
rarefaction half-lines (``u > u_b``) and shock half-lines (``u < u_b``). The
four half-lines cut the plane into the open regions Gamma1..Gamma4.
"""
from __future__ import annotations

import enum

from .core import ModelParams, State, char_speed


class NotOnShockCurve(ValueError):
    """The right state is not on the shock line of the given family."""


class RelativePosition(str, enum.Enum):
    ON_R1 = "OnR1"
    ON_S1 = "OnS1"
    ON_R2 = "OnR2"
    ON_S2 = "OnS2"
    GAMMA1 = "Gamma1"
    GAMMA2 = "Gamma2"
    GAMMA3 = "Gamma3"
    GAMMA4 = "Gamma4"
    COINCIDENT = "Coincident"

    @property
    def family(self) -> int | None:
        if self in (RelativePosition.ON_R1, RelativePosition.ON_S1):
            return 1
        if self in (RelativePosition.ON_R2, RelativePosition.ON_S2):
            return 2
        return None


def default_tol(*states: State) -> float:
    scale = max((max(abs(s.u), abs(s.sigma)) for s in states), default=0.0)
    return 1e-9 * (1.0 + scale)


def line_offsets(p: ModelParams, base: State, other: State) -> tuple[float, float]:
    """Signed offsets of ``other`` from the family-1 and family-2 lines through ``base``."""
    du = other.u - base.u
    ds = other.sigma - base.sigma
    return ds - p.k * du, ds + p.k * du


def classify(p: ModelParams, base: State, other: State, tol: float | None = None) -> RelativePosition:
    """Locate ``other`` relative to the wave curves through ``base``.

    Points inside the tolerance band of a line are assigned to the line, never
    to the neighbouring region.
    """
    if tol is None:
        tol = default_tol(base, other)
    if tol < 0:
        raise ValueError("tol must be non-negative")
    du = other.u - base.u
    if abs(du) <= tol and abs(other.sigma - base.sigma) <= tol:
        return RelativePosition.COINCIDENT
    d1, d2 = line_offsets(p, base, other)
    if abs(d1) <= tol:
        return RelativePosition.ON_R1 if du > 0 else RelativePosition.ON_S1
    if abs(d2) <= tol:
        return RelativePosition.ON_R2 if du > 0 else RelativePosition.ON_S2
    if d1 < 0:
        return RelativePosition.GAMMA1 if d2 > 0 else RelativePosition.GAMMA2
    return RelativePosition.GAMMA4 if d2 > 0 else RelativePosition.GAMMA3


def shock_speed(p: ModelParams, j: int, u_minus: float, u_plus: float) -> float:
    if j not in (1, 2):
        raise ValueError(f"family must be 1 or 2, got {j}")
    return 0.5 * (u_plus + u_minus) + (p.k if j == 2 else -p.k)


def lax_admissible(p: ModelParams, j: int, left: State, right: State, tol: float | None = None) -> bool:
    """Lax entropy test for a ``j``-shock from ``left`` to ``right``.

    Raises NotOnShockCurve when ``right`` is off the ``j`` line through ``left``.
    """
    if tol is None:
        tol = default_tol(left, right)
    d1, d2 = line_offsets(p, left, right)
    if abs(d1 if j == 1 else d2) > tol:
        raise NotOnShockCurve(f"state {right} is not on the {j}-shock line through {left}")
    s = shock_speed(p, j, left.u, right.u)
    return char_speed(p, j, right.u) <= s <= char_speed(p, j, left.u)
