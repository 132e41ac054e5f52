"""Reference scenarios: one per solution layout of the interaction problem.

Keys name the layout (case, subcase, branch). States are chosen so that the
shared invariant holds exactly in binary floating point.
"""
from __future__ import annotations

from .core import ModelParams, State
from .interaction import Scenario


def _sc(k, left, middle, right, x0=0.0, x1=1.0) -> Scenario:
    return Scenario(ModelParams(k), State(*left), State(*middle), State(*right), x0, x1)


FIXTURES: dict[str, Scenario] = {
    # family 2 (sigma + k u shared)
    "case1_sub1_no_second": _sc(1.0, (0, 0), (2, -2), (1, -1)),
    "case1_sub1_shock": _sc(1.0, (0, 0), (1, -1), (-1, 1)),
    "case1_sub2": _sc(1.0, (0, 0), (1, -1), (2, -2)),
    "case2_sub1_no_second": _sc(1.0, (1, -1), (0, 0), (2, -2)),
    "case2_sub1_shock": _sc(1.0, (2, -2), (0, 0), (1, -1)),
    "case2_sub2": _sc(1.0, (2, -2), (0, 0), (-1, 1), x1=1.5),
    # family 1 (sigma - k u shared)
    "case3_sub1_no_second": _sc(2.0, (1, 2), (0, 0), (2, 4)),
    "case3_sub1_shock": _sc(2.0, (2, 4), (0, 0), (1, 2)),
    "case3_sub2": _sc(1.0, (2, 0), (0, -2), (-2, -4)),
    "case4_sub1_no_second": _sc(2.0, (0, 1), (2, 5), (1, 3)),
    "case4_sub1_shock": _sc(1.0, (0, 0), (2, 2), (-1, -1), x1=1.5),
    "case4_sub2": _sc(2.0, (0, 1), (1, 3), (3, 7)),
}

RUNNING_EXAMPLE = "case1_sub1_shock"


def scenario_to_dict(s: Scenario) -> dict:
    return {
        "k": s.k,
        "left": [s.left.u, s.left.sigma],
        "middle": [s.middle.u, s.middle.sigma],
        "right": [s.right.u, s.right.sigma],
        "x0": s.x0,
        "x1": s.x1,
    }
