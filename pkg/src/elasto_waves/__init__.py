"""Exact solutions of the velocity-stress elastodynamics system.

Two-state Riemann problems are solved for arbitrary data; three-state wave
interaction problems are solved when the states share a level set of one
Riemann invariant.
"""
from .core import (
    CharStructure,
    InvariantPair,
    ModelParams,
    State,
    char_speeds,
    riemann_invariants,
    volpert_mean,
)
from .interaction import (
    Branch,
    CaseTag,
    Curve,
    DegenerateScenario,
    Event,
    EventKind,
    PiecewiseSolution,
    Scenario,
    UnsupportedConfiguration,
    build,
    classify_case,
)
from .riemann import WaveFan, eval_fan, middle_state, solve_riemann
from .wave_curves import RelativePosition, classify, lax_admissible, shock_speed

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "CaseTag",
    "CharStructure",
    "Curve",
    "DegenerateScenario",
    "Event",
    "EventKind",
    "InvariantPair",
    "ModelParams",
    "PiecewiseSolution",
    "RelativePosition",
    "Scenario",
    "State",
    "UnsupportedConfiguration",
    "WaveFan",
    "build",
    "char_speeds",
    "classify",
    "classify_case",
    "eval_fan",
    "lax_admissible",
    "middle_state",
    "riemann_invariants",
    "shock_speed",
    "solve_riemann",
    "volpert_mean",
]
