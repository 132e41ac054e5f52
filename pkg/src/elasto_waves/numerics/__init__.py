"""Independent reference solvers used to cross-check the exact solutions."""
from .frontrack import FrontState, TrackedFront, front_track_scalar
from .kernels import BACKEND
from .schemes import (
    DomainTooSmall,
    Grid1D,
    cells_to_csv,
    check_domain,
    fitted_order,
    fv_path_conservative,
    glimm_evolve,
    glimm_step,
    grid_for,
    initial_cells,
    l1_distance,
    observed_order,
)

__all__ = [
    "BACKEND",
    "DomainTooSmall",
    "FrontState",
    "Grid1D",
    "TrackedFront",
    "cells_to_csv",
    "check_domain",
    "front_track_scalar",
    "fitted_order",
    "fv_path_conservative",
    "glimm_evolve",
    "glimm_step",
    "grid_for",
    "initial_cells",
    "l1_distance",
    "observed_order",
]
