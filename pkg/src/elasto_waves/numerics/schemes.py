"""Grid-based reference solvers for the full system."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from ..core import ModelParams
from ..interaction import PiecewiseSolution, Scenario
from . import kernels


class DomainTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class Grid1D:
    x_min: float
    x_max: float
    n_cells: int
    cfl: float = 0.9

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError("x_min must be < x_max")
        if self.n_cells < 10:
            raise ValueError("n_cells must be >= 10")
        if not 0.0 < self.cfl < 1.0:
            raise ValueError("cfl must lie in (0, 1)")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_cells

    @property
    def centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.dx

    @property
    def faces(self) -> np.ndarray:
        return self.x_min + np.arange(self.n_cells + 1) * self.dx


def grid_for(s: Scenario, t_end: float, n_cells: int, cfl: float = 0.9) -> Grid1D:
    """Smallest grid passing :func:`check_domain`, plus two spare cells per side."""
    if n_cells <= 4:
        raise ValueError("n_cells must be >= 10")
    reach = s.max_speed() * t_end
    width = (s.x1 - s.x0) + 2.0 * reach
    dx = width / (n_cells - 4)
    return Grid1D(s.x0 - reach - 2.0 * dx, s.x1 + reach + 2.0 * dx, n_cells, cfl)


def check_domain(s: Scenario, grid: Grid1D, t_end: float) -> None:
    reach = s.max_speed() * t_end
    if s.x0 - reach < grid.x_min or s.x1 + reach > grid.x_max:
        raise DomainTooSmall(
            f"waves reach [{s.x0 - reach:.6g}, {s.x1 + reach:.6g}] by t={t_end:g}, "
            f"outside the grid [{grid.x_min:.6g}, {grid.x_max:.6g}]")


def initial_cells(s: Scenario, grid: Grid1D) -> tuple[np.ndarray, np.ndarray]:
    """Exact cell averages of the three-state data."""
    f = grid.faces
    a, b = f[:-1], f[1:]
    w_left = np.clip(np.minimum(b, s.x0) - a, 0.0, None)
    w_right = np.clip(b - np.maximum(a, s.x1), 0.0, None)
    w_mid = np.clip(np.minimum(b, s.x1) - np.maximum(a, s.x0), 0.0, None)
    tot = b - a
    u = (w_left * s.left.u + w_mid * s.middle.u + w_right * s.right.u) / tot
    sg = (w_left * s.left.sigma + w_mid * s.middle.sigma + w_right * s.right.sigma) / tot
    # pure cells take the state exactly
    for st, w in ((s.left, w_left), (s.middle, w_mid), (s.right, w_right)):
        full = w == tot
        u[full] = st.u
        sg[full] = st.sigma
    return u, sg


def fv_path_conservative(p: ModelParams, s: Scenario, grid: Grid1D, t_end: float) -> tuple[np.ndarray, np.ndarray]:
    """First-order path-conservative scheme with Rusanov dissipation.

    Jump fluctuations use the straight-line path, so the averaged matrix is
    ``A(mean(u))``; the dissipation speed is ``max(|u_l|, |u_r|) + k``.
    """
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    check_domain(s, grid, t_end)
    u, sg = initial_cells(s, grid)
    kernels.fv_evolve(u, sg, p.k, grid.dx, grid.cfl, float(t_end))
    return u, sg


def glimm_step(p: ModelParams, u: np.ndarray, sg: np.ndarray, dx: float, dt: float,
               theta: float) -> tuple[np.ndarray, np.ndarray]:
    """One random-choice step with sample fraction ``theta`` in ``[0, 1)``."""
    if theta <= 0.5:
        ul = np.concatenate((u[:1], u[:-1]))
        sl = np.concatenate((sg[:1], sg[:-1]))
        return kernels.rp_sample(ul, sl, u, sg, p.k, np.full(u.shape, theta * dx / dt))
    ur = np.concatenate((u[1:], u[-1:]))
    sr = np.concatenate((sg[1:], sg[-1:]))
    return kernels.rp_sample(u, sg, ur, sr, p.k, np.full(u.shape, (theta - 1.0) * dx / dt))


def glimm_evolve(p: ModelParams, u0, s0, grid: Grid1D, t_end: float, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Random-choice scheme sampled with the (5, 3) van der Corput sequence.

    The step ``n`` uses the sequence element ``n + seed``; the time step keeps
    waves from neighbouring interfaces apart (``dt max|lambda| <= dx / 2``).
    """
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    if seed < 0:
        raise ValueError("seed must be non-negative")
    u = np.array(u0, dtype=float)
    sg = np.array(s0, dtype=float)
    kernels.glimm_evolve(u, sg, p.k, grid.dx, grid.cfl, float(t_end), int(seed))
    return u, sg


def l1_distance(cells: tuple[np.ndarray, np.ndarray], sol: PiecewiseSolution, grid: Grid1D, t: float) -> float:
    if t <= 0:
        raise ValueError("t must be positive")
    u, sg = cells
    ue, se = sol.eval_many(grid.centers, t)
    return float(np.sum(np.abs(u - ue) + np.abs(sg - se)) * grid.dx)


def cells_to_csv(grid: Grid1D, cells: tuple[np.ndarray, np.ndarray]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x_center", "u", "sigma"])
    for x, a, b in zip(grid.centers, *cells):
        w.writerow([format(x, ".17g"), format(a, ".17g"), format(b, ".17g")])
    return buf.getvalue()


def observed_order(ns, errors) -> float:
    """Convergence rate between the two finest resolutions."""
    if len(ns) != len(errors) or len(ns) < 2:
        raise ValueError("need at least two (n, error) pairs")
    (n1, e1), (n2, e2) = sorted(zip(ns, errors))[-2:]
    if e1 <= 0 or e2 <= 0:
        return float("nan")
    return math.log(e1 / e2) / math.log(n2 / n1)


def fitted_order(ns, errors) -> float:
    """Least-squares slope of ``-log(error)`` against ``log(n)``, for reporting."""
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(errors, dtype=float))
    return float(-np.polyfit(x, y, 1)[0])
