"""Finite-difference eigenvalues of the linear potential between two hard walls.

The Hamiltonian ``-hbar^2/2m d^2/dx^2 + m g x`` on ``[0, x_max]`` with
``psi(0) = psi(x_max) = 0`` becomes a symmetric tridiagonal matrix on the
interior grid points.  Eigenvalues come from bisection on the Sturm sequence
count, so no dense eigensolver is involved; the result is an independent check
on the Airy-zero spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .airy import ai_prime, airy_zero, tail_integral
from .constants import Constants

__all__ = [
    "Grid1D",
    "GridTooSmallError",
    "TAIL_TOLERANCE",
    "tail_mass",
    "count_below",
    "fd_eigenvalues",
    "fd_eigenvector",
]

# Probability mass of level n beyond x_max allowed before a grid is rejected;
# the wall then moves the level by a few parts in 10^6 at most.
TAIL_TOLERANCE = 1e-6


class GridTooSmallError(ValueError):
    pass


@dataclass(frozen=True)
class Grid1D:
    x_max: float = 60e-6
    n_points: int = 4000

    def __post_init__(self):
        if self.n_points < 200:
            raise ValueError(f"need at least 200 grid points, got {self.n_points}")
        if not self.x_max > 0:
            raise ValueError("x_max must be positive")

    @property
    def spacing(self) -> float:
        return self.x_max / (self.n_points - 1)

    def interior(self) -> np.ndarray:
        return np.arange(1, self.n_points - 1) * self.spacing


def tail_mass(n: int, grid: Grid1D, c: Constants) -> float:
    """Fraction of the n-th Airy state lying beyond the far wall."""
    r = airy_zero(n).r_n
    return tail_integral(grid.x_max / c.length_scale + r) / ai_prime(r) ** 2


def _matrix(grid: Grid1D, c: Constants) -> tuple[list[float], float]:
    h = grid.spacing
    kin = c.hbar**2 / (2 * c.mass * h * h)
    x = grid.interior()
    diag = (2 * kin + c.mass * c.g_accel * x).tolist()
    return diag, -kin


def _sturm_count(diag: list[float], off2: float, lam: float) -> int:
    """Number of eigenvalues strictly below ``lam``."""
    count = 0
    q = 1.0
    tiny = 1e-300
    for d in diag:
        q = d - lam - off2 / q
        if q == 0.0:
            q = -tiny
        if q < 0.0:
            count += 1
    return count


def count_below(energy: float, grid: Grid1D, c: Constants | None = None) -> int:
    c = c or Constants()
    diag, off = _matrix(grid, c)
    return _sturm_count(diag, off * off, energy)


def fd_eigenvalues(
    n_levels: int,
    grid: Grid1D | None = None,
    c: Constants | None = None,
    rtol: float = 1e-14,
    check_tail: bool = True,
) -> list[float]:
    """Lowest ``n_levels`` eigenvalues in J, ascending.

    With ``check_tail`` the grid must hold each requested Airy state up to
    ``TAIL_TOLERANCE``; turn it off to study the two-wall problem for its own
    sake (for instance the box limit g -> 0).
    """
    grid = grid or Grid1D()
    c = c or Constants()
    if n_levels < 1:
        raise ValueError("n_levels must be positive")
    for n in range(1, n_levels + 1 if check_tail else 1):
        mass = tail_mass(n, grid, c)
        if mass > TAIL_TOLERANCE:
            raise GridTooSmallError(
                f"x_max = {grid.x_max:g} m leaves {mass:.2e} of level {n} beyond the wall; "
                f"increase x_max"
            )
    diag, off = _matrix(grid, c)
    off2 = off * off
    lo0 = min(diag) - 2 * abs(off)
    hi0 = max(diag) + 2 * abs(off)
    levels = []
    for j in range(n_levels):
        lo = levels[-1] if levels else lo0
        hi = hi0
        while hi - lo > rtol * max(abs(lo), abs(hi)):
            mid = 0.5 * (lo + hi)
            if mid in (lo, hi):
                break
            if _sturm_count(diag, off2, mid) > j:
                hi = mid
            else:
                lo = mid
        levels.append(0.5 * (lo + hi))
    return levels


def fd_eigenvector(energy: float, grid: Grid1D, c: Constants | None = None, iterations: int = 3) -> np.ndarray:
    """Interior eigenvector for an eigenvalue, by shifted inverse iteration."""
    c = c or Constants()
    diag, off = _matrix(grid, c)
    m = len(diag)
    shift = energy * (1 - 1e-10)
    ab = np.empty((3, m))
    ab[0, :] = off
    ab[1, :] = np.asarray(diag) - shift
    ab[2, :] = off
    v = np.ones(m)
    for _ in range(iterations):
        v = solve_banded((1, 1), ab, v)
        v /= np.linalg.norm(v)
    return v
