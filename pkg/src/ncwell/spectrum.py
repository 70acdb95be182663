"""Energy levels of the gravitational quantum well, with deformation shifts.

The commutative levels are ``E_{n,k} = -(m g^2 hbar^2/2)^(1/3) r_n + hbar^2 k^2/2m``.
The flat noncommutative well adds ``-theta m g k / 2`` and the
position-dependent one further adds ``-tau hbar^2 / 2m``.  The operator form of
those corrections is derived by :func:`reduce_hamiltonian`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .airy import airy_zero
from .constants import Constants
from .reps import RepMap
from .symalg import G, HEISENBERG, MASS, AlgebraContext, OpExpr, truncate

__all__ = [
    "DeformationParams",
    "SpectrumPoint",
    "NeglectPolicy",
    "Reduction",
    "energy_level",
    "shift_flat_nc",
    "shift_posdep",
    "hamiltonian",
    "reduce",
    "reduce_hamiltonian",
    "spectrum_table",
]


@dataclass(frozen=True)
class DeformationParams:
    theta: float = 0.0  # m^2
    tau: float = 0.0  # m^-2

    def __post_init__(self):
        for name in ("theta", "tau"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {v!r}")


@dataclass(frozen=True)
class SpectrumPoint:
    n: int
    k: float
    e_commutative: float
    shift_theta: float
    shift_tau: float
    e_total: float


def energy_level(n: int, k: float, c: Constants | None = None) -> float:
    """Commutative level E_{n,k} in J."""
    c = c or Constants()
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"level index must be a positive integer, got {n!r}")
    r_n = airy_zero(n).r_n
    return -c.energy_scale * r_n + c.hbar**2 * k**2 / (2 * c.mass)


def shift_flat_nc(k: float, p: DeformationParams, c: Constants | None = None) -> float:
    c = c or Constants()
    return -p.theta * c.mass * c.g_accel * k / 2


def shift_posdep(k: float, p: DeformationParams, c: Constants | None = None) -> tuple[float, float]:
    c = c or Constants()
    return shift_flat_nc(k, p, c), -p.tau * c.hbar**2 / (2 * c.mass)


@dataclass(frozen=True)
class NeglectPolicy:
    """Which terms of the expanded Hamiltonian are discarded, and why.

    Monomials containing a ``drop_generators`` factor are removed (their
    expectation vanishes for a transversely centred plane-wave packet), and so is
    every term of joint degree above ``max_degree`` in ``small_params``.
    """

    enabled: bool = True
    drop_generators: tuple[str, ...] = ("y_s",)
    small_params: tuple[str, ...] = ("theta", "tau")
    max_degree: int = 1

    def describe(self) -> list[str]:
        if not self.enabled:
            return ["neglect policy: disabled (exact expansion)"]
        return [
            f"neglect policy: drop total ({', '.join(self.small_params)})-degree >= {self.max_degree + 1}",
            f"neglect policy: drop monomials containing {', '.join(self.drop_generators)}",
            "neglect policy: keep p_xs^2, p_ys^2, p_ys, x_s and constant terms",
        ]


@dataclass(frozen=True)
class Reduction:
    exact: OpExpr
    kept: OpExpr
    dropped: OpExpr = field(repr=False)


def hamiltonian(ctx: AlgebraContext) -> OpExpr:
    """p_x^2/2m + p_y^2/2m + m g x over a context ordered (x, y, p_x, p_y)."""
    x, _, px, py = ctx.gens()
    return (px * px + py * py) / (2 * MASS) + (MASS * G) * x


def reduce(rep: RepMap, policy: NeglectPolicy | None = None) -> Reduction:
    if rep.target is not HEISENBERG:
        raise ValueError(f"{rep.name} does not map into canonical variables")
    policy = policy or NeglectPolicy()
    exact = rep(hamiltonian(rep.source))
    if not policy.enabled:
        return Reduction(exact, exact, HEISENBERG.zero())
    first = truncate(exact, {policy.small_params: policy.max_degree})
    drop = {HEISENBERG.index[g] for g in policy.drop_generators}
    kept = OpExpr(HEISENBERG, {w: c for w, c in first.items() if not drop.intersection(w)})
    return Reduction(exact, kept, exact - kept)


def reduce_hamiltonian(rep: RepMap, policy: NeglectPolicy | None = None) -> OpExpr:
    """Deformed Hamiltonian in canonical variables, after the neglect policy."""
    return reduce(rep, policy).kept


def spectrum_table(
    n_max: int, k: float, p: DeformationParams | None = None, c: Constants | None = None
) -> list[SpectrumPoint]:
    if not isinstance(n_max, int) or n_max < 1:
        raise ValueError(f"n_max must be a positive integer, got {n_max!r}")
    p = p or DeformationParams()
    c = c or Constants()
    s_theta, s_tau = shift_posdep(k, p, c)
    rows = []
    for n in range(1, n_max + 1):
        e0 = energy_level(n, k, c)
        rows.append(SpectrumPoint(n, k, e0, s_theta, s_tau, e0 + s_theta + s_tau))
    return rows
