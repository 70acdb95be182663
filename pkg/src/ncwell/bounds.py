"""Minimal position uncertainty and experimental bounds on theta and tau.

Requiring the magnitude of the level shift to stay below the measured energy
resolution gives the half-plane ``coeff_theta*theta + coeff_tau*tau <= dE``
with ``coeff_theta = m g k / 2`` and ``coeff_tau = hbar^2 / 2m``.

The published tau bound (6.26e8 m^-2) cannot be recovered from that
half-plane with the stated inputs, so three tau conventions are offered:

* ``full``: the whole budget spent on tau (theta = 0);
* ``residual``: the budget left after a given theta, by default the published
  theta bound 0.755e-13 m^2;
* ``paper``: the published tau and theta values, quoted as-is.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .constants import Constants, Experiment, wavenumber
from .spectrum import DeformationParams

__all__ = [
    "PAPER_THETA_BOUND",
    "PAPER_TAU_BOUND",
    "PAPER_MIN_LENGTH_BOUND",
    "TauConvention",
    "BoundReport",
    "min_uncertainty_x",
    "theta_upper",
    "feasible_region",
    "is_feasible",
    "tau_upper",
    "bound_report",
]

PAPER_THETA_BOUND = 0.755e-13  # m^2
PAPER_TAU_BOUND = 6.26e8  # m^-2
PAPER_MIN_LENGTH_BOUND = 1.87e-9  # m


class TauConvention(str, enum.Enum):
    FULL_BUDGET = "full"
    RESIDUAL = "residual"
    PAPER = "paper"


@dataclass(frozen=True)
class BoundReport:
    theta_max: float
    tau_max: float
    tau_convention: str
    coeff_theta: float
    coeff_tau: float
    min_length_bound: float
    theta_source: str
    tau_full_budget: float
    tau_residual: float
    tau_paper: float = PAPER_TAU_BOUND

    def as_pairs(self) -> list[tuple[str, float | str]]:
        return [
            ("theta_max", self.theta_max),
            ("tau_max", self.tau_max),
            ("tau_convention", self.tau_convention),
            ("min_length_bound", self.min_length_bound),
            ("coeff_theta", self.coeff_theta),
            ("coeff_tau", self.coeff_tau),
            ("theta_source", self.theta_source),
            ("tau_full_budget", self.tau_full_budget),
            ("tau_residual", self.tau_residual),
            ("tau_paper", self.tau_paper),
        ]


def min_uncertainty_x(p: DeformationParams, y_mean: float = 0.0) -> float:
    """Smallest x uncertainty compatible with the deformed x-y uncertainty relation.

    Minimizing ``dx = theta (1 + tau <y>^2 + tau dy^2) / (2 dy)`` over ``dy``
    gives ``theta sqrt(tau) sqrt(1 + tau <y>^2)``.
    """
    if p.tau < 0:
        raise ValueError("tau must be non-negative")
    return p.theta * math.sqrt(p.tau) * math.sqrt(1 + p.tau * y_mean**2)


def feasible_region(c: Constants | None = None, e: Experiment | None = None) -> tuple[float, float, float]:
    """(coeff_theta, coeff_tau, rhs) of the admissible half-plane, SI units."""
    c = c or Constants()
    e = e or Experiment()
    k = wavenumber(c, e)
    return c.mass * c.g_accel * k / 2, c.hbar**2 / (2 * c.mass), e.delta_e1_exp


def is_feasible(theta: float, tau: float, c: Constants | None = None, e: Experiment | None = None) -> bool:
    a, b, rhs = feasible_region(c, e)
    return a * theta + b * tau <= rhs


def theta_upper(c: Constants | None = None, e: Experiment | None = None) -> float:
    """2 dE / (m g k), in m^2."""
    a, _, rhs = feasible_region(c, e)
    return rhs / a


def tau_upper(
    c: Constants | None = None,
    e: Experiment | None = None,
    convention: TauConvention | str = TauConvention.RESIDUAL,
    theta_star: float = PAPER_THETA_BOUND,
) -> float:
    convention = TauConvention(convention)
    if convention is TauConvention.PAPER:
        return PAPER_TAU_BOUND
    a, b, rhs = feasible_region(c, e)
    if convention is TauConvention.FULL_BUDGET:
        return rhs / b
    budget = rhs - a * theta_star
    if theta_star < 0 or budget < 0:
        raise ValueError(f"theta* = {theta_star!r} m^2 already exceeds the energy budget")
    return budget / b


def bound_report(
    c: Constants | None = None,
    e: Experiment | None = None,
    convention: TauConvention | str = TauConvention.RESIDUAL,
    theta_star: float = PAPER_THETA_BOUND,
) -> BoundReport:
    """theta and tau bounds and the resulting minimal-length bound.

    Under the ``paper`` convention both bounds are the published values;
    otherwise theta_max is computed from the inputs.
    """
    c = c or Constants()
    e = e or Experiment()
    convention = TauConvention(convention)
    a, b, _ = feasible_region(c, e)
    if convention is TauConvention.PAPER:
        theta_max, theta_source = PAPER_THETA_BOUND, "paper"
    else:
        theta_max, theta_source = theta_upper(c, e), "computed"
    tau_max = tau_upper(c, e, convention, theta_star)
    return BoundReport(
        theta_max=theta_max,
        tau_max=tau_max,
        tau_convention=convention.value,
        coeff_theta=a,
        coeff_tau=b,
        min_length_bound=min_uncertainty_x(DeformationParams(theta_max, tau_max)),
        theta_source=theta_source,
        tau_full_budget=tau_upper(c, e, TauConvention.FULL_BUDGET),
        tau_residual=tau_upper(c, e, TauConvention.RESIDUAL, theta_star),
    )
