import math
from dataclasses import replace

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from ncwell.bounds import (
    PAPER_MIN_LENGTH_BOUND,
    PAPER_TAU_BOUND,
    PAPER_THETA_BOUND,
    BoundReport,
    TauConvention,
    bound_report,
    feasible_region,
    is_feasible,
    min_uncertainty_x,
    tau_upper,
    theta_upper,
)
from ncwell.constants import Constants, Experiment
from ncwell.spectrum import DeformationParams

C = Constants()
E = Experiment()

pos = st.floats(min_value=0.1, max_value=10.0)
thetas = st.floats(min_value=1e-16, max_value=1e-10)
taus = st.floats(min_value=0.0, max_value=1e12)
y_means = st.floats(min_value=-1e-3, max_value=1e-3)


class TestMinUncertainty:
    def test_absolute_minimum(self):
        p = DeformationParams(theta=2e-14, tau=4e8)
        assert min_uncertainty_x(p) == pytest.approx(2e-14 * 2e4, rel=1e-15)

    def test_no_minimal_length_without_tau(self):
        assert min_uncertainty_x(DeformationParams(theta=1e-13, tau=0.0), 1e-6) == 0.0

    def test_worked_value(self):
        assert min_uncertainty_x(DeformationParams(7.74e-14, 6.26e8)) == pytest.approx(1.94e-9, rel=5e-3)

    def test_negative_tau_rejected(self):
        # bypass the dataclass check to reach the function's own guard
        p = DeformationParams(1e-14, 1.0)
        object.__setattr__(p, "tau", -1.0)
        with pytest.raises(ValueError):
            min_uncertainty_x(p)

    @given(thetas, taus, y_means)
    def test_at_least_absolute_minimum(self, theta, tau, y):
        p = DeformationParams(theta, tau)
        floor = theta * math.sqrt(tau)
        value = min_uncertainty_x(p, y)
        assert value >= floor * (1 - 1e-15)
        if y == 0.0:
            assert value == pytest.approx(floor, rel=1e-15)
        elif tau * y * y > 1e-12:
            assert value > floor

    @given(thetas, taus, y_means, st.floats(min_value=1e-3, max_value=1e3))
    def test_linear_in_theta(self, theta, tau, y, lam):
        a = min_uncertainty_x(DeformationParams(lam * theta, tau), y)
        b = lam * min_uncertainty_x(DeformationParams(theta, tau), y)
        assert a == pytest.approx(b, rel=1e-12)

    @given(st.floats(min_value=1e-15, max_value=1e-12), st.floats(min_value=1e6, max_value=1e10),
           st.floats(min_value=-1e-4, max_value=1e-4))
    def test_numerical_minimization_oracle(self, theta, tau, y):
        # dx(dy) = theta (1 + tau y^2 + tau dy^2) / (2 dy), minimized over dy > 0
        def dx(log_dy):
            dy = math.exp(log_dy)
            return theta * (1 + tau * y * y + tau * dy * dy) / (2 * dy)

        guess = -0.5 * math.log(tau)
        res = minimize_scalar(dx, bounds=(guess - 10, guess + 10), method="bounded", options={"xatol": 1e-10})
        assert min_uncertainty_x(DeformationParams(theta, tau), y) == pytest.approx(res.fun, rel=1e-9)


def test_stationarity_symbolic():
    theta, tau, dy = sympy.symbols("theta tau dy", positive=True)
    y = sympy.symbols("y", real=True)
    dx = theta * (1 + tau * y**2 + tau * dy**2) / (2 * dy)
    (crit,) = sympy.solve(sympy.diff(dx, dy), dy)
    closed = sympy.simplify(dx.subs(dy, crit) - theta * sympy.sqrt(tau) * sympy.sqrt(1 + tau * y**2))
    assert closed == 0
    sample = {theta: sympy.Rational(3, 10**14), tau: 5 * 10**8, y: sympy.Rational(1, 10**5)}
    want = float(dx.subs(dy, crit).subs(sample))
    got = min_uncertainty_x(DeformationParams(3e-14, 5e8), 1e-5)
    assert got == pytest.approx(want, rel=1e-14)


class TestBounds:
    def test_feasible_region_coefficients(self):
        a, b, rhs = feasible_region(C, E)
        assert a == pytest.approx(8.46e-19, rel=5e-3)
        assert b == pytest.approx(3.34e-42, rel=5e-3)
        assert rhs == 6.55e-32

    def test_theta_bound(self):
        t = theta_upper(C, E)
        assert t == pytest.approx(7.74e-14, rel=5e-3)
        assert t == pytest.approx(PAPER_THETA_BOUND, rel=0.05)

    def test_origin_feasible_and_boundary(self):
        t = theta_upper(C, E)
        assert is_feasible(0.0, 0.0, C, E)
        assert is_feasible(t * (1 - 1e-12), 0.0, C, E)
        assert not is_feasible(t * (1 + 1e-9), 0.0, C, E)
        a, _, rhs = feasible_region(C, E)
        assert a * t == pytest.approx(rhs, rel=1e-15)

    def test_linear_in_resolution(self):
        doubled = replace(E, delta_e1_exp=2 * E.delta_e1_exp)
        assert theta_upper(C, doubled) == pytest.approx(2 * theta_upper(C, E), rel=1e-15)

    def test_inverse_in_velocity(self):
        faster = replace(E, v_mean=2 * E.v_mean)
        assert theta_upper(C, faster) == pytest.approx(theta_upper(C, E) / 2, rel=1e-15)

    @given(pos, pos, pos, pos)
    def test_monotonicity(self, f_de, f_m, f_g, f_v):
        base = theta_upper(C, E)
        if f_de > 1:
            assert theta_upper(C, replace(E, delta_e1_exp=f_de * E.delta_e1_exp)) > base
        if f_m > 1:
            assert theta_upper(replace(C, mass=f_m * C.mass), E) < base
        if f_g > 1:
            assert theta_upper(replace(C, g_accel=f_g * C.g_accel), E) < base
        if f_v > 1:
            assert theta_upper(C, replace(E, v_mean=f_v * E.v_mean)) < base

    def test_tau_full_budget(self):
        assert tau_upper(C, E, TauConvention.FULL_BUDGET) == pytest.approx(1.96e10, rel=5e-3)

    def test_tau_residual(self):
        a, b, rhs = feasible_region(C, E)
        got = tau_upper(C, E, "residual", PAPER_THETA_BOUND)
        assert got == pytest.approx((rhs - a * PAPER_THETA_BOUND) / b, rel=1e-12)

    def test_tau_published(self):
        assert tau_upper(C, E, "paper") == PAPER_TAU_BOUND == 6.26e8

    def test_published_tau_is_bracketed(self):
        lo = tau_upper(C, E, TauConvention.RESIDUAL)
        hi = tau_upper(C, E, TauConvention.FULL_BUDGET)
        assert lo <= PAPER_TAU_BOUND <= hi

    def test_residual_infeasible(self):
        with pytest.raises(ValueError):
            tau_upper(C, E, "residual", 2 * theta_upper(C, E))
        with pytest.raises(ValueError):
            tau_upper(C, E, "residual", -1e-14)

    def test_unknown_convention(self):
        with pytest.raises(ValueError):
            tau_upper(C, E, "median")


class TestReport:
    def test_published_convention(self):
        rep = bound_report(C, E, "paper")
        assert rep.theta_max == PAPER_THETA_BOUND
        assert rep.tau_max == PAPER_TAU_BOUND
        assert rep.theta_source == "paper"
        assert rep.min_length_bound == pytest.approx(1.89e-9, rel=5e-3)
        assert rep.min_length_bound == pytest.approx(PAPER_MIN_LENGTH_BOUND, rel=0.015)

    def test_full_budget_convention(self):
        rep = bound_report(C, E, TauConvention.FULL_BUDGET)
        assert rep.min_length_bound == pytest.approx(1.08e-8, rel=5e-3)
        assert rep.theta_source == "computed"

    @pytest.mark.parametrize("conv", list(TauConvention))
    def test_report_invariants(self, conv):
        rep = bound_report(C, E, conv)
        assert isinstance(rep, BoundReport)
        for key, value in rep.as_pairs():
            if not isinstance(value, str):
                assert value >= 0, key
        assert rep.min_length_bound == pytest.approx(rep.theta_max * math.sqrt(rep.tau_max), rel=1e-15)
        assert rep.tau_residual <= rep.tau_paper <= rep.tau_full_budget
        keys = [k for k, _ in rep.as_pairs()]
        for k in ("theta_max", "tau_max", "tau_convention", "min_length_bound", "coeff_theta", "coeff_tau"):
            assert k in keys

    @given(thetas, st.floats(min_value=1e4, max_value=1e12), st.floats(min_value=1e-3, max_value=1e3))
    def test_rescaling_invariance(self, theta, tau, lam):
        a = min_uncertainty_x(DeformationParams(theta, tau))
        b = min_uncertainty_x(DeformationParams(lam * theta, tau / lam**2))
        assert a == pytest.approx(b, rel=1e-12)

    @given(taus, y_means)
    def test_zero_theta_gives_zero_length(self, tau, y):
        assert min_uncertainty_x(DeformationParams(0.0, tau), y) == 0.0
