"""Closed-form interval machinery: F, roots, critical coefficient, eigenfunction."""

import math

import numpy as np
import pytest

from drifteig import (
    BangBangInterval,
    Boundary,
    F_components,
    ModelParams,
    TranscendParams,
    beta_crit,
    closed_form_eigenfunction,
    delta_diag,
    dirichlet_root,
    make_discretization,
    principal_eigenvalue,
    regime_equations,
    transcendental_root,
)
from drifteig.transcend import _f_scaled


@pytest.fixture
def tp(params):
    return TranscendParams(params=params, delta=0.3, beta=1.0)


class TestF:
    def test_vanishes_at_lambda_zero(self, tp):
        for xi in (0.0, 0.1, 0.35):
            for beta in (0.0, 1.0, 7.0):
                assert F_components(xi, beta, 0.0, tp)[2] == 0.0

    def test_slope_at_zero(self, tp, params):
        # dF/dsqrt(lam) at 0: positive, and equal to
        # sqrt(k) d beta^2 e^{2a} + sqrt(k) e^{a(k+2)} beta (beta e^a (1-d) + 2)
        a, k, d = params.alpha, params.kappa, tp.delta
        for beta in (0.5, 1.0, 4.0):
            expected = math.sqrt(k) * d * beta**2 * math.exp(2 * a) + math.sqrt(
                k
            ) * math.exp(a * (k + 2)) * beta * (beta * math.exp(a) * (1 - d) + 2.0)
            assert expected > 0.0
            eps = 1e-6
            fd = F_components(0.1, beta, eps**2, tp)[2] / eps
            assert fd == pytest.approx(expected, rel=1e-5)

    def test_xi_independent_at_critical_lambda(self, tp, params):
        for beta in (0.7, 2.0, 5.0):
            lam = beta**2 * math.exp(2.0 * params.alpha)
            vals = [F_components(xi, beta, lam, tp)[2] for xi in np.linspace(0.0, 0.35, 9)]
            assert max(vals) - min(vals) <= 1e-10 * max(abs(v) for v in vals)

    def test_scaled_variant_shares_roots(self, tp):
        lam = transcendental_root(0.1, 2.0, tp)
        assert abs(_f_scaled(0.1, 2.0, lam, tp)) <= 1e-9
        # same sign pattern away from the root
        for lam_probe in (0.5 * lam, 1.00001 * lam):
            full = F_components(0.1, 2.0, lam_probe, tp)[2]
            scaled = _f_scaled(0.1, 2.0, lam_probe, tp)
            assert math.copysign(1.0, full) == math.copysign(1.0, scaled)


class TestTranscendentalRoot:
    def test_agrees_with_grid_solver(self, tp, params):
        lam = transcendental_root(0.0, 1.0, tp)
        w = BangBangInterval(0.0, 0.3, params).weight()
        pair = principal_eigenvalue(w, params, Boundary.robin(1.0), make_discretization(4000, w))
        assert lam == pytest.approx(pair.lam, rel=1e-4)

    def test_roots_coincide_at_beta_crit(self, tp, params):
        bc = beta_crit(tp)
        lam0 = transcendental_root(0.0, bc, tp)
        lamc = transcendental_root(0.35, bc, tp)
        target = bc**2 * math.exp(2.0 * params.alpha)
        assert lam0 == pytest.approx(target, rel=1e-10)
        assert lamc == pytest.approx(target, rel=1e-10)

    def test_below_first_period_bound(self, tp, params):
        bound = math.pi**2 / (params.kappa * tp.delta**2)
        for beta in (0.0, 0.5, 3.0, 30.0, 1e4):
            if beta == 0.0:
                lam = transcendental_root(0.0, beta, tp)
            else:
                lam = transcendental_root(0.2, beta, tp)
            assert 0.0 < lam < bound

    def test_symmetry(self, tp):
        for xi in (0.0, 0.05, 0.2):
            a = transcendental_root(xi, 2.0, tp)
            b = transcendental_root(1.0 - xi - 0.3, 2.0, tp)
            assert a == pytest.approx(b, rel=1e-12)

    def test_monotone_in_beta(self, tp):
        lams = [transcendental_root(0.1, b, tp) for b in (0.1, 0.5, 2.0, 8.0, 40.0)]
        assert all(b >= a for a, b in zip(lams, lams[1:]))

    def test_ratio_to_beta_squared_decreases(self, tp):
        prev = math.inf
        for beta in np.geomspace(0.2, 20.0, 12):
            lam = min(
                transcendental_root(0.0, float(beta), tp),
                transcendental_root(0.35, float(beta), tp),
            )
            ratio = lam / beta**2
            assert ratio < prev
            prev = ratio

    def test_positive_below_first_root(self, tp):
        for xi in (0.0, 0.35):
            lam1 = transcendental_root(xi, 2.0, tp)
            for lam in np.linspace(0.01 * lam1, 0.99 * lam1, 40):
                assert _f_scaled(xi, 2.0, float(lam), tp) > 0.0

    def test_neumann_zero_regime_guard(self, params):
        # interval long enough that the exponential mass is nonnegative
        tp = TranscendParams(params=params, delta=0.9, beta=0.0)
        with pytest.raises(ValueError):
            transcendental_root(0.0, 0.0, tp)

    def test_validation(self, tp):
        with pytest.raises(ValueError):
            transcendental_root(0.8, 1.0, tp)  # xi beyond 1 - delta
        with pytest.raises(ValueError):
            transcendental_root(0.0, math.inf, tp)


class TestDirichletRoot:
    def test_agrees_with_grid_solver(self, tp, params):
        lam = dirichlet_root(tp)
        w = BangBangInterval(0.0, 0.3, params).weight()
        pair = principal_eigenvalue(w, params, Boundary.dirichlet(), make_discretization(4000, w))
        assert lam == pytest.approx(pair.lam, rel=1e-4)

    def test_location_interval(self, tp, params):
        lam = dirichlet_root(tp)
        k, d = params.kappa, tp.delta
        low = math.pi**2 / (4.0 * k * d**2)
        high = math.pi**2 / (k * d**2)
        assert low < lam < high

    def test_full_interval_limit(self, params):
        tp = TranscendParams(params=params, delta=0.999, beta=0.0)
        lam = dirichlet_root(tp)
        assert lam == pytest.approx(math.pi**2 / params.kappa, rel=0.01)

    def test_only_edge_interval(self, tp):
        with pytest.raises(ValueError):
            dirichlet_root(tp, xi=0.1)


class TestRegimeEquations:
    def test_boundary_regime_identity(self, tp):
        lam = transcendental_root(0.0, 1.0, tp)
        lhs, rhs = regime_equations(1.0, lam, tp)
        assert abs(lhs - rhs) <= 1e-8

    def test_centered_regime_identity(self, tp):
        lam = transcendental_root(0.35, 10.0, tp)
        lhs, rhs = regime_equations(10.0, lam, tp)
        assert abs(lhs - rhs) <= 1e-8

    def test_denominator_matches_centered_fs(self, tp, params):
        # D(beta, lam) is the centered-interval F_s up to the printed regrouping
        beta, lam = 10.0, 14.0
        f_s, _, _ = F_components(0.35, beta, lam, tp)
        a, k = params.alpha, params.kappa
        s = math.sqrt(lam)
        t = s * (1.0 - tp.delta)
        big_k = k * math.exp(2 * a * (k + 1))
        b2 = beta**2 * math.exp(2 * a)
        dal = (
            0.5 * (big_k - 1.0) * (b2 + lam) * math.cosh(t)
            + beta * math.exp(a) * s * (big_k - 1.0) * math.sinh(t)
            + 0.5 * (1.0 + big_k) * (lam - b2)
        )
        assert dal == pytest.approx(f_s, rel=1e-13)

    def test_rejected_at_beta_crit(self, tp):
        with pytest.raises(ValueError):
            regime_equations(beta_crit(tp), 10.0, tp)


class TestBetaCrit:
    def test_reference_value(self, tp):
        assert beta_crit(tp) == pytest.approx(3.2232, abs=1e-3)

    def test_middle_branch(self):
        # kappa e^{2a(k+1)} = 1 when a = ln(1/kappa) / (2(k+1))
        k = 0.5
        a = math.log(1.0 / k) / (2.0 * (k + 1.0))
        p = ModelParams(a, k, 0.4)
        tp = TranscendParams(params=p, delta=0.25, beta=0.0)
        expected = math.pi * math.exp(-a) / (2.0 * math.sqrt(k) * 0.25)
        assert beta_crit(tp) == pytest.approx(expected, rel=1e-14)

    def test_low_branch_self_consistency(self):
        p = ModelParams(0.05, 0.3, 0.4)
        tp = TranscendParams(params=p, delta=0.25, beta=0.0)
        bc = beta_crit(tp)
        lam = transcendental_root(0.0, bc, tp)
        assert lam == pytest.approx(bc**2 * math.exp(2.0 * p.alpha), rel=1e-8)

    def test_self_consistency_default(self, tp, params):
        bc = beta_crit(tp)
        lam = transcendental_root(0.0, bc, tp)
        assert lam == pytest.approx(bc**2 * math.exp(2.0 * params.alpha), rel=1e-8)


class TestDeltaDiag:
    def test_zero_at_critical_lambda(self, tp, params):
        beta = 2.0
        lam = beta**2 * math.exp(2.0 * params.alpha)
        assert delta_diag(beta, lam, tp) == 0.0

    def test_sign_below_critical_beta(self, tp):
        lam = transcendental_root(0.0, 1.0, tp)
        assert delta_diag(1.0, lam, tp) < 0.0

    def test_sign_above_critical_beta(self, tp):
        lam = transcendental_root(0.35, 10.0, tp)
        assert delta_diag(10.0, lam, tp) > 0.0


class TestClosedFormEigenfunction:
    def test_matches_grid_eigenfunction(self, tp, params):
        xi, beta = 0.15, 2.0
        lam = transcendental_root(xi, beta, tp)
        cf = closed_form_eigenfunction(xi, beta, lam, tp)
        w = BangBangInterval(xi, 0.3, params).weight()
        pair = principal_eigenvalue(w, params, Boundary.robin(beta), make_discretization(4000, w))
        mine = cf.evaluate(pair.nodes)
        mine = mine / mine.max()
        theirs = pair.phi / pair.phi.max()
        assert np.max(np.abs(mine - theirs)) <= 1e-3

    def test_continuity_at_interfaces(self, tp):
        xi, beta = 0.1, 1.5
        lam = transcendental_root(xi, beta, tp)
        cf = closed_form_eigenfunction(xi, beta, lam, tp)
        for x in (xi, xi + tp.delta):
            left = cf.evaluate(np.nextafter(x, 0.0))
            right = cf.evaluate(np.nextafter(x, 1.0))
            mid = cf.evaluate(x)
            assert left == pytest.approx(mid, rel=1e-9)
            assert right == pytest.approx(mid, rel=1e-9)

    def test_jump_residual_small_at_root(self, tp):
        xi, beta = 0.2, 3.0
        lam = transcendental_root(xi, beta, tp)
        cf = closed_form_eigenfunction(xi, beta, lam, tp)
        assert cf.jump_residual() <= 1e-9
        assert cf.det_residual <= 1e-8

    def test_residual_large_off_root(self, tp):
        xi, beta = 0.2, 3.0
        lam = transcendental_root(xi, beta, tp)
        cf = closed_form_eigenfunction(xi, beta, 0.8 * lam, tp)
        assert cf.jump_residual() > 1e-6

    def test_dirichlet_rejected(self, tp):
        with pytest.raises(ValueError):
            closed_form_eigenfunction(0.0, math.inf, 10.0, tp)
