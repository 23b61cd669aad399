import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from scalewave.duhamel import (
    FieldGrid, GridField, _dpow, apply_L, dissipative_transform, field_from_callables, gauge_N,
    lipschitz_ratio, norm_Xkappa, phi_kappa, picard_solve, scaled, tau_nodes, w_decomposition)
from scalewave.errors import DomainError
from scalewave.exponents import ModelParams
from scalewave.profiles import RadialProfile
from scalewave.propagator import propagator_constants, theta_r_derivative, theta_w12

KAP = 0.6
PTS = (np.array([2.0, 0.7, 3.0]), np.array([1.0, 1.5, 3.0]))


def _val(t, r):
    # v / omega_0 is constant, so the grid interpolation reproduces v exactly
    t, r = np.asarray(t, float), np.asarray(r, float)
    return 0.01 * (1 + t + r) ** -0.5 * (1 + (t - r) ** 2) ** (-KAP / 2) / (1 + r)


def _dval(t, r):
    t, r = np.asarray(t, float), np.asarray(r, float)
    return _val(t, r) * (-0.5 / (1 + t + r) + KAP * (t - r) / (1 + (t - r) ** 2) - 1 / (1 + r))


def _field(nn=12):
    return field_from_callables(_val, _dval, FieldGrid(nn, nn, 8.0, 1e-2, 8.0), KAP, 1)


def _L_oracle(params, t, r, deriv):
    """tau-quadrature of the direct lam-route Theta; independent of the Fubini rule."""
    p, cn = params.p, propagator_constants(params.n).c_n

    def prof(tau):
        ev = lambda lam: np.abs(_val(tau, lam)) ** p
        d1 = lambda lam: p * np.abs(_val(tau, lam)) ** (p - 1) * _dval(tau, lam)
        return RadialProfile(eval=ev, eval_deriv=lambda lam, o: ev(lam) if o == 0 else d1(lam))

    th = theta_r_derivative if deriv else theta_w12
    f = lambda tau: (1 + tau) ** (-params.mu * (p - 1) / 2) * th(prof(tau), t - tau, r, 1, rtol=1e-10)
    brk = [t - r] if 0 < t - r < t else None
    return integrate.quad(f, 0, t, points=brk, epsrel=1e-9, limit=100)[0] / cn


def test_phi_examples():
    assert phi_kappa(0.0, 0.0, 0.6) == 1.0
    assert phi_kappa(3.0, 0.0, 0.0) == pytest.approx(0.5)
    # <6>^{-1/2} <2>^{-0.6} = 7^{-1/2} 3^{-0.6}
    assert phi_kappa(4.0, 2.0, 0.6) == pytest.approx(7**-0.5 * 3**-0.6, rel=1e-14)
    assert phi_kappa(2.0, 4.0, 0.6) == pytest.approx(phi_kappa(4.0, 2.0, 0.6) * (7 / 7))


def test_grid_reproduces_nodes_and_constant_ratio():
    v = _field()
    t, r, a, b = v.sampled()
    assert np.allclose(v.value(t, r), a, rtol=1e-12)
    tt, rr = np.array([0.37, 2.2, 5.1]), np.array([0.05, 1.3, 6.7])
    assert np.allclose(v.value(tt, rr), _val(tt, rr), rtol=1e-12)
    # dv/omega_1 is not constant: its weighted error must shrink with the grid
    w1 = rr**-1 * (1 + tt + rr) ** -0.5 * (1 + (tt - rr) ** 2) ** (-KAP / 2)
    errs = [np.max(np.abs(_field(nn).r_derivative(tt, rr) - _dval(tt, rr)) / w1)
            for nn in (12, 24, 48)]
    assert errs[1] < errs[0] / 4 and errs[2] < errs[1] / 4
    assert errs[2] < 1e-2 * np.max(np.abs(_dval(tt, rr)) / w1)


def test_norm_of_known_field():
    v = _field()
    rep = norm_Xkappa(v, KAP)
    t, r, a, b = v.sampled()
    ref = np.max(((1 + r) * np.abs(a) + r * np.abs(b)) / phi_kappa(t, r, KAP))
    assert rep.norm_Xkappa == pytest.approx(ref, rel=1e-14)
    assert rep.triple_norm <= rep.norm_Xkappa


def test_norm_rejects_nan():
    grid = FieldGrid(6, 6, 4.0, 1e-2, 4.0)
    t, _ = grid.points()
    bad = np.zeros(t.shape)
    bad[3] = np.nan
    with pytest.raises(FloatingPointError):
        norm_Xkappa(GridField(grid, KAP, 1, bad, np.zeros(t.shape)), KAP)


def test_dpow_zero_at_zero():
    v = np.array([0.0, -2.0, 2.0])
    assert np.all(np.isfinite(_dpow(v, np.ones(3), 1.5)))
    assert _dpow(v, np.ones(3), 1.5)[0] == 0.0
    assert _dpow(v, np.ones(3), 1.5)[1] == pytest.approx(-1.5 * math.sqrt(2))


def test_gauge_finite():
    g = gauge_N(_field(), 1.72, 0.08, KAP, 1.0)
    assert np.isfinite(g.N1_tilde) and g.N1_tilde == pytest.approx(g.N0 + g.N1)


def test_tau_nodes_integrate_constant():
    t, r = np.array([3.0, 0.5, 2.0]), np.array([1.0, 2.0, 2.0])
    own, tau, w = tau_nodes(t, r)
    assert np.allclose(np.bincount(own, weights=w), t)
    assert np.all((tau > 0) & (tau < t[own]))


def test_w2_vanishes_inside_cone():
    v = _field()
    W1, W2 = w_decomposition(v, 1.72, 2.0, 1.5, 1.0)
    assert W2 == 0.0 and W1 != 0.0
    W1, W2 = w_decomposition(v, 1.72, 3.0, 0.5, 0.5)
    assert W2 != 0.0


def test_L_value_matches_oracle(params):
    Lv, _ = apply_L(_field(), params, points=PTS)
    for i, (t, r) in enumerate(zip(*PTS)):
        assert Lv[i] == pytest.approx(_L_oracle(params, t, r, False), rel=1e-5)


def test_L_derivative_matches_oracle(params):
    _, dLv = apply_L(_field(48), params, points=PTS)
    for i, (t, r) in enumerate(zip(*PTS)):
        assert dLv[i] == pytest.approx(_L_oracle(params, t, r, True), rel=3e-3)


@given(st.floats(-3.0, 3.0).filter(lambda c: abs(c) > 1e-3))
def test_L_homogeneous(c):
    params = ModelParams(4, 2.0, 1.72, 0.6, 1e-3)
    v = _field(8)
    a, da = apply_L(v, params, points=PTS)
    b, db = apply_L(scaled(v, c), params, points=PTS)
    assert np.allclose(b, abs(c) ** 1.72 * a, rtol=1e-10)
    assert np.allclose(db, abs(c) ** 1.72 * da, rtol=1e-10)


def test_L_of_zero_is_zero(params):
    v = scaled(_field(8), 0.0)
    Lv = apply_L(v, params)
    assert Lv.is_zero


def test_L_threads_agree(params):
    v = _field(8)
    a = apply_L(v, params, points=PTS, workers=1)
    b = apply_L(v, params, points=PTS, workers=3)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_lipschitz_ratio_finite(params):
    grid = FieldGrid(8, 8, 8.0, 1e-2, 8.0)
    v = field_from_callables(_val, _dval, grid, KAP, 1)
    w = scaled(v, 1.1)
    ratio = lipschitz_ratio(apply_L(v, params), apply_L(w, params), v, w, KAP, 1.72)
    assert np.isfinite(ratio) and ratio > 0


@given(st.floats(2.0, 4.0))
def test_dissipative_round_trip(mu):
    v = _field(6)
    back = dissipative_transform(dissipative_transform(v, mu, "forward"), mu, "inverse")
    assert np.allclose(back.samples[0], v.samples[0], rtol=1e-13)
    t = np.array([0.0, 3.0])
    r = np.array([1.0, 1.0])
    u = dissipative_transform(v, mu).value(t, r)
    assert np.allclose(u, v.value(t, r) * (1 + t) ** (-mu / 2))


def test_dissipative_bad_direction():
    with pytest.raises(ValueError):
        dissipative_transform(_field(6), 2.0, "sideways")


def test_picard_zero_data():
    params = ModelParams(4, 2.0, 1.72, 0.6, 0.0)
    trace, v = picard_solve(params, 0.6, grid=FieldGrid(6, 6, 4.0, 1e-2, 4.0))
    assert trace.converged and v.is_zero
    assert trace.residual == 0.0


def test_picard_rejects_inadmissible():
    with pytest.raises(DomainError):
        picard_solve(ModelParams(4, 2.0, 1.72, 0.9, 1e-3), 0.6)


def test_picard_small_grid_contracts(params):
    trace, v = picard_solve(params, 0.6, max_iter=6, tol=1e-12,
                            grid=FieldGrid(8, 8, 8.0, 1e-2, 8.0))
    assert all(r < 1 for r in trace.contraction_ratios)
    assert trace.residual < 1e-8
    js = trace.to_json()
    assert js["converged"] == trace.converged
