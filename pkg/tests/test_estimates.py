import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from scalewave.errors import DomainError
from scalewave.estimates import (
    _exps, convolution_integral, dlam_kt_ratios, ijpq_value, lemma_integral, probe_lattice,
    q_regime, verify_convolution_bound, verify_dlam_kt_bound, verify_kernel_bounds,
    verify_lemma_41, verify_lemmas_42_to_45)
from scalewave.exponents import ModelParams


def _br(x):
    return 1.0 + abs(x)


@given(st.floats(0.6, 3.0), st.floats(0.6, 3.0))
def test_convolution_at_zero_closed_form(a, b):
    # int <x>^{-s} dx = 2/(s-1)
    assert convolution_integral(a, b, 0.0) == pytest.approx(2 / (a + b - 1), rel=1e-8)


@pytest.mark.parametrize("a,b,y", [(1.5, 1.5, 3.0), (2.0, 0.0, 10.0), (0.8, 0.7, -40.0)])
def test_convolution_against_quad(a, b, y):
    f = lambda x: _br(x) ** -a * _br(x + y) ** -b
    lo, hi = sorted((0.0, -y))
    ref = (integrate.quad(f, -np.inf, lo, epsrel=1e-12, limit=400)[0]
           + integrate.quad(f, lo, hi, epsrel=1e-12, limit=400)[0]
           + integrate.quad(f, hi, np.inf, epsrel=1e-12, limit=400)[0])
    assert convolution_integral(a, b, y) == pytest.approx(ref, rel=1e-7)


def test_convolution_bound_domain():
    with pytest.raises(DomainError):
        verify_convolution_bound(0.4, 0.4)
    with pytest.raises(DomainError):
        verify_convolution_bound(-0.1, 2.0)


def test_convolution_bound_passes_and_fails():
    assert verify_convolution_bound(1.5, 1.5, y_max=100).passed
    bad = verify_convolution_bound(0.4, 0.4, y_max=100, allow_violation=True)
    assert not bad.passed and "truncated" in bad.notes


@pytest.mark.parametrize("q,reg", [(0.5, "4.2"), (0.7, "4.2"), (0.0, "4.3"), (0.49, "4.3"),
                                   (-0.5, "4.4"), (-0.01, "4.4"), (-0.6, "none")])
def test_q_regime_boundaries(q, reg):
    assert q_regime(q) == reg


def test_reference_regime(params):
    reps = verify_lemmas_42_to_45(params, y_max=100)
    by = {r.name: r for r in reps}
    assert by["lemma_4.2"].probe_set == "skipped" and by["lemma_4.4"].probe_set == "skipped"
    assert by["lemma_4.3"].passed and by["lemma_4.5"].passed


@pytest.mark.parametrize("name", ["4.2", "4.3", "4.4"])
def test_sqrt_integrals_against_alg_weight(params, name):
    # direct integral with the (x+y)^{-1/2} end as an algebraic weight
    p, kap, q, A = _exps(params)
    ex, ey = {"4.2": (-kap * p - A, -q + 0.5), "4.3": (-kap * p - A + 0.5, -q),
              "4.4": (-kap * p - A + 1.0, -q - 0.5)}[name]
    for y in (0.5, 7.0, 300.0):
        f = lambda x: _br(x) ** ex * _br(x + y) ** ey
        ref = integrate.quad(f, -y, -y / 2, weight="alg", wvar=(-0.5, 0.0),
                             epsrel=1e-12, limit=200)[0]
        assert lemma_integral(name, params, y) == pytest.approx(ref, rel=1e-8)
    assert lemma_integral(name, params, 0.0) == 0.0


def test_lemma41_passes(params):
    assert verify_lemma_41(params, y_max=100).passed


def test_lemma41_enforce():
    bad = ModelParams(4, 2.0, 1.72, 1.1, 1e-3)
    with pytest.raises(DomainError):
        verify_lemma_41(bad, y_max=10, enforce=True)


def test_I_against_direct_lambda_integral(params):
    p, kap, q, A = _exps(params)
    e = -q + 0.5 * p - 0.5
    phi = lambda tau, lam: (_br(tau + lam) ** -0.5 * _br(tau - lam) ** -kap) ** p
    for t, r in [(3.0, 1.0), (1.0, 2.5)]:
        def inner(tau):
            lm = t - tau - r
            g = lambda lam: _br(lam) ** e * phi(tau, lam)
            lo, hi = abs(lm), lm + 2 * r
            if lm >= 0:
                return integrate.quad(g, lo, hi, weight="alg", wvar=(-0.5, 0.0), epsrel=1e-11)[0]
            return integrate.quad(lambda lam: g(lam) / math.sqrt(lam - lm), lo, hi,
                                  epsrel=1e-11)[0]
        pts = [t - r] if 0 < t - r < t else None
        ref = integrate.quad(lambda tau: _br(tau) ** -A * inner(tau), 0, t, points=pts,
                             epsrel=1e-9, limit=200)[0]
        assert ijpq_value("I", params, 0.0, t, r) == pytest.approx(ref, rel=1e-6)


def test_JP_vanish_inside_cone(params):
    assert ijpq_value("J", params, 0.0, 1.0, 2.0) == 0.0
    assert ijpq_value("P", params, 0.0, 1.0, 2.0) == 0.0
    assert ijpq_value("Q", params, 0.0, 3.0, 1.0) > 0.0


def test_probe_lattice_inside_extent():
    pts = probe_lattice(100.0, 4)
    assert np.all(pts.sum(axis=1) <= 100.0 * (1 + 1e-12))
    assert np.all(pts > 0)


KERNEL_CASES = [(m, fam, g) for m in (1, 2) for fam in ("K_m", "dr_K_m-1", "Kt_m", "dr_Kt_m-1")
                for g in (0.0, 0.5)]


@pytest.mark.parametrize("m,family,gamma", KERNEL_CASES)
def test_kernel_bound_family(m, family, gamma):
    rep = verify_kernel_bounds(m, gamma, family, n_pts=10)
    print(rep.name, rep.weighted_sup, rep.stability)
    assert rep.passed


DLAM_CASES = [(m, j, a, g) for m in (1, 2) for j in range(m + 1) for a in range(m - j + 1)
              for g in (0.0, 0.5)]


@pytest.mark.parametrize("m,j,alpha,gamma", DLAM_CASES)
def test_dlam_kt_bound(m, j, alpha, gamma):
    rep = verify_dlam_kt_bound(m, j, alpha, gamma)
    print(rep.name, rep.weighted_sup, rep.stability)
    assert rep.passed


def test_dlam_rejects_bad_indices():
    with pytest.raises(DomainError):
        dlam_kt_ratios(1, 1, 1, 0.0, 2)
