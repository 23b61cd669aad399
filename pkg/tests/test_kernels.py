from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from scalewave.errors import DomainError
from scalewave.kernels import (
    apply_adjoint, build_Hj, dr_terms, eval_dr_Kj, eval_dr_Ktildej, eval_Kj, eval_Ktildej)


def test_H10_and_H11_terms():
    h0 = build_Hj(1, 0)
    assert [k.as_tuple() for k in h0.terms] == [(1, 0, 0, Fraction(1, 2))]
    h1 = build_Hj(1, 1)
    got = {(k.pow_rho, k.pow_shift, k.pow_quad): k.coef for k in h1.terms}
    # d/drho(-Q^{1/2}/(2 rho)) = Q^{1/2}/(2 rho^2) + (rho-t) Q^{-1/2}/(2 rho)
    assert got == {(-2, 0, Fraction(1, 2)): Fraction(1, 2),
                   (-1, 1, Fraction(-1, 2)): Fraction(1, 2)}


@pytest.mark.parametrize("m", [1, 2, 3])
def test_min_pow_quad(m):
    assert min(k.pow_quad for k in build_Hj(m, m).terms) == Fraction(-1, 2)
    assert min(k.pow_quad for k in build_Hj(m, m - 1).terms) == Fraction(1, 2)


def test_build_rejects_bad_indices():
    with pytest.raises(DomainError):
        build_Hj(0, 0)
    with pytest.raises(DomainError):
        build_Hj(2, 3)


def _k_oracle(ks, lam, t, r):
    # independent: rho = t+r - s^2 removes the Q^{-1/2} end, the algebraic
    # weight takes the (rho-lam)^{-1/2} end
    U = t + r
    S = np.sqrt(U - lam)

    def f(s):
        rho = U - s * s
        return ks(rho, t, r) * 2 * s / np.sqrt((S + s) * (rho + lam))

    return integrate.quad(f, 0, S, weight="alg", wvar=(0, -0.5), limit=200,
                          epsabs=0, epsrel=1e-12)[0]


@pytest.mark.parametrize("m,j", [(1, 1), (2, 2), (2, 1), (3, 3)])
def test_K_against_quad(m, j):
    ks = build_Hj(m, j)
    for lam, t, r in [(1.5, 1.2, 0.9), (2.0, 3.0, 1.5), (0.7, 0.5, 1.0)]:
        if not abs(t - r) < lam < t + r:
            continue
        ref = _k_oracle(ks, lam, t, r)
        assert eval_Kj(ks, lam, t, r) == pytest.approx(ref, rel=1e-8)


def test_K_vanishes_at_upper_limit():
    for m in (1, 2, 3):
        for j in range(m + 1):
            assert eval_Kj(build_Hj(m, j), 3.0, 2.0, 1.0) == 0.0


def test_K_lambda_derivative_identity():
    # d/dlam K_{m-1} = -2 lam K_m
    m, t, r, lam, h = 2, 2.0, 1.3, 1.7, 1e-5
    km1, km = build_Hj(m, m - 1), build_Hj(m, m)
    d = (eval_Kj(km1, lam + h, t, r) - eval_Kj(km1, lam - h, t, r)) / (2 * h)
    assert d == pytest.approx(-2 * lam * eval_Kj(km, lam, t, r), rel=1e-6)


def test_Ktilde_against_quad():
    # rho = t - r cos(theta) turns the Q^{-1/2} ends into a smooth integrand
    ks = build_Hj(2, 2)
    lam, t, r = 0.8, 3.0, 1.0

    def f(th):
        rho = t - r * np.cos(th)
        return ks(rho, t, r) * r * np.sin(th) / np.sqrt(rho**2 - lam**2)

    ref = integrate.quad(f, 0, np.pi, epsabs=0, epsrel=1e-12, limit=200)[0]
    assert eval_Ktildej(ks, lam, t, r) == pytest.approx(ref, rel=1e-8)


@pytest.mark.parametrize("m", [1, 2])
def test_dr_K_against_difference(m):
    ks = build_Hj(m, m - 1)
    lam, t = 1.6, 1.4
    for r in (0.9, 1.3):
        h = 1e-5
        fd = (eval_Kj(ks, lam, t, r + h) - eval_Kj(ks, lam, t, r - h)) / (2 * h)
        assert eval_dr_Kj(ks, lam, t, r) == pytest.approx(fd, rel=1e-6)


def test_dr_Ktilde_against_difference():
    ks = build_Hj(2, 1)
    lam, t, r, h = 0.5, 3.0, 1.0, 1e-5
    fd = (eval_Ktildej(ks, lam, t, r + h) - eval_Ktildej(ks, lam, t, r - h)) / (2 * h)
    assert eval_dr_Ktildej(ks, lam, t, r) == pytest.approx(fd, rel=1e-6)


def test_domain_errors():
    ks = build_Hj(1, 1)
    with pytest.raises(DomainError):
        eval_Kj(ks, 0.1, 2.0, 1.0)
    with pytest.raises(DomainError):
        eval_Ktildej(ks, 0.5, 1.0, 2.0)


@given(st.floats(0.2, 5.0), st.floats(0.2, 5.0), st.floats(0.05, 0.95))
def test_K_linear_in_terms(t, r, f):
    # K of the summed term list equals the sum of K over its terms
    ks = build_Hj(2, 2)
    lam = abs(t - r) + f * (t + r - abs(t - r))
    parts = [type(ks)(ks.m, ks.j, (k,)) for k in ks.terms]
    tot = eval_Kj(ks, lam, t, r)
    s = sum(eval_Kj(p, lam, t, r) for p in parts)
    assert tot == pytest.approx(s, rel=1e-7, abs=1e-9 * max(1.0, abs(s)))


def test_to_json_roundtrip_fields():
    js = build_Hj(2, 1).to_json()
    assert all(set(d) == {"coef", "pow_rho", "pow_shift", "pow_quad"} for d in js)


def test_apply_adjoint_increments_j():
    assert apply_adjoint(build_Hj(2, 0)).j == 1
    assert dr_terms(build_Hj(2, 1)).r_power == 1
