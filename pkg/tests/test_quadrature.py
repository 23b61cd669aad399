import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import beta as B

from scalewave.quadrature import graded_rule, jacobi_rule, panel_count


@given(st.floats(-0.9, 2.0), st.floats(-0.9, 2.0))
def test_jacobi_rule_integrates_beta(alpha, beta):
    # int_0^L (x)^beta (L-x)^alpha dx = L^{1+a+b} B(a+1, b+1)
    L = 3.0
    da, db, w = graded_rule(np.array(L), alpha=alpha, beta=beta, n=12)
    ref = L ** (1 + alpha + beta) * B(alpha + 1, beta + 1)
    assert np.sum(w) == pytest.approx(ref, rel=1e-11)
    assert np.allclose(da + db, L)


def test_graded_rule_log_singularity():
    # int_0^1 log(x) dx = -1 needs grading toward 0
    da, db, w = graded_rule(np.array(1.0), first_lo=1e-10, n=12)
    assert np.sum(w * np.log(da)) == pytest.approx(-1.0, rel=1e-10)


def test_graded_rule_two_sided():
    da, db, w = graded_rule(np.array(2.0), alpha=-0.5, beta=-0.5, first_lo=1e-6,
                            first_hi=1e-6, n=10)
    assert np.sum(w) == pytest.approx(math.pi, rel=1e-10)


def test_graded_rule_batched_shapes():
    L = np.array([1.0, 2.0, 5.0])
    da, db, w = graded_rule(L, beta=0.5, first_lo=1e-3, n=8)
    assert da.shape[0] == 3 and da.shape == w.shape
    ref = L**1.5 / 1.5
    assert np.allclose(np.sum(w, axis=-1), ref, rtol=1e-11)


def test_panel_count_monotone():
    assert panel_count(1.0, 1.0) == 1
    assert panel_count(1.0, 1e-6) > panel_count(1.0, 1e-3)


def test_jacobi_rule_cached():
    assert jacobi_rule(8, 0.5, -0.5) is jacobi_rule(8, 0.5, -0.5)
