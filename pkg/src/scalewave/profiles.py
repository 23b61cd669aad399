"""Radial profiles r -> g(r) with analytic derivatives and origin metadata."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class RadialProfile:
    """A radial function with up to two analytic derivatives.

    ``origin_exponent`` a means |g(r)| = O(r^a) as r -> 0; ``breakpoints`` are
    radii where g is less smooth (quadrature splits there).
    """

    eval: Callable
    eval_deriv: Callable  # (r, order) -> value, order in {0, 1, 2}
    origin_exponent: float = 0.0
    tail_exponent: float = 0.0
    breakpoints: tuple = field(default=())
    is_zero: bool = False

    def __call__(self, r):
        return self.eval(r)

    def scaled(self, c: float) -> "RadialProfile":
        return combine([(c, self)])


def combine(pairs) -> RadialProfile:
    """Linear combination sum c_i g_i."""
    pairs = [(float(c), g) for c, g in pairs]
    bps = tuple(sorted({b for _, g in pairs for b in g.breakpoints}))
    return RadialProfile(
        eval=lambda r: sum(c * g.eval(r) for c, g in pairs),
        eval_deriv=lambda r, k: sum(c * g.eval_deriv(r, k) for c, g in pairs),
        origin_exponent=min(g.origin_exponent for _, g in pairs),
        tail_exponent=min(g.tail_exponent for _, g in pairs),
        breakpoints=bps,
        is_zero=all(c == 0 or g.is_zero for c, g in pairs),
    )


def zero_profile() -> RadialProfile:
    return RadialProfile(
        eval=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
        eval_deriv=lambda r, k: np.zeros_like(np.asarray(r, dtype=float)),
        origin_exponent=0.0, tail_exponent=np.inf, is_zero=True,
    )


def power_profile(amp: float, a: float, b: float) -> RadialProfile:
    """amp * r^a * (1+r)^(-b)."""

    def d(r, k=0):
        r = np.asarray(r, dtype=float)
        base = amp * r**a * (1.0 + r) ** (-b)
        if k == 0:
            return base
        u = a / r - b / (1.0 + r)
        if k == 1:
            return base * u
        if k == 2:
            return base * (u * u - a / r**2 + b / (1.0 + r) ** 2)
        raise ValueError("order <= 2")

    return RadialProfile(eval=lambda r: d(r), eval_deriv=d, origin_exponent=a,
                         tail_exponent=a - b, is_zero=(amp == 0))


def bump_profile(amp: float, lo: float, hi: float, k: int = 6) -> RadialProfile:
    """amp * (1 - x^2)^k on [lo, hi], x the affine coordinate; C^{k-1}."""
    c, w = 0.5 * (lo + hi), 0.5 * (hi - lo)

    def d(r, order=0):
        x = (np.asarray(r, dtype=float) - c) / w
        inside = np.abs(x) < 1.0
        s = np.where(inside, 1.0 - x * x, 0.0)
        if order == 0:
            v = s**k
        elif order == 1:
            v = -2.0 * k * x * s ** (k - 1) / w
        elif order == 2:
            v = (4.0 * k * (k - 1) * x * x * s ** (k - 2) - 2.0 * k * s ** (k - 1)) / w**2
        else:
            raise ValueError("order <= 2")
        return amp * np.where(inside, v, 0.0)

    return RadialProfile(eval=lambda r: d(r), eval_deriv=d, origin_exponent=np.inf,
                         tail_exponent=-np.inf, breakpoints=(lo, hi), is_zero=(amp == 0))
