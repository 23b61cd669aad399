r"""Critical exponents and admissibility windows.

Notation: p_0(d) is the Strauss exponent, the positive root of
(d-1)p^2 - (d+1)p - 2 = 0, and p_Fuj(d) = 1 + 2/d.  For the damped and massive
wave equation with scale-invariant coefficients mu/(1+t) and nu^2/(1+t)^2 we
only treat the case delta = (mu-1)^2 - 4 nu^2 = 1 in even dimension n >= 4.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError


def strauss_exponent(d: float) -> float:
    """Positive root of (d-1)p^2 - (d+1)p - 2 = 0."""
    if not d > 1:
        raise DomainError(f"strauss_exponent needs d > 1, got {d}")
    a, b = d - 1.0, -(d + 1.0)
    disc = b * b + 8.0 * a
    # b < 0, so -b + sqrt(disc) has no cancellation
    return (-b + math.sqrt(disc)) / (2.0 * a)


def fujita_exponent(d: float) -> float:
    if not d > 0:
        raise DomainError(f"fujita_exponent needs d > 0, got {d}")
    return 1.0 + 2.0 / d


def _check_even_n(n) -> int:
    if int(n) != n or n < 4 or int(n) % 2:
        raise DomainError(f"n must be an even integer >= 4, got {n}")
    return int(n)


def mu_upper_bound(n: int) -> float:
    """M(n) = (n-1)/2 (1 + sqrt((n+7)/(n-1)))."""
    n = _check_even_n(n)
    return 0.5 * (n - 1) * (1.0 + math.sqrt((n + 7.0) / (n - 1.0)))


def mu_tilde(n: float) -> float:
    """Threshold (3n^2 - 5n + 2)/n below which q >= -1/2."""
    return (3.0 * n * n - 5.0 * n + 2.0) / n


@dataclass(frozen=True)
class SecondaryExponents:
    p2: float
    p_crit: float
    mu_tilde: float


def secondary_exponents(n: float, mu: float) -> SecondaryExponents:
    if n < 1 or mu < 0:
        raise DomainError(f"need n >= 1 and mu >= 0, got n={n}, mu={mu}")
    p2 = fujita_exponent(n) if n == 1 else max(fujita_exponent(n), strauss_exponent(n + 2))
    dfuj = n + mu / 2.0 - 1.0
    pfuj = fujita_exponent(dfuj) if dfuj > 0 else math.inf
    p_crit = max(pfuj, strauss_exponent(n + mu)) if n + mu > 1 else pfuj
    return SecondaryExponents(p2=p2, p_crit=p_crit, mu_tilde=mu_tilde(n))


def mass_from_mu(mu: float) -> float:
    """nu such that (mu-1)^2 - 4 nu^2 = 1."""
    s = (mu - 1.0) ** 2 - 1.0
    if s < 0:
        raise DomainError(f"delta = 1 needs |mu-1| >= 1, got mu={mu}")
    return 0.5 * math.sqrt(s)


def delta_of(mu: float, nu: float) -> float:
    return (mu - 1.0) ** 2 - 4.0 * nu * nu


def q_exponent(n: float, p: float) -> float:
    return 0.5 * (n - 1) * p - 0.5 * (n + 1)


def kappa_bounds(n: float, mu: float, p: float) -> tuple[float, float]:
    """(kappa_1, kappa_2) from their closed forms."""
    k1 = 2.0 / (p - 1.0) - 0.5 * (n + mu - 1.0)
    k2 = 0.5 * (n + mu - 1.0) * (p - 1.0) - 1.0
    return k1, k2


def kappa_bounds_via_q(n: float, mu: float, p: float) -> tuple[float, float]:
    """Same bounds rewritten through q; kept as an independent code path."""
    q = q_exponent(n, p)
    return (1.0 - q) / (p - 1.0) - 0.5 * mu, q + 0.5 * mu * (p - 1.0)


@dataclass(frozen=True)
class AdmissibleWindow:
    p_low: float
    p_high: float
    p: float
    kappa1: float
    kappa2: float
    q: float

    @property
    def kappa_mid(self) -> float:
        return 0.5 * (self.kappa1 + self.kappa2)


def p_window(n: float, mu: float) -> tuple[float, float]:
    lo = strauss_exponent(n + mu)
    hi = min(fujita_exponent(0.5 * (n + mu - 1.0)), fujita_exponent(mu))
    return lo, hi


def admissible_window(n: int, mu: float, p: float | None = None) -> AdmissibleWindow:
    """p-window for (n, mu) and, for the given (or default) p, the kappa window.

    The default p is the geometric midpoint of the p-window.
    """
    lo, hi = p_window(n, mu)
    if p is None:
        p = math.sqrt(lo * hi)
    k1, k2 = kappa_bounds(n, mu, p)
    return AdmissibleWindow(lo, hi, p, k1, k2, q_exponent(n, p))


def blowup_range_exponent(n: float, mu: float, nu: float) -> float:
    """p_Fuj(n + (mu-1)/2 - sqrt(delta)/2).  Informational only."""
    d = delta_of(mu, nu)
    if d < 0:
        raise DomainError("delta < 0")
    return fujita_exponent(n + 0.5 * (mu - 1.0) - 0.5 * math.sqrt(d))


@dataclass(frozen=True)
class ModelParams:
    """Parameter tuple.  nu is derived from mu through delta = 1."""

    n: int
    mu: float
    p: float
    kappa: float
    epsilon: float = 1e-3
    m: int = field(init=False)
    nu: float = field(init=False)
    delta: float = field(init=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "m", (self.n - 2) // 2)
        s = (self.mu - 1.0) ** 2 - 1.0
        nu = 0.5 * math.sqrt(s) if s >= 0 else math.nan
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "delta", delta_of(self.mu, nu) if s >= 0 else math.nan)

    @classmethod
    def with_defaults(cls, n=4, mu=2.0, p=None, kappa=None, epsilon=1e-3) -> "ModelParams":
        w = admissible_window(n, mu, p)
        return cls(n, mu, w.p, w.kappa_mid if kappa is None else kappa, epsilon)

    @property
    def q(self) -> float:
        return q_exponent(self.n, self.p)

    @property
    def kappa1(self) -> float:
        return kappa_bounds(self.n, self.mu, self.p)[0]

    @property
    def kappa2(self) -> float:
        return kappa_bounds(self.n, self.mu, self.p)[1]

    @property
    def nu_gauge(self) -> float:
        """nu = m - (m-1)p, the exponent used in the N_j gauges."""
        return self.m - (self.m - 1) * self.p


def validate(params: ModelParams) -> list[str]:
    """Names of all violated hypotheses of the global existence theorem."""
    out = []
    n, mu, p, kappa = params.n, params.mu, params.p, params.kappa
    if n < 4 or n % 2:
        out.append("n not even ≥ 4")
        return out
    if mu < 2:
        out.append("mu < 2")
    elif mu >= mu_upper_bound(n):
        out.append("mu ≥ M(n)")
    if not math.isfinite(params.delta) or abs(params.delta - 1.0) > 1e-12:
        out.append("delta ≠ 1")
    if p <= strauss_exponent(n + mu):
        out.append("p ≤ p₀(n+μ)")
    if p >= fujita_exponent(0.5 * (n + mu - 1.0)):
        out.append("p ≥ p_Fuj((n+μ−1)/2)")
    if p >= fujita_exponent(mu):
        out.append("p ≥ p_Fuj(μ)")
    k1, k2 = kappa_bounds(n, mu, p)
    if kappa <= k1:
        out.append("κ ≤ κ₁")
    if kappa > k2:
        out.append("κ > κ₂")
    if k2 >= params.m + 0.5:
        out.append("κ₂ ≥ m+1/2")
    if params.epsilon < 0:
        out.append("epsilon < 0")
    return out


def exponent_record(n: int, mu: float, p: float | None = None) -> dict:
    """Flat record of every exponent used, for reporting."""
    w = admissible_window(n, mu, p)
    sec = secondary_exponents(n, mu)
    nu = mass_from_mu(mu)
    return {
        "n": n,
        "mu": mu,
        "nu": nu,
        "delta": delta_of(mu, nu),
        "M(n)": mu_upper_bound(n),
        "p0(n+mu)": strauss_exponent(n + mu),
        "p_fuj((n+mu-1)/2)": fujita_exponent(0.5 * (n + mu - 1)),
        "p_fuj(mu)": fujita_exponent(mu),
        "p_low": w.p_low,
        "p_high": w.p_high,
        "p": w.p,
        "q": w.q,
        "kappa1": w.kappa1,
        "kappa2": w.kappa2,
        "p2(n)": sec.p2,
        "p_crit(n,mu)": sec.p_crit,
        "mu_tilde(n)": sec.mu_tilde,
        "p_fuj_blowup_range": blowup_range_exponent(n, mu, nu),
    }
