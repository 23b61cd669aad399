"""Finite-difference solver for the radial damped/massive wave equation

    u_tt - u_rr - (n-1)/r u_r + mu/(1+t) u_t + nu^2/(1+t)^2 u = |u|^p

on [r_min, R].  Flux-form radial Laplacian on r_i = r_min + i h with zero flux
through the face r_min - h/2 (the origin for the default r_min = h/2), leapfrog
in time with the damping term centred as (u^{k+1} - u^{k-1})/(2 dt).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError
from .profiles import RadialProfile


@dataclass(frozen=True)
class FdConfig:
    n: int = 4
    mu: float = 0.0
    nu: float = 0.0
    p: float | None = None  # None: linear run
    r_max: float = 10.0
    h: float = 1.0 / 64
    cfl: float = 0.5
    t_end: float = 1.0
    r_min: float | None = None  # default h/2
    boundary: str = "absorbing"  # or "reflecting"
    blowup_factor: float = 1e6
    snapshot_times: tuple = ()
    energy_every: int = 1

    def __post_init__(self):
        if not 0 < self.cfl <= 0.9:
            raise DomainError("cfl must lie in (0, 0.9]")
        if self.h <= 0 or self.r_max <= 0:
            raise DomainError("h and r_max must be positive")
        if self.r_min is not None and self.r_min <= 0:
            raise DomainError("r_min must be positive")
        if self.boundary not in ("absorbing", "reflecting"):
            raise DomainError(f"unknown boundary {self.boundary!r}")

    @property
    def rmin(self) -> float:
        return 0.5 * self.h if self.r_min is None else self.r_min

    @property
    def dt(self) -> float:
        return self.cfl * self.h


@dataclass
class FdRun:
    r: np.ndarray
    times: list
    snapshots: list
    energy_times: np.ndarray
    energy: np.ndarray
    status: str  # completed | blowup_detected | unstable
    t_star: float | None = None
    extra: dict = field(default_factory=dict)

    def snapshot(self, t: float) -> np.ndarray:
        k = int(np.argmin(np.abs(np.asarray(self.times) - t)))
        if abs(self.times[k] - t) > 1e-12 * max(1.0, t):
            raise KeyError(f"no snapshot at t={t}")
        return self.snapshots[k]


class _Grid:
    def __init__(self, cfg: FdConfig):
        h = cfg.h
        N = int(math.floor((cfg.r_max - cfg.rmin) / h + 1e-9))
        self.r = cfg.rmin + h * np.arange(N + 1)
        nm1 = cfg.n - 1
        face = np.concatenate([[self.r[0] - 0.5 * h], self.r + 0.5 * h])
        face = np.maximum(face, 0.0)
        self.af = face**nm1  # face areas, af[i] is the face below node i
        self.vol = self.r**nm1
        self.h = h
        self.cfg = cfg

    def lap(self, u):
        flux = np.zeros(u.size + 1)
        flux[1:-1] = self.af[1:-1] * np.diff(u)
        # zero flux at the inner face; outer face handled by the boundary rule
        if self.cfg.boundary == "reflecting":
            flux[-1] = 0.0
        else:
            flux[-1] = flux[-2]
        return np.diff(flux) / (self.h**2 * self.vol)

    def energy(self, ut, u):
        grad = np.diff(u) / self.h
        return 0.5 * self.h * (np.sum(self.vol * ut**2) + np.sum(self.af[1:-1] * grad**2))


def _source(u, p):
    return np.abs(u) ** p if p is not None else 0.0


def fd_solve(cfg: FdConfig, f: RadialProfile, g: RadialProfile) -> FdRun:
    G = _Grid(cfg)
    r, dt = G.r, cfg.dt
    mu, nu2, p, n = cfg.mu, cfg.nu**2, cfg.p, cfg.n
    u0 = np.asarray(f.eval(r), dtype=float)
    v0 = np.asarray(g.eval(r), dtype=float)
    scale = max(np.max(np.abs(u0), initial=0.0), np.max(np.abs(v0), initial=0.0))
    limit = cfg.blowup_factor * scale
    utt = G.lap(u0) - mu * v0 - nu2 * u0 + _source(u0, p)
    u1 = u0 + dt * v0 + 0.5 * dt * dt * utt
    nsteps = int(math.ceil(cfg.t_end / dt - 1e-9))
    targets = sorted(t for t in cfg.snapshot_times if 0 <= t <= cfg.t_end + 1e-12)
    times, snaps = [], []
    for t in targets:
        if t == 0:
            times.append(0.0)
            snaps.append(u0.copy())
    targets = [t for t in targets if t > 0]
    e_t, e_v = [], []
    status, t_star = "completed", None
    um, uc, tk = u0, u1, dt
    for k in range(1, nsteps + 1):
        # snapshots in [t_{k-1}, t_k] by linear interpolation
        while targets and targets[0] <= tk + 1e-12:
            ts = targets.pop(0)
            a = (ts - (tk - dt)) / dt
            times.append(ts)
            snaps.append((1 - a) * um + a * uc)
        if k == nsteps:
            break
        c = mu * dt / (2.0 * (1.0 + tk))
        rhs = G.lap(uc) - nu2 / (1.0 + tk) ** 2 * uc + _source(uc, p)
        up = (dt * dt * rhs + 2.0 * uc - um + c * um) / (1.0 + c)
        if cfg.boundary == "absorbing":
            up[-1] = uc[-1] - dt * ((uc[-1] - uc[-2]) / cfg.h + 0.5 * (n - 1) / r[-1] * uc[-1])
        if k % cfg.energy_every == 0:
            e_t.append(tk)
            e_v.append(G.energy((up - um) / (2 * dt), uc))
        um, uc, tk = uc, up, tk + dt
        mx = np.max(np.abs(uc))
        if not np.isfinite(mx) or mx > limit:
            status = "blowup_detected" if p is not None else "unstable"
            t_star = tk
            break
    return FdRun(r, times, snaps, np.asarray(e_t), np.asarray(e_v), status, t_star)


def blowup_probe(cfg: FdConfig, f: RadialProfile, g: RadialProfile, epsilons, ps=None):
    """Sweep data amplitude (and optionally p); f and g are unit-amplitude shapes.

    Returns (rows, summary): one row per run and, per p, the largest epsilon
    below which every run completed.
    """
    ps = [cfg.p] if ps is None else list(ps)
    rows, summary = [], {}
    for p in ps:
        best = 0.0
        ok = True
        for eps in sorted(epsilons):
            run = fd_solve(replace(cfg, p=p), f.scaled(eps), g.scaled(eps))
            rows.append({"p": p, "epsilon": eps, "status": run.status, "t_star": run.t_star})
            if run.status == "completed" and ok:
                best = eps
            else:
                ok = False
        summary[p] = best
    return rows, summary
