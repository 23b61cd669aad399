"""Command line entry point: ``scalewave <subcommand> [--key value ...]``.

Every run resolves its configuration (defaults < config file < flags), writes
it to ``<out>/config.snapshot`` and only then starts computing.  Exit codes:
0 success, 1 invalid input, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .errors import DomainError, PicardDivergence, QuadratureError

SUBCOMMANDS = ("exponents", "propagate-linear", "solve-semilinear", "verify-estimates",
               "compare-oracle", "blowup-probe")


class UsageError(Exception):
    pass


class NumericalFailure(Exception):
    pass


@dataclass
class ExperimentConfig:
    subcommand: str = "exponents"
    n: int = 4
    mu: float = 2.0
    p: float = 1.72
    kappa: float = 0.6
    kappa_bar: float = 0.6
    epsilon: float = 1e-3
    tmax: float = 32.0
    rmax: float = 32.0
    rmin: float = 1e-3
    grid: int = 64
    tol: float = 1e-6
    max_iter: int = 20
    h: float = 1.0 / 128
    epsilons: str = "0,0.5,1,2,4"
    ps: str = ""
    t_end: float = 4.0
    extent: float = 1000.0
    jitter: float = 0.0
    out: str = "out"
    seed: int = 0

    def to_text(self) -> str:
        return "".join(f"{f.name} = {getattr(self, f.name)!r}\n" for f in fields(self))

    @classmethod
    def from_text(cls, text: str) -> "ExperimentConfig":
        vals = {}
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"config line without '=': {line!r}")
            k, v = (s.strip() for s in line.split("=", 1))
            vals[k.replace("-", "_")] = v
        return cls().updated(vals)

    def updated(self, raw: dict) -> "ExperimentConfig":
        types = {f.name: f.type for f in fields(self)}
        new = {}
        for k, v in raw.items():
            if k not in types:
                raise UsageError(f"unknown config key: {k}")
            new[k] = _coerce(k, types[k], v)
        return dataclasses.replace(self, **new)


def _coerce(name, typ, v):
    if not isinstance(v, str):
        return v
    s = v.strip()
    if len(s) >= 2 and s[0] == s[-1] and s[0] in "'\"":
        s = s[1:-1]
    try:
        if typ in ("int", int):
            return int(s)
        if typ in ("float", float):
            return float(s)
    except ValueError:
        raise UsageError(f"invalid value for {name}: {v!r}") from None
    return s


def _floats(name, s):
    try:
        return [float(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"invalid list for {name}: {s!r}") from None


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def _write_csv(path: Path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(x) for x in row])


def _write_json(path: Path, obj):
    path.write_text(json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n")


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(type(o))


# ---------------------------------------------------------------------------
# subcommands


def _params(cfg):
    from .exponents import ModelParams
    return ModelParams(cfg.n, cfg.mu, cfg.p, cfg.kappa, cfg.epsilon)


def cmd_exponents(cfg, out: Path):
    from .exponents import exponent_record
    rec = exponent_record(cfg.n, cfg.mu)
    _write_json(out / "exponents.json", rec)
    print(json.dumps(rec, indent=2, sort_keys=True, default=_json_default))
    return 0


def cmd_propagate_linear(cfg, out: Path):
    from .duhamel import phi_kappa
    from .propagator import data_family, propagator_constants, v0

    params = _params(cfg)
    m = params.m
    f, g = data_family(params, cfg.kappa_bar)
    sol = v0(f, g, propagator_constants(cfg.n))
    t = np.expm1(np.linspace(0.0, math.log1p(cfg.tmax), cfg.grid))
    r = np.geomspace(cfg.rmin, cfg.rmax, cfg.grid)
    if cfg.jitter:
        rng = np.random.default_rng(cfg.seed)
        r = r * np.exp(cfg.jitter * rng.uniform(-1, 1, r.size))
    T, R = (a.ravel() for a in np.meshgrid(t, r, indexing="ij"))
    val, dv = sol.value(T, R), sol.r_derivative(T, R)
    ph = phi_kappa(T, R, cfg.kappa_bar)
    eps = cfg.epsilon
    if eps:
        wv = np.abs(val) / (eps * R ** (1 - m) / (1 + R) * ph)
        wd = np.abs(dv) / (eps * R ** (-m) * ph)
    else:
        wv = wd = np.zeros_like(val)
    _write_csv(out / "linear.csv", ["t", "r", "v0", "dr_v0", "weight_ratio_value",
                                    "weight_ratio_deriv"], zip(T, R, val, dv, wv, wd))
    print(f"max weight ratios: value {np.max(wv):.6g}, derivative {np.max(wd):.6g}")
    return 0


def cmd_solve_semilinear(cfg, out: Path):
    from .duhamel import FieldGrid, dissipative_transform, phi_kappa, picard_solve

    params = _params(cfg)
    grid = FieldGrid(cfg.grid, cfg.grid, cfg.tmax, cfg.rmin, cfg.rmax)
    trace, v = picard_solve(params, cfg.kappa_bar, cfg.max_iter, cfg.tol, grid,
                            keep_fields=False, log=print)
    _write_json(out / "trace.json", trace.to_json())
    t, r, val, dv = v.sampled()
    u = dissipative_transform(v, cfg.mu, "inverse").samples[0]
    m = params.m
    wr = (r ** (m - 1) * (1 + r) * np.abs(val) + r**m * np.abs(dv)) / phi_kappa(t, r, cfg.kappa)
    _write_csv(out / "field.csv", ["t", "r", "v", "dr_v", "u", "weight_ratio"],
               zip(t, r, val, dv, u, wr))
    if not trace.converged:
        raise NumericalFailure(f"no convergence in {cfg.max_iter} iterations")
    return 0


def cmd_verify_estimates(cfg, out: Path):
    from .estimates import run_all

    reps = run_all(_params(cfg), extent=cfg.extent, y_max=cfg.extent)
    rdir = out / "reports"
    rdir.mkdir(exist_ok=True)
    for rep in reps:
        _write_json(rdir / (_slug(rep.name) + ".json"), rep.to_json())
    _write_csv(out / "summary.csv", ["name", "weighted_sup", "stability", "pass"],
               [(r.name, r.weighted_sup, r.stability, str(r.passed)) for r in reps])
    for r in reps:
        print(f"{r.name:32s} {r.weighted_sup:12.6g} {r.stability:10.3g} "
              f"{'pass' if r.passed else 'FAIL'}")
    if not all(r.passed for r in reps):
        raise NumericalFailure("some estimate reports failed")
    return 0


def _slug(s):
    return "".join(c if c.isalnum() or c in "._-" else "_" for c in s)


def bump_data(n):
    from .profiles import bump_profile
    return bump_profile(1.0, 2.0, 3.0), bump_profile(0.5, 2.0, 3.0)


def cmd_compare_oracle(cfg, out: Path):
    from .fd_oracle import FdConfig, fd_solve
    from .propagator import propagator_constants, v0

    f, g = bump_data(cfg.n)
    times = (1.0, 2.0, 4.0)
    sol = v0(f, g, propagator_constants(cfg.n))
    rows = []
    rmax = 3.0 + max(times) + 5.0
    for h in (4 * cfg.h, 2 * cfg.h, cfg.h):
        run = fd_solve(FdConfig(n=cfg.n, r_max=rmax, h=h, t_end=max(times),
                                snapshot_times=times), f, g)
        win = (run.r >= 1.0) & (run.r <= 8.0)
        for tt in times:
            ref = sol.value(np.full(win.sum(), tt), run.r[win])
            err = np.max(np.abs(run.snapshot(tt)[win] - ref)) / np.max(np.abs(ref))
            rows.append((h, tt, err))
    _write_csv(out / "oracle_errors.csv", ["h", "t", "rel_linf"], rows)
    for row in rows:
        print(f"h={row[0]:.6g} t={row[1]:g} rel_linf={row[2]:.3e}")
    return 0


def cmd_blowup_probe(cfg, out: Path):
    from .fd_oracle import FdConfig, blowup_probe
    from .exponents import mass_from_mu

    f, g = bump_data(cfg.n)
    ps = _floats("ps", cfg.ps) if cfg.ps else [cfg.p]
    eps = _floats("epsilons", cfg.epsilons)
    fc = FdConfig(n=cfg.n, mu=cfg.mu, nu=mass_from_mu(cfg.mu), p=ps[0],
                  r_max=3.0 + cfg.t_end + 2.0, h=cfg.h, t_end=cfg.t_end)
    rows, summary = blowup_probe(fc, f, g, eps, ps)
    _write_csv(out / "blowup.csv", ["p", "epsilon", "status", "t_star"],
               [(r["p"], r["epsilon"], r["status"], r["t_star"]) for r in rows])
    _write_json(out / "blowup_summary.json", summary)
    for r in rows:
        print(r)
    return 0


COMMANDS = {
    "exponents": cmd_exponents,
    "propagate-linear": cmd_propagate_linear,
    "solve-semilinear": cmd_solve_semilinear,
    "verify-estimates": cmd_verify_estimates,
    "compare-oracle": cmd_compare_oracle,
    "blowup-probe": cmd_blowup_probe,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    ap = _Parser(prog="scalewave", description=__doc__.splitlines()[0])
    ap.add_argument("subcommand", choices=SUBCOMMANDS)
    ap.add_argument("--config", help="flat key = value file")
    for f in fields(ExperimentConfig):
        if f.name == "subcommand":
            continue
        ap.add_argument("--" + f.name.replace("_", "-"), dest=f.name, default=None)
    return ap


def resolve(argv) -> ExperimentConfig:
    ns = build_parser().parse_args(argv)
    cfg = ExperimentConfig(subcommand=ns.subcommand)
    if ns.config:
        try:
            text = Path(ns.config).read_text()
        except OSError as e:
            raise UsageError(f"cannot read config: {e}") from None
        cfg = ExperimentConfig.from_text(text)
        cfg = dataclasses.replace(cfg, subcommand=ns.subcommand)
    flags = {k: v for k, v in vars(ns).items() if k not in ("subcommand", "config") and v is not None}
    return cfg.updated(flags)


def run(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = resolve(argv)
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "config.snapshot").write_text(cfg.to_text())
        threads = os.environ.get("SCALEWAVE_THREADS")
        if threads is not None and not threads.isdigit():
            raise UsageError(f"SCALEWAVE_THREADS must be a positive integer, got {threads!r}")
        return COMMANDS[cfg.subcommand](cfg, out)
    except (UsageError, DomainError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (NumericalFailure, QuadratureError, PicardDivergence, FloatingPointError) as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    return run(argv)
