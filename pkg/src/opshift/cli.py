"""Command-line driver.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 verification or example mismatch.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .arnoldi import arnoldi
from .asymptotics import ratio_series, symbol_extract, weak_moment_table
from .catalog import CATALOG_NAMES, run_example
from .config import RunConfig, load_config
from .errors import ConfigError, NumericalError, OpshiftError
from .export import (basis_rows, hessenberg_rows, kappa_rows, provenance, series_rows,
                     write_csv)
from .hessenberg import diagonal_limit, diagonal_sequence, norm_bound
from .limits import estimate_limit
from .measure import CircleVerblunsky
from .verify import (resolvent_suite, determinant_suite, ggt_agreement_suite, path_collapse_suite,
                     weakzero_suite)

EXIT_CONFIG, EXIT_NUMERICAL, EXIT_MISMATCH = 2, 3, 4
LIMIT_COLUMNS = ("label", "converged", "re", "im", "residual", "window", "tol")


def parse_jlist(text: str) -> tuple:
    """``"1,2,5"`` or ``"-1..3"`` (inclusive range), or a mix of both."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad index list {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty index list")
    return tuple(out)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON run configuration")
    common.add_argument("--out", type=Path, help="output directory for CSV files")
    common.add_argument("--degree", type=int, help="maximal polynomial degree N")
    common.add_argument("--window", type=int, help="limit-detection window W")
    common.add_argument("--tol", type=float, help="limit-detection tolerance")
    common.add_argument("--seed", type=int, help="seed for random test points")
    common.add_argument("--diag", type=parse_jlist, help="diagonal indices, e.g. 0..3 or =-1..3")
    common.add_argument("--moments", type=parse_jlist, help="moment powers, e.g. 1..4")
    common.add_argument("--terms", type=int, help="number of series coefficients J")

    p = argparse.ArgumentParser(prog="opshift", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"opshift {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("build", "orthonormal basis and Hessenberg matrix as CSV"),
        ("diagonals", "diagonal sequences and their limits"),
        ("ratio", "coefficients of the ratio limit at infinity"),
        ("moments", "weak moment limits"),
        ("symbol", "Toeplitz symbol of the limiting matrix"),
        ("verify", "identity suite; exit 4 on any failure"),
    ]:
        sub.add_parser(name, parents=[common], help=help_)
    ex = sub.add_parser("examples", parents=[common], help="run a built-in worked example")
    ex.add_argument("name", choices=CATALOG_NAMES + ("all",))
    return p


def _settings(args) -> RunConfig:
    if args.config is None:
        raise ConfigError("--config: required for this command")
    try:
        cfg = load_config(args.config)
    except OSError as exc:
        raise ConfigError(f"--config: cannot read {args.config} ({exc.strerror})") from None
    overrides = {k: getattr(args, k) for k in
                 ("degree", "window", "tol", "seed", "diag", "moments", "terms")
                 if getattr(args, k) is not None}
    if overrides:
        cfg = RunConfig(**{**cfg.__dict__, **overrides})
    if cfg.degree < 1 or cfg.window < 2 or cfg.tol <= 0:
        raise ConfigError("--degree/--window/--tol: need degree >= 1, window >= 2, tol > 0")
    return cfg


def _matrix(cfg: RunConfig):
    m = cfg.measure()
    basis, M = arnoldi(m, cfg.degree, strict=not getattr(m, "approximate", False))
    return m, basis, M


def _header(cfg: RunConfig, **extra):
    return provenance(cfg.digest, degree=cfg.degree, window=cfg.window, tol=cfg.tol, **extra)


def cmd_build(args) -> int:
    cfg = _settings(args)
    _, basis, M = _matrix(cfg)
    head = _header(cfg)
    if args.out:
        write_csv(args.out / "basis.csv", ("n", "i", "re", "im"), basis_rows(basis), head)
        write_csv(args.out / "kappa.csv", ("n", "kappa"), kappa_rows(basis), head)
        write_csv(args.out / "hessenberg.csv", ("j", "k", "re", "im"), hessenberg_rows(M), head)
    print(f"built degree {cfg.degree}: {M.size}x{M.size} Hessenberg section")
    print(f"kappa_N = {basis.kappa[-1]:.12g}")
    return 0


def cmd_diagonals(args) -> int:
    cfg = _settings(args)
    _, _, M = _matrix(cfg)
    seq_rows, lim_rows = [], []
    for j in cfg.diag:
        for scaled in (False, True):
            ns, vals = diagonal_sequence(M, j, scaled)
            seq_rows += [(j, int(n), v.real, v.imag, int(scaled)) for n, v in zip(ns, vals)]
        for scaled in (False, True):
            est = diagonal_limit(M, j, scaled, cfg.window, cfg.tol)
            lim_rows.append(est.as_row(f"{j}{'s' if scaled else ''}"))
            tag = "scaled " if scaled else ""
            state = "converged" if est.converged else "not converged"
            print(f"{tag}diagonal {j}: {state}, limit {est.limit:.10g}, residual {est.residual:.3e}")
    if args.out:
        head = _header(cfg)
        write_csv(args.out / "diagonals.csv", ("j", "n", "re", "im", "scaled"), seq_rows, head)
        write_csv(args.out / "diagonal_limits.csv", LIMIT_COLUMNS, lim_rows, head)
        for j in cfg.diag:
            ns, vals = diagonal_sequence(M, j)
            write_csv(args.out / "plot" / f"diagonal_{j}.dat", ("n", "abs"),
                      zip(ns.tolist(), np.abs(vals)))
    return 0


def cmd_ratio(args) -> int:
    cfg = _settings(args)
    _, _, M = _matrix(cfg)
    r = ratio_series(M, cfg.terms, cfg.window, cfg.tol)
    rows = [e.as_row(f"f_{j + 1}") for j, e in enumerate(r.estimates)]
    for j, e in enumerate(r.estimates):
        print(f"f_{j + 1} = {e.limit:.10g} ({'converged' if e.converged else 'not converged'}, "
              f"residual {e.residual:.3e})")
    print(f"kappa_n/kappa_(n+1) -> {r.kappa_ratio.limit.real:.10g}; bounded away from 0: {r.posinf}")
    if args.out:
        write_csv(args.out / "ratio.csv", LIMIT_COLUMNS, rows, _header(cfg, posinf=int(r.posinf)))
    return 0


def cmd_moments(args) -> int:
    cfg = _settings(args)
    _, _, M = _matrix(cfg)
    jmax = max(cfg.moments)
    table = weak_moment_table(M, jmax)
    rows = []
    for j in cfg.moments:
        est = estimate_limit(table[:, j], start=0, window=cfg.window, tol=cfg.tol)
        rows.append(est.as_row(j))
        print(f"moment j={j}: {est.limit.real:.10g}{est.limit.imag:+.3g}j "
              f"({'converged' if est.converged else 'not converged'}, residual {est.residual:.3e})")
    if args.out:
        head = _header(cfg)
        write_csv(args.out / "moments.csv", LIMIT_COLUMNS, rows, head)
        write_csv(args.out / "weak_moments.csv", ("n", "j", "re", "im"),
                  ((n, j, table[n, j].real, table[n, j].imag)
                   for n in range(table.shape[0]) for j in cfg.moments), head)
        for j in cfg.moments:
            write_csv(args.out / "plot" / f"moment_{j}.dat", ("n", "re"),
                      zip(range(table.shape[0]), table[:, j].real))
    return 0


def cmd_symbol(args) -> int:
    cfg = _settings(args)
    _, _, M = _matrix(cfg)
    s = symbol_extract(M, cfg.terms, cfg.window, cfg.tol)
    for k in range(-1, s.symbol.order + 1):
        c = s.symbol.coef(k)
        print(f"beta_{k} = {c.real:.10g}{c.imag:+.3g}j")
    print(f"cross-check residual {s.residual:.3e}; all diagonals converged: {s.converged}")
    if args.out:
        write_csv(args.out / "symbol.csv", ("k", "re", "im"), series_rows(s.symbol),
                  _header(cfg, K=s.symbol.order, rho=s.symbol.rho, residual=s.residual))
    return 0


def cmd_verify(args) -> int:
    cfg = _settings(args)
    m, basis, M = _matrix(cfg)
    rng = np.random.default_rng(cfg.seed)
    bound = norm_bound(M, m).bound
    suites = [determinant_suite(M, basis, bound, rng), resolvent_suite(M, bound, rng)]
    if M.log_kappa is not None:
        suites.append(path_collapse_suite(M, rng))
    if isinstance(m, CircleVerblunsky):
        suites.append(ggt_agreement_suite(m.alpha, min(cfg.degree, 30)))
    suites.append(weakzero_suite(M, bound))
    for s in suites:
        print(s.line())
    if args.out:
        write_csv(args.out / "verify.csv", ("suite", "passed", "residual", "threshold"),
                  ((s.name, int(s.passed), s.residual, s.threshold) for s in suites),
                  _header(cfg, seed=cfg.seed))
    return 0 if all(s.passed for s in suites) else EXIT_MISMATCH


def cmd_examples(args) -> int:
    names = CATALOG_NAMES if args.name == "all" else (args.name,)
    ok = True
    for name in names:
        rep = run_example(name)
        print(f"[{'PASS' if rep.passed else 'FAIL'}] {name}")
        for c in rep.checks:
            q, exp, got, tol, status, prov = c.row()
            print(f"  {status:4} {q}: expected {exp}, got {got} (tol {tol:g}; {prov})")
        if args.out:
            write_csv(args.out / f"example_{name}.csv",
                      ("quantity", "expected", "measured", "tol", "status", "provenance"),
                      (c.row() for c in rep.checks), provenance())
        ok &= rep.passed
    return 0 if ok else EXIT_MISMATCH


COMMANDS = {"build": cmd_build, "diagonals": cmd_diagonals, "ratio": cmd_ratio,
            "moments": cmd_moments, "symbol": cmd_symbol, "verify": cmd_verify,
            "examples": cmd_examples}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"opshift: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, OpshiftError) as exc:
        print(f"opshift: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
