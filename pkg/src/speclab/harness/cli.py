"""``speclab`` command line.

Exit codes: 0 all verdicts pass, 1 an inequality verdict fails, 2 usage or
config error, 3 solver failure.
"""
from __future__ import annotations

import argparse
import sys

from ..bounds import BoundQuery, Scheme, scheme_bound, schemes_for_alpha
from ..errors import ConfigError, SolverError, SpeclabError
from ..geometry import Ball, Box, bounding_box
from ..spectra import (
    box_eigenvalues,
    disk_eigenvalues,
    fd_eigenvalues,
    fourier_fractional_eigenvalues,
    fourier_refined,
    grid_mask,
    spectrum_to_csv,
)
from . import suites
from .campaign import default_campaigns, run_suite
from .config import load_campaign, parse_k_range
from .domain_spec import parse_domain
from .report import emit_csv, emit_plot, read_csv

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2, 3


def _spectra(args):
    d = parse_domain(args.domain)
    if args.method == "exact":
        if isinstance(d, Box):
            spec = box_eigenvalues(d.sides, args.k)
        elif isinstance(d, Ball) and d.n == 2:
            spec = disk_eigenvalues(d.radius, args.k)
        else:
            raise ConfigError("exact spectra exist for boxes and disks only")
        if args.alpha != 2:
            raise ConfigError("exact spectra are Laplacian spectra (alpha = 2)")
    elif args.method == "fd":
        if args.alpha != 2:
            raise ConfigError("finite differences discretize the Laplacian (alpha = 2) only")
        lo, hi = bounding_box(d)
        h = args.h if args.h else float(min(hi - lo)) / (args.grid or 64)
        mask, _ = grid_mask(d, h)
        spec = fd_eigenvalues(mask, h, args.k)
    else:
        N, pad = args.grid or 512, args.pad or 4
        if args.refine:
            spec = fourier_refined(d, args.alpha, args.k, N, pad)
        else:
            spec = fourier_fractional_eigenvalues(d, args.alpha, N, pad, args.k)
    text = spectrum_to_csv(spec)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _bounds(args):
    schemes = schemes_for_alpha(args.alpha) if args.scheme == "all" else [Scheme.parse(args.scheme)]
    lo, hi = parse_k_range(args.k)
    rows = []
    for k in range(lo, hi + 1):
        q = BoundQuery(args.n, args.alpha, k, args.vol, args.ine)
        row = {"k": k}
        for s in schemes:
            row[s.value] = scheme_bound(q, s).total
        rows.append(row)
    if args.out:
        emit_csv(rows, args.out)
    else:
        from .report import csv_text
        sys.stdout.write(csv_text(rows))
    return EXIT_OK


def _print_suite(result):
    for r in result.rows:
        status = "PASS" if r["passed"] else "FAIL"
        print(f"[{status}] {result.name}.{r['check']}: count={r['count']} "
              f"failures={r['failures']} worst={r['worst']:.6g}")


def _verify(args):
    result = suites.run(args.suite, trials=args.trials, seed=args.seed, tol=args.tol)
    _print_suite(result)
    if args.out:
        emit_csv(result.rows, args.out)
    return EXIT_OK if result.passed else EXIT_FAIL


def _run(args):
    if args.config:
        c = load_campaign(args.config)
    else:
        table = default_campaigns()
        if args.campaign not in table:
            raise ConfigError(f"unknown campaign {args.campaign!r}; known: {sorted(table)}")
        c = table[args.campaign]
    rows = run_suite(c)
    if args.out:
        emit_csv(rows, args.out)
    if args.plot and c.suite == "ladder":
        emit_plot(rows, args.plot)
    if c.suite == "ladder":
        bad = [r.k for r in rows if not r.verdict]
        print(f"[{'PASS' if not bad else 'FAIL'}] {c.name}: {len(rows)} rows, "
              f"{len(bad)} failing verdicts")
        return EXIT_OK if not bad else EXIT_FAIL
    res = suites.SuiteResult(c.suite, rows)
    _print_suite(res)
    return EXIT_OK if res.passed else EXIT_FAIL


def _report(args):
    rows = read_csv(args.input)
    if not rows:
        raise ConfigError(f"{args.input} has no rows")
    emit_plot(rows, args.plot)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="speclab", description="Eigenvalue bounds and reference spectra")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectra", help="compute a reference spectrum")
    s.add_argument("--domain", required=True, help='e.g. "box sides=1,1" or "ball n=2 r=1"')
    s.add_argument("--method", choices=("exact", "fd", "fourier"), default="exact")
    s.add_argument("--alpha", type=float, default=2.0)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--grid", type=int, help="fourier: points per side; fd: intervals on the shortest side")
    s.add_argument("--pad", type=float, help="fourier: padding factor")
    s.add_argument("--h", type=float, help="fd: grid spacing (overrides --grid)")
    s.add_argument("--refine", action="store_true", help="fourier: apply the doubling rule")
    s.add_argument("--out")
    s.set_defaults(func=_spectra)

    b = sub.add_parser("bounds", help="evaluate bound schemes")
    b.add_argument("--scheme", default="all")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--alpha", type=float, default=2.0)
    b.add_argument("--vol", type=float, required=True)
    b.add_argument("--ine", type=float, required=True)
    b.add_argument("--k", default="1", help="K or K1..K2")
    b.add_argument("--out")
    b.set_defaults(func=_bounds)

    v = sub.add_parser("verify", help="run a packaged verification suite")
    v.add_argument("--suite", choices=tuple(suites.SUITE_FUNCS), required=True)
    v.add_argument("--trials", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float)
    v.add_argument("--out")
    v.set_defaults(func=_verify)

    r = sub.add_parser("run", help="run a campaign from a config file or the shipped defaults")
    g = r.add_mutually_exclusive_group(required=True)
    g.add_argument("--config")
    g.add_argument("--campaign")
    r.add_argument("--out")
    r.add_argument("--plot")
    r.set_defaults(func=_run)

    rp = sub.add_parser("report", help="plot a ladder CSV as SVG")
    rp.add_argument("--in", dest="input", required=True)
    rp.add_argument("--plot", required=True)
    rp.set_defaults(func=_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except SolverError as exc:
        print(f"solver failure: {exc} {exc.diagnostics}", file=sys.stderr)
        return EXIT_SOLVER
    except (SpeclabError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
