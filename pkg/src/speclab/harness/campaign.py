"""Campaigns: one domain, one spectrum, many bound schemes, one row per k."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..bounds import BoundQuery, Scheme, scheme_bound
from ..errors import ConfigError, SchemeMismatchError
from ..geometry import Ball, Box, RectUnion, moment_of_inertia, volume
from ..spectra import (
    box_eigenvalues,
    disk_eigenvalues,
    fd_eigenvalues,
    fourier_fractional_eigenvalues,
    fourier_refined,
    grid_mask,
)
from ..spectra.spectrum import Spectrum

SUITES = ("ladder", "lemma", "proof", "kernels")
METHODS = ("exact", "fd", "fourier")


def worker_count() -> int:
    raw = os.environ.get("SPECLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"SPECLAB_THREADS must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class Campaign:
    name: str
    domain: object = None
    schemes: tuple = ()
    alpha: float = 2.0
    k_range: tuple = (1, 1)
    method: str = "exact"
    solver: dict = field(default_factory=dict)
    seed: int = 0
    tolerances: dict = field(default_factory=dict)
    suite: str = "ladder"
    trials: int = 1000

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ConfigError(f"suite must be one of {SUITES}, got {self.suite!r}")
        if self.suite == "ladder":
            lo, hi = self.k_range
            if not (1 <= lo <= hi):
                raise ConfigError(f"k range {self.k_range} is empty or starts below 1")
            if self.method not in METHODS:
                raise ConfigError(f"method must be one of {METHODS}, got {self.method!r}")
            if self.domain is None:
                raise ConfigError("a ladder campaign needs a domain")
        for name, tol in self.tolerances.items():
            if not tol > 0:
                raise ConfigError(f"tolerance {name} must be positive, got {tol}")
        object.__setattr__(self, "schemes", tuple(Scheme.parse(s) if isinstance(s, str) else s
                                                  for s in self.schemes))


@dataclass(frozen=True)
class ReportRow:
    k: int
    mean_eigenvalue: float
    eigenvalue: float
    error_bar: float
    totals: dict
    gaps: dict
    verdict: bool

    def as_dict(self) -> dict:
        out = {"k": self.k, "mean_eigenvalue": self.mean_eigenvalue,
               "eigenvalue": self.eigenvalue, "error_bar": self.error_bar}
        for s, v in self.totals.items():
            out[f"{s.value}_total"] = v
        for s, v in self.gaps.items():
            out[f"{s.value}_gap"] = v
        out["verdict"] = self.verdict
        return out


def compute_spectrum(c: Campaign) -> Spectrum:
    """The single spectrum a ladder campaign is evaluated against."""
    d, kmax = c.domain, c.k_range[1]
    if c.method == "exact":
        if isinstance(d, Box):
            return box_eigenvalues(d.sides, kmax)
        if isinstance(d, Ball) and d.n == 2:
            return disk_eigenvalues(d.radius, kmax)
        raise ConfigError("exact spectra exist for boxes and disks only")
    if c.method == "fd":
        if c.alpha != 2:
            raise ConfigError("finite differences discretize the Laplacian (alpha = 2) only")
        h = float(c.solver.get("h", 1.0 / 32))
        mask, _ = grid_mask(d, h)
        return fd_eigenvalues(mask, h, kmax)
    N = int(c.solver.get("grid", 512))
    pad = float(c.solver.get("pad", 4))
    if c.solver.get("refine", True):
        return fourier_refined(d, c.alpha, kmax, N, pad)
    return fourier_fractional_eigenvalues(d, c.alpha, N, pad, kmax)


def _rows_for(ks, c, spec, means, bars, err_means, n, vol, ine, gap_tol):
    rows = []
    for k in ks:
        totals, gaps = {}, {}
        lam = float(spec.eigenvalues[k - 1])
        mean = float(means[k - 1])
        q = BoundQuery(n, c.alpha, k, vol, ine)
        verdict = True
        for s in c.schemes:
            try:
                total = scheme_bound(q, s).total
            except SchemeMismatchError:
                totals[s], gaps[s] = math.nan, math.nan
                continue
            lhs = lam if s.single_eigenvalue else mean
            err = float(bars[k - 1] if s.single_eigenvalue else err_means[k - 1])
            totals[s], gaps[s] = total, lhs - total
            if s is not Scheme.WEYL_MEAN:
                verdict = verdict and gaps[s] >= -(gap_tol + err)
        rows.append(ReportRow(k, mean, lam, float(err_means[k - 1]), totals, gaps, verdict))
    return rows


def run_ladder(c: Campaign, spec: Spectrum | None = None) -> list[ReportRow]:
    """Rows for k in the campaign range; WEYL_MEAN is reported but never judged."""
    if spec is None:
        spec = compute_spectrum(c)
    d = c.domain
    n, vol, ine = d.n, volume(d), moment_of_inertia(d)
    means = spec.running_means()
    bars = np.asarray(spec.diagnostics.get("error_bar", np.zeros(spec.k)), dtype=float)
    err_means = np.cumsum(bars) / np.arange(1, spec.k + 1)
    gap_tol = float(c.tolerances.get("gap", 0.0))
    ks = list(range(c.k_range[0], c.k_range[1] + 1))
    workers = worker_count()
    if workers == 1:
        return _rows_for(ks, c, spec, means, bars, err_means, n, vol, ine, gap_tol)
    chunks = [ks[i::workers] for i in range(workers)]
    with ThreadPoolExecutor(workers) as pool:
        parts = pool.map(lambda part: _rows_for(part, c, spec, means, bars, err_means, n, vol, ine,
                                                gap_tol), chunks)
        rows = [r for part in parts for r in part]
    return sorted(rows, key=lambda r: r.k)


def run_suite(c: Campaign) -> list:
    """Ladder rows for ladder campaigns, summary rows for the verification suites."""
    if c.suite == "ladder":
        return run_ladder(c)
    from . import suites
    tol = c.tolerances.get("margin", suites.DEFAULT_TOL)
    return suites.run(c.suite, trials=c.trials, seed=c.seed, tol=tol).rows


UNIT_SQUARE = Box((1.0, 1.0))
UNIT_INTERVAL = Box((1.0,))


def default_campaigns() -> dict:
    lshape = RectUnion(((0.0, 0.0, 2.0, 1.0), (0.0, 1.0, 1.0, 2.0)))
    ladder2 = ("thm11", "melas", "bly", "polya", "weyl")
    return {
        "square-ladder": Campaign("square-ladder", UNIT_SQUARE, ladder2, 2.0, (1, 200), "exact"),
        "interval-fractional": Campaign(
            "interval-fractional", UNIT_INTERVAL, ("thm12", "yyref", "yy", "hy", "kgcor"),
            1.0, (1, 20), "fourier", {"grid": 512, "pad": 4, "refine": True}),
        "disk-ladder": Campaign("disk-ladder", Ball(2, 1.0), ("thm11", "melas", "bly", "weyl"),
                                2.0, (1, 100), "exact"),
        "lshape-fd": Campaign("lshape-fd", lshape, ("thm11", "melas", "bly", "weyl"),
                              2.0, (1, 20), "fd", {"h": 1.0 / 32}),
        "lemma": Campaign("lemma", suite="lemma", trials=1000, seed=20240601),
    }
