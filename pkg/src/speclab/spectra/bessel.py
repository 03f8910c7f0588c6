"""Zeros of integer-order Bessel functions J_nu.

Function values come from ``scipy.special.jv``; the zeros are located here by a
sign-change scan followed by Newton iteration safeguarded by the bracket, with
McMahon's asymptotic expansion as the starting guess whenever it falls inside
the bracket.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.special import jv

from ..errors import BesselZeroError

# successive zeros of J_nu are at least ~3.1 apart, so this step never skips one
SCAN_STEP = 0.25
TOL = 1e-13


def mcmahon_guess(nu: int, m: int) -> float:
    """Large-m asymptotic approximation of the m-th positive zero of J_nu."""
    mu = 4.0 * nu * nu
    beta = (m + 0.5 * nu - 0.25) * math.pi
    e = 8.0 * beta
    return (beta - (mu - 1) / e - 4 * (mu - 1) * (7 * mu - 31) / (3 * e ** 3)
            - 32 * (mu - 1) * (83 * mu ** 2 - 982 * mu + 3779) / (15 * e ** 5))


def _djv(nu, x):
    return 0.5 * (jv(nu - 1, x) - jv(nu + 1, x))


def refine_zero(nu: int, lo: float, hi: float, guess: float | None = None,
                maxiter: int = 100) -> float:
    """Newton iteration for a zero of J_nu in [lo, hi], where J_nu changes sign."""
    flo, fhi = jv(nu, lo), jv(nu, hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if flo * fhi > 0:
        raise BesselZeroError("no sign change in bracket", {"nu": nu, "lo": lo, "hi": hi})
    x = guess if guess is not None and lo < guess < hi else 0.5 * (lo + hi)
    for it in range(maxiter):
        fx = jv(nu, x)
        if fx == 0:
            return x
        if fx * flo < 0:
            hi = x
        else:
            lo, flo = x, fx
        step = fx / _djv(nu, x)
        x_new = x - step
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= TOL * max(1.0, abs(x_new)) or hi - lo <= TOL * hi:
            return x_new
        x = x_new
    raise BesselZeroError("Newton iteration did not converge",
                          {"nu": nu, "lo": lo, "hi": hi, "x": x, "iterations": maxiter})


def zeros_below(nu: int, xmax: float) -> np.ndarray:
    """All positive zeros of J_nu smaller than ``xmax``, in increasing order."""
    # j_{nu,1} > nu, so nothing to find below max(nu, small)
    start = max(float(nu), 1e-3)
    if start >= xmax:
        return np.empty(0)
    grid = np.arange(start, xmax + SCAN_STEP, SCAN_STEP)
    vals = jv(nu, grid)
    idx = np.nonzero(vals[:-1] * vals[1:] <= 0)[0]
    zeros = []
    for m, i in enumerate(idx, start=1):
        if vals[i] == 0 and zeros and zeros[-1] == grid[i]:
            continue
        z = refine_zero(nu, grid[i], grid[i + 1], mcmahon_guess(nu, m))
        if z < xmax:
            zeros.append(z)
    return np.asarray(zeros)


def bessel_zeros(nu: int, count: int) -> np.ndarray:
    """The first ``count`` positive zeros of J_nu."""
    xmax = mcmahon_guess(nu, count) + nu + 10.0
    while True:
        z = zeros_below(nu, xmax)
        if z.size >= count:
            return z[:count]
        xmax *= 1.5
