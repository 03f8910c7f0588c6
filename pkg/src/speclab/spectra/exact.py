"""Exact Dirichlet spectra of boxes (separation of variables) and disks (Bessel zeros)."""
from __future__ import annotations

import math

import numpy as np

from ..geometry import unit_ball_volume
from .bessel import zeros_below
from .spectrum import Method, Spectrum


def box_eigenvalues_below(sides, cutoff: float) -> np.ndarray:
    """Every eigenvalue pi^2 sum (m_i/a_i)^2 <= cutoff, with multiplicity, sorted.

    The enumeration walks all positive multi-indices inside the ellipsoid
    sum (m_i/a_i)^2 <= cutoff/pi^2, so nothing below the cutoff is missed.
    """
    sides = np.asarray(sides, dtype=float)
    r2 = cutoff / math.pi ** 2
    partial = np.zeros(1)
    for a in sides:
        room = r2 - partial
        # one extra candidate guards against rounding in floor; the filter below trims it
        mmax = np.floor(a * np.sqrt(np.maximum(room, 0.0))).astype(np.int64) + 1
        keep = room > 0
        partial, mmax = partial[keep], mmax[keep]
        if partial.size == 0:
            return np.empty(0)
        reps = np.repeat(np.arange(partial.size), mmax)
        # m runs 1..mmax inside each repeated block
        offsets = np.cumsum(mmax) - mmax
        m = np.arange(reps.size) - np.repeat(offsets, mmax) + 1
        partial = partial[reps] + (m / a) ** 2
        partial = partial[partial <= r2]
    return np.sort(math.pi ** 2 * partial)


def box_eigenvalues(sides, k: int) -> Spectrum:
    """First k Dirichlet eigenvalues of the box with the given side lengths."""
    sides = tuple(float(s) for s in sides)
    if k < 1:
        raise ValueError("k must be >= 1")
    n = len(sides)
    vol = math.prod(sides)
    # Weyl-law starting cutoff; the boundary deficit is absorbed by enlarging it
    cutoff = 4 * math.pi ** 2 * (k / (unit_ball_volume(n) * vol)) ** (2.0 / n)
    cutoff = max(cutoff * 1.25, math.pi ** 2 * sum(1 / a ** 2 for a in sides))
    while True:
        vals = box_eigenvalues_below(sides, cutoff)
        if vals.size >= k:
            break
        cutoff *= 1.5
    return Spectrum(vals[:k], 2.0, Method.EXACT_BOX,
                    resolution=f"cutoff={cutoff:.17g};candidates={vals.size}")


def disk_eigenvalues(radius: float, k: int) -> Spectrum:
    """First k Dirichlet eigenvalues (j_{nu,m}/radius)^2 of a disk.

    Each nu >= 1 contributes its zeros twice (cos and sin modes).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not radius > 0:
        raise ValueError("radius must be positive")
    xmax = 2.0 * math.sqrt(k) + 6.0
    while True:
        zs = []
        nu = 0
        while nu < xmax:
            z = zeros_below(nu, xmax)
            if z.size == 0:
                break
            zs.append(np.repeat(z, 1 if nu == 0 else 2))
            nu += 1
        allz = np.sort(np.concatenate(zs)) if zs else np.empty(0)
        if allz.size >= k:
            break
        xmax *= 1.3
    lam = (allz[:k] / radius) ** 2
    return Spectrum(lam, 2.0, Method.EXACT_DISK, resolution=f"zero_cutoff={xmax:.17g}")
