"""Restricted fractional Laplacian via a periodic Fourier multiplier.

The domain is embedded in a periodic box of side ``pad * diam(D)`` carrying an
``N``-point grid per axis. Functions supported in D are represented by their
values on the grid nodes strictly inside D; the operator multiplies the
discrete Fourier transform by ``|xi|^alpha``. Restricted to D-supported vectors
this is a block of the circulant matrix with first column ``ifft(|xi|^alpha)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from ..errors import ConvergenceError, MemoryCapError
from ..geometry import bounding_box, diameter
from .fd import points_inside
from .spectrum import Method, Spectrum

MAX_NODES = 4000  # dense m x m float64 matrix, ~128 MB at the cap
RAYLEIGH_TOL = 1e-8


@dataclass(frozen=True)
class FourierGrid:
    """Periodic grid layout shared by the solver and the Rayleigh-identity check."""

    n: int
    N: int
    side: float
    nodes: np.ndarray  # (m, n) integer grid indices of the D-nodes

    @property
    def h(self) -> float:
        return self.side / self.N

    def frequencies(self) -> np.ndarray:
        """|xi| on the full periodic frequency lattice, shape (N,)*n."""
        f = 2 * np.pi * np.fft.fftfreq(self.N, d=self.h)
        mesh = np.meshgrid(*([f] * self.n), indexing="ij")
        return np.sqrt(sum(m * m for m in mesh))

    def embed(self, v: np.ndarray) -> np.ndarray:
        grid = np.zeros((self.N,) * self.n)
        grid[tuple(self.nodes.T)] = v
        return grid


def _check_params(alpha, N, pad):
    if not (0 < alpha <= 2):
        raise ValueError(f"alpha must lie in (0, 2], got {alpha}")
    if N < 2 or N & (N - 1):
        raise ValueError(f"grid size must be a power of two, got {N}")
    if pad < 2:
        raise ValueError(f"padding factor must be >= 2, got {pad}")


def build_grid(d, N: int, pad: float) -> FourierGrid:
    n = d.n
    side = pad * diameter(d)
    h = side / N
    lo, hi = bounding_box(d)
    counts = np.floor((hi - lo) / h + 1e-9).astype(int) + 1
    axes = [np.arange(c) for c in counts]
    mesh = np.meshgrid(*axes, indexing="ij")
    idx = np.stack([m.ravel() for m in mesh], axis=1)
    inside = points_inside(d, lo + h * idx, h)
    return FourierGrid(n, N, side, idx[inside])


def multiplier_matrix(grid: FourierGrid, alpha: float) -> np.ndarray:
    m = len(grid.nodes)
    if m > MAX_NODES:
        raise MemoryCapError(f"{m} nodes exceed the dense cap of {MAX_NODES}",
                             {"nodes": m, "cap": MAX_NODES})
    kernel = np.fft.ifftn(grid.frequencies() ** alpha).real
    N = grid.N
    flat = np.zeros((m, m), dtype=np.int64)
    for axis in range(grid.n):
        c = grid.nodes[:, axis]
        flat = flat * N + (c[:, None] - c[None, :]) % N
    A = kernel.ravel()[flat]
    return 0.5 * (A + A.T)


def fourier_fractional_eigenvalues(d, alpha: float, N: int = 512, pad: float = 4,
                                   k: int = 1) -> Spectrum:
    """Smallest k eigenvalues of the discretized restricted fractional Laplacian on ``d``."""
    _check_params(alpha, N, pad)
    grid = build_grid(d, N, pad)
    m = len(grid.nodes)
    if m == 0:
        raise ValueError("no grid nodes inside the domain; increase N")
    if k > m:
        raise ValueError(f"k={k} exceeds the {m} nodes inside the domain")
    A = multiplier_matrix(grid, alpha)
    vals, vecs = sla.eigh(A, subset_by_index=[0, k - 1])
    spec = Spectrum(vals, alpha, Method.FOURIER_MULTIPLIER,
                    resolution=f"N={N};pad={pad:g};nodes={m}",
                    diagnostics={"grid": grid, "N": N, "pad": pad, "nodes": m},
                    eigenvectors=vecs)
    spec.residuals = rayleigh_identity_check(spec, vecs, alpha)
    return spec


def rayleigh_identity_check(spec: Spectrum, eigenvectors: np.ndarray, alpha: float) -> np.ndarray:
    """Relative difference between each eigenvalue and its Fourier-side quadratic form.

    The form is sum |xi|^alpha |V|^2 / (N^n sum |v|^2) with V the DFT of the
    zero-extended eigenvector, i.e. the discrete analogue of
    Lambda = int |xi|^alpha |u_hat|^2 for a normalized eigenfunction.
    """
    grid = spec.diagnostics.get("grid")
    if grid is None:
        raise ValueError("spectrum does not come from the Fourier-multiplier solver")
    vecs = np.asarray(eigenvectors, dtype=float)
    if vecs.ndim == 1:
        vecs = vecs[:, None]
    mult = grid.frequencies() ** alpha
    out = []
    for j in range(vecs.shape[1]):
        v = vecs[:, j]
        norm2 = float(v @ v)
        if norm2 == 0:
            raise ValueError("zero vector has no Rayleigh quotient")
        V = np.fft.fftn(grid.embed(v))
        form = float(np.sum(mult * np.abs(V) ** 2)) / (grid.N ** grid.n * norm2)
        lam = spec.eigenvalues[j]
        out.append(abs(form - lam) / abs(lam))
    return np.asarray(out)


def fourier_refined(d, alpha: float, k: int = 1, N: int = 512, pad: float = 4,
                    rel_tol: float = 0.01, max_rounds: int = 6) -> Spectrum:
    """Fourier-multiplier spectrum accepted by the doubling rule.

    At each round three solves are compared: (N, pad), (2N, pad) for resolution
    and (2N, 2 pad) for padding at the same spacing. The result is accepted once
    both changes are below ``rel_tol`` for all k eigenvalues; otherwise the
    failing parameter is doubled. The (2N, pad) spectrum is returned and each
    eigenvalue carries an error bar equal to the sum of both changes.
    """
    history = []
    for _ in range(max_rounds):
        base = fourier_fractional_eigenvalues(d, alpha, N, pad, k).eigenvalues
        fine = fourier_fractional_eigenvalues(d, alpha, 2 * N, pad, k)
        padded = fourier_fractional_eigenvalues(d, alpha, 2 * N, 2 * pad, k).eigenvalues
        d_res = np.abs(fine.eigenvalues - base)
        d_pad = np.abs(padded - base)
        res_ok = np.all(d_res < rel_tol * fine.eigenvalues)
        pad_ok = np.all(d_pad < rel_tol * padded)
        history.append({"N": N, "pad": pad, "max_rel_res": float(np.max(d_res / fine.eigenvalues)),
                        "max_rel_pad": float(np.max(d_pad / padded))})
        if res_ok and pad_ok:
            fine.diagnostics.update(error_bar=d_res + d_pad, refinement=history)
            return fine
        if not pad_ok:
            pad, N = 2 * pad, 2 * N
        if not res_ok:
            N = 2 * N
    raise ConvergenceError("refinement rule not satisfied", {"history": history})
