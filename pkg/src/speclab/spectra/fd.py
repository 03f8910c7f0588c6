"""Five-point (2-D) / three-point (1-D) finite-difference Dirichlet eigenvalues on a grid mask."""
from __future__ import annotations

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from ..errors import ConvergenceError
from ..geometry import Ball, Box, RectUnion, bounding_box
from .spectrum import Method, Spectrum

DENSE_CUTOFF = 3000
RESIDUAL_TOL = 1e-8


def laplacian_matrix(mask: np.ndarray, h: float) -> sp.csr_matrix:
    """Negative discrete Laplacian on the True nodes of ``mask``; False nodes are zero."""
    mask = np.asarray(mask, dtype=bool)
    index = -np.ones(mask.shape, dtype=np.int64)
    nodes = np.argwhere(mask)
    index[tuple(nodes.T)] = np.arange(len(nodes))
    rows, cols = [], []
    for axis in range(mask.ndim):
        for step in (-1, 1):
            nb = nodes.copy()
            nb[:, axis] += step
            ok = (nb[:, axis] >= 0) & (nb[:, axis] < mask.shape[axis])
            src = np.nonzero(ok)[0]
            dst = index[tuple(nb[ok].T)]
            inside = dst >= 0
            rows.append(src[inside])
            cols.append(dst[inside])
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    n = len(nodes)
    adj = sp.csr_matrix((np.ones(rows.size), (rows, cols)), shape=(n, n))
    return ((2 * mask.ndim) * sp.identity(n, format="csr") - adj) / (h * h)


def fd_eigenvalues(mask, h: float, k: int) -> Spectrum:
    """Smallest k eigenvalues of the finite-difference Dirichlet Laplacian on ``mask``.

    Dense symmetric solve up to 3000 unknowns; above that, shift-invert Lanczos
    (ARPACK) about zero from a fixed starting vector.
    """
    mask = np.asarray(mask, dtype=bool)
    if not mask.any():
        raise ValueError("mask has no interior nodes")
    A = laplacian_matrix(mask, h)
    size = A.shape[0]
    if k > size:
        raise ValueError(f"k={k} exceeds the {size} interior nodes")
    if size <= DENSE_CUTOFF:
        vals, vecs = sla.eigh(A.toarray(), subset_by_index=[0, k - 1])
        solver = "dense"
    else:
        v0 = np.ones(size)
        ncv = min(size, max(2 * k + 1, 20))
        for attempt in range(3):
            try:
                vals, vecs = eigsh(A.tocsc(), k=k, sigma=0.0, which="LM", v0=v0,
                                   ncv=ncv, tol=0, maxiter=20 * size)
                break
            except ArpackNoConvergence as exc:
                ncv = min(size, 2 * ncv)
                last = exc
        else:
            raise ConvergenceError("shift-invert Lanczos did not converge",
                                   {"k": k, "size": size, "ncv": ncv, "error": str(last)})
        order = np.argsort(vals)
        vals, vecs = vals[order], vecs[:, order]
        solver = "shift-invert"
    residuals = np.linalg.norm(A @ vecs - vecs * vals, axis=0) / np.linalg.norm(vecs, axis=0)
    if np.any(residuals > RESIDUAL_TOL):
        raise ConvergenceError("eigenpair residual above tolerance",
                               {"max_residual": float(residuals.max()), "solver": solver})
    return Spectrum(vals, 2.0, Method.FD, resolution=f"h={h:.17g};nodes={size}",
                    residuals=residuals, diagnostics={"solver": solver, "nodes": size},
                    eigenvectors=vecs)


def discrete_box_spectrum(sides_nodes, h: float, k: int) -> np.ndarray:
    """Closed-form eigenvalues (4/h^2) sum_i sin^2(p_i pi h / (2 a_i)) of the grid box.

    ``sides_nodes`` gives the number of grid intervals per axis (a_i = N_i h).
    """
    axes = [4.0 / h ** 2 * np.sin(np.arange(1, N) * np.pi / (2 * N)) ** 2 for N in sides_nodes]
    total = axes[0]
    for ax in axes[1:]:
        total = np.add.outer(total, ax).ravel()
    return np.sort(total)[:k]


def _in_closed_union(rects, pts, eps):
    inside = np.zeros(len(pts), dtype=bool)
    for x0, y0, x1, y1 in rects:
        inside |= ((pts[:, 0] >= x0 - eps) & (pts[:, 0] <= x1 + eps)
                   & (pts[:, 1] >= y0 - eps) & (pts[:, 1] <= y1 + eps))
    return inside


def points_inside(d, pts: np.ndarray, h: float) -> np.ndarray:
    """Boolean flags for grid points strictly inside ``d`` (grid spacing ``h``)."""
    lo, hi = bounding_box(d)
    tol = 1e-9 * h
    if isinstance(d, Box):
        return np.all((pts > lo + tol) & (pts < hi - tol), axis=1)
    if isinstance(d, Ball):
        return np.sum((pts - np.asarray(d.offset)) ** 2, axis=1) < (d.radius - tol) ** 2
    if isinstance(d, RectUnion):
        # a node is interior iff a small 3x3 probe stencil around it stays in the
        # closed union; this keeps shared edges and drops boundary and re-entrant corners
        rects = d.placed_rects()
        delta = h / 4
        inside = np.ones(len(pts), dtype=bool)
        for dx in (-delta, 0.0, delta):
            for dy in (-delta, 0.0, delta):
                inside &= _in_closed_union(rects, pts + [dx, dy], tol)
        return inside
    raise TypeError(f"unsupported domain {d!r}")


def grid_mask(d, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Mask of grid nodes strictly inside ``d`` on the grid lo + i h, plus the node origin.

    The grid is aligned with the lower corner of the bounding box, so box and
    rectangle edges that are multiples of h fall on grid lines.
    """
    lo, hi = bounding_box(d)
    counts = np.rint((hi - lo) / h).astype(int) + 1
    axes = [lo[i] + h * np.arange(counts[i]) for i in range(len(lo))]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    return points_inside(d, pts, h).reshape(mesh[0].shape), lo
