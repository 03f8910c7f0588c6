from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field

import numpy as np


class Method(enum.Enum):
    EXACT_BOX = "exact_box"
    EXACT_DISK = "exact_disk"
    FD = "fd"
    FOURIER_MULTIPLIER = "fourier"


@dataclass
class Spectrum:
    """The first k eigenvalues of one operator on one domain.

    ``residuals`` holds one entry per eigenvalue for numerical methods (empty for
    exact ones); ``diagnostics`` collects everything else the solver reports,
    e.g. refinement deltas or the enumeration cutoff.
    """

    eigenvalues: np.ndarray
    alpha: float
    method: Method
    resolution: str = ""
    residuals: np.ndarray = field(default_factory=lambda: np.empty(0))
    diagnostics: dict = field(default_factory=dict)
    eigenvectors: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.eigenvalues = np.asarray(self.eigenvalues, dtype=float)
        self.residuals = np.asarray(self.residuals, dtype=float)
        ev = self.eigenvalues
        if ev.ndim != 1 or ev.size == 0:
            raise ValueError("a spectrum needs at least one eigenvalue")
        if np.any(np.diff(ev) < 0):
            raise ValueError("eigenvalues must be nondecreasing")
        if not ev[0] > 0:
            raise ValueError(f"first eigenvalue must be positive, got {ev[0]}")

    def __len__(self):
        return self.eigenvalues.size

    @property
    def k(self) -> int:
        return self.eigenvalues.size

    def running_means(self) -> np.ndarray:
        """(1/k) sum_{j<=k} lambda_j for every k."""
        return np.cumsum(self.eigenvalues) / np.arange(1, self.k + 1)


SPECTRUM_COLUMNS = ("index", "eigenvalue", "method", "alpha", "resolution", "residual")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def spectrum_to_csv(spec: Spectrum, path=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SPECTRUM_COLUMNS)
    res = spec.residuals if spec.residuals.size == spec.k else np.zeros(spec.k)
    for i, (lam, r) in enumerate(zip(spec.eigenvalues, res), start=1):
        w.writerow([i, _fmt(lam), spec.method.value, _fmt(spec.alpha), spec.resolution, _fmt(r)])
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text


def spectrum_from_csv(source) -> Spectrum:
    """Parse a spectrum written by :func:`spectrum_to_csv` (path or CSV text)."""
    if isinstance(source, str) and "\n" in source:
        rows = list(csv.DictReader(io.StringIO(source)))
    else:
        with open(source, newline="") as fh:
            rows = list(csv.DictReader(fh))
    if not rows:
        raise ValueError("empty spectrum file")
    ev = [float(r["eigenvalue"]) for r in rows]
    res = [float(r["residual"]) for r in rows]
    method = Method(rows[0]["method"])
    exact = method in (Method.EXACT_BOX, Method.EXACT_DISK)
    return Spectrum(ev, float(rows[0]["alpha"]), method, rows[0]["resolution"],
                    residuals=[] if exact else res)
