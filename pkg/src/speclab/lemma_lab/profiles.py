"""Piecewise-linear decreasing profiles, their slope densities, and the window lemma.

All moments are integrated exactly segment by segment, so inequality checks only
need slack for floating-point rounding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateProfileError, InconsistencyError

SLOPE_TOL = 1e-12
EPS_ITERATIONS = 200
EPS_RESIDUAL = 1e-12


def _segment_moment(x0, x1, c0, c1, p):
    """int_{x0}^{x1} s^p (c0 + c1 s) ds for real p > -1."""
    a = (x1 ** (p + 1) - x0 ** (p + 1)) / (p + 1)
    b = (x1 ** (p + 2) - x0 ** (p + 2)) / (p + 2)
    return c0 * a + c1 * b


@dataclass(frozen=True)
class Profile:
    """Nonincreasing piecewise-linear psi on [0, breakpoints[-1]], zero afterwards."""

    breakpoints: tuple
    values: tuple
    mu: float

    def __post_init__(self):
        x = np.asarray(self.breakpoints, dtype=float)
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "breakpoints", tuple(x.tolist()))
        object.__setattr__(self, "values", tuple(v.tolist()))
        if x.ndim != 1 or x.size < 2 or x.size != v.size:
            raise ValueError("need matching breakpoints and values, at least two of each")
        if x[0] != 0 or np.any(np.diff(x) <= 0):
            raise ValueError("breakpoints must start at 0 and increase strictly")
        if v[-1] != 0:
            raise ValueError("profile must vanish at its last breakpoint (compact support)")
        if np.any(v < 0):
            raise ValueError("profile values must be nonnegative")
        if not self.mu > 0:
            raise ValueError("mu must be positive")
        slopes = np.diff(v) / np.diff(x)
        if np.any(slopes > 0) or np.any(slopes < -self.mu * (1 + SLOPE_TOL)):
            raise ValueError(f"slopes must lie in [-mu, 0] with mu={self.mu}")

    @property
    def psi0(self) -> float:
        return self.values[0]

    @property
    def support_end(self) -> float:
        return self.breakpoints[-1]

    def slopes(self) -> np.ndarray:
        return np.diff(self.values) / np.diff(self.breakpoints)

    def __call__(self, s):
        return np.interp(s, self.breakpoints, self.values, right=0.0)

    def moment(self, p: float) -> float:
        """int_0^inf s^p psi(s) ds."""
        x, v = self.breakpoints, self.values
        parts = []
        for i in range(len(x) - 1):
            m = (v[i + 1] - v[i]) / (x[i + 1] - x[i])
            parts.append(_segment_moment(x[i], x[i + 1], v[i] - m * x[i], m, p))
        return math.fsum(parts)

    def normalized(self) -> "Profile":
        """rho(t) = psi(psi0 t / mu) / psi0, which has rho(0) = 1 and slopes in [-1, 0]."""
        if not self.psi0 > 0:
            raise DegenerateProfileError("psi(0) = 0: the profile vanishes identically")
        stretch = self.mu / self.psi0
        x = tuple(t * stretch for t in self.breakpoints)
        v = tuple(y / self.psi0 for y in self.values)
        return Profile(x, v, 1.0)

    def slope_density(self) -> "StepDensity":
        """h = -psi', a step function with integral psi(0)."""
        return StepDensity(self.breakpoints, tuple((-self.slopes()).tolist()))


@dataclass(frozen=True)
class StepDensity:
    """Piecewise-constant function: ``values[i]`` on [edges[i], edges[i+1])."""

    edges: tuple
    values: tuple

    def __post_init__(self):
        if len(self.edges) != len(self.values) + 1:
            raise ValueError("need one more edge than values")
        if any(b <= a for a, b in zip(self.edges, self.edges[1:])) or self.edges[0] < 0:
            raise ValueError("edges must be nonnegative and increasing")

    @property
    def support_end(self) -> float:
        return self.edges[-1]

    def moment(self, p: float) -> float:
        e = self.edges
        return math.fsum(c * (e[i + 1] ** (p + 1) - e[i] ** (p + 1)) / (p + 1)
                         for i, c in enumerate(self.values))

    def is_window_density(self, tol: float = 1e-12) -> bool:
        """0 <= h <= 1 and int h = 1, the hypotheses of the window lemma."""
        ok_range = all(-tol <= c <= 1 + tol for c in self.values)
        return ok_range and abs(self.moment(0.0) - 1.0) <= tol


def random_profile(rng: np.random.Generator, mu: float = 1.0, psi0: float = 1.0,
                   max_segments: int = 8) -> Profile:
    """Random decreasing profile with slopes drawn uniformly from [-mu, 0].

    Segments with zero slope (plateaus) are drawn with probability 1/4. If the
    profile is still positive after the drawn segments a final segment brings
    it to zero.
    """
    x, v = [0.0], [float(psi0)]
    for _ in range(int(rng.integers(1, max_segments + 1))):
        length = float(rng.uniform(0.05, 2.0)) * psi0 / mu
        drop = 0.0 if rng.random() < 0.25 else float(rng.uniform(0.0, mu))
        if v[-1] - drop * length <= 0:
            x.append(x[-1] + v[-1] / drop)
            v.append(0.0)
            break
        x.append(x[-1] + length)
        v.append(v[-1] - drop * length)
    if v[-1] > 0:
        drop = float(rng.uniform(0.05, 1.0)) * mu
        x.append(x[-1] + v[-1] / drop)
        v.append(0.0)
    return Profile(tuple(x), tuple(v), mu)


def window_moment(eps: float, d: float) -> float:
    """int_eps^{eps+1} s^d ds."""
    return ((eps + 1) ** (d + 1) - eps ** (d + 1)) / (d + 1)


@dataclass(frozen=True)
class EpsilonResult:
    epsilon: float
    target: float
    residual: float
    upper_moment: float | None = None
    upper_window: float | None = None

    @property
    def upper_holds(self) -> bool | None:
        """Second conclusion: the unit window also underestimates the (d+alpha)-moment."""
        if self.upper_moment is None:
            return None
        return self.upper_window <= self.upper_moment * (1 + EPS_RESIDUAL) + EPS_RESIDUAL


def find_epsilon(density, d: float, alpha: float | None = None) -> EpsilonResult:
    """The shift eps >= 0 whose unit window [eps, eps+1] reproduces the d-th moment.

    ``density`` must provide ``moment(p)`` and ``support_end``; it is assumed to
    satisfy 0 <= density <= 1 with unit integral. The map eps -> window moment is
    continuous and strictly increasing, so bisection on [0, support_end + 1] is
    total.
    """
    target = density.moment(d)
    scale = max(1.0, abs(target))
    lo, hi = 0.0, float(density.support_end) + 1.0
    base = window_moment(0.0, d)
    if target < base - EPS_RESIDUAL * scale:
        raise InconsistencyError(
            f"moment {target} is below int_0^1 s^d = {base}; the density is not admissible")
    if window_moment(hi, d) < target:
        raise InconsistencyError("moment exceeds the window at the end of the support")
    if target <= base:
        eps = 0.0
    else:
        for _ in range(EPS_ITERATIONS):
            mid = 0.5 * (lo + hi)
            if mid in (lo, hi):
                break
            if window_moment(mid, d) < target:
                lo = mid
            else:
                hi = mid
        eps = lo if abs(window_moment(lo, d) - target) <= abs(window_moment(hi, d) - target) else hi
    residual = abs(window_moment(eps, d) - target) / scale
    if residual > EPS_RESIDUAL:
        raise InconsistencyError(f"bisection residual {residual} above {EPS_RESIDUAL}")
    if alpha is None:
        return EpsilonResult(eps, target, residual)
    return EpsilonResult(eps, target, residual,
                         density.moment(d + alpha), window_moment(eps, d + alpha))


def theta_gap(s, tau, b, alpha):
    """b s^(b+a) - (b+a) tau^a s^b + a tau^(b+a) - a tau^(b+a-2) (s - tau)^2, nonnegative."""
    s = np.asarray(s, dtype=float)
    tau = np.asarray(tau, dtype=float)
    return (b * s ** (b + alpha) - (b + alpha) * tau ** alpha * s ** b
            + alpha * tau ** (b + alpha) - alpha * tau ** (b + alpha - 2) * (s - tau) ** 2)


def theta_scale(s, tau, b, alpha):
    """Magnitude of the largest term of theta_gap, for relative tolerances."""
    s = np.asarray(s, dtype=float)
    tau = np.asarray(tau, dtype=float)
    return np.maximum.reduce([b * s ** (b + alpha), (b + alpha) * tau ** alpha * s ** b,
                              alpha * tau ** (b + alpha),
                              alpha * tau ** (b + alpha - 2) * (s - tau) ** 2])
