"""Fourier-side profile of the first k Dirichlet eigenfunctions of an interval.

For the interval (0, a) the normalized eigenfunctions are sqrt(2/a) sin(j pi x/a)
and their unitary Fourier transforms have closed forms. The profile
f(xi) = sum_{j<=k} |phi_j_hat(xi)|^2 is what the rearrangement argument works
with: it is bounded by (2pi)^-1 Vol, its slope by 2 (2pi)^-1 sqrt(Ine Vol), and
it integrates to k.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad


def _sinc(u):
    return np.sinc(u / np.pi)


def _dsinc(u):
    u = np.asarray(u, dtype=float)
    small = np.abs(u) < 1e-4
    safe = np.where(small, 1.0, u)
    return np.where(small, -u / 3.0 + u ** 3 / 30.0,
                    (safe * np.cos(safe) - np.sin(safe)) / safe ** 2)


def mode_power(j: int, xi, a: float = 1.0) -> np.ndarray:
    """|phi_j_hat(xi)|^2 with the (2 pi)^(-1/2) transform convention."""
    kappa = j * math.pi / a
    x = np.abs(np.asarray(xi, dtype=float))
    u = a * (x - kappa) / 2
    return (2 * a * kappa ** 2 / (2 * math.pi)) * _sinc(u) ** 2 / (x + kappa) ** 2


def mode_power_derivative(j: int, xi, a: float = 1.0) -> np.ndarray:
    kappa = j * math.pi / a
    xi = np.asarray(xi, dtype=float)
    x = np.abs(xi)
    u = a * (x - kappa) / 2
    s = _sinc(u)
    c = 2 * a * kappa ** 2 / (2 * math.pi)
    g = c * (s * _dsinc(u) * a / (x + kappa) ** 2 - 2 * s ** 2 / (x + kappa) ** 3)
    return np.sign(xi) * g


def profile(k: int, xi, a: float = 1.0) -> np.ndarray:
    return sum(mode_power(j, xi, a) for j in range(1, k + 1))


def profile_derivative(k: int, xi, a: float = 1.0) -> np.ndarray:
    return sum(mode_power_derivative(j, xi, a) for j in range(1, k + 1))


@dataclass(frozen=True)
class ProfileReport:
    k: int
    a: float
    max_profile: float
    value_bound: float
    max_slope: float
    slope_bound: float

    @property
    def value_ok(self) -> bool:
        return self.max_profile <= self.value_bound + 1e-10

    @property
    def slope_ok(self) -> bool:
        return self.max_slope <= self.slope_bound * (1 + 1e-8)


def bessel_bound_profile(k: int, xi, sides=(1.0,)) -> ProfileReport:
    """Evaluate the profile and its slope on ``xi`` against their geometric bounds."""
    if len(sides) != 1:
        raise ValueError("closed-form transforms are implemented for intervals only")
    a = float(sides[0])
    vol, ine = a, a ** 3 / 12.0
    f = profile(k, xi, a)
    df = profile_derivative(k, xi, a)
    return ProfileReport(
        k=k,
        a=a,
        max_profile=float(np.max(f)),
        value_bound=vol / (2 * math.pi),
        max_slope=float(np.max(np.abs(df))),
        slope_bound=2 / (2 * math.pi) * math.sqrt(ine * vol),
    )


def profile_integral(k: int, a: float = 1.0, xi_max: float = 4000.0) -> float:
    """int_R f(xi) dxi by adaptive quadrature between the sinc nodes, plus a tail term."""
    period = 2 * math.pi / a
    edges = np.arange(0.0, xi_max + period, period)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, _ = quad(lambda x: float(profile(k, x, a)), lo, hi, epsabs=1e-14, epsrel=1e-12)
        total += val
    xi_end = edges[-1]
    # sin^2 averages to 1/2 beyond the last node
    tail = sum(4 * (j * math.pi / a) ** 2 / (2 * math.pi * a) / (3 * xi_end ** 3)
               for j in range(1, k + 1))
    return 2 * (total + tail)
