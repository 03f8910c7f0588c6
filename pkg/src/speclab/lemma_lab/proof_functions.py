"""Monotonicity functions used to replace psi(0) by its upper bound (2 pi)^-n Vol.

After the rearrangement, the lower bound for the eigenvalue sum is a function
of t = psi(0) in (0, (2 pi)^-n Vol]. F(t) is the Laplacian case and xi(t) the
fractional one; both are decreasing there, which is what allows t to be set to
the endpoint. zeta is xi' divided by its positive prefactor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..bounds import BoundQuery, Scheme, scheme_bound
from ..errors import ProbeDomainError, UnverifiedDimensionError
from ..geometry import unit_ball_volume

TWO_PI = 2.0 * math.pi
GRID_POINTS = 100


def c1_constant(n: int, alpha: float) -> int:
    return 288 if (n >= 4 or alpha == 2) else 384


def sigma_of(n, vol, ine):
    return 2.0 * TWO_PI ** (-n) * math.sqrt(vol * ine)


def F(t, n, k, sigma):
    w = unit_ball_volume(n)
    t = np.asarray(t, dtype=float)
    return (n / (n + 2) * w ** (-2.0 / n) * k ** ((n + 2) / n) * t ** (-2.0 / n)
            + k * t ** 2 / (6 * (n + 2) * sigma ** 2)
            + n * w ** (2.0 / n) * k ** ((n - 2) / n) / (144 * (n + 2) ** 2 * sigma ** 4)
            * t ** ((4 * n + 2) / n))


def F_prime(t, n, k, sigma):
    w = unit_ball_volume(n)
    t = np.asarray(t, dtype=float)
    return (-2.0 / (n + 2) * w ** (-2.0 / n) * k ** ((n + 2) / n) * t ** (-(n + 2) / n)
            + k * t / (3 * (n + 2) * sigma ** 2)
            + (4 * n + 2) / (144 * (n + 2) ** 2 * sigma ** 4) * w ** (2.0 / n)
            * k ** ((n - 2) / n) * t ** ((3 * n + 2) / n))


def J_value(n: int, k: float) -> float:
    w = unit_ball_volume(n)
    return (1.0 / 3 + (4 * n + 2) / (144 * (n + 2)) * TWO_PI ** -2 * w ** (4.0 / n) * k ** (-2.0 / n)
            - 2 * TWO_PI ** 2 * k ** (2.0 / n) * w ** (-4.0 / n))


def xi(t, n, alpha, k, sigma):
    w = unit_ball_volume(n)
    c1 = c1_constant(n, alpha)
    kw = k / w
    t = np.asarray(t, dtype=float)
    a = alpha
    return (n * w / (n + a) * kw ** ((n + a) / n) * t ** (-a / n)
            + a * w / (12 * (n + a) * sigma ** 2) * kw ** ((n + a - 2) / n) * t ** ((2 * n - a + 2) / n)
            + a * (n + a - 2) ** 2 * w / (c1 * n * (n + a) ** 2 * sigma ** 4)
            * kw ** ((n + a - 4) / n) * t ** ((4 * n - a + 4) / n))


def zeta(t, n, alpha, k, sigma):
    w = unit_ball_volume(n)
    c1 = c1_constant(n, alpha)
    kw = k / w
    t = np.asarray(t, dtype=float)
    a = alpha
    return (-1 + (2 * n - a + 2) / (12 * n * sigma ** 2) * kw ** (-2.0 / n) * t ** ((2 * n + 2) / n)
            + (4 * n - a + 4) * (n + a - 2) ** 2 / (c1 * n ** 2 * (n + a) * sigma ** 4)
            * kw ** (-4.0 / n) * t ** ((4 * n + 4) / n))


def zeta_endpoint_bound(n: int, alpha: float, k: float) -> float:
    """Upper bound for zeta at t = (2 pi)^-n Vol using only the volume estimate of sigma."""
    r = unit_ball_volume(n) ** (4.0 / n) / TWO_PI ** 2
    c1 = c1_constant(n, alpha)
    a = alpha
    return (-1 + (2 * n - a + 2) / (12 * n) * k ** (-2.0 / n) * r
            + (4 * n - a + 4) * (n + a - 2) ** 2 / (c1 * n ** 2 * (n + a)) * k ** (-4.0 / n) * r ** 2)


def zeta_universal_bound(c1: int) -> float:
    return -0.75 + 24.0 / c1


@dataclass(frozen=True)
class ProofFunctions:
    t: float
    t_end: float
    sigma: float
    F_of_t: float
    Fprime_of_t: float
    J_value: float
    xi_of_t: float
    zeta_of_t: float
    fprime_grid_max: float
    zeta_grid_max: float
    zeta_endpoint_bound: float
    thm11_endpoint_rel_diff: float
    thm12_endpoint_rel_diff: float

    @property
    def monotone(self) -> bool:
        return (self.fprime_grid_max < 0 and self.zeta_grid_max <= 0 and self.J_value < 0
                and self.zeta_endpoint_bound <= 0)


def thm_proof_functions(n: int, alpha: float, vol: float, ine: float, k: float,
                        t: float | None = None) -> ProofFunctions:
    """Evaluate F, F', J, xi, zeta at ``t`` and on a grid of (0, (2 pi)^-n vol].

    The endpoint values F(t_end)/k and xi(t_end)/k are compared with the
    closed-form bounds assembled independently in ``bounds``.
    """
    if n < 2:
        raise UnverifiedDimensionError("the monotonicity argument needs n >= 2")
    t_end = TWO_PI ** (-n) * vol
    if t is None:
        t = t_end
    if not (0 < t <= t_end * (1 + 1e-15)):
        raise ProbeDomainError(f"probe t={t} outside (0, {t_end}]")
    sigma = sigma_of(n, vol, ine)
    grid = t_end * np.arange(1, GRID_POINTS + 1) / GRID_POINTS
    q = BoundQuery(n, alpha, k, vol, ine)
    thm11 = scheme_bound(q.with_alpha(2.0), Scheme.THM11).total
    thm12 = scheme_bound(q, Scheme.THM12).total
    f_end = float(F(t_end, n, k, sigma)) / k
    xi_end = float(xi(t_end, n, alpha, k, sigma)) / k
    return ProofFunctions(
        t=t, t_end=t_end, sigma=sigma,
        F_of_t=float(F(t, n, k, sigma)),
        Fprime_of_t=float(F_prime(t, n, k, sigma)),
        J_value=J_value(n, k),
        xi_of_t=float(xi(t, n, alpha, k, sigma)),
        zeta_of_t=float(zeta(t, n, alpha, k, sigma)),
        fprime_grid_max=float(np.max(F_prime(grid, n, k, sigma))),
        zeta_grid_max=float(np.max(zeta(grid, n, alpha, k, sigma))),
        zeta_endpoint_bound=zeta_endpoint_bound(n, alpha, k),
        thm11_endpoint_rel_diff=abs(f_end - thm11) / thm11,
        thm12_endpoint_rel_diff=abs(xi_end - thm12) / thm12,
    )
