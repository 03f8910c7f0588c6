"""Three-term lower bound for weighted moments of a decreasing profile, and its proof chain.

Given a profile psi with psi(0) = psi0, slopes in [-mu, 0] and A = int s^(b-1) psi,
the moment E_alpha = int s^(b+alpha-1) psi is bounded below by

    (bA)^((b+a)/b) psi0^(-a/b) / (b+a)
    + a / (12 b (b+a) mu^2) (bA)^((b+a-2)/b) psi0^((2b-a+2)/b)
    + a (b+a-2)^2 / (C1 b^2 (b+a)^2 mu^4) (bA)^((b+a-4)/b) psi0^((4b-a+4)/b)

with C1 = 288 for b >= 4 or a = 2, and C1 = 384 otherwise. The argument
normalizes to psi0 = mu = 1, evaluates f(tau) at a near-extremal tau, and
bounds the Taylor remainders I1, I2, I3; every intermediate is exposed here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields

from ..errors import DegenerateProfileError, OutOfHypothesisError
from .profiles import Profile

REL_TOL = 1e-12


def branch_constant(b: float, alpha: float) -> int:
    return 288 if (b >= 4 or alpha == 2) else 384


def _check_hypothesis(b, alpha):
    if not b >= 2:
        raise OutOfHypothesisError(f"the bound needs b >= 2, got b={b}")
    if not (0 < alpha <= 2):
        raise OutOfHypothesisError(f"alpha must lie in (0, 2], got {alpha}")


def f_tau(tau: float, b: float, alpha: float, A: float) -> float:
    return ((b + alpha) * tau ** alpha * b * A - alpha * tau ** (b + alpha)
            + alpha / 12.0 * tau ** (b + alpha - 2))


def t_small(b: float, alpha: float, A: float) -> float:
    return (b + alpha - 2) / (12.0 * (b + alpha)) * (b * A) ** (-2.0 / b)


def tau_star(b: float, alpha: float, A: float) -> float:
    return (b * A) ** (1.0 / b) * (1 + t_small(b, alpha, A)) ** (1.0 / b)


@dataclass(frozen=True)
class LemmaRHS:
    terms: tuple
    branch: int

    @property
    def total(self) -> float:
        return math.fsum(self.terms)


def lemma23_rhs(b: float, alpha: float, A: float, psi0: float = 1.0, mu: float = 1.0) -> LemmaRHS:
    _check_hypothesis(b, alpha)
    if not (A > 0 and psi0 > 0 and mu > 0):
        raise DegenerateProfileError("A, psi0 and mu must be positive")
    c1 = branch_constant(b, alpha)
    bA = b * A
    t1 = bA ** ((b + alpha) / b) * psi0 ** (-alpha / b) / (b + alpha)
    t2 = (alpha / (12.0 * b * (b + alpha) * mu ** 2)
          * bA ** ((b + alpha - 2) / b) * psi0 ** ((2 * b - alpha + 2) / b))
    t3 = (alpha * (b + alpha - 2) ** 2 / (c1 * b ** 2 * (b + alpha) ** 2 * mu ** 4)
          * bA ** ((b + alpha - 4) / b) * psi0 ** ((4 * b - alpha + 4) / b))
    return LemmaRHS((t1, t2, t3), c1)


def beta_value(b, alpha):
    return (alpha - 2) * (alpha - 2 - b) * (alpha - 2 - 2 * b) * (b + alpha)


def gamma_value(b, alpha):
    return beta_value(b, alpha) - alpha * (alpha - b) * (alpha - 2 * b) * (alpha - 3 * b)


def nu2_value(b, alpha):
    return alpha ** 2 + (5 * b - 16) * alpha + (-6 * b ** 2 + 8 * b + 16)


def i4_value(b, alpha):
    return 1 + (alpha + 2 * b - 6) / (3.0 * b) + nu2_value(b, alpha) / (48.0 * b ** 2)


def k_value(b, alpha):
    return 240 * b ** 2 * (b + alpha) + beta_value(b, alpha)


@dataclass(frozen=True)
class LemmaTerms:
    b: float
    alpha: float
    A: float
    E_alpha: float
    tau_star: float
    f_at_tau: float
    t_small: float
    I1: float
    I2: float
    I3: float
    I4: float
    beta: float
    gamma: float
    K_b: float

    @property
    def taylor_floor(self) -> float:
        """b (bA)^((b+a)/b) + (a/12)(bA)^((b+a-2)/b) + I1 + I2 + I3, a lower bound for f(tau*)."""
        bA = self.b * self.A
        b, a = self.b, self.alpha
        return math.fsum([b * bA ** ((b + a) / b), a / 12.0 * bA ** ((b + a - 2) / b),
                          self.I1, self.I2, self.I3])

    @property
    def branch_floor(self) -> float:
        """b (bA)^((b+a)/b) + (a/12)(bA)^((b+a-2)/b) + the branch third term."""
        b, a = self.b, self.alpha
        bA = b * self.A
        c1 = branch_constant(b, a)
        return math.fsum([b * bA ** ((b + a) / b), a / 12.0 * bA ** ((b + a - 2) / b),
                          a * (b + a - 2) ** 2 / (c1 * b * (b + a)) * bA ** ((b + a - 4) / b)])


def lemma_terms(b: float, alpha: float, A: float, E_alpha: float = math.nan) -> LemmaTerms:
    """Intermediate quantities of the argument for a normalized profile (psi0 = mu = 1)."""
    _check_hypothesis(b, alpha)
    bA = b * A
    a = alpha
    r = (b + a - 2) / (12.0 * (b + a))
    i1 = a * (b + a - 2) ** 2 / (288.0 * b * (b + a)) * bA ** ((b + a - 4) / b)
    i2 = (a * (b + a - 2) * (a + 2 * b - 6) / (72.0 * b ** 2) * r ** 2 * bA ** ((b + a - 6) / b)
          + a * (b + a - 2) * nu2_value(b, a) / (288.0 * b ** 3) * r ** 3 * bA ** ((b + a - 8) / b))
    gam = gamma_value(b, a)
    i3 = a * gam / (24.0 * b ** 4) * r ** 5 * bA ** ((b + a - 10) / b)
    tau = tau_star(b, a, A)
    return LemmaTerms(b, a, A, E_alpha, tau, f_tau(tau, b, a, A), t_small(b, a, A),
                      i1, i2, i3, i4_value(b, a), beta_value(b, a), gam, k_value(b, a))


def _holds(lhs, rhs):
    return lhs >= rhs - REL_TOL * max(abs(lhs), abs(rhs), 1e-300)


REPORT_COLUMNS = ("b", "alpha", "A", "E_alpha", "rhs_term1", "rhs_term2", "rhs_term3",
                  "margin", "branch", "verdict")


@dataclass(frozen=True)
class LemmaReport:
    b: float
    alpha: float
    A: float
    E_alpha: float
    rhs_term1: float
    rhs_term2: float
    rhs_term3: float
    margin: float
    branch: int
    verdict: bool
    normalized_verdict: bool
    scaling_rel_diff: float
    chain: dict
    terms: LemmaTerms

    @property
    def scale(self) -> float:
        return max(self.E_alpha, self.rhs_term1 + self.rhs_term2 + self.rhs_term3)

    @property
    def relative_margin(self) -> float:
        return self.margin / self.scale

    def row(self) -> tuple:
        return tuple(getattr(self, c) for c in REPORT_COLUMNS)


def lemma23_check(p: Profile, b: float, alpha: float) -> LemmaReport:
    """Exact moments of ``p`` against the three-term bound, plus the proof chain.

    The same check is repeated on the normalized profile; the bound is
    homogeneous under that rescaling, so both the verdict and the ratio
    E / RHS must agree. The chain entries record the intermediate inequalities
    E >= f(tau*)/(b(b+a)), f(tau*) >= Taylor floor >= branch floor.
    """
    _check_hypothesis(b, alpha)
    A = p.moment(b - 1)
    if not A > 0:
        raise DegenerateProfileError("A = int s^(b-1) psi must be positive")
    E = p.moment(b + alpha - 1)
    rhs = lemma23_rhs(b, alpha, A, p.psi0, p.mu)
    margin = E - rhs.total
    verdict = _holds(E, rhs.total)

    q = p.normalized()
    An, En = q.moment(b - 1), q.moment(b + alpha - 1)
    rhs_n = lemma23_rhs(b, alpha, An, 1.0, 1.0)
    normalized_verdict = _holds(En, rhs_n.total)
    scaling = abs(E / rhs.total - En / rhs_n.total) / (En / rhs_n.total)

    terms = lemma_terms(b, alpha, An, En)
    fstar = terms.f_at_tau
    chain = {
        "moment_vs_f": _holds(b * (b + alpha) * En, fstar),
        "f_vs_taylor": _holds(fstar, terms.taylor_floor),
        "taylor_vs_branch": _holds(terms.taylor_floor, terms.branch_floor),
        "bA_floor": (b * An) ** (2.0 / b) >= (1.0 / 3.0) * (1 - REL_TOL),
    }
    return LemmaReport(b, alpha, A, E, *rhs.terms, margin, rhs.branch, verdict,
                       normalized_verdict, scaling, chain, terms)


@dataclass(frozen=True)
class ConstantChecks:
    """Truth values of the auxiliary polynomial inequalities; None where not applicable."""

    b: float
    alpha: float
    nu2_nonpositive: bool | None
    case1_polynomial: bool | None
    i4_floor: bool | None
    k_positive: bool | None
    bA_floor: bool

    @property
    def passed(self) -> bool:
        return all(getattr(self, f.name) is not False for f in fields(self)[2:])


def case1_polynomial(b, alpha):
    """4b(b+a-2)[26b^2 + (21a-88)b + (a^2-16a+16)] + beta."""
    return (4 * b * (b + alpha - 2) * (26 * b ** 2 + (-88 + 21 * alpha) * b
                                       + (alpha ** 2 - 16 * alpha + 16)) + beta_value(b, alpha))


def proof_constant_checks(b: float, alpha: float) -> ConstantChecks:
    _check_hypothesis(b, alpha)
    big = b >= 4
    return ConstantChecks(
        b, alpha,
        nu2_nonpositive=(nu2_value(b, alpha) <= 0) if big else None,
        case1_polynomial=(case1_polynomial(b, alpha) >= 0) if big else None,
        i4_floor=None if big else i4_value(b, alpha) >= 5.0 / (4.0 * b) * (1 - REL_TOL),
        k_positive=None if big else k_value(b, alpha) > 0,
        # equality at b = 2
        bA_floor=(b + 1) ** (-2.0 / b) >= (1.0 / 3.0) * (1 - REL_TOL),
    )
