"""Closed-form lower bounds for sums of Dirichlet and fractional Laplacian eigenvalues.

Every scheme is evaluated term by term so that the improvement of one scheme
over another is visible as an explicit extra term. Write ``a = w_n Vol`` for
the product of the unit-ball volume and the domain volume; then for order
``alpha`` the leading term of all Berezin-Li-Yau type bounds is

    n/(n+alpha) * (2 pi)^alpha * a^(-alpha/n) * k^(alpha/n)

and the refinements add multiples of ``(Vol/Ine) k^((alpha-2)/n)`` and
``(Vol/Ine)^2 k^((alpha-4)/n)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import (
    InvalidQueryError,
    SchemeMismatchError,
    UnspecifiedConstantError,
    UnverifiedDimensionError,
)
from .geometry import ine_lower_bound, unit_ball_volume

TWO_PI = 2.0 * math.pi

__all__ = [
    "Scheme",
    "BoundQuery",
    "BoundValue",
    "weyl_mean",
    "scheme_bound",
    "c_constant",
    "ell_constant",
    "remark13_holds",
    "hy_constant",
    "yolcu_bound",
    "coefficient_identities",
    "bound_ladder",
    "omega_ratio",
    "schemes_for_alpha",
]


class Scheme(enum.Enum):
    WEYL_MEAN = "weyl"
    POLYA = "polya"
    BLY_MEAN = "bly"
    BLY_SINGLE = "bly1"
    MELAS = "melas"
    THM11 = "thm11"
    HY = "hy"
    YY = "yy"
    YY_REFINED = "yyref"
    THM12 = "thm12"
    KG_COR = "kgcor"

    @classmethod
    def parse(cls, name: str) -> "Scheme":
        try:
            return cls(name.strip().lower())
        except ValueError:
            try:
                return cls[name.strip().upper()]
            except KeyError:
                raise InvalidQueryError(f"unknown scheme {name!r}") from None

    @property
    def single_eigenvalue(self) -> bool:
        """True when the scheme bounds lambda_k itself rather than the mean."""
        return self in (Scheme.POLYA, Scheme.BLY_SINGLE)


LAPLACIAN_SCHEMES = (Scheme.WEYL_MEAN, Scheme.POLYA, Scheme.BLY_MEAN, Scheme.BLY_SINGLE,
                     Scheme.MELAS, Scheme.THM11)
KLEIN_GORDON_SCHEMES = (Scheme.HY, Scheme.KG_COR)
FRACTIONAL_SCHEMES = (Scheme.YY, Scheme.YY_REFINED, Scheme.THM12)


def schemes_for_alpha(alpha: float) -> list[Scheme]:
    """Schemes whose formulas apply at order ``alpha``, in enumeration order."""
    out = []
    for s in Scheme:
        if s in LAPLACIAN_SCHEMES and alpha != 2:
            continue
        if s in KLEIN_GORDON_SCHEMES and alpha != 1:
            continue
        out.append(s)
    return out


@dataclass(frozen=True)
class BoundQuery:
    n: int
    alpha: float
    k: float
    vol: float
    ine: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InvalidQueryError(f"n must be a positive integer, got {self.n}")
        if not (0 < self.alpha <= 2):
            raise InvalidQueryError(f"alpha must lie in (0, 2], got {self.alpha}")
        if not self.k >= 1:
            raise InvalidQueryError(f"k must be >= 1, got {self.k}")
        if not (self.vol > 0 and self.ine > 0):
            raise InvalidQueryError("vol and ine must be positive")
        # balls sit exactly on the bound; allow rounding there
        if self.ine < ine_lower_bound(self.vol, self.n) * (1 - 1e-12):
            raise InvalidQueryError(
                f"ine={self.ine} is below the rearrangement bound "
                f"{ine_lower_bound(self.vol, self.n)} for vol={self.vol}, n={self.n}")

    def with_alpha(self, alpha: float) -> "BoundQuery":
        return BoundQuery(self.n, alpha, self.k, self.vol, self.ine)

    def with_k(self, k: float) -> "BoundQuery":
        return BoundQuery(self.n, self.alpha, k, self.vol, self.ine)


@dataclass(frozen=True)
class BoundValue:
    scheme: Scheme
    total: float
    terms: tuple = field(default_factory=tuple)
    verified_region: bool = True


def _leading(n, alpha, k, vol):
    a = unit_ball_volume(n) * vol
    return n / (n + alpha) * TWO_PI ** alpha * a ** (-alpha / n) * k ** (alpha / n)


def _second(coef, n, alpha, k, vol, ine):
    """coef * (2pi)^(alpha-2) * a^((2-alpha)/n) * (Vol/Ine) * k^((alpha-2)/n)"""
    a = unit_ball_volume(n) * vol
    return (coef * TWO_PI ** (alpha - 2) * a ** ((2 - alpha) / n)
            * (vol / ine) * k ** ((alpha - 2) / n))


def _third(coef, n, alpha, k, vol, ine):
    a = unit_ball_volume(n) * vol
    return (coef * TWO_PI ** (alpha - 4) * a ** ((4 - alpha) / n)
            * (vol / ine) ** 2 * k ** ((alpha - 4) / n))


def weyl_mean(q: BoundQuery) -> float:
    """Asymptotic mean of the first k Dirichlet eigenvalues (not a bound)."""
    return _leading(q.n, 2.0, q.k, q.vol)


def c_constant(n: int) -> int:
    """Denominator constant of the third term of the fractional refinement."""
    if n < 2:
        raise UnverifiedDimensionError(f"the constant is only defined for n >= 2, got n={n}")
    return 4608 if n >= 4 else 6144


def _thm12_constant(n, alpha):
    # At alpha = 2 the sharper 288 lemma branch holds for every b >= 2, so the
    # constant is 16 * 288 in all dimensions; n = 1 falls back to the smaller
    # third term and is flagged as unverified by the caller.
    if alpha == 2:
        return 4608
    if n < 2:
        return 6144
    return c_constant(n)


def ell_constant(n: int, alpha: float) -> tuple[float, str]:
    """The minimum defining ``ell`` and the name of the branch that attains it."""
    first = alpha / 12.0
    second = 4 * alpha * n * math.pi ** 2 / ((2 * n + 2 - alpha) * unit_ball_volume(n) ** (4.0 / n))
    if first <= second:
        return first, "alpha/12"
    return second, "second"


def remark13_holds(n: int, alpha: float) -> bool:
    first = alpha / 12.0
    second = 4 * alpha * n * math.pi ** 2 / ((2 * n + 2 - alpha) * unit_ball_volume(n) ** (4.0 / n))
    return first <= second


def hy_constant(n: int) -> float:
    return TWO_PI / unit_ball_volume(n) ** (1.0 / n)


def omega_ratio(n: int) -> float:
    """w_n^(4/n) / (2 pi)^2; stays below 1/2 for every tested dimension."""
    return unit_ball_volume(n) ** (4.0 / n) / TWO_PI ** 2


def _require_alpha(scheme, alpha, allowed):
    if alpha != allowed:
        raise SchemeMismatchError(f"{scheme.value} requires alpha={allowed}, got alpha={alpha}")


def scheme_bound(q: BoundQuery, scheme: Scheme | str) -> BoundValue:
    if isinstance(scheme, str):
        scheme = Scheme.parse(scheme)
    n, alpha, k, vol, ine = q.n, q.alpha, q.k, q.vol, q.ine
    verified = True

    if scheme is Scheme.WEYL_MEAN:
        terms = [weyl_mean(q)]
    elif scheme in (Scheme.POLYA, Scheme.BLY_MEAN, Scheme.BLY_SINGLE, Scheme.MELAS, Scheme.THM11):
        _require_alpha(scheme, alpha, 2)
        if scheme is Scheme.POLYA:
            terms = [TWO_PI ** 2 * (unit_ball_volume(n) * vol) ** (-2.0 / n) * k ** (2.0 / n)]
        else:
            terms = [_leading(n, 2.0, k, vol)]
        if scheme in (Scheme.MELAS, Scheme.THM11):
            terms.append(vol / (24.0 * (n + 2) * ine))
        if scheme is Scheme.THM11:
            w = unit_ball_volume(n)
            terms.append(n * k ** (-2.0 / n) / (2304.0 * (n + 2) ** 2) * w ** (2.0 / n)
                         * TWO_PI ** -2 * (vol / ine) ** 2 * vol ** (2.0 / n))
            verified = n >= 2
    elif scheme is Scheme.HY:
        _require_alpha(scheme, alpha, 1)
        terms = [n / (n + 1) * TWO_PI / (unit_ball_volume(n) * vol) ** (1.0 / n) * k ** (1.0 / n)]
    elif scheme in (Scheme.YY, Scheme.YY_REFINED, Scheme.THM12, Scheme.KG_COR):
        if scheme is Scheme.KG_COR:
            _require_alpha(scheme, alpha, 1)
        terms = [_leading(n, alpha, k, vol)]
        if scheme is Scheme.YY_REFINED:
            ell, branch = ell_constant(n, alpha)
            coef = alpha / (48.0 * (n + alpha)) if branch == "alpha/12" else ell / (4.0 * (n + alpha))
            terms.append(_second(coef, n, alpha, k, vol, ine))
        elif scheme in (Scheme.THM12, Scheme.KG_COR):
            terms.append(_second(alpha / (48.0 * (n + alpha)), n, alpha, k, vol, ine))
            c = _thm12_constant(n, alpha)
            coef = alpha * (n + alpha - 2) ** 2 / (c * n * (n + alpha) ** 2)
            terms.append(_third(coef, n, alpha, k, vol, ine))
            verified = n >= 2
    else:  # pragma: no cover
        raise InvalidQueryError(f"unhandled scheme {scheme}")

    return BoundValue(scheme, math.fsum(terms), tuple(terms), verified)


def yolcu_bound(q: BoundQuery, m_tilde: float | None = None) -> BoundValue:
    """Klein-Gordon refinement with an undetermined dimensional constant.

    The constant multiplying ``Vol^(1+1/n)/Ine k^(-1/n)`` depends only on n and is
    not given numerically, so the caller must supply it. Never part of a ladder.
    """
    _require_alpha(Scheme.HY, q.alpha, 1)
    if m_tilde is None:
        raise UnspecifiedConstantError("the second-term constant is unspecified; pass m_tilde")
    n, k, vol, ine = q.n, q.k, q.vol, q.ine
    terms = (n * hy_constant(n) / (n + 1) * vol ** (-1.0 / n) * k ** (1.0 / n),
             m_tilde * vol ** (1 + 1.0 / n) / ine * k ** (-1.0 / n))
    return BoundValue(Scheme.HY, math.fsum(terms), terms, False)


def _rel(a, b):
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def coefficient_identities(q: BoundQuery) -> dict:
    """Cross-scheme identities.

    ``second_term_rel_diff``: second term of the fractional refinement against the
    earlier refined bound evaluated with ell = alpha/12.
    ``alpha2_rel_diff``: the fractional refinement at alpha = 2 against the
    sharpened Laplacian bound, compared total and term by term.
    """
    thm12 = scheme_bound(q, Scheme.THM12)
    yy_second = _second((q.alpha / 12.0) / (4.0 * (q.n + q.alpha)), q.n, q.alpha, q.k, q.vol, q.ine)
    a2 = q.with_alpha(2.0)
    t12 = scheme_bound(a2, Scheme.THM12)
    t11 = scheme_bound(a2, Scheme.THM11)
    per_term = [_rel(x, y) for x, y in zip(t12.terms, t11.terms)]
    return {
        "second_term_rel_diff": _rel(thm12.terms[1], yy_second),
        "alpha2_rel_diff": _rel(t12.total, t11.total),
        "alpha2_term_rel_diff": max(per_term),
    }


@dataclass(frozen=True)
class Ladder:
    query: BoundQuery
    values: tuple
    gaps: dict
    ordered: bool


def bound_ladder(q: BoundQuery) -> Ladder:
    """Evaluate all applicable schemes, sort by total, and check the improvement chains.

    For alpha = 2 the chain is THM11 >= MELAS >= BLY_MEAN, otherwise
    THM12 >= YY_REFINED >= YY. Each gap equals the sum of the added terms.
    """
    vals = {s: scheme_bound(q, s) for s in schemes_for_alpha(q.alpha)}
    if q.alpha == 2:
        chain = (Scheme.THM11, Scheme.MELAS, Scheme.BLY_MEAN)
    else:
        chain = (Scheme.THM12, Scheme.YY_REFINED, Scheme.YY)
    gaps = {}
    ordered = True
    for hi, lo in zip(chain, chain[1:]):
        shared = len(vals[lo].terms)
        if vals[hi].terms[:shared] == vals[lo].terms:
            gap = math.fsum(vals[hi].terms[shared:])
        else:
            gap = vals[hi].total - vals[lo].total
        gaps[f"{hi.value}-{lo.value}"] = gap
        ordered = ordered and gap >= 0 and vals[hi].total >= vals[lo].total
    ordered_values = tuple(sorted(vals.values(), key=lambda v: v.total))
    return Ladder(q, ordered_values, gaps, ordered)
