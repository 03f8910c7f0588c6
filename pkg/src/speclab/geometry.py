"""Model domains and the geometric functionals consumed by the eigenvalue bounds.

Three domain shapes are supported: axis-aligned boxes, balls, and planar unions
of disjoint axis-aligned rectangles. Every functional (volume, centroid, moment
of inertia) is evaluated in closed form, so the bound checks downstream carry no
quadrature error.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence, Union

import numpy as np

from .errors import InvalidDimensionError, InvalidDomainError

__all__ = [
    "Box",
    "Ball",
    "RectUnion",
    "Domain",
    "DomainGeometry",
    "SigmaBound",
    "unit_ball_volume",
    "volume",
    "centroid",
    "moment_of_inertia",
    "second_moment_about",
    "ine_lower_bound",
    "symmetric_rearrangement",
    "grad_bound_sigma",
    "translate",
    "scale",
    "bounding_box",
    "diameter",
    "analyze",
]


def _as_vector(values, name):
    arr = tuple(float(v) for v in values)
    if not all(math.isfinite(v) for v in arr):
        raise InvalidDomainError(f"{name} must be finite, got {arr}")
    return arr


@dataclass(frozen=True)
class Box:
    """Axis-aligned box ``offset + [0, sides[0]] x ... x [0, sides[n-1]]``."""

    sides: tuple
    offset: tuple = None

    def __post_init__(self):
        sides = _as_vector(self.sides, "sides")
        if not sides:
            raise InvalidDimensionError("a box needs at least one side")
        if any(s <= 0 for s in sides):
            raise InvalidDomainError(f"box sides must be positive, got {sides}")
        offset = (0.0,) * len(sides) if self.offset is None else _as_vector(self.offset, "offset")
        if len(offset) != len(sides):
            raise InvalidDomainError("offset dimension does not match the box")
        object.__setattr__(self, "sides", sides)
        object.__setattr__(self, "offset", offset)

    @property
    def n(self) -> int:
        return len(self.sides)


@dataclass(frozen=True)
class Ball:
    """Open ball of the given radius centred at ``offset``."""

    n: int
    radius: float
    offset: tuple = None

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InvalidDimensionError(f"ball dimension must be a positive integer, got {self.n}")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise InvalidDomainError(f"ball radius must be positive, got {self.radius}")
        offset = (0.0,) * int(self.n) if self.offset is None else _as_vector(self.offset, "offset")
        if len(offset) != self.n:
            raise InvalidDomainError("offset dimension does not match the ball")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "offset", offset)


@dataclass(frozen=True)
class RectUnion:
    """Union of pairwise disjoint axis-aligned rectangles ``(x0, y0, x1, y1)``.

    Rectangles may share edges; any overlap of positive area is rejected.
    """

    rects: tuple
    offset: tuple = field(default=(0.0, 0.0))

    def __post_init__(self):
        rects = tuple(_as_vector(r, "rectangle") for r in self.rects)
        if not rects:
            raise InvalidDomainError("a rectangle union needs at least one rectangle")
        for r in rects:
            if len(r) != 4:
                raise InvalidDomainError(f"rectangles are (x0, y0, x1, y1), got {r}")
            if not (r[2] > r[0] and r[3] > r[1]):
                raise InvalidDomainError(f"degenerate rectangle {r}")
        for i, a in enumerate(rects):
            for b in rects[i + 1:]:
                if min(a[2], b[2]) > max(a[0], b[0]) and min(a[3], b[3]) > max(a[1], b[1]):
                    raise InvalidDomainError(f"rectangles {a} and {b} overlap")
        offset = _as_vector(self.offset, "offset")
        if len(offset) != 2:
            raise InvalidDomainError("rectangle unions are planar")
        object.__setattr__(self, "rects", rects)
        object.__setattr__(self, "offset", offset)

    @property
    def n(self) -> int:
        return 2

    def placed_rects(self) -> np.ndarray:
        r = np.array(self.rects, dtype=float)
        r[:, [0, 2]] += self.offset[0]
        r[:, [1, 3]] += self.offset[1]
        return r


Domain = Union[Box, Ball, RectUnion]


class SigmaBound(NamedTuple):
    sigma: float
    lower_estimate: float


@dataclass(frozen=True)
class DomainGeometry:
    volume: float
    centroid: tuple
    moment_of_inertia: float
    unit_ball_volume: float
    rearranged_radius: float
    sigma: float


def unit_ball_volume(n: int) -> float:
    """Volume of the unit ball in R^n, via log-gamma so large n stays finite."""
    if int(n) != n or n < 1:
        raise InvalidDimensionError(f"dimension must be a positive integer, got {n}")
    return math.exp(0.5 * n * math.log(math.pi) - math.lgamma(0.5 * n + 1.0))


def _check(d):
    if not isinstance(d, (Box, Ball, RectUnion)):
        raise InvalidDomainError(f"not a domain: {d!r}")


def volume(d: Domain) -> float:
    _check(d)
    if isinstance(d, Box):
        return math.prod(d.sides)
    if isinstance(d, Ball):
        return unit_ball_volume(d.n) * d.radius ** d.n
    r = np.asarray(d.rects)
    return float(np.sum((r[:, 2] - r[:, 0]) * (r[:, 3] - r[:, 1])))


def centroid(d: Domain) -> np.ndarray:
    _check(d)
    if isinstance(d, Box):
        return np.asarray(d.offset) + 0.5 * np.asarray(d.sides)
    if isinstance(d, Ball):
        return np.asarray(d.offset, dtype=float)
    r = d.placed_rects()
    areas = (r[:, 2] - r[:, 0]) * (r[:, 3] - r[:, 1])
    centers = np.column_stack([(r[:, 0] + r[:, 2]) / 2, (r[:, 1] + r[:, 3]) / 2])
    return areas @ centers / areas.sum()


def moment_of_inertia(d: Domain) -> float:
    """Ine(D) = min_a int_D |x - a|^2 dx, evaluated about the centroid.

    Boxes and balls use their closed forms; unions add each rectangle's own
    central second moment to its parallel-axis shift.
    """
    _check(d)
    if isinstance(d, Box):
        return volume(d) * sum(a * a for a in d.sides) / 12.0
    if isinstance(d, Ball):
        n = d.n
        return n * unit_ball_volume(n) * d.radius ** (n + 2) / (n + 2)
    r = d.placed_rects()
    w = r[:, 2] - r[:, 0]
    h = r[:, 3] - r[:, 1]
    areas = w * h
    centers = np.column_stack([(r[:, 0] + r[:, 2]) / 2, (r[:, 1] + r[:, 3]) / 2])
    c = areas @ centers / areas.sum()
    own = areas * (w * w + h * h) / 12.0
    shift = areas * np.sum((centers - c) ** 2, axis=1)
    return float(np.sum(own + shift))


def second_moment_about(d: Domain, a: Sequence[float]) -> float:
    """int_D |x - a|^2 dx for an arbitrary point ``a``."""
    a = np.asarray(a, dtype=float)
    return moment_of_inertia(d) + volume(d) * float(np.sum((centroid(d) - a) ** 2))


def ine_lower_bound(vol: float, n: int) -> float:
    """Moment of inertia of the ball with volume ``vol``; a lower bound for Ine(D)."""
    if not vol > 0:
        raise InvalidDomainError(f"volume must be positive, got {vol}")
    w = unit_ball_volume(n)
    return n / (n + 2) * vol * (vol / w) ** (2.0 / n)


def symmetric_rearrangement(d: Domain) -> Ball:
    n = d.n
    r = (volume(d) / unit_ball_volume(n)) ** (1.0 / n)
    return Ball(n, r, tuple(centroid(d)))


def grad_bound_sigma(d: Domain) -> SigmaBound:
    """Gradient bound sigma = 2 (2 pi)^-n sqrt(Ine Vol) and its volume-only estimate.

    The estimate (2 pi)^-n w_n^(-1/n) Vol^((n+1)/n) never exceeds sigma when n >= 2.
    """
    n = d.n
    vol = volume(d)
    sigma = 2.0 * (2.0 * math.pi) ** (-n) * math.sqrt(moment_of_inertia(d) * vol)
    lower = (2.0 * math.pi) ** (-n) * unit_ball_volume(n) ** (-1.0 / n) * vol ** ((n + 1.0) / n)
    if n >= 2:
        assert sigma >= lower * (1 - 1e-14), (sigma, lower)
    return SigmaBound(sigma, lower)


def translate(d: Domain, shift: Sequence[float]) -> Domain:
    shift = np.asarray(shift, dtype=float)
    off = tuple(np.asarray(d.offset) + shift)
    if isinstance(d, Box):
        return Box(d.sides, off)
    if isinstance(d, Ball):
        return Ball(d.n, d.radius, off)
    return RectUnion(d.rects, off)


def scale(d: Domain, c: float) -> Domain:
    """Dilate ``d`` about the origin by the factor ``c``."""
    if not c > 0:
        raise InvalidDomainError("scale factor must be positive")
    off = tuple(c * np.asarray(d.offset))
    if isinstance(d, Box):
        return Box(tuple(c * s for s in d.sides), off)
    if isinstance(d, Ball):
        return Ball(d.n, c * d.radius, off)
    return RectUnion(tuple(tuple(c * v for v in r) for r in d.rects), off)


def bounding_box(d: Domain) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(d, Box):
        lo = np.asarray(d.offset, dtype=float)
        return lo, lo + np.asarray(d.sides)
    if isinstance(d, Ball):
        c = np.asarray(d.offset, dtype=float)
        return c - d.radius, c + d.radius
    r = d.placed_rects()
    return r[:, :2].min(axis=0), r[:, 2:].max(axis=0)


def diameter(d: Domain) -> float:
    if isinstance(d, Ball):
        return 2.0 * d.radius
    if isinstance(d, Box):
        return math.sqrt(sum(s * s for s in d.sides))
    corners = d.placed_rects()
    pts = np.concatenate([corners[:, [0, 1]], corners[:, [2, 3]],
                          corners[:, [0, 3]], corners[:, [2, 1]]])
    diff = pts[:, None, :] - pts[None, :, :]
    return float(np.sqrt((diff ** 2).sum(-1)).max())


def analyze(d: Domain) -> DomainGeometry:
    vol = volume(d)
    w = unit_ball_volume(d.n)
    return DomainGeometry(
        volume=vol,
        centroid=tuple(float(v) for v in centroid(d)),
        moment_of_inertia=moment_of_inertia(d),
        unit_ball_volume=w,
        rearranged_radius=(vol / w) ** (1.0 / d.n),
        sigma=grad_bound_sigma(d).sigma,
    )
