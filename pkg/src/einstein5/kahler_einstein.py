"""Exact checks behind the orbifold Kahler-Einstein existence criterion.

The klt condition for the pairs on the blown-up quadric reduces to a short
list of affine inequalities in the unknown coefficients (d1, d2) with which
the fiber and graph curves sit inside a test divisor.  Those coefficients are
only known to lie in the box [0, b1] x [0, b2], so every inequality is
checked at its worst case over the box.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .exact_linalg import RatBox, format_fraction, maximize_affine, to_fraction
from .picard import Positivity, positivity_report

HALF = Fraction(1, 2)

# Surface case: (2 + 1/4) / 3 = 3/4.
SURFACE_EPSILON = Fraction(1, 4)


def nadel_threshold(n: int, epsilon) -> Fraction:
    """(n + epsilon) / (n + 1), the weight given to test divisors."""
    eps = to_fraction(epsilon)
    if n < 1:
        raise ValueError("dimension must be at least 1")
    if eps <= 0:
        raise ValueError("epsilon must be strictly positive")
    return (n + eps) / (n + 1)


@dataclass(frozen=True)
class KltRecord:
    label: str
    worst_case_value: Fraction
    bound: Fraction
    attaining_vertex: tuple[Fraction, Fraction]

    @property
    def passed(self) -> bool:
        return self.worst_case_value < self.bound


@dataclass(frozen=True)
class KltReport:
    points: int
    b1: Fraction
    b2: Fraction
    records: tuple[KltRecord, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def record(self, label: str) -> KltRecord:
        return next(r for r in self.records if r.label == label)

    def failures(self) -> list[str]:
        return [r.label for r in self.records if not r.passed]


def klt_inequalities(points: int, b1, b2) -> list[tuple[str, Fraction, tuple[Fraction, Fraction], Fraction]]:
    """``(label, constant, (coef_d1, coef_d2), bound)`` for each inequality.

    Each reads ``constant + coef_d1 * d1 + coef_d2 * d2 < bound``.
    """
    b1, b2 = to_fraction(b1), to_fraction(b2)
    k = points
    return [
        # coefficients of the two curves stay below 1
        ("coefficient fiber", HALF, (1, 0), Fraction(1)),
        ("coefficient graph", HALF, (0, 1), Fraction(1)),
        # degree of the residual divisor on the fiber curve: 2 (b2 - d2)
        ("restriction fiber", 2 * b2, (0, -2), Fraction(1)),
        # on the graph curve: 2 (b1 - d1) - (k - 4)(b2 - d2)
        ("restriction graph", 2 * b1 - (k - 4) * b2, (-2, k - 4), Fraction(1)),
        # on an exceptional curve: 2 (b1 - d1) - (k - 5)(b2 - d2)
        ("exceptional curve", 2 * b1 - (k - 5) * b2, (-2, k - 5), Fraction(1)),
        # total degree on the fiber curve: (1/2 + d2) * 2 + 2 (b2 - d2)
        ("total degree fiber", 1 + 2 * b2, (0, 0), Fraction(2)),
        # on the graph curve: (1/2 + d1) * 2 + 2 (b1 - d1) - (k - 4)(b2 - d2)
        ("total degree graph", 1 + 2 * b1 - (k - 4) * b2, (0, k - 4), Fraction(2)),
    ]


def klt_box_check(points: int, b1, b2) -> KltReport:
    """Worst-case evaluation of the klt inequalities over (d1, d2) in [0,b1] x [0,b2]."""
    if points < 5:
        raise ValueError(f"the klt inequalities need at least 5 blown-up points, got {points}")
    b1, b2 = to_fraction(b1), to_fraction(b2)
    if b1 < 0 or b2 < 0:
        raise ValueError("b1 and b2 must be nonnegative")
    box = RatBox(((0, b1), (0, b2)))
    records = []
    for label, const, coeffs, bound in klt_inequalities(points, b1, b2):
        value, vertex = maximize_affine(const, coeffs, box)
        records.append(KltRecord(label, value, bound, vertex))
    return KltReport(points, b1, b2, tuple(records))


class KECheck(NamedTuple):
    passed: bool
    report: KltReport
    ample: bool
    positivity: Positivity


def ke_coefficients(m1: int, m2: int) -> tuple[Fraction, Fraction]:
    """Coefficients of the fiber and graph curves in the boundary plus weighted test divisor.

    The boundary contributes 1/2 - 1/m and the test divisor, weighted by the
    surface threshold 3/4, contributes 3/4 * 1/m on top of the 1/2 that is
    split off.
    """
    t = nadel_threshold(2, SURFACE_EPSILON)
    return tuple(HALF - Fraction(1, m) + t * Fraction(1, m) for m in (m1, m2))


def ke_certificate(points: int, m1: int, m2: int, distinct_fibers: bool = True) -> KECheck:
    if m1 < 2 or m2 < 2:
        raise ValueError("cone multiplicities must be at least 2")
    if points < 5:
        raise ValueError(f"need at least 5 blown-up points, got {points}")
    pos = positivity_report(points, Fraction(1, m1), Fraction(1, m2), distinct_fibers)
    b1, b2 = ke_coefficients(m1, m2)
    report = klt_box_check(points, b1, b2)
    ample = pos is Positivity.AMPLE
    return KECheck(ample and report.passed, report, ample, pos)


@dataclass(frozen=True, order=True)
class GaussianRational:
    """x + y i with x, y rational."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", to_fraction(self.re))
        object.__setattr__(self, "im", to_fraction(self.im))

    def __add__(self, o):
        o = _gq(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-_gq(o))

    def __rsub__(self, o):
        return _gq(o) - self

    def __mul__(self, o):
        o = _gq(o)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, o):
        o = _gq(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        p = self * o.conjugate()
        return GaussianRational(p.re / n, p.im / n)

    def __rtruediv__(self, o):
        return _gq(o) / self

    def __bool__(self):
        return bool(self.re or self.im)

    def __str__(self):
        if not self.im:
            return format_fraction(self.re)
        im = "i" if self.im == 1 else "-i" if self.im == -1 else f"{format_fraction(self.im)}i"
        if not self.re:
            return im
        sign = "+" if self.im > 0 else "-"
        return f"{format_fraction(self.re)}{sign}{im.lstrip('-')}"


def _gq(x) -> GaussianRational:
    return x if isinstance(x, GaussianRational) else GaussianRational(to_fraction(x))


I = GaussianRational(0, 1)
INFINITY = "inf"


def affine(num: GaussianRational, den: GaussianRational):
    """Affine coordinate num/den of a projective line point; ``INFINITY`` when den = 0."""
    return INFINITY if not den else num / den


@dataclass(frozen=True)
class ProjPoint:
    """A point ((s:t), (u:v)) of P^1 x P^1 over Q(i)."""

    s: GaussianRational
    t: GaussianRational
    u: GaussianRational
    v: GaussianRational

    @classmethod
    def of(cls, s, t, u, v) -> ProjPoint:
        return cls(_gq(s), _gq(t), _gq(u), _gq(v))

    def first(self):
        return affine(self.s, self.t)

    def second(self):
        return affine(self.u, self.v)

    def involution(self) -> ProjPoint:
        """(s:t, u:v) -> (-t:s, v:u), swapping the two points where the curves meet."""
        return ProjPoint(-self.t, self.s, self.v, self.u)

    def on_fiber_curve(self) -> bool:
        return self.u == self.v

    def on_graph_curve(self) -> bool:
        # u / v = (s / t)^2
        return self.u * self.t * self.t == self.v * self.s * self.s

    def same_as(self, other: ProjPoint) -> bool:
        return (self.s * other.t == self.t * other.s) and (self.u * other.v == self.v * other.u)


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class PointConfig:
    """Involution-symmetric choice of points on the graph curve."""

    points_count: int
    c: tuple[Fraction, ...]
    points: tuple[ProjPoint, ...]

    @property
    def parity(self) -> str:
        return "even" if self.points_count % 2 == 0 else "odd"

    def second_coordinates(self) -> list:
        return [p.second() for p in self.points]

    def first_coordinates(self) -> list:
        return [p.first() for p in self.points]


def symmetric_configuration(points: int, c: Sequence) -> PointConfig:
    """Points (c:1, c^2:1) and (-1:c, 1:c^2) for each c, plus (i:1, -1:1) when odd."""
    if points < 1:
        raise ConfigurationError("need at least one point")
    cs = tuple(to_fraction(x) for x in c)
    if len(cs) != points // 2:
        raise ConfigurationError(f"{points} points need {points // 2} parameters, got {len(cs)}")
    for x in cs:
        if not 0 < x < 1:
            raise ConfigurationError(f"parameter {format_fraction(x)} is not in (0, 1)")
    for x, y in zip(cs, cs[1:]):
        if not x < y:
            raise ConfigurationError("parameters must be strictly increasing")
    pts = []
    for x in cs:
        pts.append(ProjPoint.of(x, 1, x * x, 1))
        pts.append(ProjPoint.of(-1, x, 1, x * x))
    if points % 2:
        pts.append(ProjPoint.of(I, 1, -1, 1))
    for p in pts:
        if not p.on_graph_curve():
            raise ConfigurationError(f"point {p} is not on the graph curve")
        if p.on_fiber_curve():
            raise ConfigurationError(f"point {p} lies on the fiber curve")
    seconds = [p.second() for p in pts]
    if len(set(seconds)) != len(seconds):
        raise ConfigurationError("two points lie on the same fiber of the second projection")
    for p in pts:
        if not any(p.involution().same_as(q) for q in pts):
            raise ConfigurationError("configuration is not stable under the involution")
    return PointConfig(points, cs, tuple(pts))


def default_parameters(points: int) -> tuple[Fraction, ...]:
    m = points // 2
    return tuple(Fraction(i, m + 1) for i in range(1, m + 1))


def _sort_key(z):
    return (1, 0, 0) if z == INFINITY else (0, z.re, z.im)


def _act(z, g: int, conj: bool):
    # the order 4 group x -> x, -x, 1/x, -1/x on the first coordinate
    if z == INFINITY:
        w = INFINITY if g in (0, 1) else GaussianRational(0)
    elif not z and g in (2, 3):
        w = INFINITY
    else:
        w = (z, -z, 1 / z, -1 / z)[g]
    if conj and w != INFINITY:
        w = w.conjugate()
    return w


def point_set_descriptor(config: PointConfig) -> str:
    """Canonical form of the point set under the order 4 symmetry group and conjugation.

    Points are recorded by their first-projection coordinate, which fixes a
    point of the graph curve.  The lexicographically smallest sorted image is
    kept.
    """
    xs = config.first_coordinates()
    images = (sorted((_act(z, g, conj) for z in xs), key=_sort_key)
              for g, conj in itertools.product(range(4), (False, True)))
    best = min(images, key=lambda zs: [_sort_key(z) for z in zs])
    return "{" + ", ".join(str(z) for z in best) + "}"
