"""Picard lattice of P^1 x P^1 blown up at points, and divisor classes on it.

Basis convention for :func:`blowup_lattice`: ``h1`` is the class of a fiber
of the first projection, ``h2`` of a fiber of the second projection, and
``e1 .. ek`` are the exceptional curves.  Two curves are tracked throughout:

* the fiber curve, the strict transform of a fiber of the second
  projection that avoids the blown-up points, with class ``h2``;
* the graph curve, the strict transform of the graph of a degree 2 map
  through all the blown-up points, with class ``2 h1 + h2 - sum(e_i)``.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_linalg import IntMatrix, invariant_factors, rational_inverse, to_fraction


class LatticeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class IntersectionLattice:
    """Integral symmetric bilinear form on Z^rank with named basis vectors."""

    labels: tuple[str, ...]
    gram: IntMatrix

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        n = len(self.labels)
        if self.gram.shape != (n, n):
            raise ValueError(f"Gram matrix shape {self.gram.shape} does not match {n} labels")
        if len(set(self.labels)) != n:
            raise ValueError("basis labels must be distinct")
        if self.gram != self.gram.T:
            raise ValueError("Gram matrix is not symmetric")

    @classmethod
    def from_gram(cls, gram, labels: Sequence[str] | None = None) -> IntersectionLattice:
        if not isinstance(gram, IntMatrix):
            gram = IntMatrix.from_rows(gram, len(gram))
        if labels is None:
            labels = tuple(f"x{i + 1}" for i in range(gram.nrows))
        return cls(tuple(labels), gram)

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def det(self) -> int:
        return self.gram.det()

    @property
    def is_unimodular(self) -> bool:
        return abs(self.det) == 1

    def signature(self) -> tuple[int, int]:
        """(positive, negative) inertia, by symmetric elimination over Q."""
        M = [[Fraction(x) for x in row] for row in self.gram.rows]
        n, pos, neg = self.rank, 0, 0
        for k in range(n):
            if M[k][k] == 0:
                j = next((j for j in range(k + 1, n) if M[j][j] != 0), None)
                if j is not None:
                    _swap_sym(M, k, j)
                else:
                    j = next((j for j in range(k + 1, n) if M[k][j] != 0), None)
                    if j is None:
                        continue
                    # x_k += x_j makes the diagonal 2 M[k][j] (nonzero)
                    for r in range(n):
                        M[r][k] += M[r][j]
                    for c in range(n):
                        M[k][c] += M[j][c]
            p = M[k][k]
            pos, neg = pos + (p > 0), neg + (p < 0)
            for i in range(k + 1, n):
                f = M[i][k] / p
                if f:
                    for c in range(n):
                        M[i][c] -= f * M[k][c]
                    for r in range(n):
                        M[r][i] -= f * M[r][k]
        return pos, neg

    def basis_class(self, label: str) -> DivisorClass:
        coords = [0] * self.rank
        coords[self.labels.index(label)] = 1
        return DivisorClass(self, coords)

    def zero(self) -> DivisorClass:
        return DivisorClass(self, [0] * self.rank)

    def dual_basis(self) -> list[DivisorClass]:
        """Classes y_j with ``pairing(basis_i, y_j) == delta_ij``.

        Integral exactly when the lattice is unimodular.
        """
        inv = rational_inverse(self.gram)
        return [DivisorClass(self, [inv[i][j] for i in range(self.rank)]) for j in range(self.rank)]


def _swap_sym(M, a, b):
    M[a], M[b] = M[b], M[a]
    for row in M:
        row[a], row[b] = row[b], row[a]


@dataclass(frozen=True)
class DivisorClass:
    """A Q-linear combination of the basis of ``lattice``."""

    lattice: IntersectionLattice
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(to_fraction(c) for c in self.coords)
        if len(coords) != self.lattice.rank:
            raise ValueError(f"{len(coords)} coordinates for a rank {self.lattice.rank} lattice")
        object.__setattr__(self, "coords", coords)

    def _check(self, other: DivisorClass):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        if other.lattice != self.lattice:
            raise LatticeMismatch("divisor classes live in different lattices")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.lattice, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.lattice, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> DivisorClass:
        return DivisorClass(self.lattice, [-a for a in self.coords])

    def __mul__(self, scalar) -> DivisorClass:
        q = to_fraction(scalar)
        return DivisorClass(self.lattice, [q * a for a in self.coords])

    __rmul__ = __mul__

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def integer_coords(self) -> tuple[int, ...]:
        if not self.is_integral:
            raise ValueError(f"class {self} is not integral")
        return tuple(c.numerator for c in self.coords)

    def __str__(self) -> str:
        terms = []
        for c, name in zip(self.coords, self.lattice.labels):
            if c:
                terms.append(f"{c}*{name}" if c != 1 else name)
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def pairing(lattice: IntersectionLattice, x: DivisorClass, y: DivisorClass) -> Fraction:
    """Intersection number ``x^T G y``."""
    if x.lattice != lattice or y.lattice != lattice:
        raise LatticeMismatch("pairing of classes from a different lattice")
    G = lattice.gram.rows
    total = Fraction(0)
    for i, xi in enumerate(x.coords):
        if xi:
            row = G[i]
            total += xi * sum(row[j] * yj for j, yj in enumerate(y.coords) if yj and row[j])
    return total


@functools.lru_cache(maxsize=64)
def blowup_lattice(points: int) -> IntersectionLattice:
    """H^2 of P^1 x P^1 blown up at ``points`` points."""
    if points < 0:
        raise ValueError("number of blown-up points must be nonnegative")
    n = points + 2
    rows = [[0] * n for _ in range(n)]
    rows[0][1] = rows[1][0] = 1
    for i in range(2, n):
        rows[i][i] = -1
    labels = ("h1", "h2") + tuple(f"e{i}" for i in range(1, points + 1))
    return IntersectionLattice(labels, IntMatrix.from_rows(rows, n))


def _points_of(lattice: IntersectionLattice) -> int:
    if lattice.labels[:2] != ("h1", "h2") or lattice != blowup_lattice(lattice.rank - 2):
        raise LatticeMismatch("not a blown-up P^1 x P^1 lattice")
    return lattice.rank - 2


def fiber_class(lattice: IntersectionLattice) -> DivisorClass:
    _points_of(lattice)
    return lattice.basis_class("h2")


def graph_class(lattice: IntersectionLattice) -> DivisorClass:
    k = _points_of(lattice)
    return DivisorClass(lattice, [2, 1] + [-1] * k)


def canonical_class(points: int) -> DivisorClass:
    """-2 h1 - 2 h2 + sum(e_i), i.e. minus (fiber curve + graph curve)."""
    return DivisorClass(blowup_lattice(points), [-2, -2] + [1] * points)


def is_part_of_basis(lattice: IntersectionLattice, classes: Sequence[DivisorClass]) -> bool:
    """True iff the integral ``classes`` extend to a Z-basis of the lattice."""
    if not classes:
        return True
    rows = []
    for c in classes:
        if c.lattice != lattice:
            raise LatticeMismatch("class from a different lattice")
        if not c.is_integral:
            raise ValueError(f"class {c} is not integral")
        rows.append(c.integer_coords())
    factors = invariant_factors(IntMatrix.from_rows(rows, lattice.rank))
    return len(factors) == len(classes) and all(d == 1 for d in factors)


class Positivity(str, enum.Enum):
    AMPLE = "ample"
    NEF_BIG_ONLY = "nef_big_only"
    NOT_NEF_BIG = "not_nef_big"


@functools.lru_cache(maxsize=64)
def positivity_curves(points: int) -> tuple[tuple[str, DivisorClass], ...]:
    """The curves whose intersection numbers decide positivity in the family.

    Fiber and graph curve, every exceptional curve, and the transform of the
    second-projection fiber through a single blown-up point.
    """
    L = blowup_lattice(points)
    curves = {"fiber": fiber_class(L), "graph": graph_class(L)}
    for i in range(1, points + 1):
        e = L.basis_class(f"e{i}")
        curves[f"e{i}"] = e
        curves[f"h2-e{i}"] = L.basis_class("h2") - e
    return tuple(curves.items())


@functools.lru_cache(maxsize=64)
def _curve_pairings(points: int) -> tuple[tuple[str, int, int], ...]:
    L = blowup_lattice(points)
    f, g = fiber_class(L), graph_class(L)
    return tuple((name, int(pairing(L, f, c)), int(pairing(L, g, c)))
                 for name, c in positivity_curves(points))


def positivity_report(points: int, a1, a2, distinct_fibers: bool) -> Positivity:
    """Classify ``a1 * fiber + a2 * graph`` on the blown-up surface.

    Nef and big exactly when a1, a2 > 0 and the class meets the graph curve
    positively, which is ``2 a1 + (4 - points) a2 > 0``.  It is ample when in
    addition no two blown-up points share a second-projection fiber; otherwise
    the transforms of such fibers (class h2 - e_i - e_j) get contracted.
    """
    a1, a2 = to_fraction(a1), to_fraction(a2)
    if a1 <= 0 or a2 <= 0:
        return Positivity.NOT_NEF_BIG
    if any(a1 * f + a2 * g <= 0 for _, f, g in _curve_pairings(points)):
        return Positivity.NOT_NEF_BIG
    return Positivity.AMPLE if distinct_fibers else Positivity.NEF_BIG_ONLY
