"""Exact integer and rational linear algebra.

Everything here works on Python ints and :class:`fractions.Fraction`, so
entries never overflow and no floating point is involved.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence


def to_fraction(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused on purpose: a binary float is not the rational the
    caller had in mind.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class IntMatrix:
    """Immutable rectangular matrix of arbitrary-precision integers."""

    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError("matrix is not rectangular")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise TypeError(f"matrix entries must be ints, got {x!r}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> IntMatrix:
        rows = tuple(tuple(row) for row in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(rows, ncols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.rows),
            other.ncols,
        )

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols)), self.nrows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.rows[i][i] for i in range(min(self.shape)))

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, row in enumerate(self.rows) for j, x in enumerate(row) if i != j)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        m = [list(r) for r in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class FinAbGroup:
    """Finitely generated abelian group in invariant-factor form.

    ``torsion`` holds the factors d_1 | d_2 | ... (each at least 2),
    ``free_rank`` the number of Z summands.
    """

    torsion: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"invariant factor {d} must be at least 2")
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise ValueError(f"invariant factors {self.torsion} do not form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        return math.prod(self.torsion) if self.is_finite else None

    def __str__(self) -> str:
        if self.is_trivial:
            return "0"
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts)


@dataclass(frozen=True)
class RatBox:
    """Product of closed intervals with rational endpoints."""

    intervals: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        ivs = tuple((to_fraction(lo), to_fraction(hi)) for lo, hi in self.intervals)
        for lo, hi in ivs:
            if lo > hi:
                raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "intervals", ivs)

    @classmethod
    def from_bounds(cls, *bounds) -> RatBox:
        return cls(tuple(bounds))

    @property
    def dim(self) -> int:
        return len(self.intervals)

    def vertices(self) -> list[tuple[Fraction, ...]]:
        """All 2**dim corners, first coordinate varying slowest, lower end first."""
        return list(itertools.product(*self.intervals))

    def __contains__(self, point) -> bool:
        return len(point) == self.dim and all(
            lo <= to_fraction(x) <= hi for x, (lo, hi) in zip(point, self.intervals))


def _find_pivot(D, t):
    best = None
    for i in range(t, len(D)):
        for j in range(t, len(D[i])):
            x = D[i][j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
    return None if best is None else best[1:]


def smith_normal_form(A: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(D, U, V)`` with ``U @ A @ V == D`` and U, V unimodular.

    The diagonal of D is d_1 | d_2 | ... | d_r followed by zeros, all
    nonnegative.  Pivots are chosen as the smallest nonzero absolute value
    in the remaining block (ties: lowest row, then lowest column) so that U
    and V are reproducible.
    """
    m, n = A.shape
    D = [list(r) for r in A.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        for M in (D, U):
            rs, rd = M[src], M[dst]
            for c in range(len(rd)):
                rd[c] -= q * rs[c]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for M in (D, V):
            for r in M:
                r[dst] -= q * r[src]

    for t in range(min(m, n)):
        while True:
            pivot = _find_pivot(D, t)
            if pivot is None:
                break
            i, j = pivot
            if i != t:
                D[t], D[i] = D[i], D[t]
                U[t], U[i] = U[i], U[t]
            if j != t:
                for M in (D, V):
                    for r in M:
                        r[t], r[j] = r[j], r[t]
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, D[i][t] // p)
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, D[t][j] // p)
                    dirty = dirty or D[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, -1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        if D[t][t] == 0:
            break

    return (IntMatrix.from_rows(D, n), IntMatrix.from_rows(U, m), IntMatrix.from_rows(V, n))


def invariant_factors(A: IntMatrix) -> tuple[int, ...]:
    """Nonzero diagonal entries of the Smith normal form (ones included)."""
    D, _, _ = smith_normal_form(A)
    return tuple(d for d in D.diagonal() if d)


def cokernel_invariants(A: IntMatrix, ambient_rank: int) -> FinAbGroup:
    """The group Z^ambient_rank modulo the row span of ``A``."""
    if A.ncols != ambient_rank:
        raise ValueError(f"relation matrix has {A.ncols} columns, expected {ambient_rank}")
    factors = invariant_factors(A)
    return FinAbGroup(tuple(d for d in factors if d > 1), ambient_rank - len(factors))


def rank(A: IntMatrix) -> int:
    return len(invariant_factors(A))


def gcd_content(v: Iterable[int]) -> int:
    """gcd of the entries; 0 for the zero (or empty) vector."""
    return math.gcd(*(int(x) for x in v))


def rational_inverse(A: IntMatrix) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over Q.  Raises ``ZeroDivisionError`` if singular."""
    n = A.nrows
    if n != A.ncols:
        raise ValueError("inverse of a non-square matrix")
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A.rows)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def maximize_affine(constant, coeffs: Sequence, box: RatBox) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Exact maximum of ``constant + sum(coeffs[i] * x[i])`` over ``box``.

    Returns the value and the first vertex (in :meth:`RatBox.vertices` order)
    attaining it.  An affine function on a box peaks at the corner taking the
    upper end wherever the coefficient is positive; zero coefficients take
    the lower end, which is what makes that corner the first maximizer.
    """
    if len(coeffs) != box.dim:
        raise ValueError(f"{len(coeffs)} coefficients for a {box.dim}-dimensional box")
    value = to_fraction(constant)
    vertex = []
    for c, (lo, hi) in zip(coeffs, box.intervals):
        c = to_fraction(c)
        x = hi if c > 0 else lo
        value += c * x
        vertex.append(x)
    return value, tuple(vertex)


def max_affine_over_box(constant, coeffs: Sequence, box: RatBox) -> Fraction:
    return maximize_affine(constant, coeffs, box)[0]
