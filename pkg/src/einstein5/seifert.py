"""Seifert circle bundles over surfaces and the topology of their total space.

A bundle is described by marked divisor classes D_i with orbit invariants
(a_i, b_i) and a background class B.  From this data we compute the
rational Chern class, the integral class a * c_1 (a = lcm of the a_i), a
presentation of H_1 of the total space, and the hypotheses under which the
total space is a connected sum of copies of S^2 x S^3.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exact_linalg import FinAbGroup, IntMatrix, cokernel_invariants, gcd_content
from .picard import DivisorClass, IntersectionLattice, LatticeMismatch, is_part_of_basis, pairing


class SeifertDataError(ValueError):
    """Orbit invariants or classes violate the structural requirements."""


class NotUnimodularError(ValueError):
    pass


class InfiniteH1Error(ValueError):
    pass


@dataclass(frozen=True)
class OrbitDivisor:
    dclass: DivisorClass
    a: int
    b: int


@dataclass(frozen=True)
class SeifertFlags:
    """Hypotheses that cannot be read off from lattice data and are asserted."""

    pi1_complement_abelian: bool = False
    divisors_rational_curves: bool = False
    divisors_smooth_transversal: bool = False


@dataclass(frozen=True)
class SeifertData:
    lattice: IntersectionLattice
    divisors: tuple[OrbitDivisor, ...]
    background: DivisorClass
    flags: SeifertFlags = SeifertFlags()
    canonical: DivisorClass | None = None
    strict: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "divisors", tuple(self.divisors))
        problems = self.violations()
        structural = [p for p in problems if p.startswith("structure:")]
        if structural or (self.strict and problems):
            raise SeifertDataError("; ".join(structural or problems))

    def violations(self) -> list[str]:
        """Every violated requirement on the data, as human-readable clauses."""
        out = []
        classes = [d.dclass for d in self.divisors] + [self.background]
        if self.canonical is not None:
            classes.append(self.canonical)
        for c in classes:
            if c.lattice != self.lattice:
                out.append("structure: class lives in a different lattice")
            elif not c.is_integral:
                out.append(f"structure: class {c} is not integral")
        for i, d in enumerate(self.divisors, 1):
            if not isinstance(d.a, int) or not isinstance(d.b, int) or d.a < 1:
                out.append(f"structure: orbit invariants of D{i} must be positive integers")
                continue
            if not 0 < d.b <= d.a:
                out.append(f"0 < b <= a for D{i} (got a={d.a}, b={d.b})")
            if math.gcd(d.a, d.b) != 1:
                out.append(f"gcd(a, b) = 1 for D{i} (got gcd({d.a}, {d.b}) = {math.gcd(d.a, d.b)})")
        if any(p.startswith("structure:") for p in out):
            return out
        for i, di in enumerate(self.divisors):
            for j in range(i + 1, len(self.divisors)):
                dj = self.divisors[j]
                if pairing(self.lattice, di.dclass, dj.dclass) > 0 and math.gcd(di.a, dj.a) != 1:
                    out.append(f"gcd(a_i, a_j) = 1 for meeting divisors D{i + 1}, D{j + 1} "
                               f"(got gcd({di.a}, {dj.a}) = {math.gcd(di.a, dj.a)})")
        return out

    @property
    def n(self) -> int:
        return len(self.divisors)


def lcm_a(sd: SeifertData) -> int:
    return math.lcm(*(d.a for d in sd.divisors)) if sd.divisors else 1


def chern_class(sd: SeifertData) -> DivisorClass:
    """B + sum (b_i / a_i) [D_i], exactly."""
    c = sd.background
    for d in sd.divisors:
        c = c + Fraction(d.b, d.a) * d.dclass
    return c


def integral_class(sd: SeifertData) -> DivisorClass:
    """a B + sum b_i (a / a_i) [D_i], the Chern class of the associated C*-bundle."""
    c = lcm_a(sd) * chern_class(sd)
    assert c.is_integral
    return c


def h1_presentation(sd: SeifertData) -> IntMatrix:
    """Relation matrix of H_1 of the total space, over generators (k, g_1, ..., g_n).

    One row ``b_i k + a_i g_i`` per divisor, then one row per element eta_j
    of the basis of H_2 dual to the lattice basis:
    ``(B . eta_j) k - sum (D_i . eta_j) g_i``.  Evaluating a class on eta_j
    is done as the intersection pairing with the j-th dual basis class,
    which needs the form to be unimodular.
    """
    L = sd.lattice
    if not L.is_unimodular:
        raise NotUnimodularError(f"lattice has determinant {L.det}; cap products are unavailable")
    n = sd.n
    rows = []
    for i, d in enumerate(sd.divisors):
        row = [0] * (n + 1)
        row[0], row[i + 1] = d.b, d.a
        rows.append(row)
    for eta in L.dual_basis():
        row = [pairing(L, sd.background, eta)] + [-pairing(L, d.dclass, eta) for d in sd.divisors]
        rows.append([int(x) for x in row])
    return IntMatrix.from_rows(rows, n + 1)


def h1(sd: SeifertData) -> FinAbGroup:
    return cokernel_invariants(h1_presentation(sd), sd.n + 1)


def not_divisible(sd: SeifertData) -> bool:
    """a * c_1 is primitive.  The zero class counts as divisible."""
    return gcd_content(integral_class(sd).integer_coords()) == 1


def basis_ok(sd: SeifertData) -> bool:
    return is_part_of_basis(sd.lattice, [d.dclass for d in sd.divisors])


def w2_vanishes(sd: SeifertData, K: DivisorClass) -> bool:
    """All a_i odd and K = a * c_1 mod 2, with K standing in for w_2 of the base."""
    if K.lattice != sd.lattice:
        raise LatticeMismatch("canonical class from a different lattice")
    if not K.is_integral:
        raise ValueError("canonical class must be integral")
    if any(d.a % 2 == 0 for d in sd.divisors):
        return False
    diff = K - integral_class(sd)
    return all(x % 2 == 0 for x in diff.integer_coords())


def h3_rank(sd: SeifertData) -> int:
    """Rank of H^3 of the total space; requires H_1 to be finite."""
    if not h1(sd).is_finite:
        raise InfiniteH1Error("H_1 of the total space is infinite")
    return sd.lattice.rank - 1


def fiber_multiplicity(sd: SeifertData, incident: Iterable[int]) -> int:
    """Multiplicity of the fiber over a point lying on exactly the given divisors."""
    idx = set(incident)
    for i in idx:
        if not 0 <= i < sd.n:
            raise IndexError(f"divisor index {i} out of range")
    return math.prod(sd.divisors[i].a for i in idx)


def connected_sum_name(m: int) -> str:
    return "S^5" if m == 0 else f"{m}#(S^2 x S^3)"


@dataclass(frozen=True)
class ClassificationReport:
    h1: FinAbGroup | None
    a_lcm: int
    c1: DivisorClass
    integral_class: DivisorClass
    divisible: bool
    basis_ok: bool
    all_a_odd: bool
    w2_zero: bool
    h3_rank: int | None
    simply_connected: bool
    diffeo_type: str | None
    notes: tuple[str, ...] = ()

    @property
    def gcd(self) -> int:
        return gcd_content(self.integral_class.integer_coords())


def classify(sd: SeifertData) -> ClassificationReport:
    """Run every topological check; failures are recorded, never raised."""
    notes = []
    a = lcm_a(sd)
    c1 = chern_class(sd)
    ac1 = integral_class(sd)
    divisible = not not_divisible(sd)
    b_ok = basis_ok(sd)
    all_odd = all(d.a % 2 for d in sd.divisors)

    try:
        group = h1(sd)
    except NotUnimodularError as exc:
        group = None
        notes.append(str(exc))

    if sd.canonical is None:
        w2 = False
        notes.append("no canonical class supplied; w2 cannot be checked")
    else:
        w2 = w2_vanishes(sd, sd.canonical)

    rank3 = sd.lattice.rank - 1 if group is not None and group.is_finite else None
    if group is not None and not group.is_finite:
        notes.append("H_1 is infinite, H^3 rank formula does not apply")

    simply_connected = bool(group is not None and group.is_trivial and b_ok and not divisible
                            and sd.flags.pi1_complement_abelian)
    if not sd.flags.pi1_complement_abelian:
        notes.append("fundamental group of the divisor complement not asserted abelian")
    if not sd.flags.divisors_rational_curves:
        notes.append("divisors not asserted rational; H^3 may have torsion")

    diffeo = None
    if simply_connected and w2 and sd.flags.divisors_rational_curves:
        diffeo = connected_sum_name(sd.lattice.rank - 1)

    return ClassificationReport(
        h1=group, a_lcm=a, c1=c1, integral_class=ac1, divisible=divisible, basis_ok=b_ok,
        all_a_odd=all_odd, w2_zero=w2, h3_rank=rank3, simply_connected=simply_connected,
        diffeo_type=diffeo, notes=tuple(notes),
    )


def make_seifert_data(lattice: IntersectionLattice, divisors: Sequence[tuple], background=None,
                      flags: SeifertFlags = SeifertFlags(), canonical=None,
                      strict: bool = True) -> SeifertData:
    """Convenience constructor taking ``(class, a, b)`` triples and coordinate lists."""
    def as_class(c):
        if c is None or isinstance(c, DivisorClass):
            return c
        return DivisorClass(lattice, c)

    divs = tuple(OrbitDivisor(as_class(c), a, b) for c, a, b in divisors)
    bg = as_class(background) if background is not None else lattice.zero()
    return SeifertData(lattice, divs, bg, flags, as_class(canonical), strict)
