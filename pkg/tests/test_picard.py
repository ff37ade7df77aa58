from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from einstein5.exact_linalg import IntMatrix, rational_inverse
from einstein5.picard import (
    DivisorClass,
    IntersectionLattice,
    LatticeMismatch,
    Positivity,
    blowup_lattice,
    canonical_class,
    fiber_class,
    graph_class,
    is_part_of_basis,
    pairing,
    positivity_report,
)

from oracles import sympy_signature
from strategies import unimodular

F = Fraction


def test_blowup_zero_points_is_hyperbolic():
    L = blowup_lattice(0)
    assert L.gram.tolist() == [[0, 1], [1, 0]]
    assert L.labels == ("h1", "h2")


@pytest.mark.parametrize("k", range(0, 10))
def test_blowup_lattice_shape(k):
    L = blowup_lattice(k)
    assert L.rank == k + 2
    assert abs(L.det) == 1
    assert L.signature() == (1, k + 1)
    assert L.signature() == sympy_signature(L.gram.tolist())


def test_curve_intersections_five_points(lattice5):
    L = lattice5
    C1, C2 = fiber_class(L), graph_class(L)
    assert pairing(L, C1, C1) == 0
    assert pairing(L, C1, C2) == 2
    assert pairing(L, C2, C2) == -1


@pytest.mark.parametrize("k", range(0, 12))
def test_graph_self_intersection(k):
    L = blowup_lattice(k)
    assert pairing(L, graph_class(L), graph_class(L)) == 4 - k


@pytest.mark.parametrize("k", range(0, 12))
def test_canonical_is_minus_both_curves(k):
    L = blowup_lattice(k)
    K = canonical_class(k)
    assert (K + fiber_class(L) + graph_class(L)).is_zero
    assert pairing(L, K, K) == 8 - k


def test_canonical_square_examples():
    assert pairing(blowup_lattice(0), canonical_class(0), canonical_class(0)) == 8
    assert pairing(blowup_lattice(5), canonical_class(5), canonical_class(5)) == 3


def test_pairing_lattice_mismatch():
    with pytest.raises(LatticeMismatch):
        pairing(blowup_lattice(2), fiber_class(blowup_lattice(3)), fiber_class(blowup_lattice(3)))


coords = st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=6), min_size=7, max_size=7)


@settings(max_examples=100, deadline=None)
@given(coords, coords, coords, st.fractions(min_value=-3, max_value=3, max_denominator=5))
def test_pairing_symmetric_bilinear(x, y, z, q):
    L = blowup_lattice(5)
    X, Y, Z = (DivisorClass(L, v) for v in (x, y, z))
    assert pairing(L, X, Y) == pairing(L, Y, X)
    assert pairing(L, X + q * Y, Z) == pairing(L, X, Z) + q * pairing(L, Y, Z)


def test_is_part_of_basis_examples(lattice5):
    L = lattice5
    assert is_part_of_basis(L, [L.basis_class("h1")])
    assert is_part_of_basis(L, [fiber_class(L), graph_class(L)])
    assert not is_part_of_basis(L, [2 * L.basis_class("h1")])
    assert not is_part_of_basis(L, [fiber_class(L), fiber_class(L)])
    with pytest.raises(ValueError):
        is_part_of_basis(L, [F(1, 2) * L.basis_class("h1")])


@settings(max_examples=60, deadline=None)
@given(unimodular(7), st.permutations([0, 1, 2]))
def test_is_part_of_basis_invariant_under_change_of_basis(P, order):
    # new coordinates x' = P x, Gram G' = P^-T G P^-1; basis membership is a lattice property
    L = blowup_lattice(5)
    classes = [fiber_class(L), graph_class(L), 2 * L.basis_class("e1")]
    Pm = IntMatrix.from_rows(P, 7)
    Pinv = rational_inverse(Pm)
    Pinv_int = IntMatrix.from_rows([[int(x) for x in row] for row in Pinv], 7)
    G2 = Pinv_int.T @ L.gram @ Pinv_int
    L2 = IntersectionLattice.from_gram(G2)

    def move(c):
        v = c.integer_coords()
        return DivisorClass(L2, [sum(P[i][j] * v[j] for j in range(7)) for i in range(7)])

    for subset in ([0], [0, 1], [0, 1, 2], [2]):
        chosen = [classes[i] for i in subset]
        expected = is_part_of_basis(L, chosen)
        moved = [move(classes[i]) for i in order if i in subset]
        assert is_part_of_basis(L2, moved) == expected
    # the pairing is preserved too
    assert pairing(L2, move(classes[0]), move(classes[1])) == 2


def test_positivity_examples():
    assert positivity_report(5, F(1, 3), F(1, 5), True) is Positivity.AMPLE
    assert positivity_report(5, F(1, 3), F(1, 5), False) is Positivity.NEF_BIG_ONLY
    assert positivity_report(5, F(1, 3), 0, True) is Positivity.NOT_NEF_BIG
    assert positivity_report(7, 1, 1, True) is Positivity.NOT_NEF_BIG
    assert positivity_report(6, 1, 1, True) is Positivity.NOT_NEF_BIG  # 2 - 2 = 0, not > 0
    assert positivity_report(5, -1, 1, True) is Positivity.NOT_NEF_BIG


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 12),
       st.fractions(min_value=-2, max_value=2, max_denominator=12),
       st.fractions(min_value=-2, max_value=2, max_denominator=12),
       st.fractions(min_value=F(1, 7), max_value=20, max_denominator=7),
       st.booleans())
def test_positivity_scale_invariant_and_matches_formula(k, a1, a2, t, distinct):
    p = positivity_report(k, a1, a2, distinct)
    assert positivity_report(k, t * a1, t * a2, distinct) is p
    nef_big = a1 > 0 and a2 > 0 and 2 * a1 + (4 - k) * a2 > 0
    if not nef_big:
        assert p is Positivity.NOT_NEF_BIG
    else:
        assert p is (Positivity.AMPLE if distinct else Positivity.NEF_BIG_ONLY)


def test_dual_basis_is_integral_and_dual(lattice5):
    L = lattice5
    for j, y in enumerate(L.dual_basis()):
        assert y.is_integral
        for i, label in enumerate(L.labels):
            assert pairing(L, L.basis_class(label), y) == (i == j)


def test_lattice_validation():
    with pytest.raises(ValueError):
        IntersectionLattice.from_gram([[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        DivisorClass(blowup_lattice(1), [1, 2])
