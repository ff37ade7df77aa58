import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from einstein5.exact_linalg import FinAbGroup, IntMatrix
from einstein5.picard import (
    DivisorClass,
    IntersectionLattice,
    blowup_lattice,
    canonical_class,
    fiber_class,
    graph_class,
)
from einstein5.seifert import (
    InfiniteH1Error,
    NotUnimodularError,
    SeifertDataError,
    SeifertFlags,
    chern_class,
    classify,
    fiber_multiplicity,
    h1,
    h1_presentation,
    h3_rank,
    integral_class,
    lcm_a,
    make_seifert_data,
    not_divisible,
    w2_vanishes,
)

from oracles import cokernel, rank_mod_p
from strategies import unimodular

F = Fraction
ALL_FLAGS = SeifertFlags(True, True, True)


def family(m1=3, m2=5, points=5, background=None, strict=True):
    L = blowup_lattice(points)
    return make_seifert_data(L, [(fiber_class(L), m1, 1), (graph_class(L), m2, 1)],
                             background, ALL_FLAGS, canonical_class(points), strict=strict)


def test_lcm_a():
    L = blowup_lattice(5)
    e = [L.basis_class(f"e{i}") for i in (1, 2, 3)]
    assert lcm_a(family()) == 15
    assert lcm_a(make_seifert_data(L, [])) == 1
    assert lcm_a(make_seifert_data(L, [(e[0], 3, 1), (e[1], 5, 2), (e[2], 7, 3)])) == 105


def test_chern_class_no_divisors():
    L = blowup_lattice(0)
    sd = make_seifert_data(L, [], background=[1, 0])
    assert chern_class(sd) == L.basis_class("h1")


def test_chern_class_family(family6):
    assert chern_class(family6).coords == (F(2, 5), F(8, 15)) + (F(-1, 5),) * 5


def test_chern_class_is_minus_orbifold_canonical(family6):
    L = family6.lattice
    K = canonical_class(5)
    boundary = F(2, 3) * fiber_class(L) + F(4, 5) * graph_class(L)
    assert chern_class(family6) == -(K + boundary)


def test_integral_class_examples(family6):
    assert integral_class(family6).integer_coords() == (6, 8, -3, -3, -3, -3, -3)
    L = family6.lattice
    assert integral_class(family6) == 5 * fiber_class(L) + 3 * graph_class(L)
    B = L.basis_class("e2")
    assert integral_class(make_seifert_data(L, [], B)) == B
    D = L.basis_class("h1")
    assert integral_class(make_seifert_data(L, [(D, 2, 1)])) == D


def test_h1_presentation_family(family6):
    # generators (k, g1, g2); rows from the orbit relations, then the dual basis of
    # (h1, h2, e1..e5) = (h2, h1, -e1..-e5)
    expected = [
        [1, 3, 0],
        [1, 0, 5],
        [0, 0, -2],   # fiber . h2 = 0, graph . h2 = 2
        [0, -1, -1],  # fiber . h1 = 1, graph . h1 = 1  ->  g1 + g2 = 0
    ] + [[0, 0, 1]] * 5  # graph . (-e_i) = -1  ->  g2 = 0
    assert h1_presentation(family6) == IntMatrix.from_rows(expected, 3)


def test_h1_presentation_no_divisors():
    sd = make_seifert_data(blowup_lattice(0), [])
    assert h1_presentation(sd) == IntMatrix.zeros(2, 1)
    assert h1(sd) == FinAbGroup((), 1)


def test_h1_presentation_single_trivial_orbit():
    L = blowup_lattice(0)
    sd = make_seifert_data(L, [(L.basis_class("h1"), 1, 1)])
    P = h1_presentation(sd)
    assert P.rows[0] == (1, 1)
    assert P.shape == (3, 2)


def test_h1_family_trivial(family6):
    assert h1(family6).is_trivial


def test_h1_no_divisors_background():
    # k (B . eta) = 0 over both eta forces k = 0
    L = blowup_lattice(0)
    sd = make_seifert_data(L, [], background=L.basis_class("h2"))
    assert h1(sd).is_trivial
    assert h3_rank(sd) == 1


def test_h1_equal_multiplicities_matches_oracle():
    with pytest.raises(SeifertDataError):
        family(3, 3)
    sd = family(3, 3, strict=False)
    P = h1_presentation(sd)
    group = h1(sd)
    assert (group.torsion, group.free_rank) == cokernel([list(r) for r in P.rows], 3)


def test_non_unimodular_rejected():
    L = IntersectionLattice.from_gram([[2, 0], [0, 1]])
    sd = make_seifert_data(L, [(L.basis_class("x1"), 3, 1)])
    with pytest.raises(NotUnimodularError):
        h1_presentation(sd)
    report = classify(sd)
    assert report.h1 is None and report.diffeo_type is None


def test_not_divisible():
    assert not_divisible(family())
    L = blowup_lattice(0)
    assert not not_divisible(make_seifert_data(L, [], 2 * L.basis_class("h1")))
    assert not not_divisible(make_seifert_data(L, []))


def test_w2_family(family6):
    K = canonical_class(5)
    assert tuple(x % 2 for x in integral_class(family6).integer_coords()) == (0, 0, 1, 1, 1, 1, 1)
    assert tuple(x % 2 for x in K.integer_coords()) == (0, 0, 1, 1, 1, 1, 1)
    assert w2_vanishes(family6, K)


def test_w2_even_multiplicity():
    sd = family(2, 5, strict=False)
    assert not w2_vanishes(sd, canonical_class(5))


def test_w2_background_shift():
    L = blowup_lattice(5)
    sd = family(background=L.basis_class("h1"))
    # a * c1 moves by 15 h1, which is odd
    assert not w2_vanishes(sd, canonical_class(5))


def test_w2_rejects_rational_K(family6):
    with pytest.raises(ValueError):
        w2_vanishes(family6, F(1, 2) * canonical_class(5))


def test_h3_rank(family6):
    assert h3_rank(family6) == 6
    with pytest.raises(InfiniteH1Error):
        h3_rank(make_seifert_data(blowup_lattice(0), []))


def test_classify_family(family6):
    r = classify(family6)
    assert r.h1.is_trivial and r.simply_connected and r.w2_zero and r.basis_ok
    assert not r.divisible
    assert r.diffeo_type == "6#(S^2 x S^3)"


def test_classify_rank_one_is_sphere():
    L = IntersectionLattice.from_gram([[1]])
    x = L.basis_class("x1")
    sd = make_seifert_data(L, [(x, 1, 1)], None, ALL_FLAGS, x)
    r = classify(sd)
    assert r.h1.is_trivial
    assert r.diffeo_type == "S^5"


def test_classify_even_multiplicity_has_no_type():
    r = classify(family(2, 5, strict=False))
    assert not r.w2_zero
    assert r.diffeo_type is None


def test_classify_without_flags():
    L = blowup_lattice(5)
    sd = make_seifert_data(L, [(fiber_class(L), 3, 1), (graph_class(L), 5, 1)], None,
                           SeifertFlags(), canonical_class(5))
    r = classify(sd)
    assert r.h1.is_trivial and not r.simply_connected and r.diffeo_type is None
    assert r.notes


def test_fiber_multiplicity(family6):
    assert fiber_multiplicity(family6, []) == 1
    assert fiber_multiplicity(family6, [0]) == 3
    assert fiber_multiplicity(family6, [0, 1]) == 15
    with pytest.raises(IndexError):
        fiber_multiplicity(family6, [2])


def test_invariants_validated():
    L = blowup_lattice(5)
    with pytest.raises(SeifertDataError, match="gcd"):
        make_seifert_data(L, [(fiber_class(L), 4, 2)])
    with pytest.raises(SeifertDataError, match="0 < b <= a"):
        make_seifert_data(L, [(fiber_class(L), 3, 4)])
    with pytest.raises(SeifertDataError, match="not integral"):
        make_seifert_data(L, [(F(1, 2) * fiber_class(L), 3, 1)])
    # disjoint divisors may share multiplicities
    make_seifert_data(L, [(L.basis_class("e1"), 3, 1), (L.basis_class("e2"), 3, 2)])


# --- random bundles ----------------------------------------------------------

orbit = st.integers(1, 6).flatmap(
    lambda a: st.sampled_from([b for b in range(1, a + 1) if math.gcd(a, b) == 1]).map(lambda b: (a, b)))
vec5 = st.lists(st.integers(-2, 2), min_size=5, max_size=5)
bundles = st.tuples(st.lists(st.tuples(vec5, orbit), max_size=3), vec5)


def random_bundle(data, lattice=None):
    L = lattice or blowup_lattice(3)
    divs, B = data
    return make_seifert_data(L, [(c, a, b) for c, (a, b) in divs], B, strict=False)


@settings(max_examples=150, deadline=None)
@given(bundles)
def test_h1_matches_oracle(data):
    sd = random_bundle(data)
    P = h1_presentation(sd)
    g = h1(sd)
    assert (g.torsion, g.free_rank) == cokernel([list(r) for r in P.rows], sd.n + 1)


@settings(max_examples=100, deadline=None)
@given(bundles, st.randoms(use_true_random=False))
def test_h1_independent_of_divisor_order(data, rnd):
    divs, B = data
    shuffled = divs[:]
    rnd.shuffle(shuffled)
    assert h1(random_bundle((divs, B))) == h1(random_bundle((shuffled, B)))


@settings(max_examples=80, deadline=None)
@given(bundles, unimodular(5))
def test_h1_independent_of_lattice_basis(data, P):
    from einstein5.exact_linalg import rational_inverse
    L = blowup_lattice(3)
    Pm = IntMatrix.from_rows(P, 5)
    Pinv = IntMatrix.from_rows([[int(x) for x in r] for r in rational_inverse(Pm)], 5)
    L2 = IntersectionLattice.from_gram(Pinv.T @ L.gram @ Pinv)
    divs, B = data

    def move(v):
        return [sum(P[i][j] * v[j] for j in range(5)) for i in range(5)]

    moved = ([(move(c), ab) for c, ab in divs], move(B))
    assert h1(random_bundle(data, L)) == h1(random_bundle(moved, L2))


@settings(max_examples=100, deadline=None)
@given(bundles)
def test_integral_class_is_lcm_times_chern(data):
    sd = random_bundle(data)
    ac1 = integral_class(sd)
    assert ac1.is_integral
    assert ac1 == lcm_a(sd) * chern_class(sd)


PRIMES = [p for p in range(2, 98) if all(p % q for q in range(2, p))]


@settings(max_examples=150, deadline=None)
@given(bundles)
def test_trivial_h1_is_trivial_mod_every_prime(data):
    sd = random_bundle(data)
    r = classify(sd)
    if r.h1.is_trivial:
        rows = [list(x) for x in h1_presentation(sd).rows]
        for p in PRIMES:
            assert rank_mod_p(rows, p) == sd.n + 1


@pytest.mark.parametrize("k", range(6, 13))
def test_family_trivial_mod_every_prime(k):
    sd = family(3, 5, points=k - 1)
    rows = [list(x) for x in h1_presentation(sd).rows]
    assert all(rank_mod_p(rows, p) == 3 for p in PRIMES)
