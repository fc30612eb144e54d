import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kcone import (
    UnknownTypeError,
    build_root_datum,
    dominant_conjugate,
    enumerate_dominant,
    enumerate_levi_dominant,
    simple_reflection,
    subset_root_sum,
    weight_norm_sq,
)
from kcone.rootdata import sqrt_upper

from helpers import brute_dominant, weyl_group, weyl_orbit

# dim g per label, for the positive-root count identity #roots = (dim-rank)/2
DIMENSIONS = {
    "A1": 3, "A2": 8, "A3": 15, "A4": 24,
    "B2": 10, "B3": 21, "B4": 36,
    "C2": 10, "C3": 21, "C4": 36,
    "D3": 15, "D4": 28,
    "G2": 14, "F4": 52, "E6": 78, "E7": 133, "E8": 248,
}


def test_a1_positive_roots():
    rd = build_root_datum("A1")
    assert rd.rank == 1
    assert rd.positive_roots == ((2,),)


def test_a2_positive_roots():
    rd = build_root_datum("A2")
    assert set(rd.positive_roots) == {(2, -1), (-1, 2), (1, 1)}


@pytest.mark.parametrize("label,dim", sorted(DIMENSIONS.items()))
def test_positive_root_counts(label, dim):
    rd = build_root_datum(label)
    assert len(rd.positive_roots) == (dim - rd.rank) // 2
    assert rd.dim_g == dim


@pytest.mark.parametrize("label", ["A2", "B2", "B3", "C3", "D4", "G2", "F4"])
def test_roots_are_nonnegative_simple_combinations(label):
    rd = build_root_datum(label)
    for root, coeffs in zip(rd.positive_roots, rd.positive_root_coeffs):
        assert all(c >= 0 for c in coeffs) and any(c > 0 for c in coeffs)
        rebuilt = tuple(
            sum(coeffs[j] * rd.cartan[i][j] for j in range(rd.rank))
            for i in range(rd.rank)
        )
        assert rebuilt == root


@pytest.mark.parametrize("label", sorted(DIMENSIONS))
def test_cartan_invariants(label):
    rd = build_root_datum(label)
    for i in range(rd.rank):
        assert rd.cartan[i][i] == 2
        for j in range(rd.rank):
            if i != j:
                assert rd.cartan[i][j] <= 0
            assert (
                rd.symmetrizer[i] * rd.cartan[i][j]
                == rd.symmetrizer[j] * rd.cartan[j][i]
            )


def test_simple_roots_are_cartan_columns():
    rd = build_root_datum("B2")
    for j in range(rd.rank):
        assert rd.simple_root(j) == tuple(rd.cartan[i][j] for i in range(rd.rank))


@pytest.mark.parametrize(
    "label,msg_part",
    [
        ("Z9", "cannot parse"),
        ("A0", "trivial"),
        ("B1", "rank >= 2"),
        ("C1", "rank >= 2"),
        ("D2", "rank >= 3"),
        ("E9", "ranks 6, 7, 8"),
        ("F5", "rank 4"),
        ("G3", "rank 2"),
        ("A99", "configured maximum"),
        ("", "cannot parse"),
    ],
)
def test_unknown_labels(label, msg_part):
    with pytest.raises(UnknownTypeError, match=msg_part):
        build_root_datum(label)


def test_product_root_datum():
    rd = build_root_datum("A1xA1")
    assert rd.rank == 2
    assert set(rd.positive_roots) == {(2, 0), (0, 2)}
    assert rd.cartan == ((2, 0), (0, 2))


def test_dominant_conjugate_examples(a1, a2):
    assert dominant_conjugate(a1, (-3,)) == (3,)
    assert dominant_conjugate(a2, (-1, 2)) == (1, 1)
    # identity on the dominant chamber
    for lam in [(0, 0), (2, 1), (5, 0)]:
        assert dominant_conjugate(a2, lam) == lam


@pytest.mark.parametrize("label", ["A1", "A2", "B2"])
def test_dominant_conjugate_brute_force(label):
    rd = build_root_datum(label)
    rng = range(-5, 6)
    for w in itertools.product(*[rng] * rd.rank):
        dom = dominant_conjugate(rd, w)
        assert all(x >= 0 for x in dom)
        assert dom in weyl_orbit(rd, w)
        assert dom == brute_dominant(rd, w)


@given(st.tuples(st.integers(-30, 30), st.integers(-30, 30)))
@settings(max_examples=60, deadline=None)
def test_dominant_conjugate_properties_b2(w):
    rd = build_root_datum("B2")
    dom = dominant_conjugate(rd, w)
    assert all(x >= 0 for x in dom)
    assert weight_norm_sq(rd, dom) == weight_norm_sq(rd, w)
    assert dominant_conjugate(rd, dom) == dom


def test_weight_norm_examples(a1, a2):
    assert weight_norm_sq(a1, (0,)) == 0
    assert weight_norm_sq(a1, (2,)) == 2
    assert weight_norm_sq(a2, (1, 1)) == 2


def test_weight_norm_b2_root_lengths(b2):
    # alpha1 is long (squared length 4), alpha2 short (2)
    assert weight_norm_sq(b2, b2.simple_root(0)) == 4
    assert weight_norm_sq(b2, b2.simple_root(1)) == 2


def test_weight_norm_g2_root_lengths():
    rd = build_root_datum("G2")
    lengths = sorted(weight_norm_sq(rd, a) for a in rd.positive_roots)
    assert lengths == [2, 2, 2, 6, 6, 6]


@pytest.mark.parametrize("label", ["A1", "A2", "B2"])
def test_norm_weyl_invariance(label):
    rd = build_root_datum(label)
    for w in [(1,) * rd.rank, (2, 0)[: rd.rank], (1, 3)[: rd.rank]]:
        ns = weight_norm_sq(rd, w)
        for v in weyl_orbit(rd, w):
            assert weight_norm_sq(rd, v) == ns


def test_weyl_group_orders():
    for label, order in [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12)]:
        assert len(weyl_group(build_root_datum(label))) == order


def test_subset_root_sum(a2):
    simples = [a2.simple_root(0), a2.simple_root(1)]
    assert subset_root_sum(simples, []) == (0, 0)
    assert subset_root_sum(simples, [0, 1]) == (1, 1)
    assert subset_root_sum(a2.positive_roots, range(3)) == (2, 2)  # sum of all = 2*rho
    # bitmask form
    assert subset_root_sum(a2.positive_roots, 0b111) == (2, 2)
    assert subset_root_sum(a2.positive_roots, 0) == (0, 0)


def test_subset_root_sum_errors(a2):
    with pytest.raises(IndexError):
        subset_root_sum(a2.positive_roots, [3])
    with pytest.raises(IndexError):
        subset_root_sum(a2.positive_roots, 0b1000)
    with pytest.raises(ValueError):
        subset_root_sum([], [])


def test_enumerate_dominant_a1(a1):
    assert enumerate_dominant(a1, 16) == [(n,) for n in range(6)]
    assert enumerate_dominant(a1, 0) == [(0,)]
    assert enumerate_dominant(a1, Fraction(1, 2)) == [(0,), (1,)]


def test_enumerate_sorted_and_complete(b2):
    level = 20
    got = enumerate_dominant(b2, level)
    brute = [
        w
        for w in itertools.product(range(0, 12), repeat=2)
        if weight_norm_sq(b2, w) <= level
    ]
    assert set(got) == set(brute)
    keys = [(weight_norm_sq(b2, w), w) for w in got]
    assert keys == sorted(keys)


def test_enumerate_levi_dominant(b2):
    # nonnegative only on node 0; node 1 ranges over both signs
    got = enumerate_levi_dominant(b2, [0], 2)
    brute = {
        w
        for w in itertools.product(range(0, 3), range(-3, 4))
        if weight_norm_sq(b2, w) <= 2
    }
    assert set(got) == brute
    assert (1, -1) in brute and (-1, 1) not in set(got)


def test_sqrt_upper_bounds():
    for q in [Fraction(2), Fraction(18), Fraction(1, 2), Fraction(0)]:
        ub = sqrt_upper(q)
        assert ub * ub >= q
        assert (ub - Fraction(1, 10**5)) ** 2 < q or q == 0


def test_simple_reflection_is_involution(a2):
    for w in [(1, 2), (-3, 1), (0, 0)]:
        for i in range(2):
            assert simple_reflection(a2, i, simple_reflection(a2, i, w)) == w
