from itertools import combinations

import pytest
from hypothesis import given, strategies as st

import bruteforce as bf
from klazar.bijections import (
    Phi_explicit,
    Phi_recursive,
    phi,
    phi_inverse,
    sigma,
    sigma_inverse,
    tau,
    tau_inverse,
    tau_variant,
    uplines_from_matchcode,
    violators_from_treecode,
)
from klazar.codes import enumerate_match_codes, enumerate_tree_codes
from klazar.matching_core import Matching, enumerate_matchings, matching_from_text, uplines
from klazar.tree_core import (
    MarkedTree,
    enumerate_increasing_trees,
    klazar_violators,
    reverse_bad_vertices,
    tables_of,
    tree_from_text,
    violator_partners,
)


@st.composite
def words(draw, max_n=7):
    n = draw(st.integers(min_value=0, max_value=max_n))
    return tuple(draw(st.integers(1, 2 * k - 1)) for k in range(1, n + 1))


def tree_of(w):
    from klazar.codes import code_to_tree, trapezoidal_to_code

    return code_to_tree(trapezoidal_to_code(w))


def marked_universe(n):
    for t in enumerate_increasing_trees(n):
        if klazar_violators(t):
            continue
        _, children = tables_of(t)
        interior = [v for v in children if v != 0 and children[v]]
        for r in range(len(interior) + 1):
            for marks in combinations(interior, r):
                yield MarkedTree(t, frozenset(marks))


# ---------------------------------------------------------------------------
# phi: marked violator-free trees onto plain trees


def test_phi_fixed_points_are_unmarked_trees():
    for n in range(5):
        for t in enumerate_increasing_trees(n):
            if not klazar_violators(t):
                assert phi(MarkedTree(t, frozenset())) == t


def test_phi_by_hand():
    mt = MarkedTree(tree_from_text("0(1(3),2)"), frozenset({1}))
    assert phi(mt) == tree_from_text("0(3,1,2)")
    assert phi_inverse(tree_from_text("0(3,1,2)")) == mt


def test_phi_is_a_bijection_with_the_right_marks():
    for n in range(5):
        images = set()
        for mt in marked_universe(n):
            img = phi(mt)
            assert set(klazar_violators(img)) == set(mt.marked)
            assert phi_inverse(img) == mt
            images.add(img)
        assert images == set(enumerate_increasing_trees(n))


def test_phi_preserves_reverse_bad_counts():
    for n in range(5):
        for mt in marked_universe(n):
            img = phi(mt)
            assert len(reverse_bad_vertices(img)) == len(reverse_bad_vertices(mt.tree))


def test_phi_rejects_invalid_marks():
    t = tree_from_text("0(1(2))")
    with pytest.raises(ValueError):
        phi(MarkedTree(t, frozenset({2})))
    with pytest.raises(ValueError):
        phi(MarkedTree(tree_from_text("0(2,1)"), frozenset()))


# ---------------------------------------------------------------------------
# sigma: trees onto build codes


def test_sigma_by_hand():
    assert sigma(tree_from_text("0(2,1)")) == (("R", 0), ("L", 1))
    assert sigma_inverse((("R", 0), ("L", 1))) == tree_from_text("0(2,1)")
    assert sigma(tree_from_text("0")) == ()


def test_sigma_roundtrip_exhaustive():
    for n in range(5):
        codes_seen = set()
        for t in enumerate_increasing_trees(n):
            c = sigma(t)
            assert sigma_inverse(c) == t
            codes_seen.add(c)
        assert codes_seen == set(enumerate_tree_codes(n))


@given(words())
def test_sigma_roundtrip_random(w):
    t = tree_of(w)
    assert sigma_inverse(sigma(t)) == t


def test_violator_reading_of_codes():
    for n in range(5):
        for c in enumerate_tree_codes(n):
            t = sigma_inverse(c)
            assert violators_from_treecode(c) == set(violator_partners(t).items())


# ---------------------------------------------------------------------------
# tau: build codes onto matchings


def test_tau_by_hand():
    m = matching_from_text("1 3/2 10/4 7/5 9/6 8")
    assert tau_inverse(m) == (("B", 1), ("B", 1), ("T", 1), ("T", 2), ("T", 1))
    assert tau((("B", 1), ("B", 1), ("T", 1), ("T", 2), ("T", 1))) == m


def test_tau_roundtrip_exhaustive():
    for n in range(5):
        images = set()
        for c in enumerate_match_codes(n):
            m = tau(c)
            assert tau_inverse(m) == c
            images.add(m)
        assert images == set(enumerate_matchings(n))


@given(words())
def test_tau_roundtrip_random(w):
    from klazar.codes import trapezoidal_to_code, treecode_to_matchcode

    c = treecode_to_matchcode(trapezoidal_to_code(w))
    assert tau_inverse(tau(c)) == c


def test_upline_reading_of_codes():
    for n in range(5):
        for c in enumerate_match_codes(n):
            assert uplines_from_matchcode(c) == set(uplines(tau(c)))


# ---------------------------------------------------------------------------
# the composite map from trees to matchings


def test_Phi_small_cases():
    assert Phi_recursive(tree_from_text("0")) == Matching((0,))
    assert Phi_recursive(tree_from_text("0(1)")) == matching_from_text("1 2")
    assert Phi_recursive(tree_from_text("0(2,1)")) == matching_from_text("1 4/2 3")


def test_Phi_sends_partners_to_uplines():
    t = tree_from_text("0(4,2(8,7,6(9)),5,1(3))")
    m = Phi_recursive(t)
    assert set(uplines(m)) == {(1, 5), (2, 6), (6, 9), (7, 8)}
    assert Phi_explicit(t) == m


def test_Phi_routes_agree_exhaustively():
    for n in range(5):
        images = set()
        for t in enumerate_increasing_trees(n):
            m = Phi_recursive(t)
            assert Phi_explicit(t) == m
            assert set(uplines(m)) == set(violator_partners(t).items())
            images.add(m)
        assert images == set(enumerate_matchings(n))


@given(words())
def test_Phi_routes_agree_random(w):
    t = tree_of(w)
    assert Phi_recursive(t) == Phi_explicit(t)


# ---------------------------------------------------------------------------
# the variant second-row map


def test_tau_variant_by_hand():
    got = tau_variant((("B", 1), ("T", 1), ("B", 2), ("T", 1)))
    assert set(map(frozenset, got.pairs())) == {
        frozenset(p) for p in [(1, 4), (3, 6), (5, 7), (2, 8)]
    }
    assert tau_variant((("B", 1),)) == matching_from_text("1 2")
    assert tau_variant((("B", 1), ("B", 1))) == matching_from_text("1 3/2 4")


def test_tau_variant_is_a_bijection():
    for n in range(5):
        images = set()
        for c in enumerate_match_codes(n):
            images.add(tau_variant(c))
        assert images == set(enumerate_matchings(n))


def test_tau_variant_transfers_parity_statistics():
    # T letters with odd multiplicity count the even-to-odd pairs,
    # B letters with odd multiplicity the odd-to-even pairs
    from collections import Counter

    for n in range(5):
        for c in enumerate_match_codes(n):
            m = tau_variant(c)
            t_odd = sum(1 for i, k in Counter(i for Y, i in c if Y == "T").items() if k % 2)
            b_odd = sum(1 for i, k in Counter(i for Y, i in c if Y == "B").items() if k % 2)
            e2o = sum(1 for a, b_ in m.pairs() if a % 2 == 0 and b_ % 2 == 1)
            o2e = sum(1 for a, b_ in m.pairs() if a % 2 == 1 and b_ % 2 == 0)
            assert (t_odd, b_odd) == (e2o, o2e)
