import pytest
from hypothesis import given, strategies as st

import bruteforce as bf
from klazar.matching_core import (
    EMPTY_MATCHING,
    DotRef,
    Matching,
    PowerMatching,
    StirlingMatching,
    check_power,
    check_stirling,
    class2_expand,
    class2_reduce,
    class3_expand,
    class3_reduce,
    classify_edges,
    compose_no_upline,
    decompose_no_upline,
    enlarge,
    enumerate_matchings,
    enumerate_power_matchings,
    enumerate_stirling_matchings,
    matching_from_text,
    matching_to_text,
    prune_matching,
    recurrence_class,
    shift_S,
    stirling_to_partition,
    uplines,
    weak_downlines,
)


@st.composite
def match_codes(draw, max_n=7):
    """A uniform-ish random matching, grown one dot pair at a time."""
    n = draw(st.integers(min_value=0, max_value=max_n))
    code = []
    for k in range(1, n + 1):
        if k == 1 or draw(st.booleans()):
            code.append(("B", draw(st.integers(1, k))))
        else:
            code.append(("T", draw(st.integers(1, k - 1))))
    return tuple(code)


def matching_from_code(code):
    m = EMPTY_MATCHING
    for row, i in code:
        m = enlarge(m, DotRef("bot" if row == "B" else "top", i))
    return m


# ---------------------------------------------------------------------------
# representation


def test_dotref_numbering():
    assert DotRef("top", 3).number() == 5
    assert DotRef("bot", 3).number() == 6
    for x in range(1, 11):
        assert DotRef.of_number(x).number() == x


def test_text_roundtrip():
    for s in ["1 2", "1 4/2 3", "1 3/2 10/4 7/5 9/6 8"]:
        m = matching_from_text(s)
        assert matching_to_text(m) == s
    assert matching_from_text("") == EMPTY_MATCHING


def test_json_roundtrip():
    m = matching_from_text("1 3/2 10/4 7/5 9/6 8")
    assert Matching.from_json(m.to_json()) == m
    assert m.to_json()["pairs"] == [[1, 3], [2, 10], [4, 7], [5, 9], [6, 8]]


def test_from_pairs_rejects_bad_input():
    with pytest.raises(ValueError):
        Matching.from_pairs([(1, 2), (2, 3)], n=2)  # 2 repeated, 4 missing
    with pytest.raises(ValueError):
        Matching.from_pairs([(1, 5)], n=2)  # out of range
    with pytest.raises(ValueError):
        Matching.from_pairs([(1, 2)], n=2)  # wrong size


# ---------------------------------------------------------------------------
# enumeration and edge classes


def test_enumeration_matches_bruteforce():
    for n in range(5):
        lib = {frozenset(m.pairs()) for m in enumerate_matchings(n)}
        assert lib == set(bf.bf_matchings(n))


def test_edge_classification_against_bruteforce():
    for n in range(5):
        for m in enumerate_matchings(n):
            pairs = m.pairs()
            cls = classify_edges(m)
            assert set(uplines(m)) == bf.bf_uplines(pairs)
            assert set(weak_downlines(m)) == bf.bf_weak_downlines(pairs)
            assert set(cls.verticals) == {t for t, b in bf.bf_weak_downlines(pairs) if t == b}
            total = (len(cls.uplines) + len(cls.verticals) + len(cls.downlines)
                     + len(cls.top_arcs) + len(cls.bottom_arcs))
            assert total == n, "every pair lands in exactly one class"


def test_edge_classes_by_hand():
    m = matching_from_text("1 3/2 10/4 7/5 9/6 8")
    cls = classify_edges(m)
    assert set(cls.uplines) == {(2, 4)}
    assert set(cls.verticals) == set()
    assert set(cls.downlines) == set()
    assert set(cls.top_arcs) == {(1, 2), (3, 5)}
    assert set(cls.bottom_arcs) == {(1, 5), (3, 4)}


# ---------------------------------------------------------------------------
# enlarge / prune


def test_enlarge_prune_inverse():
    for n in range(1, 5):
        for m in enumerate_matchings(n):
            smaller, d = prune_matching(m)
            assert smaller.n == n - 1
            assert enlarge(smaller, d) == m


def test_enlarge_all_dots_reaches_everything():
    built = set()
    for m in enumerate_matchings(2):
        for i in range(1, 4):
            for row in ("top", "bot"):
                if row == "top" and i == 3:
                    continue
                built.add(enlarge(m, DotRef(row, i)))
    assert built == set(enumerate_matchings(3))


def test_enlarge_new_pair_case():
    m = enlarge(EMPTY_MATCHING, DotRef("bot", 1))
    assert m.pairs() == ((1, 2),)
    # the fresh bottom dot names the new-pair case
    assert enlarge(m, DotRef("bot", 2)).pairs() == ((1, 2), (3, 4))
    # joining an occupied dot reroutes its old partner to the new bottom
    assert enlarge(m, DotRef("bot", 1)).pairs() == ((1, 4), (2, 3))
    assert enlarge(m, DotRef("top", 1)).pairs() == ((1, 3), (2, 4))


def test_enlarge_rejects_out_of_range():
    with pytest.raises(ValueError):
        enlarge(EMPTY_MATCHING, DotRef("top", 1))
    with pytest.raises(ValueError):
        enlarge(EMPTY_MATCHING, DotRef("bot", 2))


@given(match_codes())
def test_enlarge_then_prune_roundtrip_random(code):
    m = matching_from_code(code)
    for row, i in reversed(code):
        m, d = prune_matching(m)
        assert d == DotRef("bot" if row == "B" else "top", i)
    assert m == EMPTY_MATCHING


def test_shift_follows_upline_chains():
    for n in range(5):
        for m in enumerate_matchings(n):
            for i in range(1, n + 1):
                assert shift_S(m, i) == bf.bf_shift(m.pairs(), i)


# ---------------------------------------------------------------------------
# Stirling and power matchings


def test_stirling_counts():
    for n in range(7):
        for k in range(n + 1):
            got = sum(1 for _ in enumerate_stirling_matchings(n, k))
            assert got == bf.bf_stirling2(n, k)


def test_stirling_partition_bijection_small():
    for n in range(6):
        for k in range(n + 1):
            parts = [stirling_to_partition(sm) for sm in enumerate_stirling_matchings(n, k)]
            assert len(set(parts)) == len(parts)
            want = {p for p in bf.bf_set_partitions(n) if len(p) == k}
            assert set(parts) == want


def test_stirling_partition_worked_example():
    sm = StirlingMatching(7, frozenset({(1, 5), (3, 4), (4, 6)}))
    assert check_stirling(sm) == 4
    part = stirling_to_partition(sm)
    assert sorted(sorted(b) for b in part) == [[1, 5], [2, 6], [3, 4], [7]]


def test_stirling_validation():
    with pytest.raises(ValueError):
        check_stirling(StirlingMatching(3, frozenset({(1, 1), (1, 2)})))  # top reused
    with pytest.raises(ValueError):
        check_stirling(StirlingMatching(3, frozenset({(3, 1)})))  # goes left


def test_power_counts():
    for k in range(1, 5):
        for n in range(5):
            got = sum(1 for _ in enumerate_power_matchings(k, n))
            assert got == k**n


def test_power_validation():
    with pytest.raises(ValueError):
        check_power(PowerMatching(3, 1, frozenset({(4, 1)})))  # past the slack
    with pytest.raises(ValueError):
        check_power(PowerMatching(4, 2, frozenset({(1, 1)})))  # bottom 2 unmatched


# ---------------------------------------------------------------------------
# no-upline structure


def no_upline(n):
    return (m for m in enumerate_matchings(n) if not uplines(m))


def test_decompose_compose_identity():
    for n in range(6):
        for m in no_upline(n):
            even_pm, odd_pm, sm, pm = decompose_no_upline(m)
            assert even_pm.n == odd_pm.n
            assert compose_no_upline(even_pm, odd_pm, sm, pm) == m


def test_decompose_rejects_uplines():
    with pytest.raises(ValueError):
        decompose_no_upline(matching_from_text("1 4/2 3"))


def test_decompose_worked_example():
    m = matching_from_text("1 2/3 15/4 8/5 14/6 12/7 10/9 13/11 16")
    assert not uplines(m)
    even_pm, odd_pm, sm, pm = decompose_no_upline(m)
    assert even_pm.n == 2  # two even-even pairs: {4,8} and {6,12}
    assert sm.cols == 6  # largest even-even entry is 12
    assert check_power(pm) == 5


def test_recurrence_classes_partition():
    for n in range(1, 6):
        ms = list(no_upline(n))
        classes = [recurrence_class(m) for m in ms]
        assert set(classes) <= {1, 2, 3}
        for m, c in zip(ms, classes):
            if c == 2:
                small, i = class2_reduce(m)
                assert class2_expand(small, i) == m
            elif c == 3:
                small, X = class3_reduce(m)
                assert class3_expand(small, X) == m