"""Independent brute-force oracles for the test suite.

Nothing here imports the package under test.  Trees are plain dicts
{"label": int, "children": [...]}; matchings are collections of
(a, b) pairs with a < b.  Everything is written straight from the
definitions, favouring obviousness over speed.
"""

import math
from collections import Counter
from itertools import combinations

INF = math.inf


def bf_odd_double_factorial(m):
    # product of the odd numbers down from m; empty product for m in {-1, 1}
    out = 1
    while m >= 3:
        out *= m
        m -= 2
    return out


def bf_binomial(n, k):
    if k < 0 or k > n or n < 0:
        return 0
    return math.comb(n, k)


def bf_set_partitions(n):
    """All partitions of {1..n} as sorted tuples of sorted tuples,
    via restricted growth strings."""
    if n == 0:
        yield ()
        return

    def grow(rgs, mx):
        if len(rgs) == n:
            blocks = {}
            for i, b in enumerate(rgs, start=1):
                blocks.setdefault(b, []).append(i)
            yield tuple(tuple(blocks[b]) for b in sorted(blocks))
            return
        for b in range(mx + 2):
            yield from grow(rgs + [b], max(mx, b))

    yield from grow([0], 0)


def bf_stirling2(n, k):
    return sum(1 for p in bf_set_partitions(n) if len(p) == k)


# ---------------------------------------------------------------------------
# matchings


def bf_matchings(n):
    """All perfect matchings of [2n] as frozensets of (a, b) pairs,
    by always pairing off the smallest unmatched element."""

    def rec(rest):
        if not rest:
            yield frozenset()
            return
        a = rest[0]
        for i in range(1, len(rest)):
            b = rest[i]
            for more in rec(rest[1:i] + rest[i + 1:]):
                yield more | {(a, b)}

    yield from rec(list(range(1, 2 * n + 1)))


def bf_uplines(pairs):
    """(bottom pos, top pos) for each even number matched to a larger odd."""
    out = set()
    for a, b in pairs:
        e, o = (a, b) if a % 2 == 0 else (b, a)
        if e % 2 == 0 and o % 2 == 1 and o > e:
            out.add((e // 2, (o + 1) // 2))
    return out


def bf_weak_downlines(pairs):
    """(top pos, bottom pos) for each odd matched to a larger even;
    the verticals {2i-1, 2i} are included."""
    out = set()
    for a, b in pairs:
        o, e = (a, b) if a % 2 == 1 else (b, a)
        if o % 2 == 1 and e % 2 == 0 and e > o:
            out.add(((o + 1) // 2, e // 2))
    return out


def bf_shift(pairs, i):
    """Follow uplines from bottom dot i while one starts there."""
    starts = dict(bf_uplines(pairs))
    while i in starts:
        i = starts[i]
    return i


# ---------------------------------------------------------------------------
# trees (JSON form)


def bf_trees(n):
    """All increasing ordered trees with labels 0..n, grown by inserting
    each label in turn as a new child at every possible position."""
    base = {"label": 0, "children": []}
    pool = [base]
    for k in range(1, n + 1):
        nxt = []
        for t in pool:
            nxt.extend(_insert_everywhere(t, k))
        pool = nxt
    return pool


def _insert_everywhere(t, k):
    out = []
    for slot in range(len(t["children"]) + 1):
        kids = list(t["children"])
        kids.insert(slot, {"label": k, "children": []})
        out.append({"label": t["label"], "children": kids})
    for i, c in enumerate(t["children"]):
        for sub in _insert_everywhere(c, k):
            kids = list(t["children"])
            kids[i] = sub
            out.append({"label": t["label"], "children": kids})
    return out


def _tables(t, parent=None, table=None):
    if table is None:
        parent, table = {}, {}
    table[t["label"]] = [c["label"] for c in t["children"]]
    for c in t["children"]:
        parent[c["label"]] = t["label"]
        _tables(c, parent, table)
    return parent, table


def bf_violators(t):
    """v is a violator when the smallest left sibling among the maximal
    run of left siblings exceeding v is smaller than all of v's children."""
    parent, children = _tables(t)
    out = set()
    for v in parent:
        sibs = children[parent[v]]
        pos = sibs.index(v)
        run = []
        while pos > 0 and sibs[pos - 1] > v:
            pos -= 1
            run.append(sibs[pos])
        a = min(run) if run else INF
        first_child = min(children[v]) if children[v] else INF
        if a < first_child:
            out.add(v)
    return out


def bf_bad(t):
    """v is bad when it has a right neighbour that it exceeds, or a right
    neighbour while having a child."""
    _, children = _tables(t)
    out = set()
    for sibs in children.values():
        for i, v in enumerate(sibs[:-1]):
            if v > sibs[i + 1] or children[v]:
                out.add(v)
    return out


def bf_reverse_bad(t):
    _, children = _tables(t)
    out = set()
    for sibs in children.values():
        for i, v in enumerate(sibs):
            if i > 0 and (v > sibs[i - 1] or children[v]):
                out.add(v)
    return out


def bf_leaves(t):
    _, children = _tables(t)
    if len(children) == 1:
        return 1
    return sum(1 for v, kids in children.items() if not kids)


def bf_marked_klazar(n):
    """All (violator-free tree, mark set) pairs at n edges; marks range
    over subsets of the non-root internal vertices."""
    for t in bf_trees(n):
        if bf_violators(t):
            continue
        parent, children = _tables(t)
        interior = [v for v in parent if children[v]]
        for r in range(len(interior) + 1):
            for marks in combinations(interior, r):
                yield t, frozenset(marks)


def bf_word_parity(word):
    counts = Counter(word)
    evens = sum(1 for v, c in counts.items() if v % 2 == 0 and c % 2 == 1)
    odds = sum(1 for v, c in counts.items() if v % 2 == 1 and c % 2 == 1)
    return evens, odds
