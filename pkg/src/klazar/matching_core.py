"""Perfect matchings of [2n] as two-row dot diagrams.

Odd numbers sit on the top row (position i holds 2i-1), even numbers on
the bottom (position i holds 2i).  A match between an even number and a
larger odd number is an upline; an odd number matched to a weakly larger
even number is a weak downline (vertical when the positions tie); same
parity matches are arcs.  This module holds the diagram type, edge
classification, the enlarge/prune elevator between sizes, the shift map
S, the product decomposition of no-upline diagrams into arc matchings
plus a Stirling and a power part, and the three-class split behind the
size recurrence.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import NamedTuple

TOP = "top"
BOT = "bot"


@dataclass(frozen=True)
class DotRef:
    """One dot of a diagram: row 'top' or 'bot', 1-based position."""

    row: str
    pos: int

    def number(self) -> int:
        return 2 * self.pos - 1 if self.row == TOP else 2 * self.pos

    @staticmethod
    def of_number(x: int) -> "DotRef":
        if x % 2:
            return DotRef(TOP, (x + 1) // 2)
        return DotRef(BOT, x // 2)

    def to_json(self):
        return {"row": self.row, "pos": self.pos}

    @staticmethod
    def from_json(obj) -> "DotRef":
        if obj.get("row") not in (TOP, BOT):
            raise ValueError(f"bad DotRef row: {obj!r}")
        return DotRef(obj["row"], int(obj["pos"]))


@dataclass(frozen=True)
class Matching:
    """Perfect matching of [2n], stored as a partner table.

    partner[x] is the partner of x for x in 1..2n; partner[0] is 0 and
    unused.  Hashable, so exhaustive bijection checks can use sets.
    """

    partner: tuple[int, ...]

    @property
    def n(self) -> int:
        return (len(self.partner) - 1) // 2

    def pairs(self) -> tuple:
        return tuple(
            (x, self.partner[x])
            for x in range(1, len(self.partner))
            if x < self.partner[x]
        )

    def __repr__(self):
        return f"Matching.parse({matching_to_text(self)!r})"

    @staticmethod
    def from_pairs(pairs, n=None) -> "Matching":
        pairs = [tuple(sorted(p)) for p in pairs]
        if n is None:
            n = len(pairs)
        partner = [0] * (2 * n + 1)
        seen = set()
        for a, b in pairs:
            for x in (a, b):
                if not 1 <= x <= 2 * n:
                    raise ValueError(f"entry {x} outside [{2 * n}]")
                if x in seen:
                    raise ValueError(f"entry {x} repeated")
                seen.add(x)
            partner[a], partner[b] = b, a
        if len(seen) != 2 * n:
            raise ValueError("pairs do not cover [2n]")
        return Matching(tuple(partner))

    @staticmethod
    def parse(text: str) -> "Matching":
        return matching_from_text(text)

    def to_json(self):
        return {"n": self.n, "pairs": [list(p) for p in self.pairs()]}

    @staticmethod
    def from_json(obj) -> "Matching":
        if not isinstance(obj, dict) or "pairs" not in obj:
            raise ValueError("matching JSON must be an object with 'pairs'")
        return Matching.from_pairs(obj["pairs"], n=obj.get("n"))


EMPTY_MATCHING = Matching((0,))


def matching_to_text(m: Matching) -> str:
    """Slash notation: '1 5/2 8/3 4/6 9/7 10'."""
    return "/".join(f"{a} {b}" for a, b in m.pairs())


def matching_from_text(text: str) -> Matching:
    text = text.strip()
    if not text:
        return EMPTY_MATCHING
    pairs = []
    for chunk in text.split("/"):
        parts = chunk.split()
        if len(parts) != 2:
            raise ValueError(f"bad pair {chunk!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    return Matching.from_pairs(pairs)


# ---------------------------------------------------------------------------
# edge classification


class EdgeClasses(NamedTuple):
    """Row positions of each kind of match.

    uplines: (bottom pos, top pos) with top strictly further right;
    verticals: single positions; downlines: (top pos, bottom pos),
    bottom strictly further right; arcs: (pos, pos) within one row,
    smaller first.
    """

    uplines: frozenset
    verticals: frozenset
    downlines: frozenset
    top_arcs: frozenset
    bottom_arcs: frozenset


def classify_edges(m: Matching) -> EdgeClasses:
    up, vert, down, tarc, barc = set(), set(), set(), set(), set()
    for a, b in m.pairs():
        if a % 2 and b % 2:
            tarc.add(((a + 1) // 2, (b + 1) // 2))
        elif a % 2 == 0 and b % 2 == 0:
            barc.add((a // 2, b // 2))
        else:
            o, e = (a, b) if a % 2 else (b, a)
            t, bo = (o + 1) // 2, e // 2
            if e > o:
                if t == bo:
                    vert.add(t)
                else:
                    down.add((t, bo))
            else:
                up.add((bo, t))
    return EdgeClasses(
        frozenset(up), frozenset(vert), frozenset(down),
        frozenset(tarc), frozenset(barc),
    )


def uplines(m: Matching) -> frozenset:
    return classify_edges(m).uplines


def weak_downlines(m: Matching) -> frozenset:
    """Verticals and strict downlines together, as (top pos, bottom pos)."""
    c = classify_edges(m)
    return c.downlines | frozenset((i, i) for i in c.verticals)


# ---------------------------------------------------------------------------
# enlarge / prune


def enlarge(m: Matching, d: DotRef) -> Matching:
    """Grow a size n-1 diagram to size n using dot d.

    d = (BOT, n) is the 'new pair' move: the two new dots 2n-1 and 2n
    are joined to each other.  Otherwise the new top dot 2n-1 joins d,
    and d's former partner joins the new bottom dot 2n.  Over the 2n-1
    legal dots this is a bijection onto size-n diagrams.
    """
    n = m.n + 1
    if d.row == BOT and d.pos == n:
        return Matching(m.partner + (2 * n, 2 * n - 1))
    x = d.number()
    if not 1 <= x <= 2 * n - 2:
        raise ValueError(f"dot {d} is not in the size-{n - 1} diagram")
    y = m.partner[x]
    partner = list(m.partner) + [0, 0]
    partner[x] = 2 * n - 1
    partner[2 * n - 1] = x
    partner[y] = 2 * n
    partner[2 * n] = y
    return Matching(tuple(partner))


def prune_matching(m: Matching):
    """Inverse of enlarge: returns (smaller diagram, the DotRef used)."""
    n = m.n
    if n == 0:
        raise ValueError("cannot prune the empty diagram")
    x = m.partner[2 * n - 1]
    y = m.partner[2 * n]
    if x == 2 * n:
        return Matching(m.partner[: 2 * n - 1]), DotRef(BOT, n)
    partner = list(m.partner[: 2 * n - 1])
    partner[x], partner[y] = y, x
    return Matching(tuple(partner)), DotRef.of_number(x)


def enumerate_matchings(n: int):
    """Yield every perfect matching of [2n] once, in canonical order.

    Canonical order is ascending lexicographic order of trapezoidal
    words carried through the codes: word letter a_k = 1 means the new
    pair, even a_k = 2i means top dot i, odd a_k = 2i+1 >= 3 means
    bottom dot i.  This aligns the k-th matching with the k-th tree.
    """
    if n < 0:
        raise ValueError("size must be nonnegative")
    partner = [0]

    def rec(k):
        if k > n:
            yield Matching(tuple(partner))
            return
        t, b = 2 * k - 1, 2 * k
        partner.extend((0, 0))
        for a in range(1, 2 * k):
            if a == 1:
                partner[t], partner[b] = b, t
                yield from rec(k + 1)
            else:
                # a = 2i joins top dot i (number 2i-1), a = 2i+1 joins
                # bottom dot i (number 2i); both are number a - 1
                x = a - 1
                y = partner[x]
                partner[x], partner[t] = t, x
                partner[y], partner[b] = b, y
                yield from rec(k + 1)
                partner[x], partner[y] = y, x
        del partner[t:]

    yield from rec(1)


# ---------------------------------------------------------------------------
# shift map


def shift_S(m: Matching, i: int) -> int:
    """Follow uplines from bottom position i; stop at the first position
    that starts no upline."""
    if not 1 <= i <= m.n:
        raise ValueError(f"position {i} out of range")
    up = dict(classify_edges(m).uplines)
    while i in up:
        i = up[i]
    return i


# ---------------------------------------------------------------------------
# Stirling and power matchings


@dataclass(frozen=True)
class StirlingMatching:
    """Two rows of cols dots with disjoint strictly right-down edges.

    An edge (a, b) joins top position a to bottom position b with b > a.
    With k = cols - #edges, the (n, k) instances are counted by the
    Stirling partition number S(n, k).
    """

    cols: int
    edges: frozenset  # of (top, bottom) pairs

    def to_json(self):
        return {"cols": self.cols, "edges": sorted(map(list, self.edges))}


@dataclass(frozen=True)
class PowerMatching:
    """n bottom dots against k+n top dots, all bottoms matched left-up.

    Edge (a, b) joins top position a to bottom position b under the
    flush-right picture: legality is a <= k + b - 1, tops distinct.
    The (k, n) instances are counted by k**n.
    """

    top_count: int
    bottom_count: int
    edges: frozenset  # of (top, bottom) pairs

    def to_json(self):
        return {
            "cols": [self.top_count, self.bottom_count],
            "edges": sorted(map(list, self.edges)),
        }


def check_stirling(sm: StirlingMatching) -> int:
    """Validate and return k = cols - #edges."""
    tops = [a for a, _ in sm.edges]
    bots = [b for _, b in sm.edges]
    if len(set(tops)) != len(tops) or len(set(bots)) != len(bots):
        raise ValueError("edges are not disjoint")
    for a, b in sm.edges:
        if not (1 <= a < b <= sm.cols):
            raise ValueError(f"edge ({a},{b}) is not strictly right-down")
    return sm.cols - len(sm.edges)


def check_power(pm: PowerMatching) -> int:
    """Validate and return k = top_count - bottom_count."""
    k = pm.top_count - pm.bottom_count
    if k < 0:
        raise ValueError("top row must be at least as long as the bottom")
    tops = [a for a, _ in pm.edges]
    bots = sorted(b for _, b in pm.edges)
    if bots != list(range(1, pm.bottom_count + 1)):
        raise ValueError("every bottom dot must be matched exactly once")
    if len(set(tops)) != len(tops):
        raise ValueError("top partners must be distinct")
    for a, b in pm.edges:
        if not 1 <= a <= pm.top_count:
            raise ValueError(f"top position {a} out of range")
        if a > k + b - 1:
            raise ValueError(f"edge ({a},{b}) is not strictly left-up")
    return k


def enumerate_stirling_matchings(n: int, k: int):
    """All (n, k) Stirling matchings; there are S(n, k) of them."""
    if k < 0 or k > n:
        return
    e = n - k
    cells = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    for chosen in combinations(cells, e):
        tops = [a for a, _ in chosen]
        bots = [b for _, b in chosen]
        if len(set(tops)) == e and len(set(bots)) == e:
            yield StirlingMatching(n, frozenset(chosen))


def enumerate_power_matchings(k: int, n: int):
    """All (k, n) power matchings; there are k**n of them."""
    if k < 0 or n < 0:
        return
    ranges = [range(1, k + b) for b in range(1, n + 1)]
    for tops in product(*ranges):
        if len(set(tops)) == n:
            yield PowerMatching(k + n, n, frozenset(zip(tops, range(1, n + 1))))


def stirling_to_partition(sm: StirlingMatching) -> tuple:
    """Set partition of [cols] read off a Stirling matching.

    An unmatched bottom dot i opens block 1 + (number of unmatched
    bottom dots to its left); a bottom dot i matched to top c lands in
    block c - (number of edges joining a top left of c to a bottom left
    of i).  Blocks come out in standard order.
    """
    check_stirling(sm)
    n = sm.cols
    matched_bottom = {b: a for a, b in sm.edges}
    blocks = {}
    unmatched_seen = 0
    for i in range(1, n + 1):
        if i not in matched_bottom:
            unmatched_seen += 1
            blocks.setdefault(unmatched_seen, []).append(i)
        else:
            c = matched_bottom[i]
            skip = sum(1 for a, b in sm.edges if a < c and b < i)
            blocks.setdefault(c - skip, []).append(i)
    out = [tuple(sorted(v)) for _, v in sorted(blocks.items())]
    assert sorted(x for blk in out for x in blk) == list(range(1, n + 1))
    assert [b[0] for b in out] == sorted(b[0] for b in out)
    return tuple(out)


# ---------------------------------------------------------------------------
# decomposition of no-upline diagrams (arc parts + Stirling part + power part)


def _standardize(pairs, support):
    """Rename the support to 1..2k by rank and re-express the pairs."""
    rank = {x: r + 1 for r, x in enumerate(sorted(support))}
    return Matching.from_pairs([(rank[a], rank[b]) for a, b in pairs])


def decompose_no_upline(m: Matching):
    """Split a no-upline diagram into its four independent parts.

    Returns (evenPM, oddPM, stirling, power) where evenPM and oddPM are
    the standardized matchings induced on the even-even and odd-odd
    supports (size k each), and the Stirling/power parts encode the
    mixed lines: with 2j the largest even-even number (j = 0 when there
    are no arcs), lines with bottom position below j shift one column
    right into a (j, 2k) Stirling matching, and the remaining lines,
    read against the top positions not used by the Stirling part, form
    a (2k+1, n-j) power matching whose phantom extra top dot sits at
    the far right.
    """
    cls = classify_edges(m)
    if cls.uplines:
        raise ValueError("diagram has an upline")
    n = m.n
    even_pairs = [(2 * a, 2 * b) for a, b in cls.bottom_arcs]
    odd_pairs = [(2 * a - 1, 2 * b - 1) for a, b in cls.top_arcs]
    k = len(even_pairs)
    assert len(odd_pairs) == k
    A = sorted(x for p in even_pairs for x in p)
    B = sorted(x for p in odd_pairs for x in p)
    even_pm = _standardize(even_pairs, A)
    odd_pm = _standardize(odd_pairs, B)
    j = A[-1] // 2 if A else 0

    lines = sorted(cls.downlines | {(i, i) for i in cls.verticals})
    s_edges = {(t, b + 1) for t, b in lines if b <= j - 1}
    stirling = StirlingMatching(j, frozenset(s_edges))
    assert check_stirling(stirling) == 2 * k

    s_tops = {t for t, _ in s_edges}
    rest = [t for t in range(1, n + 1) if t not in s_tops]
    idx = {t: r + 1 for r, t in enumerate(rest)}
    p_edges = set()
    for t, b in lines:
        if b > j - 1:
            assert b > j, "column j is always an arc bottom"
            p_edges.add((idx[t], b - j))
    power = PowerMatching(2 * k + 1 + (n - j), n - j, frozenset(p_edges))
    assert check_power(power) == 2 * k + 1
    return even_pm, odd_pm, stirling, power


def compose_no_upline(even_pm: Matching, odd_pm: Matching,
                      stirling: StirlingMatching, power: PowerMatching) -> Matching:
    """Inverse of decompose_no_upline."""
    k = even_pm.n
    if odd_pm.n != k:
        raise ValueError("arc matchings must have equal sizes")
    if check_stirling(stirling) != 2 * k:
        raise ValueError("Stirling part size does not match the arc count")
    j = stirling.cols
    if check_power(power) != 2 * k + 1:
        raise ValueError("power part size does not match the arc count")
    n = j + power.bottom_count

    lines = [(t, b - 1) for t, b in stirling.edges]
    s_tops = {t for t, _ in lines}
    rest = [t for t in range(1, n + 1) if t not in s_tops]
    for a, b in power.edges:
        if a > len(rest):
            raise ValueError("power edge uses the phantom top dot")
        lines.append((rest[a - 1], j + b))

    line_tops = {t for t, _ in lines}
    line_bots = {b for _, b in lines}
    arc_tops = [t for t in range(1, n + 1) if t not in line_tops]
    arc_bots = [b for b in range(1, n + 1) if b not in line_bots]
    if len(arc_tops) != 2 * k or len(arc_bots) != 2 * k:
        raise ValueError("component sizes are inconsistent")

    B = [2 * t - 1 for t in arc_tops]
    A = [2 * b for b in arc_bots]
    pairs = [(2 * t - 1, 2 * b) for t, b in lines]
    pairs += [(A[a - 1], A[b - 1]) for a, b in even_pm.pairs()]
    pairs += [(B[a - 1], B[b - 1]) for a, b in odd_pm.pairs()]
    out = Matching.from_pairs(pairs, n=n)
    assert not classify_edges(out).uplines
    return out


# ---------------------------------------------------------------------------
# recurrence classes


def recurrence_class(m: Matching) -> int:
    """Which of the three recurrence classes a no-upline diagram is in.

    Class 1: the two last dots are matched to each other.  Class 2: the
    partner of 2n is odd, or even but larger than the partner of 2n-1.
    Class 3: the rest.  Comparisons are between the matched numbers in
    [2n], not row positions.
    """
    if classify_edges(m).uplines:
        raise ValueError("recurrence classes are for no-upline diagrams")
    n = m.n
    if n < 1:
        raise ValueError("empty diagram has no class")
    p_bot = m.partner[2 * n]
    if p_bot == 2 * n - 1:
        return 1
    p_top = m.partner[2 * n - 1]
    if p_bot % 2 == 1 or p_top < p_bot:
        return 2
    return 3


def class2_reduce(m: Matching):
    """Strip the last column of a class-2 diagram.

    Returns (smaller diagram, top position of the former partner of
    2n-1).  In a class-2 no-upline diagram that partner is always odd,
    hence a top dot.
    """
    if recurrence_class(m) != 2:
        raise ValueError("not a class-2 diagram")
    x = m.partner[2 * m.n - 1]
    assert x % 2 == 1, "partner of the last top dot is odd in class 2"
    smaller, _ = prune_matching(m)
    return smaller, (x + 1) // 2


def class2_expand(m: Matching, i: int) -> Matching:
    """Inverse of class2_reduce: enlarge using top dot i."""
    if not 1 <= i <= m.n:
        raise ValueError(f"top position {i} out of range")
    out = enlarge(m, DotRef(TOP, i))
    assert recurrence_class(out) == 2
    return out


def class3_reduce(m: Matching):
    """Strip a class-3 diagram down by its marked columns.

    With i the top position of the partner of 2n-1 and j the bottom
    position of the partner of 2n (so i > j), the set X collects j, i,
    and every vertical column strictly between them.  Those columns'
    dots, the two last dots, and the two partners disappear; surviving
    columns close ranks.  Returns (smaller diagram, X).
    """
    if recurrence_class(m) != 3:
        raise ValueError("not a class-3 diagram")
    n = m.n
    p_top = m.partner[2 * n - 1]
    p_bot = m.partner[2 * n]
    assert p_top % 2 == 1 and p_bot % 2 == 0
    i = (p_top + 1) // 2
    j = p_bot // 2
    assert i > j
    mids = sorted(v for v in classify_edges(m).verticals if j < v < i)
    X = frozenset({j, i, *mids})

    dead_top = {n, i, *mids}
    dead_bot = {n, j, *mids}
    top_rank = {}
    bot_rank = {}
    for pos in range(1, n + 1):
        if pos not in dead_top:
            top_rank[pos] = len(top_rank) + 1
        if pos not in dead_bot:
            bot_rank[pos] = len(bot_rank) + 1

    def renumber(x):
        if x % 2:
            return 2 * top_rank[(x + 1) // 2] - 1
        return 2 * bot_rank[x // 2]

    dead = {2 * n - 1, 2 * n, p_top, p_bot}
    dead.update(2 * v - 1 for v in mids)
    dead.update(2 * v for v in mids)
    pairs = [
        (renumber(a), renumber(b)) for a, b in m.pairs()
        if a not in dead and b not in dead
    ]
    out = Matching.from_pairs(pairs, n=n - 2 - len(mids))
    return out, X


def class3_expand(m: Matching, X) -> Matching:
    """Inverse of class3_reduce: re-insert the columns named by X."""
    X = sorted(X)
    if len(X) < 2:
        raise ValueError("X needs at least the two partner positions")
    k = len(X) - 2
    n = m.n + 2 + k
    if X[-1] > n - 1 or X[0] < 1:
        raise ValueError(f"X out of range for target size {n}")
    j, i, mids = X[0], X[-1], X[1:-1]

    dead_top = {n, i, *mids}
    dead_bot = {n, j, *mids}
    top_cols = [pos for pos in range(1, n + 1) if pos not in dead_top]
    bot_cols = [pos for pos in range(1, n + 1) if pos not in dead_bot]

    def renumber(x):
        if x % 2:
            return 2 * top_cols[(x + 1) // 2 - 1] - 1
        return 2 * bot_cols[x // 2 - 1]

    pairs = [(renumber(a), renumber(b)) for a, b in m.pairs()]
    pairs.append((2 * i - 1, 2 * n - 1))
    pairs.append((2 * j, 2 * n))
    pairs.extend((2 * v - 1, 2 * v) for v in mids)
    out = Matching.from_pairs(pairs, n=n)
    assert recurrence_class(out) == 3
    return out
