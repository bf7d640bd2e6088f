"""Insertion codes for trees and diagrams, and trapezoidal words.

Three equivalent languages with (2k-1) choices at step k:

* build-tree code: entry (R, i) inserts k as the rightmost child of i,
  entry (L, i) inserts k as the immediate left neighbour of i;
* build-matching code: entry (B, i) enlarges using bottom dot i (the
  new pair when i = k), entry (T, i) enlarges using top dot i;
* trapezoidal word: integers a_k with 1 <= a_k <= 2k-1.

The letter swap R<->B, L<->T (with (R, 0) at step k traded for (B, k))
links the first two; a_k = 2i for L and 2i+1 for R links words to tree
codes.  Validation is separate and explicit so malformed input fails at
the boundary, not inside a bijection.
"""

from __future__ import annotations

from collections import Counter
from itertools import product

from .matching_core import BOT, TOP, EMPTY_MATCHING, DotRef, Matching, enlarge, prune_matching
from .tree_core import Tree, tables_of, tree_from_tables


def validate_tree_code(code):
    """Check (X1,i1) = (R,0) and the step-k ranges; return the code as a tuple."""
    code = tuple((str(X), int(i)) for X, i in code)
    for k, (X, i) in enumerate(code, start=1):
        if X not in ("R", "L"):
            raise ValueError(f"bad letter {X!r} at step {k}")
        if k == 1 and (X, i) != ("R", 0):
            raise ValueError("a tree code must start with (R,0)")
        if X == "R" and not 0 <= i <= k - 1:
            raise ValueError(f"(R,{i}) out of range at step {k}")
        if X == "L" and not 1 <= i <= k - 1:
            raise ValueError(f"(L,{i}) out of range at step {k}")
    return code


def validate_match_code(code):
    """Check (Y1,i1) = (B,1) and the step-k ranges; return the code as a tuple."""
    code = tuple((str(Y), int(i)) for Y, i in code)
    for k, (Y, i) in enumerate(code, start=1):
        if Y not in ("B", "T"):
            raise ValueError(f"bad letter {Y!r} at step {k}")
        if k == 1 and (Y, i) != ("B", 1):
            raise ValueError("a matching code must start with (B,1)")
        if Y == "B" and not 1 <= i <= k:
            raise ValueError(f"(B,{i}) out of range at step {k}")
        if Y == "T" and not 1 <= i <= k - 1:
            raise ValueError(f"(T,{i}) out of range at step {k}")
    return code


def validate_word(word):
    word = tuple(int(a) for a in word)
    for k, a in enumerate(word, start=1):
        if not 1 <= a <= 2 * k - 1:
            raise ValueError(f"letter {a} out of [1, {2 * k - 1}] at step {k}")
    return word


# ---------------------------------------------------------------------------
# codes <-> objects


def code_to_tree(code) -> Tree:
    code = validate_tree_code(code)
    parent = {}
    children = {0: []}
    for k, (X, i) in enumerate(code, start=1):
        children[k] = []
        if X == "R":
            parent[k] = i
            children[i].append(k)
        else:
            p = parent[i]
            parent[k] = p
            children[p].insert(children[p].index(i), k)
    return tree_from_tables(children)


def tree_to_code(t: Tree):
    """Read off the insertion history by deleting n, n-1, ... in turn."""
    parent, children = tables_of(t)
    code = []
    for k in range(len(parent), 0, -1):
        p = parent[k]
        sibs = children[p]
        pos = sibs.index(k)
        if pos < len(sibs) - 1:
            code.append(("L", sibs[pos + 1]))
        else:
            code.append(("R", p))
        sibs.pop(pos)
        del children[k], parent[k]
    code.reverse()
    return validate_tree_code(code)


def code_to_matching(code) -> Matching:
    code = validate_match_code(code)
    m = EMPTY_MATCHING
    for Y, i in code:
        m = enlarge(m, DotRef(BOT if Y == "B" else TOP, i))
    return m


def matching_to_code(m: Matching):
    code = []
    while m.n:
        m, d = prune_matching(m)
        code.append(("B" if d.row == BOT else "T", d.pos))
    code.reverse()
    return validate_match_code(code)


# ---------------------------------------------------------------------------
# code <-> code and code <-> word


def treecode_to_matchcode(code):
    code = validate_tree_code(code)
    out = []
    for k, (X, i) in enumerate(code, start=1):
        if X == "R":
            out.append(("B", k if i == 0 else i))
        else:
            out.append(("T", i))
    return validate_match_code(out)


def matchcode_to_treecode(code):
    code = validate_match_code(code)
    out = []
    for k, (Y, i) in enumerate(code, start=1):
        if Y == "B":
            out.append(("R", 0 if i == k else i))
        else:
            out.append(("L", i))
    return validate_tree_code(out)


def code_to_trapezoidal(code):
    code = validate_tree_code(code)
    return validate_word(
        tuple(2 * i if X == "L" else 2 * i + 1 for X, i in code)
    )


def trapezoidal_to_code(word):
    word = validate_word(word)
    return validate_tree_code(
        tuple(("L", a // 2) if a % 2 == 0 else ("R", (a - 1) // 2) for a in word)
    )


def word_parity_stats(word):
    """(number of even values with odd multiplicity,
    number of odd values with odd multiplicity)."""
    word = validate_word(word)
    counts = Counter(word)
    evens = sum(1 for v, c in counts.items() if v % 2 == 0 and c % 2 == 1)
    odds = sum(1 for v, c in counts.items() if v % 2 == 1 and c % 2 == 1)
    return evens, odds


# ---------------------------------------------------------------------------
# enumeration (the canonical order everything else aligns to)


def enumerate_words(n: int):
    """All trapezoidal words of length n in ascending lexicographic order."""
    if n < 0:
        raise ValueError("length must be nonnegative")
    yield from product(*(range(1, 2 * k) for k in range(1, n + 1)))


def enumerate_tree_codes(n: int):
    for w in enumerate_words(n):
        yield trapezoidal_to_code(w)


def enumerate_match_codes(n: int):
    for w in enumerate_words(n):
        yield treecode_to_matchcode(trapezoidal_to_code(w))


# ---------------------------------------------------------------------------
# text forms (for the command line)


def code_to_text(code) -> str:
    return ",".join(f"{X}{i}" for X, i in code)


def code_from_text(text: str):
    out = []
    for chunk in text.strip().split(","):
        chunk = chunk.strip()
        if not chunk or chunk[0] not in "RLBT":
            raise ValueError(f"bad code entry {chunk!r}")
        out.append((chunk[0], int(chunk[1:])))
    return tuple(out)


def word_to_text(word) -> str:
    return " ".join(str(a) for a in word)


def word_from_text(text: str):
    return validate_word(tuple(int(x) for x in text.split()))
