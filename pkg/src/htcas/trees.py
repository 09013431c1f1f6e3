"""Rooted-tree combinatorics for homotopy transfer.

Planar rooted trees (ordered children) index transferred A-infinity
co-operations; isomorphism classes of rooted trees index transferred
L-infinity brackets, weighted by 1/|Aut|.  All internal vertices have
valence >= 2 and trees are counted by their number of leaves.

Trees serialize as nested parentheses with `*` for a leaf, e.g. the
3-leaf left comb is ((**)*).
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

# A tree is either LEAF or a tuple of >= 2 subtrees (children, left to right).
LEAF = "*"

Tree = object  # LEAF or tuple of Tree


def is_leaf(t) -> bool:
    return t == LEAF


def leaf_count(t) -> int:
    if is_leaf(t):
        return 1
    return sum(leaf_count(c) for c in t)


def height(t) -> int:
    if is_leaf(t):
        return 0
    return 1 + max(height(c) for c in t)


def serialize(t) -> str:
    if is_leaf(t):
        return LEAF
    return "(" + "".join(serialize(c) for c in t) + ")"


def parse_tree(s: str):
    """Inverse of `serialize`."""
    pos = 0

    def rec():
        nonlocal pos
        if pos >= len(s):
            raise ValueError("unexpected end of tree string")
        ch = s[pos]
        if ch == LEAF:
            pos += 1
            return LEAF
        if ch != "(":
            raise ValueError(f"unexpected {ch!r} at position {pos}")
        pos += 1
        children = []
        while pos < len(s) and s[pos] != ")":
            children.append(rec())
        if pos >= len(s):
            raise ValueError("unbalanced parentheses")
        pos += 1
        if len(children) < 2:
            raise ValueError("internal vertex of valence < 2")
        return tuple(children)

    t = rec()
    if pos != len(s):
        raise ValueError(f"trailing input at position {pos}")
    return t


def _compositions(k: int, max_parts: int):
    """Ordered compositions of k into 2..max_parts parts, lexicographic."""
    for r in range(2, min(k, max_parts) + 1):
        for cuts in itertools.combinations(range(1, k), r - 1):
            prev = 0
            parts = []
            for c in cuts:
                parts.append(c - prev)
                prev = c
            parts.append(k - prev)
            yield parts


def enumerate_planar(k: int, max_arity: int | None = None) -> list:
    """All planar rooted trees with k leaves, internal valence 2..max_arity.

    Deterministic: children compositions are generated lexicographically.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    cap = max(k, 2) if max_arity is None else max_arity
    if cap < 2:
        raise ValueError("max_arity must be >= 2")

    @lru_cache(maxsize=None)
    def rec(n: int) -> tuple:
        if n == 1:
            return (LEAF,)
        out = []
        for parts in _compositions(n, cap):
            for combo in itertools.product(*(rec(p) for p in parts)):
                out.append(tuple(combo))
        return tuple(out)

    return list(rec(k))


def canonical(t):
    """Canonical form of a rooted tree: children sorted recursively.

    Taller / larger subtrees come first, so the canonical embedding of the
    3-leaf binary class is the left comb ((**)*).
    """
    if is_leaf(t):
        return LEAF
    kids = sorted((canonical(c) for c in t), key=_canon_key, reverse=True)
    return tuple(kids)


def _canon_key(t):
    return (height(t), leaf_count(t), serialize(t))


def enumerate_rooted(k: int, max_arity: int | None = None) -> list:
    """Isomorphism classes of rooted trees with k leaves, in canonical form."""
    if k < 1:
        raise ValueError("k must be >= 1")
    cap = max(k, 2) if max_arity is None else max_arity
    if cap < 2:
        raise ValueError("max_arity must be >= 2")

    @lru_cache(maxsize=None)
    def rec(n: int) -> tuple:
        if n == 1:
            return (LEAF,)
        seen = []
        for parts in _compositions(n, cap):
            ordered = sorted(parts)
            for combo in itertools.product(*(rec(p) for p in ordered)):
                kids = sorted(combo, key=_canon_key, reverse=True)
                t = tuple(kids)
                if t not in seen:
                    seen.append(t)
        return tuple(sorted(seen, key=_canon_key))

    return list(rec(k))


def aut_order(t) -> int:
    """|Aut(T)|: product over vertices of m! for each group of equal subtrees."""
    if is_leaf(t):
        return 1
    kids = [canonical(c) for c in t]
    order = 1
    for c in kids:
        order *= aut_order(c)
    for _, grp in itertools.groupby(sorted(kids, key=_canon_key)):
        order *= math.factorial(len(list(grp)))
    return order


def planar_embedding(t):
    """The canonical-order planar embedding of an isomorphism class."""
    return canonical(t)


def arity_product(t) -> int:
    """Product of r! over internal vertices of arity r."""
    if is_leaf(t):
        return 1
    p = math.factorial(len(t))
    for c in t:
        p *= arity_product(c)
    return p


def internal_edges(t) -> int:
    if is_leaf(t):
        return 0
    return sum(internal_edges(c) + (0 if is_leaf(c) else 1) for c in t)
