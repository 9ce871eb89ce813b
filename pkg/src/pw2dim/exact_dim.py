"""Exact poset dimension by backtracking over reversal classes.

A family of linear extensions realizes ``P`` iff every critical pair is
reversed by one of them.  The search assigns critical pairs to ``t`` classes;
each class keeps the transitive closure of ``P`` plus the reversals assigned
so far, so a pair fits a class exactly when it is not already forced the
other way there.  Each class closure then extends to a linear extension.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SizeCapExceeded
from .poset import Poset, _bits, critical_index_pairs, verify_realizer

DEFAULT_CAP = 16
LOW_T_CAP = 40


@dataclass(frozen=True)
class DimensionResult:
    dimension: int
    witness: tuple   # tuple of linear extensions (tuples of elements)


def _add(cls, a, b):
    """Closure of ``cls`` plus ``b < a``."""
    up, down = list(cls[0]), list(cls[1])
    ua, db = up[a], down[b]
    for x in _bits(db):
        up[x] |= ua
    for y in _bits(ua):
        down[y] |= db
    return up, down


def _extension(P, up):
    return Poset(P.elements, up).linear_extension()


def _search(P: Poset, t: int):
    pairs = critical_index_pairs(P)
    base = (list(P._up), list(P._down))
    if not pairs:
        return [P.linear_extension()] * t
    if t == 1:
        return None

    def rec(classes, used):
        open_ = used + 1 if used < t else used
        best = None
        for i, j in pairs:
            feasible = []
            for c in range(open_):
                up = classes[c][0]
                if up[j] >> i & 1:
                    break
                if not up[i] >> j & 1:
                    feasible.append(c)
            else:
                if not feasible:
                    return None
                if best is None or len(feasible) < len(best[2]):
                    best = (i, j, feasible)
                    if len(feasible) == 1:
                        break
        if best is None:
            return classes
        i, j, feasible = best
        for c in feasible:
            new = list(classes)
            new[c] = _add(classes[c], i, j)
            found = rec(new, max(used, c + 1))
            if found is not None:
                return found
        return None

    classes = rec([base] * t, 0)
    if classes is None:
        return None
    return [_extension(P, up) for up, _ in classes]


def _check_cap(P, t, cap):
    if cap is None:
        cap = LOW_T_CAP if t <= 2 else DEFAULT_CAP
    if len(P) > cap:
        raise SizeCapExceeded(f"dimension_at_most(t={t})", len(P), cap)


def dimension_at_most(P: Poset, t: int, cap=None):
    """A realizer of ``P`` with exactly ``t`` extensions, or ``None`` if none exists."""
    if t < 1:
        raise ValueError("t must be positive")
    _check_cap(P, t, cap)
    if len(P) == 0:
        return [()] * t
    R = _search(P, t)
    if R is not None:
        ok, witness = verify_realizer(P, R)
        assert ok, f"search produced a non-realizer, pair {witness} unreversed"
    return R


def dimension_exact(P: Poset, cap=None) -> DimensionResult:
    """Least ``t`` with a realizer of size ``t`` (posets with at most one element have dimension 1)."""
    t = 1 if P.is_chain() else 2
    while True:
        R = dimension_at_most(P, t, cap)
        if R is not None:
            return DimensionResult(t, tuple(tuple(L) for L in R))
        t += 1


# ---------------------------------------------------------------------------
# independent brute force, for cross-checking

def linear_extensions(P: Poset):
    """Generate every linear extension of ``P``."""
    n = len(P)
    down = [P.down_mask(i) & ~(1 << i) for i in range(n)]
    order = []

    def rec(placed):
        if len(order) == n:
            yield tuple(P.elements[i] for i in order)
            return
        for i in range(n):
            if not placed >> i & 1 and down[i] & ~placed == 0:
                order.append(i)
                yield from rec(placed | 1 << i)
                order.pop()

    yield from rec(0)


def dimension_bruteforce(P: Poset, max_extensions=200000) -> int:
    """Dimension by enumerating all linear extensions and covering incomparable pairs.

    Every ordered incomparable pair gets a bit; an extension covers the pairs
    it reverses.  The least number of extensions covering all bits is found
    by exhaustive search.  Only for tiny posets.
    """
    n = len(P)
    if n <= 1:
        return 1
    pairs = [(i, j) for i in range(n) for j in range(n)
             if i != j and not P.up_mask(i) >> j & 1 and not P.up_mask(j) >> i & 1]
    if not pairs:
        return 1
    index = {x: i for i, x in enumerate(P.elements)}
    masks = set()
    for k, L in enumerate(linear_extensions(P)):
        if k >= max_extensions:
            raise SizeCapExceeded("dimension_bruteforce", k, max_extensions)
        pos = [0] * n
        for p, x in enumerate(L):
            pos[index[x]] = p
        m = 0
        for b, (i, j) in enumerate(pairs):
            if pos[j] < pos[i]:
                m |= 1 << b
        masks.add(m)
    masks = sorted(masks, reverse=True)
    full = (1 << len(pairs)) - 1

    def cover(rest, t):
        if rest == 0:
            return True
        if t == 0:
            return False
        low = rest & -rest
        return any(cover(rest & ~m, t - 1) for m in masks if m & low)

    t = 1
    while not cover(full, t):
        t += 1
    return t
