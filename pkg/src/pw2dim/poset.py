"""Finite posets stored as bitset rows of the order relation.

Elements are opaque hashable ids (strings in all file formats).  Internally
element ``i`` is the ``i``-th id of :attr:`Poset.elements`; row ``_up[i]`` is
an int whose bit ``j`` is set iff ``elements[i] <= elements[j]``.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

import networkx as nx

from .errors import CycleError, NotAnExtension, UnknownElement


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """An immutable finite partial order."""

    __slots__ = ("elements", "_index", "_up", "_down")

    def __init__(self, elements: Sequence[Hashable], up_rows: Sequence[int]):
        # up_rows must already be a reflexive, transitive, antisymmetric relation;
        # use Poset.from_relations for anything else.
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("element ids must be unique")
        self._index = {x: i for i, x in enumerate(self.elements)}
        self._up = tuple(up_rows)
        n = len(self.elements)
        down = [0] * n
        for i, row in enumerate(self._up):
            for j in _bits(row):
                down[j] |= 1 << i
        self._down = tuple(down)

    @classmethod
    def from_relations(cls, elements, pairs) -> "Poset":
        elements = tuple(elements)
        index = {x: i for i, x in enumerate(elements)}
        if len(index) != len(elements):
            raise ValueError("element ids must be unique")
        up = [1 << i for i in range(len(elements))]
        for a, b in pairs:
            try:
                up[index[a]] |= 1 << index[b]
            except KeyError as exc:
                raise UnknownElement(f"relation mentions undeclared element {exc.args[0]!r}") from None
        up = transitive_closure(up)
        for i, row in enumerate(up):
            for j in _bits(row & ~(1 << i)):
                if up[j] >> i & 1:
                    raise CycleError(
                        f"closure gives {elements[i]!r} <= {elements[j]!r} <= {elements[i]!r}")
        return cls(elements, up)

    # -- basic queries -------------------------------------------------
    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __repr__(self):
        return f"Poset({len(self)} elements, {len(self.relations())} strict relations)"

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        if set(self.elements) != set(other.elements):
            return False
        return set(self.relations()) == set(other.relations())

    def __hash__(self):
        return hash((frozenset(self.elements), frozenset(self.relations())))

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownElement(f"unknown element {x!r}") from None

    def leq(self, x, y) -> bool:
        return bool(self._up[self.index(x)] >> self.index(y) & 1)

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x, y) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def incomparable(self, x, y) -> bool:
        return not self.comparable(x, y)

    def up_mask(self, i: int) -> int:
        """Bitmask of the closed up-set of element index ``i``."""
        return self._up[i]

    def down_mask(self, i: int) -> int:
        return self._down[i]

    def upset(self, x, strict=True):
        i = self.index(x)
        mask = self._up[i] & ~(1 << i) if strict else self._up[i]
        return {self.elements[j] for j in _bits(mask)}

    def downset(self, x, strict=True):
        i = self.index(x)
        mask = self._down[i] & ~(1 << i) if strict else self._down[i]
        return {self.elements[j] for j in _bits(mask)}

    def relations(self):
        """All strict pairs ``(x, y)`` with ``x < y``, in index order."""
        els = self.elements
        return [(els[i], els[j]) for i, row in enumerate(self._up) for j in _bits(row & ~(1 << i))]

    def minimal_elements(self):
        return [x for i, x in enumerate(self.elements) if self._down[i] == 1 << i]

    def maximal_elements(self):
        return [x for i, x in enumerate(self.elements) if self._up[i] == 1 << i]

    def is_chain(self) -> bool:
        return all((self._up[i] | self._down[i]) == (1 << len(self)) - 1 for i in range(len(self)))

    def height(self) -> int:
        """Size of a longest chain."""
        best = {}
        for i in self.topological_indices():
            below = self._down[i] & ~(1 << i)
            best[i] = 1 + max((best[j] for j in _bits(below)), default=0)
        return max(best.values(), default=0)

    # -- derived structures --------------------------------------------
    def cover_index_pairs(self):
        pairs = []
        for i, row in enumerate(self._up):
            strict = row & ~(1 << i)
            for j in _bits(strict):
                # j covers i iff nothing strictly between
                if strict & self._down[j] & ~(1 << j) == 0:
                    pairs.append((i, j))
        return pairs

    def dual(self) -> "Poset":
        return Poset(self.elements, self._down)

    def subposet(self, keep: Iterable) -> "Poset":
        """Induced subposet on ``keep`` (order of ``self.elements`` is preserved)."""
        keep = set(keep)
        for x in keep:
            self.index(x)
        idx = [i for i, x in enumerate(self.elements) if x in keep]
        remap = {old: new for new, old in enumerate(idx)}
        rows = []
        for i in idx:
            row = 0
            for j in _bits(self._up[i]):
                if j in remap:
                    row |= 1 << remap[j]
            rows.append(row)
        return Poset([self.elements[i] for i in idx], rows)

    def topological_indices(self):
        """Indices in a linear extension, smallest available index first."""
        n = len(self)
        placed = 0
        order = []
        while len(order) < n:
            for i in range(n):
                if not placed >> i & 1 and self._down[i] & ~placed == 1 << i:
                    order.append(i)
                    placed |= 1 << i
                    break
        return order

    def linear_extension(self):
        return tuple(self.elements[i] for i in self.topological_indices())

    def is_linear_extension(self, order) -> bool:
        order = list(order)
        if len(order) != len(self) or set(order) != set(self.elements):
            return False
        seen = 0
        for x in order:
            i = self._index[x]
            if self._down[i] & ~(1 << i) & ~seen:
                return False
            seen |= 1 << i
        return True

    def relabel(self, mapping) -> "Poset":
        return Poset([mapping.get(x, x) for x in self.elements], self._up)

    def to_json(self):
        return {
            "elements": list(self.elements),
            "relations": [list(p) for p in self.relations()],
        }


def transitive_closure(up_rows):
    """Warshall on bitset rows; returns a new list."""
    up = list(up_rows)
    n = len(up)
    for k in range(n):
        bit = 1 << k
        row_k = up[k]
        for i in range(n):
            if up[i] & bit:
                up[i] |= row_k
    return up


def poset_from_relations(elements, pairs) -> Poset:
    return Poset.from_relations(elements, pairs)


def cover_relations(P: Poset):
    """The transitive reduction of ``P`` as a list of pairs ``(x, y)`` with ``x <: y``."""
    els = P.elements
    return [(els[i], els[j]) for i, j in P.cover_index_pairs()]


def cover_graph(P: Poset) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(P.elements)
    G.add_edges_from(cover_relations(P))
    return G


def incomparable_pairs(P: Poset):
    """Ordered incomparable pairs; both orientations are listed."""
    els = P.elements
    n = len(els)
    full = (1 << n) - 1
    out = []
    for i in range(n):
        for j in _bits(full & ~(P.up_mask(i) | P.down_mask(i))):
            out.append((els[i], els[j]))
    return out


def critical_index_pairs(P: Poset):
    """Index pairs ``(i, j)`` of critical pairs: ``i || j``, ``D(i) ⊆ D(j)`` and ``U(j) ⊆ U(i)``.

    A family of linear extensions is a realizer iff it puts ``j`` below ``i``
    for every critical pair.
    """
    n = len(P)
    full = (1 << n) - 1
    out = []
    for i in range(n):
        di = P.down_mask(i) & ~(1 << i)
        ui = P.up_mask(i) & ~(1 << i)
        for j in _bits(full & ~(P.up_mask(i) | P.down_mask(i))):
            dj = P.down_mask(j) & ~(1 << j)
            uj = P.up_mask(j) & ~(1 << j)
            if di & ~dj == 0 and uj & ~ui == 0:
                out.append((i, j))
    return out


def check_extension(P: Poset, order) -> None:
    if not P.is_linear_extension(order):
        raise NotAnExtension(f"{list(order)!r} is not a linear extension of {P!r}")


def verify_realizer(P: Poset, R):
    """Return ``(True, None)`` if ``R`` realizes ``P``, else ``(False, (x, y))``.

    The witness ``(x, y)`` is an incomparable pair that no extension reverses,
    i.e. ``x`` precedes ``y`` in every member of ``R``.  Every member of ``R``
    must be a linear extension of ``P`` (``NotAnExtension`` otherwise).
    """
    R = [tuple(L) for L in R]
    for L in R:
        check_extension(P, L)
    if not R:
        raise ValueError("a realizer has at least one extension")
    positions = [{x: k for k, x in enumerate(L)} for L in R]
    for x, y in incomparable_pairs(P):
        if not any(pos[y] < pos[x] for pos in positions):
            return False, (x, y)
    return True, None


def intersect_extensions(R) -> Poset:
    """Poset whose order is the intersection of the given linear orders."""
    R = [tuple(L) for L in R]
    if not R:
        raise ValueError("need at least one linear order")
    elements = R[0]
    if any(set(L) != set(elements) or len(L) != len(elements) for L in R):
        raise ValueError("linear orders are over different element sets")
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    full = (1 << n) - 1
    rows = [full] * n
    for L in R:
        above = 0
        for x in reversed(L):
            i = index[x]
            above |= 1 << i
            rows[i] &= above
    return Poset(elements, rows)


def remove_points(P: Poset, Z) -> Poset:
    Z = set(Z)
    for z in Z:
        P.index(z)
    return P.subposet(x for x in P.elements if x not in Z)


def twin_classes(P: Poset):
    """Groups of two or more elements with identical strict up- and down-sets.

    Returned as ``{representative: [duplicates...]}``; the representative is
    the first member in element order.
    """
    groups = {}
    for i, x in enumerate(P.elements):
        key = (P.up_mask(i) & ~(1 << i), P.down_mask(i) & ~(1 << i))
        groups.setdefault(key, []).append(x)
    return {g[0]: g[1:] for g in groups.values() if len(g) > 1}


def remove_twins(P: Poset):
    """Drop all but one member of each twin class; returns ``(reduced poset, twin classes)``."""
    twins = twin_classes(P)
    drop = {d for dups in twins.values() for d in dups}
    return remove_points(P, drop), twins


def reinsert_twins(extensions, twins):
    """Undo :func:`remove_twins` on a realizer of the reduced poset.

    Each duplicate is placed next to its representative: in increasing order
    in the first extension and decreasing order in all the others, so every
    pair inside a twin class is reversed.  A single extension is doubled first.
    """
    exts = [list(L) for L in extensions]
    if not twins:
        return [tuple(L) for L in exts]
    if len(exts) == 1:
        exts.append(list(exts[0]))
    out = []
    for k, L in enumerate(exts):
        new = []
        for x in L:
            group = [x] + list(twins.get(x, ()))
            new.extend(group if k == 0 else reversed(group))
        out.append(tuple(new))
    return out
