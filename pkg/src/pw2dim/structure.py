"""Parallel nearly outerplanar (PNO) blocks and canonical embeddings.

A PNO graph is a longest cycle read as ``x1 .. xk, yl .. y1`` plus chords and
once-subdivided chords, each joining some ``x_i`` to some ``y_j``, such that
the ears can be listed with both ``i`` and ``j`` non-decreasing.  These are
exactly the 2-connected graphs of pathwidth at most 2.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from .errors import (InconsistentOrientation, NoCanonicalCycle, NotBiconnected,
                     NotFMinorFree, TheoremViolation)
from .graph.blocks import BlockTree, biconnected_blocks, check_simple, is_biconnected
from .graph.decomposition import PathDecomposition
from .graph.minors import contains_minor, is_f_minor_free
from .graph.obstructions import forbidden_minors

EAR_KINDS = ("chord", "unidirected_up", "unidirected_down", "upbeak", "downbeak", "unclassified")


@dataclass(frozen=True)
class Ear:
    x_attach: object
    y_attach: object
    internal: Optional[object] = None
    kind: str = "unclassified"

    @property
    def is_chord(self) -> bool:
        return self.internal is None

    @property
    def is_beak(self) -> bool:
        return self.kind in ("upbeak", "downbeak")

    @property
    def is_unidirected(self) -> bool:
        return self.kind in ("unidirected_up", "unidirected_down")


@dataclass(frozen=True)
class PNOStructure:
    cycle_x: tuple
    cycle_y: tuple
    ears: tuple = ()

    def cycle(self):
        """The longest cycle in traversal order ``x1 .. xk, yl .. y1``."""
        return self.cycle_x + tuple(reversed(self.cycle_y))

    def vertices(self):
        return set(self.cycle_x) | set(self.cycle_y) | {e.internal for e in self.ears if e.internal is not None}

    def x_index(self, v):
        """1-based position on the x side, or ``None``."""
        try:
            return self.cycle_x.index(v) + 1
        except ValueError:
            return None

    def y_index(self, v):
        try:
            return self.cycle_y.index(v) + 1
        except ValueError:
            return None

    def side(self, v):
        if v in self.cycle_x:
            return "x"
        if v in self.cycle_y:
            return "y"
        return None

    def ear_indices(self, ear):
        return self.x_index(ear.x_attach), self.y_index(ear.y_attach)

    def mirrored(self) -> "PNOStructure":
        """The same structure read right to left."""
        ears = tuple(reversed(self.ears))
        return PNOStructure(tuple(reversed(self.cycle_x)), tuple(reversed(self.cycle_y)), ears)

    def swapped(self) -> "PNOStructure":
        """Exchange the two sides (the cycle is then traversed the other way)."""
        ears = tuple(dataclasses.replace(e, x_attach=e.y_attach, y_attach=e.x_attach,
                                         kind=_SWAPPED_KIND.get(e.kind, e.kind))
                     for e in self.ears)
        return PNOStructure(self.cycle_y, self.cycle_x, ears)

    def problems(self, B):
        """Violated structural conditions with respect to the block ``B``."""
        out = []
        cyc = self.cycle()
        if not self.cycle_x or not self.cycle_y:
            out.append("both sides must be nonempty")
        if len(set(cyc)) != len(cyc):
            out.append("cycle repeats a vertex")
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if not B.has_edge(a, b):
                out.append(f"cycle edge {a!r}-{b!r} missing")
        edges = {frozenset((a, b)) for a, b in zip(cyc, cyc[1:] + cyc[:1])}
        internals = set()
        for e in self.ears:
            if e.x_attach not in self.cycle_x or e.y_attach not in self.cycle_y:
                out.append(f"ear {e} does not join the two sides")
                continue
            if e.internal is None:
                if not B.has_edge(e.x_attach, e.y_attach):
                    out.append(f"chord {e} missing")
                edges.add(frozenset((e.x_attach, e.y_attach)))
            else:
                if e.internal in cyc or e.internal in internals:
                    out.append(f"ear vertex {e.internal!r} used twice")
                internals.add(e.internal)
                for a in (e.x_attach, e.y_attach):
                    if not B.has_edge(a, e.internal):
                        out.append(f"ear edge {a!r}-{e.internal!r} missing")
                    edges.add(frozenset((a, e.internal)))
        if set(cyc) | internals != set(B.nodes):
            out.append("structure does not cover the block")
        if edges != {frozenset(e) for e in B.edges}:
            out.append("structure edges differ from the block edges")
        idx = [self.ear_indices(e) for e in self.ears]
        for (i1, j1), (i2, j2) in zip(idx, idx[1:]):
            if None in (i1, j1, i2, j2):
                continue
            if i2 < i1 or j2 < j1:
                out.append("ear attachments are not monotone")
                break
        return out

    def is_valid(self, B) -> bool:
        return not self.problems(B)


_SWAPPED_KIND = {"unidirected_up": "unidirected_down", "unidirected_down": "unidirected_up"}


@dataclass(frozen=True)
class PNORefusal:
    """Why a 2-connected graph is not PNO, with an F-minor certificate."""

    reason: str          # crossing_ears | long_ear | high_degree_internal | unorderable_ears
    pattern: str
    embedding: object = field(compare=False)
    detail: str = ""


# ---------------------------------------------------------------------------
# longest cycles

def _order(G):
    return {v: i for i, v in enumerate(G.nodes)}


def _longest_cycles(B, order):
    """All longest cycles of ``B`` as tuples starting at their least vertex,
    second vertex less than the last, sorted lexicographically by ``order``."""
    verts = sorted(B.nodes, key=order.__getitem__)
    best = 3
    found = []
    nbrs = {v: sorted(B.adj[v], key=order.__getitem__) for v in verts}
    for si, s in enumerate(verts):
        allowed = set(verts[si + 1:])
        if len(allowed) + 1 < best:
            break
        path = [s]
        on_path = {s}

        def extend(v):
            nonlocal best, found
            for w in nbrs[v]:
                if w == s and len(path) >= 3 and order[path[1]] < order[path[-1]]:
                    if len(path) > best:
                        best, found = len(path), []
                    if len(path) == best:
                        found.append(tuple(path))
                elif w in allowed and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    extend(w)
                    path.pop()
                    on_path.discard(w)

        extend(s)
    return sorted(found, key=lambda c: [order[v] for v in c])


# ---------------------------------------------------------------------------
# recognition

def _interleave(pos, n, e1, e2):
    """Do chords ``e1`` and ``e2`` (pairs of cycle positions) cross strictly?"""
    a, b = sorted(pos[v] for v in e1)
    c, d = (pos[v] for v in e2)
    if len({a, b, c, d}) < 4:
        return False
    return (a < c < b) != (a < d < b)


def _ears_for_cycle(B, cycle):
    """Bridges of ``cycle`` in ``B``; returns ``(ears, problem)``.

    ``ears`` are ``(p, q, internal)`` triples.  ``problem`` is ``None`` or
    ``(reason, detail)`` for the first structural test that fails.
    """
    on_cycle = set(cycle)
    n = len(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    ears = []
    for u, v in B.edges:
        if u in on_cycle and v in on_cycle and (pos[u] - pos[v]) % n not in (1, n - 1):
            ears.append((u, v, None))
    rest = B.subgraph(v for v in B if v not in on_cycle)
    for comp in nx.connected_components(rest):
        if len(comp) >= 2:
            return None, ("long_ear", f"bridge through {sorted(map(repr, comp))}")
        (m,) = comp
        att = list(B.adj[m])
        if len(att) >= 3:
            return None, ("high_degree_internal", f"vertex {m!r} has degree {len(att)}")
        ears.append((att[0], att[1], m))
    for k, e1 in enumerate(ears):
        for e2 in ears[k + 1:]:
            if _interleave(pos, n, e1[:2], e2[:2]):
                return None, ("crossing_ears", f"ears {e1} and {e2} cross")
    return ears, None


def _label(cycle, ears, order):
    """Choose sides for a cycle with non-crossing ears, or ``None``.

    Candidate labellings are every split of the cycle into two arcs read in
    either direction; the x side must hold the least attachment vertex and
    the lexicographically least ``(x, y)`` sequence wins.
    """
    n = len(cycle)
    if not ears:
        return tuple(cycle[:-1]), (cycle[-1],)
    least = min((v for e in ears for v in e[:2]), key=order.__getitem__)
    best = None
    for seq in (list(cycle), [cycle[0]] + list(reversed(cycle[1:]))):
        for s in range(n):
            rot = seq[s:] + seq[:s]
            for k in range(1, n):
                xs, ys = rot[:k], rot[k:][::-1]
                if least not in xs:
                    continue
                xset = set(xs)
                if all((p in xset) != (q in xset) for p, q, _ in ears):
                    key = ([order[v] for v in xs], [order[v] for v in ys])
                    if best is None or key < best[0]:
                        best = (key, tuple(xs), tuple(ys))
    if best is None:
        return None
    return best[1], best[2]


def _structure(xs, ys, ears, order):
    xi = {v: i for i, v in enumerate(xs)}
    out = []
    for p, q, m in ears:
        if p not in xi:
            p, q = q, p
        out.append(Ear(p, q, m))
    yi = {v: i for i, v in enumerate(ys)}
    out.sort(key=lambda e: (xi[e.x_attach], yi[e.y_attach],
                            -1 if e.internal is None else order[e.internal]))
    return PNOStructure(tuple(xs), tuple(ys), tuple(out))


def _structure_for_cycle(B, cycle, order):
    """``PNOStructure`` built on ``cycle`` or ``(reason, detail)``."""
    ears, problem = _ears_for_cycle(B, cycle)
    if problem is not None:
        return problem
    sides = _label(cycle, ears, order)
    if sides is None:
        return ("unorderable_ears", "no split of the cycle separates every ear's ends")
    S = _structure(*sides, ears, order)
    assert S.is_valid(B), S.problems(B)
    return S


_PREFERRED = {
    "crossing_ears": "K4",
    "long_ear": "T2",
    "high_degree_internal": "K4",
    "unorderable_ears": "T1",
}


def _certificate(B, preferred):
    family = dict(forbidden_minors())
    for name in [preferred] + [n for n in ("K4", "T1", "T2") if n != preferred]:
        emb = contains_minor(B, family[name], cap=max(40, B.number_of_nodes()))
        if emb is not None:
            return name, emb
    raise TheoremViolation("2-connected graph is not PNO yet has none of K4, T1, T2 as a minor")


def recognize_pno(B):
    """Return a :class:`PNOStructure` for ``B`` or a :class:`PNORefusal`.

    The cycle used is the lexicographically least longest cycle.
    """
    check_simple(B)
    if not is_biconnected(B):
        raise NotBiconnected("recognize_pno needs a 2-connected graph")
    order = _order(B)
    cycle = _longest_cycles(B, order)[0]
    result = _structure_for_cycle(B, cycle, order)
    if isinstance(result, PNOStructure):
        return result
    reason, detail = result
    name, emb = _certificate(B, _PREFERRED[reason])
    return PNORefusal(reason, name, emb, detail)


# ---------------------------------------------------------------------------
# path decomposition

def pno_path_decomposition(S: PNOStructure) -> PathDecomposition:
    """Width-2 path decomposition sweeping both sides left to right."""
    xs, ys = S.cycle_x, S.cycle_y
    k, l = len(xs), len(ys)
    ears = [(S.x_index(e.x_attach), S.y_index(e.y_attach), e) for e in S.ears]
    bags = [frozenset((xs[0], ys[0]))]
    i = j = 1
    e = 0
    while True:
        while e < len(ears) and ears[e][:2] == (i, j):
            m = ears[e][2].internal
            if m is not None:
                bags.append(frozenset((xs[i - 1], ys[j - 1], m)))
            e += 1
        if e < len(ears):
            advance_x = ears[e][0] > i
        elif i < k:
            advance_x = True
        elif j < l:
            advance_x = False
        else:
            break
        if advance_x:
            bags.append(frozenset((xs[i - 1], xs[i], ys[j - 1])))
            i += 1
        else:
            bags.append(frozenset((xs[i - 1], ys[j - 1], ys[j])))
            j += 1
    return PathDecomposition(tuple(bags))


# ---------------------------------------------------------------------------
# canonical cycles and embeddings

def external_vertices(B, G):
    """Vertices of ``B`` with a neighbour in ``G`` outside ``B``."""
    inside = set(B.nodes)
    return {v for v in B if any(w not in inside for w in G.adj[v])}


def select_canonical_cycle(B, G):
    """PNO structure of block ``B`` whose cycle holds every vertex with a neighbour outside ``B``.

    All longest cycles are tried; the one leaving the fewest such vertices
    off the cycle wins, ties broken by the lexicographically least sequence.
    """
    check_simple(B)
    if not is_biconnected(B):
        raise NotBiconnected("select_canonical_cycle needs a 2-connected block")
    # number vertices as in the host graph so choices agree across blocks
    order = {v: i for i, v in enumerate(G.nodes)}
    B = nx.Graph(B.subgraph(sorted(B.nodes, key=order.__getitem__)))
    ext = external_vertices(B, G)
    best = None
    for cycle in _longest_cycles(B, order):
        S = _structure_for_cycle(B, cycle, order)
        if not isinstance(S, PNOStructure):
            reason, _ = S
            name, emb = _certificate(B, _PREFERRED[reason])
            raise NotFMinorFree(name, emb, f"block is not PNO ({reason}); contains {name}")
        missing = len(ext - set(cycle))
        if best is None or missing < best[0]:
            best = (missing, S)
        if missing == 0:
            break
    missing, S = best
    if missing:
        name, emb = None, None
        for pname, H in forbidden_minors():
            emb = contains_minor(G, H, cap=max(40, G.number_of_nodes()))
            if emb is not None:
                name = pname
                break
        raise NoCanonicalCycle(name, emb, f"every longest cycle misses {missing} attachment vertices")
    return S


@dataclass(frozen=True)
class CanonicalEmbedding:
    graph: nx.Graph = field(compare=False)
    block_tree: BlockTree
    pno_per_block: dict = field(hash=False)   # block index -> PNOStructure
    orientation: dict = field(hash=False)     # block index -> "x_least" or "mirrored" etc.

    def block_of_ear_vertex(self, v):
        for b, S in self.pno_per_block.items():
            if any(e.internal == v for e in S.ears):
                return b
        return None

    def ear_internal_vertices(self):
        return {e.internal for S in self.pno_per_block.values() for e in S.ears if e.internal is not None}

    def outer_face_vertices(self):
        """Vertices on the unbounded face: everything except ear-internal vertices."""
        inner = self.ear_internal_vertices()
        return [v for v in self.graph.nodes if v not in inner]

    def ears(self):
        """``(block index, Ear)`` pairs in block order, left to right."""
        return [(b, e) for b in sorted(self.pno_per_block) for e in self.pno_per_block[b].ears]

    def problems(self):
        out = []
        G = self.graph
        for b, S in self.pno_per_block.items():
            B = G.subgraph(self.block_tree.blocks[b])
            out += [f"block {b}: {p}" for p in S.problems(B)]
            cyc = set(S.cycle())
            for v in external_vertices(B, G) - cyc:
                out.append(f"block {b}: {v!r} has an outside neighbour but is off the cycle")
        return out

    def is_valid(self) -> bool:
        return not self.problems()

    def with_blocks(self, pno_per_block, orientation=None) -> "CanonicalEmbedding":
        return dataclasses.replace(self, pno_per_block=dict(pno_per_block),
                                   orientation=dict(orientation or self.orientation))

    def reoriented(self, flips) -> "CanonicalEmbedding":
        """Apply ``{block: "mirror" | "swap" | "both"}`` to the chosen blocks."""
        pno, orient = dict(self.pno_per_block), dict(self.orientation)
        for b, how in flips.items():
            S = pno[b]
            if how in ("mirror", "both"):
                S = S.mirrored()
            if how in ("swap", "both"):
                S = S.swapped()
            pno[b] = S
            orient[b] = how if orient.get(b, "default") == "default" else f"{orient[b]}+{how}"
        return self.with_blocks(pno, orient)


def canonical_embedding(G, check=True) -> CanonicalEmbedding:
    """Block tree plus a canonical PNO structure for every nontrivial block.

    Each block is labelled with the x side holding its least attachment
    vertex; ``orientation`` records ``"default"`` for that choice.
    """
    check_simple(G)
    if check:
        free, name, emb = is_f_minor_free(G, cap=max(40, G.number_of_nodes()))
        if not free:
            raise NotFMinorFree(name, emb)
    tree = biconnected_blocks(G)
    pno = {}
    for b in tree.nontrivial():
        pno[b] = select_canonical_cycle(G.subgraph(tree.blocks[b]), G)
    E = CanonicalEmbedding(G, tree, pno, {b: "default" for b in pno})
    assert E.is_valid(), E.problems()
    return E


def classify_ears(P, E: CanonicalEmbedding) -> CanonicalEmbedding:
    """Tag every ear by how its inner vertex sits between its attachments in ``P``."""
    pno = {}
    for b, S in E.pno_per_block.items():
        ears = []
        for e in S.ears:
            x, y, z = e.x_attach, e.y_attach, e.internal
            if z is None:
                kind = "chord"
            elif P.lt(x, z) and P.lt(z, y):
                kind = "unidirected_up"
            elif P.lt(y, z) and P.lt(z, x):
                kind = "unidirected_down"
            elif P.lt(x, z) and P.lt(y, z):
                kind = "upbeak"
            elif P.lt(z, x) and P.lt(z, y):
                kind = "downbeak"
            else:
                raise InconsistentOrientation(f"ear {x!r}-{z!r}-{y!r} is not oriented by the poset")
            ears.append(dataclasses.replace(e, kind=kind))
        pno[b] = dataclasses.replace(S, ears=tuple(ears))
    return E.with_blocks(pno)
