"""Realizers of size at most 17 for posets with F-minor-free cover graphs.

Pipeline for one connected component ``P``:

1. fix a canonical embedding of the cover graph and classify its ears;
2. ``Z`` = inner vertices of unidirected ears (each ``l < z < u``);
3. on ``Q = P - Z`` orient every beak's attachments upward (``Y``) and
   downward (``D``); both have outerplanar cover graphs and ``Q = Y & D``;
4. realize ``Y`` and ``D`` with at most 4 extensions each (exact search);
5. lift the union to ``P`` by inserting ``Z`` twice per extension and add one
   extension ``L0`` reversing the bad-diamond pairs.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import networkx as nx

from .errors import (CycleError, CycleInExtension, NotAnExtension, NotARealizer,
                     NotFMinorFree, NotOuterplanar, SizeCapExceeded, TheoremViolation,
                     UnexpectedCycle)
from .exact_dim import dimension_exact
from .graph.blocks import biconnected_blocks
from .graph.minors import is_f_minor_free, is_outerplanar
from .poset import (Poset, check_extension, cover_graph, intersect_extensions,
                    reinsert_twins, remove_points, remove_twins, verify_realizer)
from .structure import CanonicalEmbedding, Ear, canonical_embedding, classify_ears

DEFAULT_CAP = 18
MINOR_CAP = 40


@dataclass(frozen=True)
class SubdividingPointInfo:
    z: object
    lower: object
    upper: object
    block: int


@dataclass(frozen=True)
class BadDiamond:
    a: object
    b: object
    lower_a: object
    upper_a: object
    lower_b: object
    upper_b: object


@dataclass(frozen=True)
class ExtensionPair:
    upsilon: Poset
    delta: Poset


# ---------------------------------------------------------------------------
# subdividing points

def interior_points_Z(P: Poset, E: CanonicalEmbedding):
    """Inner vertices of unidirected ears with their lower and upper elements."""
    out = []
    for b, ear in E.ears():
        if ear.kind == "unclassified":
            raise ValueError("classify_ears must run before interior_points_Z")
        if not ear.is_unidirected:
            continue
        lo, hi = (ear.x_attach, ear.y_attach) if ear.kind == "unidirected_up" else (ear.y_attach, ear.x_attach)
        out.append(SubdividingPointInfo(ear.internal, lo, hi, b))
    out.sort(key=lambda s: P.index(s.z))
    return out


def reduce_embedding(Q: Poset, E: CanonicalEmbedding, Z):
    """Embedding of ``cover_graph(Q)`` for ``Q = P - Z`` inherited from ``E``.

    Each unidirected ear ``l z u`` becomes the chord ``l u`` when ``l <: u`` in
    ``Q`` and disappears otherwise; cycles and all other ears are unchanged.
    """
    zs = {s.z for s in Z}
    GQ = cover_graph(Q)
    tree = biconnected_blocks(GQ)
    where = {blk: i for i, blk in enumerate(tree.blocks)}
    pno, orient = {}, {}
    for b, S in E.pno_per_block.items():
        ears, seen = [], set()
        for e in S.ears:
            if e.internal in zs:
                if not GQ.has_edge(e.x_attach, e.y_attach):
                    continue
                e = Ear(e.x_attach, e.y_attach, None, "chord")
            key = (e.x_attach, e.y_attach, e.internal)
            if key not in seen:
                seen.add(key)
                ears.append(e)
        S2 = type(S)(S.cycle_x, S.cycle_y, tuple(ears))
        verts = frozenset(S2.vertices())
        if verts not in where:
            raise TheoremViolation("removing subdividing points changed the block structure")
        pno[where[verts]] = S2
        orient[where[verts]] = E.orientation.get(b, "default")
    F = CanonicalEmbedding(GQ, tree, pno, orient)
    problems = F.problems()
    if problems or len(pno) != len(tree.nontrivial()):
        raise TheoremViolation(f"inherited embedding is invalid: {problems}")
    return F


# ---------------------------------------------------------------------------
# lifting a realizer of P - Z

def lift_realizer(P: Poset, Z, R):
    """Insert ``Z`` into every ``L`` of ``R``: ``L'`` just above lowers, ``L''`` just below uppers.

    Points sharing a lower element enter ``L'`` in decreasing order of their
    uppers' positions; points sharing an upper element enter ``L''`` in
    decreasing order of their lowers' positions.  Returns ``[L1', .., Ld', L1'', .., Ld'']``.
    """
    zs = [s.z for s in Z]
    Q = remove_points(P, zs)
    try:
        ok, witness = verify_realizer(Q, R)
    except NotAnExtension as exc:
        raise NotARealizer(str(exc)) from None
    if not ok:
        raise NotARealizer(f"pair {witness} is not reversed")
    by_lower, by_upper = {}, {}
    for s in Z:
        by_lower.setdefault(s.lower, []).append(s)
        by_upper.setdefault(s.upper, []).append(s)
    primes, doubles = [], []
    for L in R:
        pos = {x: k for k, x in enumerate(L)}
        one, two = [], []
        for w in L:
            one.append(w)
            group = sorted(by_lower.get(w, ()), key=lambda s: (-pos[s.upper], -P.index(s.z)))
            one.extend(s.z for s in group)
        for w in L:
            group = sorted(by_upper.get(w, ()), key=lambda s: (-pos[s.lower], P.index(s.z)))
            two.extend(s.z for s in group)
            two.append(w)
        check_extension(P, one)
        check_extension(P, two)
        primes.append(tuple(one))
        doubles.append(tuple(two))
    return primes + doubles


def bad_diamonds(P: Poset, Z):
    """Ordered pairs ``(a, b)`` of ``Z`` with distinct lowers and uppers,
    ``l_a < l_b``, ``u_a < u_b`` and ``a || b``."""
    out = []
    for sa in Z:
        for sb in Z:
            if sa.z == sb.z or sa.lower == sb.lower or sa.upper == sb.upper:
                continue
            if P.lt(sa.lower, sb.lower) and P.lt(sa.upper, sb.upper) and P.incomparable(sa.z, sb.z):
                out.append(BadDiamond(sa.z, sb.z, sa.lower, sa.upper, sb.lower, sb.upper))
    return out


def build_L0(P: Poset, diamonds):
    """Linear extension with ``b`` before ``a`` for every bad diamond ``(a, b)``.

    Topological sort of the cover digraph plus the edges ``b -> a``.
    """
    n = len(P)
    succ = [set() for _ in range(n)]
    for i, j in P.cover_index_pairs():
        succ[i].add(j)
    for d in diamonds:
        succ[P.index(d.b)].add(P.index(d.a))
    indeg = [0] * n
    for i in range(n):
        for j in succ[i]:
            indeg[j] += 1
    heap = [i for i in range(n) if indeg[i] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        i = heapq.heappop(heap)
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, j)
    if len(order) < n:
        stuck = [P.elements[i] for i in range(n) if indeg[i] > 0]
        raise UnexpectedCycle(f"covers plus bad-diamond edges contain a directed cycle among {stuck}")
    L = tuple(P.elements[i] for i in order)
    check_extension(P, L)
    return L


# ---------------------------------------------------------------------------
# beak orientations

def _beak_pairs(E):
    """``{block: [(x, y), ...]}`` for every beak, left to right."""
    out = {}
    for b, S in E.pno_per_block.items():
        out[b] = [(e.x_attach, e.y_attach) for e in S.ears if e.is_beak]
    return out


def _extend(P, extra):
    try:
        return Poset.from_relations(P.elements, list(P.relations()) + list(extra))
    except CycleError as exc:
        raise CycleInExtension(str(exc)) from None


def build_upsilon_delta(P: Poset, E: CanonicalEmbedding) -> ExtensionPair:
    """``Y`` adds ``x_i < y_i`` for every beak of every block, ``D`` adds ``y_i < x_i``."""
    beaks = _beak_pairs(E)
    up = [p for pairs in beaks.values() for p in pairs]
    upsilon = _extend(P, up)
    delta = _extend(P, [(y, x) for x, y in up])
    # blocks meet in single points, so each block's share must close up on its own
    for b, pairs in beaks.items():
        if not pairs:
            continue
        verts = E.block_tree.blocks[b]
        local = P.subposet(verts)
        for ext, extra in ((upsilon, pairs), (delta, [(y, x) for x, y in pairs])):
            if ext.subposet(verts) != _extend(local, extra):
                raise TheoremViolation(f"beak orientations interact across blocks at block {b}")
    return ExtensionPair(upsilon, delta)


def verify_intersection(P: Poset, pair: ExtensionPair):
    """``(True, None)`` if ``P`` is the intersection of ``Y`` and ``D``, else a witness pair."""
    for x in P.elements:
        both = pair.upsilon.upset(x) & pair.delta.upset(x)
        mine = P.upset(x)
        if both != mine:
            y = min(both ^ mine, key=P.index)
            return False, (x, y)
    return True, None


# ---------------------------------------------------------------------------
# outerplanar step and the full pipeline

def outerplanar_realizer(P: Poset, cap=DEFAULT_CAP):
    """Minimum realizer of a poset with outerplanar cover graph; at most 4 extensions."""
    if not is_outerplanar(cover_graph(P)):
        raise NotOuterplanar("cover graph is not outerplanar")
    if len(P) > cap:
        raise SizeCapExceeded("outerplanar_realizer", len(P), cap)
    res = dimension_exact(P, cap=cap)
    if res.dimension > 4:
        raise TheoremViolation(f"outerplanar cover graph but dimension {res.dimension}")
    return list(res.witness)


def _dedupe(R):
    seen, out = set(), []
    for L in R:
        L = tuple(L)
        if L not in seen:
            seen.add(L)
            out.append(L)
    return out


@dataclass
class ComponentRun:
    poset: Poset
    embedding: CanonicalEmbedding
    Z: list
    pair: ExtensionPair
    realizer_upsilon: list
    realizer_delta: list
    bad_diamonds: list
    extensions: list


def realize_component(P: Poset, cap=DEFAULT_CAP, embedding=None) -> ComponentRun:
    """Run the pipeline on a poset with connected, F-minor-free cover graph."""
    if len(P) == 1:
        L = (P.elements[0],)
        one = Poset(P.elements, [1])
        return ComponentRun(P, None, [], ExtensionPair(one, one), [L], [L], [], [L])
    E = embedding if embedding is not None else canonical_embedding(cover_graph(P), check=False)
    E = classify_ears(P, E)
    Z = interior_points_Z(P, E)
    Q = remove_points(P, [s.z for s in Z])
    EQ = reduce_embedding(Q, E, Z) if Z else E
    EQ = classify_ears(Q, EQ)
    if any(e.is_unidirected for _, e in EQ.ears()):
        raise TheoremViolation("P - Z still has a unidirected ear")
    pair = build_upsilon_delta(Q, EQ)
    ok, witness = verify_intersection(Q, pair)
    if not ok:
        raise TheoremViolation(f"P - Z differs from the intersection of its beak extensions at {witness}")
    RU = outerplanar_realizer(pair.upsilon, cap)
    RD = outerplanar_realizer(pair.delta, cap)
    RQ = _dedupe(RU + RD)
    ok, witness = verify_realizer(Q, RQ)
    if not ok:
        raise TheoremViolation(f"union of beak-extension realizers misses {witness}")
    diamonds = []
    if Z:
        lifted = lift_realizer(P, Z, RQ)
        diamonds = bad_diamonds(P, Z)
        exts = _dedupe(lifted + [build_L0(P, diamonds)])
    else:
        exts = RQ
    return ComponentRun(P, E, Z, pair, RU, RD, diamonds, exts)


def merge_components(parts):
    """Realizer of a disjoint sum from realizers of its parts.

    Every part is padded to a common size ``t >= 2``; the first extension
    stacks the parts in order, the second in reverse.
    """
    parts = [list(R) for R in parts]
    if len(parts) == 1:
        return parts[0]
    t = max(2, max(len(R) for R in parts))
    for R in parts:
        while len(R) < t:
            R.append(R[-1])
    out = []
    for k in range(t):
        seq = parts if k != 1 else list(reversed(parts))
        out.append(tuple(x for R in seq for x in R[k]))
    return out


@dataclass
class RealizeResult:
    poset: Poset
    extensions: list
    Z: list
    bad_diamonds: list
    twins: dict
    components: list = field(repr=False)
    verified: bool = False

    @property
    def dimension_upper_bound(self) -> int:
        return len(self.extensions)

    def to_json(self):
        return {
            "dimension_upper_bound": self.dimension_upper_bound,
            "extensions": [[str(x) for x in L] for L in self.extensions],
            "Z": [str(s.z) for s in self.Z],
            "bad_diamonds": [[str(d.a), str(d.b)] for d in self.bad_diamonds],
            "certificate": "verified" if self.verified else "unverified",
        }


def realize_bounded(P: Poset, cap=DEFAULT_CAP, verify=True) -> RealizeResult:
    """Realizer of ``P`` with at most 17 extensions; the cover graph must be F-minor-free."""
    G = cover_graph(P)
    free, name, emb = is_f_minor_free(G, cap=max(MINOR_CAP, len(P)))
    if not free:
        raise NotFMinorFree(name, emb)
    if len(P) == 0:
        return RealizeResult(P, [()], [], [], {}, [], True)
    Q, twins = remove_twins(P)
    GQ = cover_graph(Q)
    order = {x: i for i, x in enumerate(Q.elements)}
    comps = sorted(nx.connected_components(GQ), key=lambda c: min(order[x] for x in c))
    runs = [realize_component(Q.subposet(c), cap) for c in comps]
    exts = merge_components([run.extensions for run in runs])
    exts = _dedupe(reinsert_twins(exts, twins))
    result = RealizeResult(
        P, exts,
        [s for run in runs for s in run.Z],
        [d for run in runs for d in run.bad_diamonds],
        twins, runs)
    if verify:
        ok, witness = verify_realizer(P, exts)
        if not ok:
            raise TheoremViolation(f"pipeline output misses pair {witness}")
        if intersect_extensions(exts) != P:
            raise TheoremViolation("pipeline output does not intersect to P")
        if len(exts) > 17:
            raise TheoremViolation(f"pipeline produced {len(exts)} extensions")
        result.verified = True
    return result
