"""Minor containment for small fixed patterns.

``H`` is a minor of ``G`` iff ``G`` contains a subdivision of some graph
obtained from ``H`` by replacing every vertex of degree >= 4 with a tree whose
inner nodes have degree >= 3 (the "split variants" of ``H``).  Each variant is
searched as a topological minor: branch vertices are mapped injectively to
host vertices of large enough degree and the links between them are routed
as internally disjoint paths.  Degree-2 pattern vertices become minimum path
lengths and degree-1 vertices become free path ends.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import networkx as nx

from ..errors import SizeCapExceeded
from .blocks import check_simple, is_biconnected

DEFAULT_CAP = 40


@dataclass(frozen=True)
class MinorEmbedding:
    pattern: nx.Graph = field(compare=False)
    branch_sets: dict = field(hash=False)

    def problems(self, G):
        out = []
        seen = {}
        for h, bs in self.branch_sets.items():
            if not bs:
                out.append(f"empty branch set for {h!r}")
                continue
            for v in bs:
                if v not in G:
                    out.append(f"{v!r} is not a host vertex")
                elif v in seen:
                    out.append(f"{v!r} is in the branch sets of {seen[v]!r} and {h!r}")
                seen[v] = h
            if all(v in G for v in bs) and not nx.is_connected(G.subgraph(bs)):
                out.append(f"branch set of {h!r} is not connected")
        if set(self.branch_sets) != set(self.pattern.nodes):
            out.append("branch sets do not match the pattern vertices")
            return out
        for a, b in self.pattern.edges:
            A, B = self.branch_sets[a], self.branch_sets[b]
            if not any(G.has_edge(u, v) for u in A for v in B):
                out.append(f"no host edge realizes pattern edge {a!r}-{b!r}")
        return out

    def is_valid(self, G) -> bool:
        return not self.problems(G)


# ---------------------------------------------------------------------------
# pattern compilation

def _split_node(G, node, origin, counter):
    """All ways of expanding ``node`` (degree >= 4) into a tree of degree->=3 nodes."""
    nbrs = sorted(G.adj[node], key=repr)
    out = [(G, origin)]
    d = len(nbrs)
    if d < 4:
        return out
    seen_parts = set()
    first, rest = nbrs[0], nbrs[1:]
    for r in range(1, d - 2):
        for combo in itertools.combinations(rest, r):
            A = (first,) + combo
            B = tuple(x for x in nbrs if x not in A)
            if len(B) < 2:
                continue
            key = frozenset([frozenset(A), frozenset(B)])
            if key in seen_parts:
                continue
            seen_parts.add(key)
            n1, n2 = ("split", node, next(counter)), ("split", node, next(counter))
            S = G.copy()
            S.remove_node(node)
            S.add_edges_from((n1, a) for a in A)
            S.add_edges_from((n2, b) for b in B)
            S.add_edge(n1, n2)
            org = dict(origin)
            del org[node]
            org[n1] = org[n2] = origin[node]
            for G1, o1 in _split_node(S, n1, org, counter):
                out.extend(_split_node(G1, n2, o1, counter))
    return out


def _variants(H):
    counter = itertools.count()
    variants = [(H.copy(), {v: v for v in H.nodes})]
    for v in list(H.nodes):
        if H.degree(v) < 4:
            continue
        nxt = []
        for G, origin in variants:
            nxt.extend(_split_node(G, v, origin, counter))
        variants = nxt
    # one representative per isomorphism class
    kept = []
    for G, origin in variants:
        h = nx.weisfeiler_lehman_graph_hash(G)
        if any(h == kh and nx.is_isomorphic(G, K) for K, _, kh in kept):
            continue
        kept.append((G, origin, h))
    # prefer variants with few branch vertices: they usually succeed fastest
    kept.sort(key=lambda t: (sum(1 for v in t[0] if t[0].degree(v) >= 3), t[0].number_of_nodes()))
    return [(G, origin) for G, origin, _ in kept]


@dataclass
class _Link:
    start: object
    end: object          # branch node, or a leaf node when ``free_end``
    inner: tuple         # pattern nodes strictly between start and end
    free_end: bool


@dataclass
class _Skeleton:
    graph: nx.Graph
    origin: dict
    branches: list       # in search order
    degree: dict
    links: list
    isolated: list


def _skeleton(G, origin):
    deg = dict(G.degree)
    branch = {v for v in G if deg[v] >= 3}
    isolated = [v for v in G if deg[v] == 0]
    for comp in nx.connected_components(G):
        if any(v in branch for v in comp) or len(comp) == 1:
            continue
        comp = sorted(comp, key=repr)
        ends = [v for v in comp if deg[v] == 1]
        branch.add(ends[0] if ends else comp[0])
    leaves = {v for v in G if deg[v] == 1 and v not in branch}

    links, seen = [], set()
    for b in sorted(branch, key=repr):
        for nb in sorted(G.adj[b], key=repr):
            path, cur = [], nb
            used = {frozenset((b, nb))}
            while cur not in branch and cur not in leaves:
                path.append(cur)
                nxt = next(w for w in G.adj[cur] if frozenset((cur, w)) not in used)
                used.add(frozenset((cur, nxt)))
                cur = nxt
            key = frozenset(used)
            if key in seen:
                continue
            seen.add(key)
            links.append(_Link(b, cur, tuple(path), cur in leaves))

    sdeg = {b: 0 for b in branch}
    for ln in links:
        sdeg[ln.start] += 1
        if not ln.free_end:
            sdeg[ln.end] += 1

    # BFS order over the skeleton, highest degree first in each component
    order = []
    todo = sorted((b for b in branch if b not in isolated), key=lambda b: (-sdeg[b], repr(b)))
    adjacent = {b: set() for b in branch}
    for ln in links:
        if not ln.free_end:
            adjacent[ln.start].add(ln.end)
            adjacent[ln.end].add(ln.start)
    while todo:
        root = todo[0]
        queue = [root]
        placed = {root}
        while queue:
            b = queue.pop(0)
            order.append(b)
            for c in sorted(adjacent[b] - placed, key=lambda c: (-sdeg[c], repr(c))):
                placed.add(c)
                queue.append(c)
        todo = [b for b in todo if b not in placed]
    order += isolated
    return _Skeleton(G, origin, order, sdeg, links, isolated)


@lru_cache(maxsize=64)
def _compiled(key):
    nodes, edges = key
    H = nx.Graph()
    H.add_nodes_from(nodes)
    H.add_edges_from(edges)
    return [_skeleton(G, origin) for G, origin in _variants(H)]


def _pattern_key(H):
    return (tuple(H.nodes), frozenset(frozenset(e) for e in H.edges))


def _compile(H):
    nodes, edges = _pattern_key(H)
    return _compiled((nodes, tuple(sorted((tuple(sorted(e, key=repr)) for e in edges), key=repr))))


# ---------------------------------------------------------------------------
# host search

def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(x):
    return bin(x).count("1")


class _Search:
    def __init__(self, sk: _Skeleton, adj):
        self.sk = sk
        self.adj = adj
        self.n = len(adj)
        self.hdeg = [_popcount(a) for a in adj]
        self.image = {}
        self.routes = {}   # link index -> tuple of host vertices, start..end
        pos = {b: i for i, b in enumerate(sk.branches)}
        self.due = {b: [] for b in sk.branches}
        self.pendant = []
        for li, ln in enumerate(sk.links):
            if ln.free_end:
                self.pendant.append(li)
            else:
                later = ln.start if pos[ln.start] >= pos[ln.end] else ln.end
                self.due[later].append(li)
        for b in self.due:
            self.due[b].sort(key=lambda li: (self._link_key(li), li))
        self.pendant.sort(key=lambda li: (-len(sk.links[li].inner), li))
        self.need = len(sk.branches) + sum(len(ln.inner) + ln.free_end for ln in sk.links)

    def _link_key(self, li):
        ln = self.sk.links[li]
        ends = tuple(sorted((repr(ln.start), repr(ln.end))))
        return (ends, len(ln.inner), ln.free_end)

    def run(self):
        if self.need > self.n:
            return False
        return self._place(0, 0)

    def _place(self, bi, used):
        sk = self.sk
        if bi == len(sk.branches):
            return self._pendants(0, used)
        b = sk.branches[bi]
        want = sk.degree[b]
        for h in range(self.n):
            if used >> h & 1 or self.hdeg[h] < want:
                continue
            self.image[b] = h
            if self._route(b, 0, used | 1 << h, bi):
                return True
            del self.image[b]
        return False

    def _route(self, b, k, used, bi):
        lis = self.due[b]
        if k == len(lis):
            return self._place(bi + 1, used)
        li = lis[k]
        ln = self.sk.links[li]
        src, dst = self.image[ln.start], self.image[ln.end]
        lower = None
        if k > 0 and self._link_key(lis[k - 1]) == self._link_key(li):
            lower = self.routes[lis[k - 1]]
        for path in self._paths(src, dst, used, len(ln.inner)):
            if lower is not None and path <= lower:
                continue
            self.routes[li] = path
            inner_mask = 0
            for v in path[1:-1]:
                inner_mask |= 1 << v
            if self._route(b, k + 1, used | inner_mask, bi):
                return True
            del self.routes[li]
        return False

    def _paths(self, src, dst, used, min_inner):
        adj = self.adj
        # DFS over simple paths whose inner vertices avoid ``used``
        stack = [(src, (src,), used)]
        while stack:
            v, path, occ = stack.pop()
            nbrs = adj[v]
            if nbrs >> dst & 1 and len(path) - 1 >= min_inner:
                if not (src == dst and len(path) < 3):
                    yield path + (dst,)
            free = nbrs & ~occ
            # push in reverse so the smallest neighbour is explored first
            for w in sorted(_bits(free), reverse=True):
                stack.append((w, path + (w,), occ | 1 << w))

    def _pendants(self, k, used):
        if k == len(self.pendant):
            return True
        li = self.pendant[k]
        ln = self.sk.links[li]
        src = self.image[ln.start]
        steps = len(ln.inner) + 1
        stack = [(src, (src,), used)]
        while stack:
            v, path, occ = stack.pop()
            if len(path) - 1 == steps:
                self.routes[li] = path
                if self._pendants(k + 1, occ):
                    return True
                del self.routes[li]
                continue
            for w in sorted(_bits(self.adj[v] & ~occ), reverse=True):
                stack.append((w, path + (w,), occ | 1 << w))
        return False

    def embedding(self, H, hosts):
        """Translate the found topological embedding into branch sets of ``H``."""
        sk = self.sk
        sets = {h: set() for h in H.nodes}
        for b, img in self.image.items():
            sets[sk.origin[b]].add(hosts[img])
        for li, ln in enumerate(sk.links):
            path = [hosts[v] for v in self.routes[li]]
            inner = path[1:-1]
            start_o = sk.origin[ln.start]
            if ln.free_end:
                sets[sk.origin[ln.end]].add(path[-1])
            end_o = sk.origin[ln.end]
            if start_o == end_o and not ln.inner and not ln.free_end:
                sets[start_o].update(inner)   # tree edge inside a split vertex
                continue
            s = len(ln.inner)
            for i, p in enumerate(ln.inner):
                if i < s - 1:
                    sets[sk.origin[p]].add(inner[i])
                else:
                    sets[sk.origin[p]].update(inner[i:])
            if s == 0:
                sets[start_o].update(inner)
        return MinorEmbedding(H, {h: frozenset(v) for h, v in sets.items()})


def _search_part(G_part, H, skeletons):
    hosts = list(G_part.nodes)
    index = {v: i for i, v in enumerate(hosts)}
    adj = [0] * len(hosts)
    for u, v in G_part.edges:
        adj[index[u]] |= 1 << index[v]
        adj[index[v]] |= 1 << index[u]
    n_edges = G_part.number_of_edges()
    for sk in skeletons:
        if sk.graph.number_of_edges() > n_edges:
            continue
        s = _Search(sk, adj)
        if s.run():
            return s.embedding(H, hosts)
    return None


def contains_minor(G, H, cap=DEFAULT_CAP):
    """Return a :class:`MinorEmbedding` of ``H`` in ``G``, or ``None``.

    Exhaustive within the size cap on ``G``.  For connected (2-connected)
    patterns the search runs per component (block) of ``G``.
    """
    check_simple(G)
    check_simple(H)
    if G.number_of_nodes() > cap:
        raise SizeCapExceeded("contains_minor", G.number_of_nodes(), cap)
    if H.number_of_nodes() == 0:
        return MinorEmbedding(H, {})
    if H.number_of_nodes() > G.number_of_nodes() or H.number_of_edges() > G.number_of_edges():
        return None
    skeletons = _compile(H)
    if is_biconnected(H):
        parts = [G.subgraph(b) for b in nx.biconnected_components(G)]
    elif nx.is_connected(H):
        parts = [G.subgraph(c) for c in nx.connected_components(G)]
    else:
        parts = [G]
    order = {v: i for i, v in enumerate(G.nodes)}
    for part in sorted(parts, key=lambda p: min(order[v] for v in p)):
        if part.number_of_nodes() < H.number_of_nodes() or part.number_of_edges() < H.number_of_edges():
            continue
        # keep the host's vertex order inside the part for determinism
        P = nx.Graph()
        P.add_nodes_from(sorted(part.nodes, key=order.__getitem__))
        P.add_edges_from(part.edges)
        emb = _search_part(P, H, skeletons)
        if emb is not None:
            assert emb.is_valid(G), emb.problems(G)
            return emb
    return None


def _graph_key(G):
    return (tuple(G.nodes), tuple(sorted((tuple(e) for e in G.edges), key=repr)))


@lru_cache(maxsize=4096)
def _f_minor_free_cached(key, cap):
    from .obstructions import forbidden_minors
    from .widths import pathwidth_at_most, DEFAULT_CAP as PW_CAP

    nodes, edges = key
    G = nx.Graph()
    G.add_nodes_from(nodes)
    G.add_edges_from(edges)
    # every member of F has pathwidth 3, so pathwidth <= 2 rules all of them out
    if G.number_of_nodes() <= PW_CAP and pathwidth_at_most(G, 2):
        return True, None, None
    family = forbidden_minors()
    # K4, T1, T2 are 2-connected: only blocks of pathwidth 3 or more can hold them
    suspects = []
    for b in nx.biconnected_components(G):
        if len(b) < 4:
            continue
        B = G.subgraph(b)
        if len(b) > PW_CAP or not pathwidth_at_most(B, 2):
            suspects.append(B)
    for name, H in family[:3]:
        for B in suspects:
            emb = contains_minor(B, H, cap)
            if emb is not None:
                return False, name, emb
    for name, H in family[3:]:
        emb = contains_minor(G, H, cap)
        if emb is not None:
            return False, name, emb
    return True, None, None


def is_f_minor_free(G, cap=DEFAULT_CAP):
    """Return ``(free, name, embedding)`` for the family K4, T1, ..., T5.

    ``name`` and ``embedding`` identify the first member found (in that order)
    when ``G`` is not free, otherwise both are ``None``.
    """
    check_simple(G)
    if G.number_of_nodes() > cap:
        raise SizeCapExceeded("is_f_minor_free", G.number_of_nodes(), cap)
    return _f_minor_free_cached(_graph_key(G), cap)


def is_outerplanar(G) -> bool:
    """Outerplanar iff adding one vertex adjacent to everything keeps it planar."""
    check_simple(G)
    H = nx.Graph(G)
    apex = ("apex",)
    while apex in H:
        apex = apex + ("apex",)
    H.add_edges_from((apex, v) for v in G.nodes)
    return nx.check_planarity(H)[0]
