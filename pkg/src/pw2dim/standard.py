"""Standard examples, subposet search, the S5 check and random instance generators."""

from __future__ import annotations

import random
from dataclasses import dataclass

import networkx as nx

from .errors import GenerationFailed, SizeCapExceeded, TheoremViolation
from .graph.minors import contains_minor, is_f_minor_free, is_outerplanar
from .graph.obstructions import k4
from .graph.widths import DEFAULT_CAP as WIDTH_CAP, pathwidth_exact, treewidth_exact
from .poset import Poset, cover_graph

SUBPOSET_CAP = 20


def standard_example(n: int) -> Poset:
    """``S_n``: ``a1..an, b1..bn`` with ``a_i < b_j`` iff ``i != j``."""
    if n < 2:
        raise ValueError("standard examples start at n = 2")
    a = [f"a{i}" for i in range(1, n + 1)]
    b = [f"b{i}" for i in range(1, n + 1)]
    return Poset.from_relations(a + b, [(a[i], b[j]) for i in range(n) for j in range(n) if i != j])


@dataclass(frozen=True)
class SubposetEmbedding:
    mapping: dict

    def is_valid(self, pattern: Poset, host: Poset) -> bool:
        m = self.mapping
        if set(m) != set(pattern.elements) or len(set(m.values())) != len(m):
            return False
        return all(pattern.leq(x, y) == host.leq(m[x], m[y])
                   for x in pattern.elements for y in pattern.elements)


def find_subposet(host: Poset, pattern: Poset, cap=SUBPOSET_CAP):
    """Order-preserving and order-reflecting injection of ``pattern`` into ``host``, or ``None``."""
    if len(host) > cap:
        raise SizeCapExceeded("find_subposet", len(host), cap)
    k = len(pattern)
    if k > len(host):
        return None
    # place elements with the most constraints first
    order = sorted(range(k), key=lambda i: -(bin(pattern.up_mask(i)).count("1") + bin(pattern.down_mask(i)).count("1")))
    need_up = [bin(pattern.up_mask(i)).count("1") for i in range(k)]
    need_down = [bin(pattern.down_mask(i)).count("1") for i in range(k)]
    cand = []
    for i in range(k):
        cand.append([h for h in range(len(host))
                     if bin(host.up_mask(h)).count("1") >= need_up[i]
                     and bin(host.down_mask(h)).count("1") >= need_down[i]])
    image = [None] * k
    used = set()

    def ok(i, h):
        for j in range(k):
            g = image[j]
            if g is None:
                continue
            if bool(pattern.up_mask(i) >> j & 1) != bool(host.up_mask(h) >> g & 1):
                return False
            if bool(pattern.up_mask(j) >> i & 1) != bool(host.up_mask(g) >> h & 1):
                return False
        return True

    def rec(pos):
        if pos == k:
            return True
        i = order[pos]
        for h in cand[i]:
            if h in used or not ok(i, h):
                continue
            image[i] = h
            used.add(h)
            if rec(pos + 1):
                return True
            image[i] = None
            used.discard(h)
        return False

    if not rec(0):
        return None
    emb = SubposetEmbedding({pattern.elements[i]: host.elements[image[i]] for i in range(k)})
    assert emb.is_valid(pattern, host)
    return emb


def find_standard_subposet(P: Poset, n: int, cap=SUBPOSET_CAP):
    """Copy of ``S_n`` inside ``P`` (order-preserving and reflecting), or ``None``."""
    if n > 6:
        raise SizeCapExceeded("find_standard_subposet (n)", n, 6)
    if len(P) > cap:
        raise SizeCapExceeded("find_standard_subposet", len(P), cap)
    N = len(P)
    ups = [P.up_mask(i) & ~(1 << i) for i in range(N)]
    downs = [P.down_mask(i) & ~(1 << i) for i in range(N)]
    cand_a = [i for i in range(N) if bin(ups[i]).count("1") >= n - 1]
    cand_b = [i for i in range(N) if bin(downs[i]).count("1") >= n - 1]
    A, B = [], []

    def comparable(i, j):
        return bool((ups[i] | downs[i]) >> j & 1)

    def rec(k):
        if k == n:
            return True
        # relabelling indices is an automorphism of S_n: take the a's in increasing order
        start = A[-1] + 1 if A else 0
        for a in cand_a:
            if a < start or a in B:
                continue
            if any(comparable(a, x) for x in A):
                continue
            if not all(ups[a] >> b & 1 for b in B):
                continue
            for b in cand_b:
                if b == a or b in A or b in B or comparable(a, b):
                    continue
                if any(comparable(b, y) for y in B):
                    continue
                if not all(ups[x] >> b & 1 for x in A):
                    continue
                A.append(a)
                B.append(b)
                if rec(k + 1):
                    return True
                A.pop()
                B.pop()
        return False

    if not rec(0):
        return None
    mapping = {}
    for i in range(n):
        mapping[f"a{i + 1}"] = P.elements[A[i]]
        mapping[f"b{i + 1}"] = P.elements[B[i]]
    emb = SubposetEmbedding(mapping)
    assert emb.is_valid(standard_example(n), P)
    return emb


@dataclass(frozen=True)
class S5Report:
    s5: SubposetEmbedding
    k4_minor: object
    treewidth: object      # int, or None when the cover graph is over the width cap


def check_s5_treewidth(P: Poset, width_cap=WIDTH_CAP) -> S5Report:
    """Confirm that a poset containing ``S_5`` has a ``K4`` minor in its cover graph."""
    s5 = find_standard_subposet(P, 5, cap=max(SUBPOSET_CAP, len(P)))
    if s5 is None:
        raise ValueError("poset does not contain S5")
    G = cover_graph(P)
    emb = contains_minor(G, k4(), cap=max(40, len(P)))
    if emb is None:
        raise TheoremViolation("poset contains S5 but its cover graph has no K4 minor")
    tw = None
    if G.number_of_nodes() <= width_cap:
        tw, _ = treewidth_exact(G, cap=width_cap)
        if tw < 3:
            raise TheoremViolation(f"poset contains S5 but its cover graph has treewidth {tw}")
    return S5Report(s5, emb, tw)


def standard_example_minus(x: str) -> Poset:
    """``S_5`` with the element ``x`` (one of ``a1..a5, b1..b5``) deleted."""
    S = standard_example(5)
    return S.subposet(e for e in S.elements if e != x)


def s5_minus_x_witness(x: str = "a5") -> Poset:
    """A poset containing ``S_5 - x`` whose cover graph has treewidth 2.

    For ``x = a5``: besides ``a1..a4, b1..b5`` there are two hubs ``u, v`` with
    ``a3, a4 < u < b1, b2, b5`` and ``a1, a2 < v < b3, b4, b5`` plus the four
    covers ``a2 < b1``, ``a1 < b2``, ``a4 < b3``, ``a3 < b4``.  The cover graph
    is five internally disjoint ``u``-``v`` paths.  Other choices of ``x`` are
    relabellings or the dual.
    """
    rel = [("a3", "u"), ("a4", "u"), ("u", "b1"), ("u", "b2"), ("u", "b5"),
           ("a1", "v"), ("a2", "v"), ("v", "b3"), ("v", "b4"), ("v", "b5"),
           ("a2", "b1"), ("a1", "b2"), ("a4", "b3"), ("a3", "b4")]
    els = ["a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4", "b5", "u", "v"]
    if x not in {f"{s}{i}" for s in "ab" for i in range(1, 6)}:
        raise ValueError(f"{x!r} is not an element of S5")
    side, k = x[0], int(x[1])
    swap = {f"a{k}": "a5", "a5": f"a{k}", f"b{k}": "b5", "b5": f"b{k}"} if k != 5 else {}
    if side == "a":
        rename = {e: swap.get(e, e) for e in els}
        return Poset.from_relations([rename[e] for e in els], [(rename[p], rename[q]) for p, q in rel])
    # dual construction with the letters exchanged deletes a b-element instead
    flip = {e: ("b" + e[1:] if e[0] == "a" else "a" + e[1:]) if e[0] in "ab" else e for e in els}
    rename = {e: swap.get(flip[e], flip[e]) for e in els}
    return Poset.from_relations([rename[e] for e in els], [(rename[q], rename[p]) for p, q in rel])


# ---------------------------------------------------------------------------
# random generators

def _orient(G, rng, tries):
    """Random acyclic orientation whose cover relation is exactly ``E(G)``; ``None`` on failure.

    Half of the attempts rank vertices by BFS distance from a random root
    (with random tie-breaks), which favours long directed paths; the others
    use a uniform random ranking.
    """
    nodes = list(G.nodes)
    for attempt in range(tries):
        if attempt % 2 == 0 and nodes:
            dist = nx.single_source_shortest_path_length(G, rng.choice(nodes))
            noise = {v: rng.random() for v in nodes}
            ranked = sorted(nodes, key=lambda v: (dist.get(v, 0) + 1.5 * noise[v]))
        else:
            ranked = rng.sample(nodes, len(nodes))
        rank = {v: r for r, v in enumerate(ranked)}
        pairs = [(u, v) if rank[u] < rank[v] else (v, u) for u, v in G.edges]
        P = Poset.from_relations(nodes, pairs)
        if len(P.cover_index_pairs()) == G.number_of_edges():
            return P
    return None


def _random_pno_block(rng, n, subdivide=0.75):
    """Triangle-free 2-connected graph on vertices ``0..n-1`` from a cycle plus monotone ears.

    Returns ``(graph, ear inner vertices)``.  Vertex 0 lies on the cycle.
    May use fewer than ``n`` vertices.
    """
    n_inner = rng.randint(0, max(0, (n - 3) // 2))
    c = n - n_inner
    k = rng.randint(1, c - 1)
    l = c - k
    xs, ys = list(range(k)), list(range(k, c))
    cyc = xs + ys[::-1]
    B = nx.Graph()
    B.add_nodes_from(range(c))
    B.add_edges_from(zip(cyc, cyc[1:] + cyc[:1]))
    m = rng.randint(0, k + l + n_inner)
    I = sorted(rng.randrange(k) for _ in range(m))
    J = sorted(rng.randrange(l) for _ in range(m))
    nxt = c
    for i, j in zip(I, J):
        p, q = xs[i], ys[j]
        if B.has_edge(p, q):
            continue
        if nxt < n and rng.random() < subdivide:
            B.add_edges_from([(p, nxt), (nxt, q)])
            nxt += 1
        elif not set(B.adj[p]) & set(B.adj[q]):
            B.add_edge(p, q)
    return B, set(range(c, nxt))


def random_f_free_graph(rng, size, blocks=None, pendant_at_ears=0.1):
    """Random connected graph built as a tree of PNO blocks and bridges (not verified)."""
    G = nx.Graph()
    G.add_node(0)
    if blocks is None:
        blocks = rng.randint(1, max(1, size // 5)) if size >= 4 else 0
    budget = size - 1
    inner = set()
    for b in range(blocks):
        if budget < 3:
            break
        share = max(3, budget // (blocks - b))
        new = rng.randint(3, min(budget, share + 2))
        H, H_inner = _random_pno_block(rng, new + 1)
        outer = [v for v in G if v not in inner]
        anchor = rng.choice(list(G) if rng.random() < pendant_at_ears else outer)
        base = G.number_of_nodes() - 1
        mapping = {v: (anchor if v == 0 else base + v) for v in H}
        G.add_edges_from((mapping[u], mapping[v]) for u, v in H.edges)
        inner |= {mapping[v] for v in H_inner}
        budget = size - G.number_of_nodes()
    while budget > 0:
        outer = [v for v in G if v not in inner]
        anchor = rng.choice(list(G) if rng.random() < pendant_at_ears else outer)
        G.add_edge(anchor, G.number_of_nodes())
        budget -= 1
    return G


def _as_strings(P: Poset) -> Poset:
    return P.relabel({x: f"v{x}" for x in P.elements})


def random_pw2_poset(seed: int, size: int, blocks=None, mode="fminorfree", tries=200) -> Poset:
    """Seed-deterministic random poset whose cover graph is F-minor-free.

    ``mode="pw2"`` additionally requires pathwidth at most 2.
    """
    if mode not in ("fminorfree", "pw2"):
        raise ValueError(f"unknown mode {mode!r}")
    if size < 1:
        raise ValueError("size must be positive")
    rng = random.Random(seed)
    for _ in range(tries):
        G = random_f_free_graph(rng, size, blocks)
        if not is_f_minor_free(G, cap=max(40, size))[0]:
            continue
        if mode == "pw2" and pathwidth_exact(G, cap=max(WIDTH_CAP, size))[0] > 2:
            continue
        P = _orient(G, rng, 50)
        if P is None:
            continue
        P = _as_strings(P)
        assert is_f_minor_free(cover_graph(P), cap=max(40, size))[0]
        return P
    raise GenerationFailed(f"no F-minor-free poset of size {size} after {tries} graphs (seed {seed})")


def random_tree_poset(seed: int, size: int) -> Poset:
    """Random tree with a random orientation; every edge of a tree is a cover."""
    rng = random.Random(seed)
    if size == 1:
        return _as_strings(Poset([0], [1]))
    T = nx.random_labeled_tree(size, seed=rng.randrange(2 ** 32)) if hasattr(nx, "random_labeled_tree") \
        else nx.random_tree(size, seed=rng.randrange(2 ** 32))
    pairs = [(u, v) if rng.random() < 0.5 else (v, u) for u, v in T.edges]
    return _as_strings(Poset.from_relations(sorted(T.nodes), pairs))


def _random_outerplanar_block(rng, n):
    """Triangle-free 2-connected outerplanar graph: an ``n``-cycle with non-crossing chords."""
    B = nx.cycle_graph(n)

    def split(poly):
        # poly: cyclic list of vertices bounding a face; add a chord leaving faces of length >= 4
        if len(poly) < 6 or rng.random() < 0.3:
            return
        i = rng.randrange(len(poly))
        rot = poly[i:] + poly[:i]
        j = rng.randint(3, len(rot) - 3)
        B.add_edge(rot[0], rot[j])
        split(rot[:j + 1])
        split([rot[0]] + rot[j:])

    split(list(range(n)))
    return B


def random_outerplanar_poset(seed: int, size: int, tries=200) -> Poset:
    rng = random.Random(seed)
    for _ in range(tries):
        G = nx.Graph()
        G.add_node(0)
        while G.number_of_nodes() < size:
            room = size - G.number_of_nodes()
            anchor = rng.choice(list(G))
            if room >= 3 and rng.random() < 0.6:
                new = rng.randint(3, min(room, 9))
                H = _random_outerplanar_block(rng, new + 1)
                base = G.number_of_nodes() - 1
                G.add_edges_from(((anchor if u == 0 else base + u), (anchor if v == 0 else base + v))
                                 for u, v in H.edges)
            else:
                G.add_edge(anchor, G.number_of_nodes())
        assert is_outerplanar(G)
        P = _orient(G, rng, 50)
        if P is not None:
            return _as_strings(P)
    raise GenerationFailed(f"no outerplanar cover graph poset of size {size} (seed {seed})")


def random_s5_extension(seed: int, size: int) -> Poset:
    """``S_5`` plus ``size - 10`` random points that keep ``S_5`` as a subposet.

    New points either subdivide an existing comparability ``p < q`` or hang
    above or below a single existing element, so no new relation between old
    elements appears.  Element order is shuffled.
    """
    if size < 10:
        raise ValueError("size must be at least 10")
    rng = random.Random(seed)
    S = standard_example(5)
    elements = list(S.elements)
    rel = list(S.relations())
    for k in range(size - 10):
        P = Poset.from_relations(elements, rel)
        w = f"w{k + 1}"
        roll = rng.random()
        strict = P.relations()
        if roll < 0.6 and strict:
            p, q = rng.choice(strict)
            rel += [(p, w), (w, q)]
        elif roll < 0.8:
            rel.append((rng.choice(elements), w))
        else:
            rel.append((w, rng.choice(elements)))
        elements.append(w)
    rng.shuffle(elements)
    return Poset.from_relations(elements, rel)
