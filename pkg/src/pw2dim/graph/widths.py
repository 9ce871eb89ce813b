"""Exact treewidth and pathwidth for small graphs.

Both searches work on bitmask adjacency and use iterative deepening on the
width ``k`` with memoisation of failed states:

* treewidth: elimination orderings; the state is the set of eliminated
  vertices.  Almost-simplicial vertices of degree <= k are eliminated without
  branching, which is safe for the decision "tw <= k".
* pathwidth: vertex-separation layouts; the state is the placed prefix.
"""

from __future__ import annotations

import networkx as nx

from ..errors import SizeCapExceeded
from .blocks import check_simple
from .decomposition import PathDecomposition, TreeDecomposition

DEFAULT_CAP = 20


def _popcount(x):
    return bin(x).count("1")


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _adjacency(G):
    nodes = list(G.nodes)
    index = {v: i for i, v in enumerate(nodes)}
    adj = [0] * len(nodes)
    for u, v in G.edges:
        adj[index[u]] |= 1 << index[v]
        adj[index[v]] |= 1 << index[u]
    return nodes, adj


def _eliminated_neighbourhood(adj, S, v):
    """Vertices outside ``S | {v}`` reachable from ``v`` through ``S``."""
    reach = 1 << v
    frontier = reach
    while frontier:
        nxt = 0
        for u in _bits(frontier):
            nxt |= adj[u]
        nxt &= S & ~reach
        reach |= nxt
        frontier = nxt
    out = 0
    for u in _bits(reach):
        out |= adj[u]
    return out & ~S & ~(1 << v)


def _minor_min_width(adj):
    """Lower bound on treewidth (Gogate-Dechter minor-min-width)."""
    adj = list(adj)
    alive = 0
    for i, a in enumerate(adj):
        alive |= 1 << i
    best = 0
    while alive:
        v = min(_bits(alive), key=lambda i: (_popcount(adj[i] & alive), i))
        nb = adj[v] & alive
        best = max(best, _popcount(nb))
        if nb:
            u = min(_bits(nb), key=lambda i: (_popcount(adj[i] & nb), i))
            # contract v into u
            merged = (adj[u] | adj[v]) & ~(1 << u) & ~(1 << v)
            adj[u] = merged
            for w in _bits(merged):
                adj[w] = (adj[w] & ~(1 << v)) | (1 << u)
        alive &= ~(1 << v)
    return best


def _tw_search(adj, n, k):
    full = (1 << n) - 1
    failed = set()

    def dfs(S):
        rest = full & ~S
        if _popcount(rest) <= k + 1:
            return list(_bits(rest))
        if S in failed:
            return None
        nbrs = {v: _eliminated_neighbourhood(adj, S, v) for v in _bits(rest)}
        for v, nv in nbrs.items():
            if _popcount(nv) > k:
                continue
            # simplicial or almost simplicial => eliminate without branching
            ok = False
            for u in _bits(nv):
                others = nv & ~(1 << u)
                if all(others & ~(1 << w) & ~nbrs[w] == 0 for w in _bits(others)):
                    ok = True
                    break
            if ok or nv == 0:
                tail = dfs(S | 1 << v)
                if tail is None:
                    failed.add(S)
                    return None
                return [v] + tail
        for v, nv in nbrs.items():
            if _popcount(nv) <= k:
                tail = dfs(S | 1 << v)
                if tail is not None:
                    return [v] + tail
        failed.add(S)
        return None

    return dfs(0)


def _tree_decomposition_from_order(adj, n, order, nodes):
    position = {v: i for i, v in enumerate(order)}
    S = 0
    higher = {}
    for v in order:
        higher[v] = _eliminated_neighbourhood(adj, S, v)
        S |= 1 << v
    T = nx.Graph()
    bags = {}
    for v in order:
        bags[v] = frozenset(nodes[u] for u in _bits(higher[v] | 1 << v))
        T.add_node(v)
    roots = []
    for v in order:
        if higher[v]:
            parent = min(_bits(higher[v]), key=position.__getitem__)
            T.add_edge(v, parent)
        else:
            roots.append(v)
    for a, b in zip(roots, roots[1:]):
        T.add_edge(a, b)
    # relabel tree nodes 0..n-1 in elimination order
    relabel = {v: i for i, v in enumerate(order)}
    T = nx.relabel_nodes(T, relabel)
    return TreeDecomposition(T, {relabel[v]: b for v, b in bags.items()})


def treewidth_exact(G, cap=DEFAULT_CAP):
    """Return ``(width, TreeDecomposition)`` of minimum width.

    The empty graph has width -1 and a decomposition with no bags.
    """
    check_simple(G)
    n = G.number_of_nodes()
    if n > cap:
        raise SizeCapExceeded("treewidth_exact", n, cap)
    if n == 0:
        return -1, TreeDecomposition(nx.Graph(), {})
    nodes, adj = _adjacency(G)
    k = _minor_min_width(adj)
    while True:
        order = _tw_search(adj, n, k)
        if order is not None:
            break
        k += 1
    td = _tree_decomposition_from_order(adj, n, order, nodes)
    assert td.is_valid(G) and td.width <= k, td.problems(G)
    return k, td


def _boundary(adj, S):
    out = 0
    for u in _bits(S):
        if adj[u] & ~S:
            out |= 1 << u
    return out


def _pw_search(adj, n, k):
    full = (1 << n) - 1
    failed = set()

    def dfs(S):
        rest = full & ~S
        if _popcount(_boundary(adj, S)) + _popcount(rest) <= k + 1:
            return list(_bits(rest))
        if S in failed:
            return None
        # a vertex whose neighbours are all placed never increases any later cut
        for v in _bits(rest):
            if adj[v] & ~S == 0:
                tail = dfs(S | 1 << v)
                if tail is None:
                    failed.add(S)
                    return None
                return [v] + tail
        for v in _bits(rest):
            T = S | 1 << v
            if _popcount(_boundary(adj, T)) <= k:
                tail = dfs(T)
                if tail is not None:
                    return [v] + tail
        failed.add(S)
        return None

    return dfs(0)


def _path_decomposition_from_layout(adj, layout, nodes):
    bags = []
    S = 0
    for v in layout:
        bags.append(_boundary(adj, S) | 1 << v)
        S |= 1 << v
    # drop bags contained in a neighbour
    changed = True
    while changed and len(bags) > 1:
        changed = False
        for i, b in enumerate(bags):
            left = bags[i - 1] if i > 0 else None
            right = bags[i + 1] if i + 1 < len(bags) else None
            if (left is not None and b & ~left == 0) or (right is not None and b & ~right == 0):
                del bags[i]
                changed = True
                break
    return PathDecomposition(tuple(frozenset(nodes[u] for u in _bits(b)) for b in bags))


def pathwidth_exact(G, cap=DEFAULT_CAP):
    """Return ``(width, PathDecomposition)`` of minimum width (vertex separation)."""
    check_simple(G)
    n = G.number_of_nodes()
    if n > cap:
        raise SizeCapExceeded("pathwidth_exact", n, cap)
    if n == 0:
        return -1, PathDecomposition(())
    nodes, adj = _adjacency(G)
    k = _minor_min_width(adj)  # tw <= pw
    while True:
        layout = _pw_search(adj, n, k)
        if layout is not None:
            break
        k += 1
    pd = _path_decomposition_from_layout(adj, layout, nodes)
    assert pd.is_valid(G) and pd.width <= k, pd.problems(G)
    return k, pd


def treewidth_at_most(G, k, cap=DEFAULT_CAP) -> bool:
    check_simple(G)
    n = G.number_of_nodes()
    if n > cap:
        raise SizeCapExceeded("treewidth_at_most", n, cap)
    if n == 0:
        return True
    nodes, adj = _adjacency(G)
    return _tw_search(adj, n, k) is not None


def pathwidth_at_most(G, k, cap=DEFAULT_CAP) -> bool:
    check_simple(G)
    n = G.number_of_nodes()
    if n > cap:
        raise SizeCapExceeded("pathwidth_at_most", n, cap)
    if n == 0:
        return True
    nodes, adj = _adjacency(G)
    return _pw_search(adj, n, k) is not None
