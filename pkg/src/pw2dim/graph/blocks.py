"""Block / cut-vertex decomposition."""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx


def vertex_order(G):
    """Internal numbering: position of each vertex in ``G.nodes`` insertion order."""
    return {v: i for i, v in enumerate(G.nodes)}


def check_simple(G):
    if G.is_directed() or G.is_multigraph():
        raise TypeError("expected a simple undirected nx.Graph")
    loops = list(nx.selfloop_edges(G))
    if loops:
        raise ValueError(f"graph has loops: {loops[:3]}")


@dataclass(frozen=True)
class BlockTree:
    blocks: tuple  # frozensets; 2-connected blocks, bridge edges, isolated vertices
    cut_vertices: frozenset

    def nontrivial(self):
        """Indices of blocks with at least three vertices (those carrying a cycle)."""
        return [i for i, b in enumerate(self.blocks) if len(b) >= 3]

    def blocks_of(self, v):
        return [i for i, b in enumerate(self.blocks) if v in b]

    def block_cut_tree(self) -> nx.Graph:
        T = nx.Graph()
        for i, b in enumerate(self.blocks):
            T.add_node(("B", i))
            for v in b & self.cut_vertices:
                T.add_edge(("B", i), ("C", v))
        return T


def biconnected_blocks(G) -> BlockTree:
    check_simple(G)
    order = vertex_order(G)
    blocks = [frozenset(b) for b in nx.biconnected_components(G)]
    blocks += [frozenset([v]) for v in G.nodes if G.degree(v) == 0]
    blocks.sort(key=lambda b: sorted(order[v] for v in b))
    return BlockTree(tuple(blocks), frozenset(nx.articulation_points(G)))


def is_biconnected(G) -> bool:
    """2-connected in the strict sense: at least three vertices and no cut vertex."""
    return G.number_of_nodes() >= 3 and nx.is_connected(G) and next(nx.articulation_points(G), None) is None
