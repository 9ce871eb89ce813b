"""Tree and path decompositions plus their validity checks."""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def problems(self, G):
        """List of violated conditions (empty when the decomposition is valid)."""
        out = []
        covered = set().union(*self.bags) if self.bags else set()
        if covered != set(G.nodes):
            out.append(f"bags cover {len(covered)} vertices, graph has {G.number_of_nodes()}")
        for u, v in G.edges:
            if not any(u in b and v in b for b in self.bags):
                out.append(f"edge {u!r}-{v!r} is in no bag")
        for v in covered:
            where = [i for i, b in enumerate(self.bags) if v in b]
            if where[-1] - where[0] + 1 != len(where):
                out.append(f"vertex {v!r} occurs in a non-contiguous run of bags")
        return out

    def is_valid(self, G) -> bool:
        return not self.problems(G)

    def as_tree_decomposition(self) -> "TreeDecomposition":
        T = nx.path_graph(len(self.bags))
        return TreeDecomposition(T, {i: b for i, b in enumerate(self.bags)})


@dataclass(frozen=True)
class TreeDecomposition:
    tree: nx.Graph
    bags: dict = field(hash=False)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def problems(self, G):
        out = []
        if self.tree.number_of_nodes() and not nx.is_tree(self.tree):
            out.append("decomposition tree is not a tree")
        if set(self.bags) != set(self.tree.nodes):
            out.append("bags and tree nodes differ")
        covered = set().union(*self.bags.values()) if self.bags else set()
        if covered != set(G.nodes):
            out.append("bags do not cover exactly the vertex set")
        for u, v in G.edges:
            if not any(u in b and v in b for b in self.bags.values()):
                out.append(f"edge {u!r}-{v!r} is in no bag")
        for v in covered:
            holding = [t for t, b in self.bags.items() if v in b]
            if not nx.is_connected(self.tree.subgraph(holding)):
                out.append(f"bags containing {v!r} do not form a subtree")
        return out

    def is_valid(self, G) -> bool:
        return not self.problems(G)
