"""JSON and DOT formats for posets, graphs, decompositions and embeddings."""

from __future__ import annotations

import json

import networkx as nx

from .poset import Poset, cover_relations


class InputError(ValueError):
    """Malformed input file; the message carries the position when known."""


def load_json(text, source="<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _ids(values, what):
    if not isinstance(values, list):
        raise InputError(f"{what} must be a list")
    out = []
    for v in values:
        if not isinstance(v, (str, int)):
            raise InputError(f"{what} entries must be strings, got {v!r}")
        out.append(str(v))
    return out


def _pairs(values, what):
    if not isinstance(values, list):
        raise InputError(f"{what} must be a list")
    out = []
    for k, p in enumerate(values):
        if not (isinstance(p, list) and len(p) == 2):
            raise InputError(f"{what}[{k}] must be a two-element list")
        out.append((str(p[0]), str(p[1])))
    return out


def poset_from_json(data) -> Poset:
    """``{"elements": [...], "relations": [[a, b], ...]}``; relations may be any generating set."""
    if not isinstance(data, dict) or "elements" not in data:
        raise InputError('poset JSON needs an "elements" list')
    return Poset.from_relations(_ids(data["elements"], "elements"),
                                _pairs(data.get("relations", []), "relations"))


def poset_to_json(P: Poset, extensions=None):
    out = {
        "elements": [str(x) for x in P.elements],
        "relations": [[str(a), str(b)] for a, b in P.relations()],
        "covers": [[str(a), str(b)] for a, b in cover_relations(P)],
    }
    if extensions is not None:
        out["extensions"] = [[str(x) for x in L] for L in extensions]
    return out


def graph_from_json(data) -> nx.Graph:
    """``{"vertices": [...], "edges": [[u, v], ...]}``."""
    if not isinstance(data, dict) or "vertices" not in data:
        raise InputError('graph JSON needs a "vertices" list')
    G = nx.Graph()
    G.add_nodes_from(_ids(data["vertices"], "vertices"))
    for u, v in _pairs(data.get("edges", []), "edges"):
        if u not in G or v not in G:
            raise InputError(f"edge {u}-{v} uses an undeclared vertex")
        if u == v:
            raise InputError(f"loop at {u}")
        G.add_edge(u, v)
    return G


def graph_to_json(G):
    return {"vertices": [str(v) for v in G.nodes], "edges": [[str(u), str(v)] for u, v in G.edges]}


def _q(x):
    return '"' + str(x).replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(G, name="G"):
    lines = [f"graph {_q(name)} {{"]
    lines += [f"  {_q(v)};" for v in G.nodes]
    lines += [f"  {_q(u)} -- {_q(v)};" for u, v in G.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def _bag_label(bag):
    return "{" + ", ".join(sorted(map(str, bag))) + "}"


def decomposition_to_dot(dec, name="decomposition"):
    """Tree or path decomposition with each bag drawn as a labelled node."""
    if hasattr(dec, "tree"):
        nodes = list(dec.tree.nodes)
        bags = dec.bags
        edges = list(dec.tree.edges)
    else:
        nodes = list(range(len(dec.bags)))
        bags = dict(enumerate(dec.bags))
        edges = [(i, i + 1) for i in range(len(dec.bags) - 1)]
    lines = [f"graph {_q(name)} {{", "  node [shape=box];"]
    lines += [f"  t{t} [label={_q(_bag_label(bags[t]))}];" for t in nodes]
    lines += [f"  t{a} -- t{b};" for a, b in edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def embedding_to_dot(E, name="embedding"):
    """Canonical embedding: per block the x side along the bottom, y side on top, ears inside."""
    lines = [f"graph {_q(name)} {{", "  node [shape=circle];"]
    drawn = set()
    for b in sorted(E.pno_per_block):
        S = E.pno_per_block[b]
        lines.append(f"  subgraph cluster_{b} {{")
        lines.append(f"    label={_q(f'block {b}')};")
        for i, v in enumerate(S.cycle_x):
            lines.append(f"    {_q(v)} [pos={_q(f'{2 * i},0!')}];")
        for j, v in enumerate(S.cycle_y):
            lines.append(f"    {_q(v)} [pos={_q(f'{2 * j},4!')}];")
        cyc = S.cycle()
        for u, v in zip(cyc, cyc[1:] + cyc[:1]):
            lines.append(f"    {_q(u)} -- {_q(v)} [penwidth=2];")
            drawn.add(frozenset((u, v)))
        for e in S.ears:
            style = "dashed" if e.is_beak else "solid"
            if e.internal is None:
                lines.append(f"    {_q(e.x_attach)} -- {_q(e.y_attach)} [style={style}];")
                drawn.add(frozenset((e.x_attach, e.y_attach)))
            else:
                lines.append(f"    {_q(e.internal)} [label={_q(f'{e.internal} ({e.kind})')}];")
                for a in (e.x_attach, e.y_attach):
                    lines.append(f"    {_q(a)} -- {_q(e.internal)} [style={style}];")
                    drawn.add(frozenset((a, e.internal)))
        lines.append("  }")
    for u, v in E.graph.edges:
        if frozenset((u, v)) not in drawn:
            lines.append(f"  {_q(u)} -- {_q(v)};")
    for v in E.graph.nodes:
        if E.graph.degree(v) == 0:
            lines.append(f"  {_q(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def minor_to_json(name, embedding):
    return {
        "pattern": name,
        "branch_sets": {str(h): sorted(map(str, bs)) for h, bs in embedding.branch_sets.items()},
    }


def structure_to_json(S):
    return {
        "cycle_x": [str(v) for v in S.cycle_x],
        "cycle_y": [str(v) for v in S.cycle_y],
        "ears": [{"x": str(e.x_attach), "y": str(e.y_attach),
                  "internal": None if e.internal is None else str(e.internal), "kind": e.kind}
                 for e in S.ears],
    }
