"""The six forbidden minors K4, T1, ..., T5 and a few auxiliary patterns.

T1..T5 are rebuilt from the way each one is forced in the structural
arguments for 2-connected pathwidth-2 graphs (see ``OBSTRUCTION_NOTES``);
``validate_obstructions`` re-checks pathwidth 3 and minor-minimality.
"""

from __future__ import annotations

import networkx as nx


def _graph(edges, name):
    G = nx.Graph(name=name)
    G.add_edges_from(edges)
    return G


def k4():
    return _graph([(a, b) for a in range(4) for b in range(a + 1, 4)], "K4")


def k23():
    return _graph([(a, b) for a in ("p", "q") for b in ("r", "s", "t")], "K2,3")


def t1():
    """Triangle a1 a2 a3 with a second, length-two path beside every side.

    Equivalently a 6-cycle with three pairwise non-crossing chords that cannot
    all be crossed by a single left-to-right sweep.
    """
    edges = [("a1", "a2"), ("a2", "a3"), ("a3", "a1"),
             ("a1", "m1"), ("m1", "a2"),
             ("a2", "m2"), ("m2", "a3"),
             ("a3", "m3"), ("m3", "a1")]
    return _graph(edges, "T1")


def t2():
    """Theta graph: three internally disjoint p-q paths, each with two inner vertices."""
    edges = []
    for i in (1, 2, 3):
        edges += [("p", f"s{i}"), (f"s{i}", f"t{i}"), (f"t{i}", "q")]
    return _graph(edges, "T2")


def t3():
    """Theta with paths of 3, 3 and 2 edges between x and y; a pendant at the middle of the short one."""
    edges = [("x", "c1"), ("c1", "c2"), ("c2", "y"),
             ("x", "d1"), ("d1", "d2"), ("d2", "y"),
             ("x", "v"), ("v", "y"),
             ("v", "v'")]
    return _graph(edges, "T3")


def t4():
    """Theta with paths of 2, 2 and 3 edges; pendants at the middles of both short paths."""
    edges = [("x", "u"), ("u", "y"),
             ("x", "v"), ("v", "y"),
             ("x", "c1"), ("c1", "c2"), ("c2", "y"),
             ("u", "u'"), ("v", "v'")]
    return _graph(edges, "T4")


def t5():
    """K_{2,3} with a pendant vertex at each of its three degree-2 vertices."""
    edges = [("x", "u"), ("u", "y"),
             ("x", "v"), ("v", "y"),
             ("x", "w"), ("w", "y"),
             ("u", "u'"), ("v", "v'"), ("w", "w'")]
    return _graph(edges, "T5")


OBSTRUCTION_NOTES = {
    "T1": "three ears whose attachments alternate a1,b1,a2,b2,a3,b3 around the "
          "longest cycle (b_i = a_{i+1} allowed) - the minimal case is the triangle "
          "with a parallel two-edge path beside each side",
    "T2": "an ear with two inner vertices next to a longest cycle whose two arcs "
          "between the attachments both have two inner vertices",
    "T3": "an ear xvy with v adjacent outside the block, while both cycle arcs "
          "between x and y keep two vertices",
    "T4": "as T3 but one arc is a single vertex u that also has an outside neighbour",
    "T5": "as T4 with the other arc a single vertex w of degree at least three",
}


def forbidden_minors():
    """The family F in the order the checks report them."""
    return [("K4", k4()), ("T1", t1()), ("T2", t2()), ("T3", t3()), ("T4", t4()), ("T5", t5())]


def single_step_minors(H):
    """Every graph obtained from ``H`` by deleting or contracting one edge."""
    out = []
    for u, v in H.edges:
        D = H.copy()
        D.remove_edge(u, v)
        out.append(("delete", (u, v), D))
        C = nx.contracted_nodes(H, u, v, self_loops=False)
        out.append(("contract", (u, v), nx.Graph(C)))
    return out


def validate_obstructions():
    """Raise ``AssertionError`` unless every member of F has pathwidth 3 and each
    single edge deletion or contraction drops it to pathwidth at most 2."""
    from .widths import pathwidth_exact

    for name, H in forbidden_minors():
        pw, _ = pathwidth_exact(H)
        assert pw == 3, f"{name} has pathwidth {pw}"
        for op, edge, M in single_step_minors(H):
            pw_m, _ = pathwidth_exact(M)
            assert pw_m <= 2, f"{name}: {op} {edge} keeps pathwidth {pw_m}"
