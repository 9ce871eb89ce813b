import random

import networkx as nx
import pytest
from networkx.generators.atlas import graph_atlas_g

from oracles import contractions, has_minor_bruteforce
from pw2dim.graph import (contains_minor, forbidden_minors, is_f_minor_free, is_outerplanar,
                          k4, k23, pathwidth_exact)
from pw2dim.graph.obstructions import t1, t2, t3, t4, t5

PATTERNS = [
    ("K4", k4()), ("K2,3", k23()), ("C4", nx.cycle_graph(4)), ("K1,3", nx.star_graph(3)),
    ("K1,4", nx.star_graph(4)), ("P4", nx.path_graph(4)), ("2K2", nx.Graph([(0, 1), (2, 3)])),
    ("T1", t1()), ("T2", t2()), ("T3", t3()), ("T4", t4()), ("T5", t5()),
]


def atlas(max_n, connected=True):
    return [G for G in graph_atlas_g()[1:]
            if G.number_of_nodes() <= max_n and (not connected or nx.is_connected(G))]


def test_matches_bruteforce_on_small_graphs():
    for G in atlas(6):
        quotients = list(contractions(G))
        for name, H in PATTERNS:
            found = contains_minor(G, H)
            assert (found is not None) == has_minor_bruteforce(G, H, quotients), (name, G.edges)
            if found is not None:
                assert found.is_valid(G)


@pytest.mark.slow
def test_matches_bruteforce_on_seven_vertices():
    for G in atlas(7):
        if G.number_of_nodes() < 7:
            continue
        quotients = list(contractions(G))
        for name, H in PATTERNS:
            found = contains_minor(G, H)
            assert (found is not None) == has_minor_bruteforce(G, H, quotients), (name, G.edges)


def test_certificate_on_larger_hosts():
    P = nx.petersen_graph()
    emb = contains_minor(P, k4())
    assert emb is not None and emb.is_valid(P)
    assert contains_minor(nx.cycle_graph(20), k4()) is None
    grid = nx.convert_node_labels_to_integers(nx.grid_2d_graph(4, 4))
    for name, H in forbidden_minors():
        emb = contains_minor(grid, H)
        assert emb is not None and emb.is_valid(grid), name


def test_each_obstruction_contains_only_itself():
    family = forbidden_minors()
    for name, G in family:
        for other, H in family:
            found = contains_minor(G, H) is not None
            assert found == (name == other), (name, other)


def test_f_minor_free_equivalent_to_block_pathwidth():
    for G in atlas(7, connected=False)[::3]:
        free, name, emb = is_f_minor_free(G)
        quotients = list(contractions(G))
        expect = not any(has_minor_bruteforce(G, H, quotients) for _, H in forbidden_minors())
        assert free == expect, G.edges
        if not free:
            assert emb.is_valid(G)
            assert nx.is_isomorphic(emb.pattern, dict(forbidden_minors())[name])


def test_pathwidth_two_implies_free():
    rng = random.Random(3)
    for _ in range(50):
        G = nx.gnm_random_graph(10, rng.randint(8, 14), seed=rng.randrange(10 ** 6))
        if pathwidth_exact(G)[0] <= 2:
            assert is_f_minor_free(G)[0]


def test_outerplanar_matches_minor_characterisation():
    for G in atlas(7)[::2]:
        quotients = list(contractions(G))
        expect = not (has_minor_bruteforce(G, k4(), quotients)
                      or has_minor_bruteforce(G, k23(), quotients))
        assert is_outerplanar(G) == expect
