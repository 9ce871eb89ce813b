import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from pw2dim.errors import NotFMinorFree, NotOuterplanar
from pw2dim.exact_dim import dimension_exact
from pw2dim.poset import Poset, cover_graph, intersect_extensions, remove_points, verify_realizer
from pw2dim.realizer import (SubdividingPointInfo, bad_diamonds, build_L0, build_upsilon_delta,
                             interior_points_Z, lift_realizer, outerplanar_realizer,
                             realize_bounded, realize_component, reduce_embedding,
                             verify_intersection)
from pw2dim.standard import random_pw2_poset, random_tree_poset, standard_example
from pw2dim.structure import canonical_embedding, classify_ears


def ladder(k):
    """Block whose ears x_i < z_i < y_i (i = 1..k) are pairwise bad diamonds.

    Outer cycle x0 .. x_{k+1}, y_{k+1}, y_k .. y0 with x0 <: y0 and
    x_{k+1} <: y_{k+1} <: y_k; both sides otherwise increase left to right.
    """
    xs = [f"x{i}" for i in range(k + 2)]
    ys = [f"y{i}" for i in range(k + 2)]
    zs = [f"z{i}" for i in range(1, k + 1)]
    rel = [(xs[i], xs[i + 1]) for i in range(k + 1)] + [(ys[i], ys[i + 1]) for i in range(k)]
    rel += [("x0", "y0"), (xs[k + 1], ys[k + 1]), (ys[k + 1], ys[k])]
    rel += [(f"x{i}", f"z{i}") for i in range(1, k + 1)] + [(f"z{i}", f"y{i}") for i in range(1, k + 1)]
    return Poset.from_relations(xs + ys + zs, rel)


def embedded(P):
    return classify_ears(P, canonical_embedding(cover_graph(P)))


def k23_poset(kind, tag=""):
    """Hubs a, b joined through x, y, z; ``kind`` fixes the orientation."""
    rel = {
        "up": [("a", "x"), ("x", "b"), ("a", "y"), ("y", "b"), ("a", "z"), ("z", "b")],
        "beak": [("x", "a"), ("x", "b"), ("a", "y"), ("b", "y"), ("a", "z"), ("b", "z")],
    }[kind]
    return [(p + tag, q + tag) for p, q in rel], [v + tag for v in "abxyz"]


def naive_intersection(P, pair):
    mine = set(pair.upsilon.relations()) & set(pair.delta.relations())
    return mine == set(P.relations())


# -- Z -----------------------------------------------------------------------

def test_chain_has_empty_Z():
    P = Poset.from_relations("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
    assert interior_points_Z(P, embedded(P)) == []


def test_single_unidirected_ear():
    rel, els = k23_poset("up")
    P = Poset.from_relations(els, rel)
    Z = interior_points_Z(P, embedded(P))
    assert len(Z) == 1
    (s,) = Z
    assert (s.lower, s.upper) == ("a", "b") and s.z in "xyz"


def test_beak_peak_not_in_Z():
    rel, els = k23_poset("beak")
    P = Poset.from_relations(els, rel)
    E = embedded(P)
    assert interior_points_Z(P, E) == []
    assert any(e.is_beak for _, e in E.ears())


def test_unclassified_embedding_rejected():
    rel, els = k23_poset("up")
    P = Poset.from_relations(els, rel)
    with pytest.raises(ValueError):
        interior_points_Z(P, canonical_embedding(cover_graph(P)))


def test_reduce_embedding_turns_ear_into_chord_or_drops_it():
    P = ladder(2)
    E = embedded(P)
    Z = interior_points_Z(P, E)
    Q = remove_points(P, [s.z for s in Z])
    F = reduce_embedding(Q, E, Z)
    assert F.is_valid()
    assert all(e.is_chord for _, e in F.ears())


# -- lifting -----------------------------------------------------------------

def fan():
    # l < z1 < u1 and l < z2 < u2
    P = Poset.from_relations(["l", "u1", "u2", "z1", "z2"],
                             [("l", "z1"), ("z1", "u1"), ("l", "z2"), ("z2", "u2")])
    Z = [SubdividingPointInfo("z1", "l", "u1", 0), SubdividingPointInfo("z2", "l", "u2", 0)]
    return P, Z


def test_lift_with_empty_Z_duplicates():
    P = Poset.from_relations("abc", [("a", "b")])
    R = [("a", "b", "c"), ("c", "a", "b")]
    assert lift_realizer(P, [], R) == R + R


def test_lift_single_point_positions():
    P = Poset.from_relations(["l", "u", "w", "z"], [("l", "z"), ("z", "u")])
    Z = [SubdividingPointInfo("z", "l", "u", 0)]
    R = [("l", "u", "w"), ("w", "l", "u")]
    out = lift_realizer(P, Z, R)
    assert len(out) == 4
    for L in out[:2]:
        assert L[L.index("l") + 1] == "z"
    for L in out[2:]:
        assert L[L.index("u") - 1] == "z"


def test_lift_shared_lower_reverses_upper_order():
    P, Z = fan()
    out = lift_realizer(P, Z, [("l", "u1", "u2"), ("l", "u2", "u1")])
    assert out[0][:3] == ("l", "z2", "z1")
    assert out[1][:3] == ("l", "z1", "z2")
    assert verify_realizer(P, out)[0]


# -- bad diamonds and L0 -----------------------------------------------------

def brute_bad_diamonds(P, Z):
    out = set()
    for sa, sb in itertools.permutations(Z, 2):
        if sa.lower != sb.lower and sa.upper != sb.upper:
            if (P.lt(sa.lower, sb.lower) and P.lt(sa.upper, sb.upper)
                    and not P.comparable(sa.z, sb.z)):
                out.add((sa.z, sb.z))
    return out


def test_single_point_has_no_diamond():
    P = ladder(1)
    assert bad_diamonds(P, interior_points_Z(P, embedded(P))) == []


def test_ladder_diamond():
    P = ladder(2)
    Z = interior_points_Z(P, embedded(P))
    diamonds = bad_diamonds(P, Z)
    assert [(d.a, d.b) for d in diamonds] == [("z1", "z2")]
    assert {(d.a, d.b) for d in diamonds} == brute_bad_diamonds(P, Z)
    L0 = build_L0(P, diamonds)
    assert L0.index("z2") < L0.index("z1")


def test_chained_diamonds_consistently_reversed():
    P = ladder(3)
    Z = interior_points_Z(P, embedded(P))
    diamonds = bad_diamonds(P, Z)
    assert {(d.a, d.b) for d in diamonds} == {("z1", "z2"), ("z2", "z3"), ("z1", "z3")}
    L0 = build_L0(P, diamonds)
    assert L0.index("z3") < L0.index("z2") < L0.index("z1")
    assert P.is_linear_extension(L0)


def test_shared_lower_is_not_a_diamond():
    P, Z = fan()
    assert bad_diamonds(P, Z) == []


def test_L0_without_diamonds_is_an_extension():
    P = random_pw2_poset(1, 12)
    assert P.is_linear_extension(build_L0(P, []))


# -- beak extensions -----------------------------------------------------------

def test_no_beaks_leaves_poset_unchanged():
    P = ladder(2)
    Q = remove_points(P, ["z1", "z2"])
    pair = build_upsilon_delta(Q, classify_ears(Q, canonical_embedding(cover_graph(Q))))
    assert pair.upsilon == Q and pair.delta == Q
    assert verify_intersection(Q, pair) == (True, None)


def test_single_beak():
    rel, els = k23_poset("beak")
    P = Poset.from_relations(els, rel)
    E = embedded(P)
    (beak,) = [e for _, e in E.ears() if e.is_beak]
    pair = build_upsilon_delta(P, E)
    assert pair.upsilon.lt(beak.x_attach, beak.y_attach)
    assert pair.delta.lt(beak.y_attach, beak.x_attach)
    assert P.incomparable(beak.x_attach, beak.y_attach)
    assert verify_intersection(P, pair)[0] and naive_intersection(P, pair)


def test_two_beaks_on_one_block():
    # two parallel chains p < a1 < a2 < q and p < b1 < b2 < q with an upbeak over each rung
    rel = [("p", "a1"), ("p", "b1"), ("a1", "a2"), ("b1", "b2"), ("a2", "q"), ("b2", "q"),
           ("a1", "z1"), ("b1", "z1"), ("a2", "z2"), ("b2", "z2")]
    P = Poset.from_relations(["p", "a1", "a2", "b1", "b2", "q", "z1", "z2"], rel)
    E = embedded(P)
    assert sum(e.is_beak for _, e in E.ears()) == 2
    pair = build_upsilon_delta(P, E)
    assert verify_intersection(P, pair)[0] and naive_intersection(P, pair)


def test_beaks_in_two_blocks_at_a_cut_vertex():
    rel1, els1 = k23_poset("beak", "1")
    rel2, els2 = k23_poset("beak", "2")
    # glue the top of the first block to the bottom of the second
    glue = {"y1": "x2"}
    rel = [(glue.get(p, p), glue.get(q, q)) for p, q in rel1] + rel2
    els = [glue.get(v, v) for v in els1] + [v for v in els2 if v != "x2"] + ["x2"]
    els = list(dict.fromkeys(els))
    P = Poset.from_relations(els, rel)
    E = embedded(P)
    assert len(E.pno_per_block) == 2
    assert all(any(e.is_beak for e in S.ears) for S in E.pno_per_block.values())
    pair = build_upsilon_delta(P, E)
    assert verify_intersection(P, pair)[0] and naive_intersection(P, pair)


# -- outerplanar step ----------------------------------------------------------

def test_outerplanar_small_cases():
    chain = Poset.from_relations("abc", [("a", "b"), ("b", "c")])
    assert len(outerplanar_realizer(chain)) == 1
    assert len(outerplanar_realizer(Poset.from_relations("ab", []))) == 2
    P = random_tree_poset(3, 10)
    R = outerplanar_realizer(P)
    assert len(R) <= 4 and verify_realizer(P, R)[0]


def test_outerplanar_rejects_k23_cover():
    rel, els = k23_poset("up")
    with pytest.raises(NotOuterplanar):
        outerplanar_realizer(Poset.from_relations(els, rel))


# -- full pipeline -------------------------------------------------------------

def test_chain_pipeline():
    P = Poset.from_relations("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
    res = realize_bounded(P)
    assert len(res.extensions) <= 3 and res.verified


def test_empty_and_singleton():
    assert realize_bounded(Poset.from_relations([], [])).extensions == [()]
    assert realize_bounded(Poset.from_relations(["a"], [])).extensions == [("a",)]


def test_tree_pipeline_and_exact_bound():
    for seed in range(10):
        P = random_tree_poset(seed, 13)
        res = realize_bounded(P)
        assert verify_realizer(P, res.extensions)[0]
        assert dimension_exact(P).dimension <= 3


def test_ladder_pipeline():
    for k in (2, 3):
        P = ladder(k)
        res = realize_bounded(P)
        assert res.verified and len(res.extensions) <= 17
        assert res.bad_diamonds


def test_rejects_s5():
    with pytest.raises(NotFMinorFree) as info:
        realize_bounded(standard_example(5))
    assert info.value.embedding.is_valid(cover_graph(standard_example(5)))


def test_to_json_shape():
    out = realize_bounded(ladder(2)).to_json()
    assert set(out) == {"dimension_upper_bound", "extensions", "Z", "bad_diamonds", "certificate"}
    assert out["certificate"] == "verified" and out["bad_diamonds"] == [["z1", "z2"]]


def test_disconnected_and_twins():
    rel = [("a", "b"), ("c", "d"), ("c", "e"), ("b2", "x")]
    P = Poset.from_relations(["a", "b", "c", "d", "e", "b2", "x", "lone"], rel)
    res = realize_bounded(P)
    assert res.twins == {"d": ["e"]}
    assert verify_realizer(P, res.extensions)[0] and intersect_extensions(res.extensions) == P


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 14))
def test_pipeline_properties(seed, size):
    P = random_pw2_poset(seed, size)
    res = realize_bounded(P)
    assert len(res.extensions) <= 17
    assert verify_realizer(P, res.extensions)[0]
    assert intersect_extensions(res.extensions) == P
    assert dimension_exact(P).dimension <= len(res.extensions)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(["mirror", "swap", "both"]))
def test_reoriented_embeddings_still_realize(seed, how):
    P = random_pw2_poset(seed, 12, blocks=1)
    G = cover_graph(P)
    if not nx.is_connected(G) or len(P.elements) < 2:
        return
    E = canonical_embedding(G)
    F = E.reoriented({b: how for b in E.pno_per_block})
    run = realize_component(P, embedding=F)
    assert verify_realizer(P, run.extensions)[0]
    assert len(run.extensions) <= 17
