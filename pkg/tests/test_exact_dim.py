import random

import pytest
from hypothesis import given, settings, strategies as st

from pw2dim.errors import SizeCapExceeded
from pw2dim.exact_dim import (dimension_at_most, dimension_bruteforce, dimension_exact,
                              linear_extensions)
from pw2dim.poset import Poset, verify_realizer
from pw2dim.standard import random_pw2_poset, standard_example


def random_poset(rng, n, p):
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Poset.from_relations(range(n), pairs)


def test_chain_has_one_extension():
    P = Poset.from_relations("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
    assert dimension_at_most(P, 1) == [("a", "b", "c", "d")]
    assert dimension_exact(P).dimension == 1


def test_crown_needs_two():
    S2 = standard_example(2)
    assert dimension_at_most(S2, 1) is None
    R = dimension_at_most(S2, 2)
    assert R is not None and verify_realizer(S2, R)[0]


def test_s4_needs_four():
    S4 = standard_example(4)
    assert dimension_at_most(S4, 3) is None
    assert verify_realizer(S4, dimension_at_most(S4, 4))[0]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_standard_examples(n):
    res = dimension_exact(standard_example(n))
    assert res.dimension == n
    assert verify_realizer(standard_example(n), res.witness)[0]


@pytest.mark.parametrize("n", [2, 3, 6])
def test_antichain(n):
    assert dimension_exact(Poset.from_relations(range(n), [])).dimension == 2


def test_linear_extension_count():
    # antichain of 4 has 4! extensions; S2 is two disjoint 2-chains, C(4,2) = 6
    assert len(set(linear_extensions(Poset.from_relations(range(4), [])))) == 24
    assert len(list(linear_extensions(standard_example(2)))) == 6


def test_matches_bruteforce_on_small_posets():
    rng = random.Random(7)
    for _ in range(200):
        P = random_poset(rng, rng.randint(1, 7), rng.choice([0.15, 0.3, 0.5]))
        assert dimension_exact(P).dimension == dimension_bruteforce(P)


def test_cap():
    P = Poset.from_relations(range(20), [])
    with pytest.raises(SizeCapExceeded):
        dimension_at_most(P, 3)
    assert dimension_at_most(P, 2) is not None
    with pytest.raises(ValueError):
        dimension_at_most(P, 0)


def test_witness_is_deterministic():
    P = random_pw2_poset(4, 14)
    assert dimension_exact(P) == dimension_exact(P)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_monotone_under_subposets(seed):
    rng = random.Random(seed)
    P = random_poset(rng, 9, 0.3)
    d = dimension_exact(P).dimension
    keep = rng.sample(list(P.elements), rng.randint(1, 8))
    assert dimension_exact(P.subposet(keep)).dimension <= d


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_dual_has_same_dimension(seed):
    P = random_poset(random.Random(seed), 8, 0.3)
    assert dimension_exact(P).dimension == dimension_exact(P.dual()).dimension
