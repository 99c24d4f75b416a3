import random

import pytest
from hypothesis import given, settings

from stallings.automaton import is_deterministic, is_saturated, rank
from stallings.constructions import (
    BoundExceeded,
    avoid_element,
    count_index,
    enumerate_index,
    finite_index_envelope,
    fringe,
    set_partitions,
)
from stallings.subgroup import contains, equals, index, is_subgroup_of, stallings
from stallings.words import Alphabet, Word
from support import A1, A2, W, WS, generator_sets, random_word


def test_count_index_values():
    assert count_index(2, 1) == 1
    assert count_index(2, 2) == 3
    assert count_index(2, 3) == 13
    assert count_index(1, 7) == 1
    assert count_index(3, 2) == 7
    with pytest.raises(ValueError):
        count_index(0, 1)


def test_count_index_is_exact_for_large_values():
    # no floating point drift: the recursion yields an integer with many digits
    n = count_index(3, 30)
    assert isinstance(n, int) and n > 10**60


def test_enumerate_index_examples():
    assert len(enumerate_index(2, 3)) == 13
    (only,) = enumerate_index(1, 4)
    assert equals(only.subgroup, stallings([W("aaaa", A1)], A1))
    assert len(enumerate_index(2, 2)) == 3


@pytest.mark.parametrize("n,k", [(n, k) for n in (1, 2, 3) for k in (1, 2, 3, 4)])
def test_enumerate_matches_recursion(n, k):
    entries = enumerate_index(n, k)
    assert len(entries) == count_index(n, k)
    keys = {e.subgroup.key() for e in entries} if n * k <= 8 else None
    if keys is not None:
        assert len(keys) == len(entries)
    for e in entries:
        g = e.automaton
        assert len(g) == k and is_saturated(g) and is_deterministic(g)[0]
        assert rank(g) - 1 == k * (n - 1)


def test_enumerate_entries_have_index_k():
    for e in enumerate_index(2, 3):
        rep = index(e.subgroup)
        assert rep.finite and rep.index == 3


def test_enumerate_bound():
    with pytest.raises(BoundExceeded):
        enumerate_index(3, 9)


def test_avoid_element_examples():
    w = W("ABab")
    h = avoid_element(w, A2)
    assert index(h).index == 5 and not contains(h, w)
    h = avoid_element(W("a"), A2)
    assert index(h).index == 2 and not contains(h, W("a"))
    with pytest.raises(ValueError):
        avoid_element(W("aA"), A2)


@settings(max_examples=100, deadline=None)
@given(generator_sets(2, max_gens=1, max_len=10))
def test_avoid_element_property(ws):
    (w,) = ws
    h = avoid_element(w, A2)
    rep = index(h)
    assert rep.finite and rep.index == len(w) + 1
    assert not contains(h, w)
    assert is_saturated(h.automaton) and is_deterministic(h.automaton)[0]


def test_envelope_examples():
    h = stallings(WS("abb,AAbbbb,Ab"), A2)
    k = finite_index_envelope(h)
    assert index(k).finite
    assert all(contains(k, g) for g in h.generators)
    fi = stallings(WS("a,bb,baaB,babAB"), A2)
    assert equals(finite_index_envelope(fi), fi)
    with pytest.raises(ValueError):
        finite_index_envelope(h, [W("abb")])


def test_envelope_random():
    rng = random.Random(4)
    for _ in range(30):
        gens = [random_word(rng, 2, 1, 6) for _ in range(rng.randint(1, 3))]
        h = stallings(gens, A2)
        avoid = []
        while len(avoid) < rng.randint(0, 2):
            w = random_word(rng, 2, 1, 8)
            if not contains(h, w):
                avoid.append(w)
        k = finite_index_envelope(h, avoid)
        assert index(k).finite
        assert is_subgroup_of(h, k)
        assert not any(contains(k, w) for w in avoid)


def test_envelope_contains_st_h_as_subautomaton():
    h = stallings(WS("abb,AAbbbb,Ab"), A2)
    k = finite_index_envelope(h, [W("ba")])
    from stallings.subgroup import hom_into

    m = hom_into(h, k)
    assert m is not None and len(set(m.values())) == len(m)


def test_set_partitions_counts():
    bell = [1, 1, 2, 5, 15, 52, 203]
    for n, count in enumerate(bell):
        parts = list(set_partitions(list(range(n))))
        assert len(parts) == count
        for p in parts:
            p.validate(range(n))


def test_fringe_examples():
    h = stallings([W("aa", A1)], A1)
    f = fringe(h)
    assert len(f) == 2
    assert equals(f[0], h) and equals(f[1], stallings([W("a", A1)], A1))
    whole = stallings(WS("a,b"), A2)
    assert len(fringe(whole)) == 1
    big = stallings([W("a^12", A1)], A1)
    with pytest.raises(BoundExceeded):
        fringe(big)


@settings(max_examples=30, deadline=None)
@given(generator_sets(2, max_gens=3, max_len=4))
def test_fringe_members_contain_h(gens):
    h = stallings(gens, A2)
    if len(h.automaton) > 6:
        return
    f = fringe(h)
    assert equals(f[0], h)
    for k in f:
        assert all(contains(k, g) for g in h.generators)
    if index(h).finite:
        assert any(contains(k, W("a")) and contains(k, W("b")) for k in f)
