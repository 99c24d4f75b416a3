"""Shared helpers for the test suite: word builders, random instances and brute-force oracles."""

import itertools
import random

from hypothesis import strategies as st

from stallings.words import Alphabet, Word, free_reduce, parse_word

A1 = Alphabet(1)
A2 = Alphabet(2)
A3 = Alphabet(3)


def W(text, alphabet=A2):
    return parse_word(text, alphabet)


def WS(text, alphabet=A2):
    return [parse_word(p.strip(), alphabet) for p in text.split(",") if p.strip()]


def random_word(rng, rank, min_len=1, max_len=8):
    """Uniformly random reduced word with length in [min_len, max_len]."""
    n = rng.randint(min_len, max_len)
    out = []
    while len(out) < n:
        x = rng.choice([i for i in range(-rank, rank + 1) if i])
        if out and out[-1] == -x:
            continue
        out.append(x)
    return Word(out)


def random_generators(rng, rank, max_gens=4, max_len=8):
    return [random_word(rng, rank, 1, max_len) for _ in range(rng.randint(1, max_gens))]


def reduced_words(rank, max_len=10, min_len=0):
    letters = [i for i in range(-rank, rank + 1) if i]
    return st.lists(st.sampled_from(letters), min_size=min_len, max_size=max_len).map(free_reduce).filter(
        lambda w: len(w) >= min_len
    )


def generator_sets(rank, max_gens=4, max_len=6):
    return st.lists(reduced_words(rank, max_len, min_len=1), min_size=1, max_size=max_gens)


def symbol_products(p, max_factors):
    """Reduced words over symbols 1..p (with inverses) of length at most ``max_factors``."""
    symbols = [s for i in range(1, p + 1) for s in (i, -i)]
    yield Word()
    frontier = [()]
    for _ in range(max_factors):
        nxt = []
        for seq in frontier:
            for s in symbols:
                if seq and seq[-1] == -s:
                    continue
                new = seq + (s,)
                nxt.append(new)
                yield Word(new)
        frontier = nxt


def evaluate(symbols, gens):
    out = []
    for s in symbols:
        g = gens[abs(s) - 1]
        out.extend(g if s > 0 else Word(g).inverse())
    return free_reduce(out)


def is_nielsen_reduced(gens):
    """Nielsen conditions N0-N2 checked by free reduction alone."""
    s = [Word(g) for g in gens]
    if any(not g for g in s):
        return False
    pm = s + [g.inverse() for g in s]
    for u, v in itertools.product(pm, repeat=2):
        if free_reduce(u.concat(v)) == Word():
            continue
        if len(free_reduce(u.concat(v))) < max(len(u), len(v)):
            return False
    for u, v, w in itertools.product(pm, repeat=3):
        if free_reduce(u.concat(v)) == Word() or free_reduce(v.concat(w)) == Word():
            continue
        if len(free_reduce(u.concat(v).concat(w))) <= len(u) - len(v) + len(w):
            return False
    return True


def brute_members(gens, max_len):
    """All elements of length <= max_len in the subgroup of a Nielsen-reduced set.

    A reduced product of k elements of a Nielsen-reduced set has length at
    least k, so products of at most ``max_len`` factors are enough.
    """
    found = set()
    for symbols in symbol_products(len(gens), max_len):
        w = evaluate(symbols, gens)
        if len(w) <= max_len:
            found.add(w)
    return found


def perm_mul(p, q):
    """Apply p then q (right action, matching left-to-right reading of words)."""
    return tuple(q[p[i]] for i in range(len(p)))


def perm_group_order(gens):
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = perm_mul(g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def perm_of_word(w, images):
    n = len(images[0])
    inv = [tuple(sorted(range(n), key=lambda i: p[i])) for p in images]
    g = tuple(range(n))
    for x in w:
        g = perm_mul(g, images[x - 1] if x > 0 else inv[-x - 1])
    return g


def seeded(seed):
    return random.Random(seed)
