"""Finite-index constructions: counting and listing subgroups of a given index,
saturating automata to avoid chosen words, and the fringe of a subgroup."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import factorial
from typing import Iterable, Iterator, Sequence

from .automaton import Automaton, Partition, deficient_vertices, path_automaton, quotient, read
from .intersections import with_thread
from .subgroup import Subgroup, contains, from_automaton
from .words import Alphabet, free_reduce

__all__ = [
    "BoundExceeded",
    "CensusEntry",
    "count_index",
    "enumerate_index",
    "avoid_element",
    "finite_index_envelope",
    "set_partitions",
    "fringe",
    "saturate",
]

# enumerate_index refuses when k * (k!)^(n-1) exceeds this
CENSUS_BOUND = 10**7
# fringe refuses automata with more vertices than this (Bell(9) = 21147 partitions)
FRINGE_MAX_VERTICES = 9


class BoundExceeded(ValueError):
    """A size guard refused to start an exhaustive computation."""


def count_index(n: int, k: int) -> int:
    """Number of subgroups of index ``k`` in the free group of rank ``n`` (Hall's recursion)."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    counts = [0, 1]
    for m in range(2, k + 1):
        total = m * factorial(m) ** (n - 1)
        total -= sum(factorial(m - i) ** (n - 1) * counts[i] for i in range(1, m))
        counts.append(total)
    return counts[k]


@dataclass
class CensusEntry:
    automaton: Automaton
    conjugacy_class_id: int | None = None

    @cached_property
    def subgroup(self) -> Subgroup:
        return from_automaton(self.automaton)


def _census_tables(n: int, k: int) -> Iterator[list[dict[int, int]]]:
    """Complete transition tables on vertices 0..k-1, one per rooted isomorphism class.

    Slots are filled in scan order (vertex, then letter +1, -1, +2, ...), and
    a new vertex always gets the next free number, so every table comes out
    already in canonical numbering and is produced exactly once.
    """
    letters = []
    for i in range(1, n + 1):
        letters.extend((i, -i))
    table: list[dict[int, int]] = [{}]

    def first_free():
        for v in range(len(table)):
            for x in letters:
                if x not in table[v]:
                    return v, x
        return None

    def search():
        slot = first_free()
        if slot is None:
            if len(table) == k:
                yield [dict(t) for t in table]
            return
        v, x = slot
        for w in range(len(table)):
            if -x not in table[w]:
                table[v][x] = w
                table[w][-x] = v
                yield from search()
                del table[v][x]
                table[w].pop(-x, None)
        if len(table) < k:
            table.append({-x: v})
            table[v][x] = len(table) - 1
            yield from search()
            del table[v][x]
            table.pop()

    yield from search()


def enumerate_index(n: int, k: int, bound: int = CENSUS_BOUND) -> list[CensusEntry]:
    """Every subgroup of index ``k`` in F_n, as saturated automata in canonical form."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    if k * factorial(k) ** (n - 1) > bound:
        raise BoundExceeded(f"census of index {k} in rank {n} exceeds the size bound")
    alphabet = Alphabet(n)
    out = []
    for table in _census_tables(n, k):
        g = Automaton(alphabet, 0, range(k))
        for v in range(k):
            for x in range(1, n + 1):
                g.add_arc(v, table[v][x], x)
        out.append(CensusEntry(g))
    return out


def saturate(g: Automaton) -> Automaton:
    """Complete a deterministic automaton by pairing a-deficient with a^-1-deficient vertices.

    Pairing is in ascending vertex order on both sides.
    """
    g = g.copy()
    g.petals = None
    for x in range(1, g.alphabet.rank + 1):
        outs = deficient_vertices(g, x)
        ins = deficient_vertices(g, -x)
        if len(outs) != len(ins):
            raise ValueError("deficiencies do not match; automaton is not deterministic")
        for src, dst in zip(outs, ins):
            g.add_arc(src, dst, x)
    return g


def avoid_element(w: Sequence[int], alphabet: Alphabet) -> Subgroup:
    """A subgroup of index ``|w| + 1`` not containing ``w``."""
    r = free_reduce(w)
    if not r:
        raise ValueError("the trivial word lies in every subgroup")
    return from_automaton(saturate(path_automaton(r, alphabet)))


def finite_index_envelope(h: Subgroup, avoid: Iterable[Sequence[int]] = ()) -> Subgroup:
    """A finite-index subgroup containing ``h`` as a free factor and missing every word in ``avoid``.

    St(h) is extended by threads spelling the unread parts of the avoided
    words and then saturated.  Readings of the avoided words are already
    complete before saturation and still end away from the basepoint, so the
    first pairing works.
    """
    avoid = [free_reduce(w) for w in avoid]
    for w in avoid:
        if contains(h, w):
            raise ValueError("an avoided word lies in the subgroup")
    g = h.automaton
    for w in avoid:
        g, _ = with_thread(g, w)
    k = saturate(g)
    for w in avoid:
        if read(k, k.basepoint, w).end == k.basepoint:
            raise AssertionError("saturation captured an avoided word")
    return from_automaton(k)


def set_partitions(items: Sequence[int]) -> Iterator[Partition]:
    """All partitions of ``items``, generated as restricted growth strings."""
    items = list(items)
    if not items:
        yield Partition(())
        return
    codes = [0] * len(items)

    def build():
        blocks: dict[int, list[int]] = {}
        for item, c in zip(items, codes):
            blocks.setdefault(c, []).append(item)
        return Partition.of(blocks[c] for c in sorted(blocks))

    def rec(i, top):
        if i == len(items):
            yield build()
            return
        for c in range(top + 2):
            codes[i] = c
            yield from rec(i + 1, max(top, c))

    yield from rec(1, 0)


def fringe(h: Subgroup, max_vertices: int = FRINGE_MAX_VERTICES) -> list[Subgroup]:
    """Subgroups recognized by quotients of St(h) under all vertex partitions; ``h`` comes first."""
    g = h.automaton
    if len(g) > max_vertices:
        raise BoundExceeded(f"fringe of a {len(g)}-vertex automaton exceeds the bound {max_vertices}")
    out = [h]
    seen = {h.key()}
    for p in set_partitions(g.sorted_vertices()):
        k = from_automaton(quotient(g, p))
        key = k.key()
        if key not in seen:
            seen.add(key)
            out.append(k)
    return out
