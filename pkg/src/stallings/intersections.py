"""Pullbacks of automata and the questions they answer: intersections,
Hanna Neumann sums, malnormality and intersections of cosets."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .automaton import Automaton, components, is_deterministic, read, strict_core, tree_paths
from .subgroup import Subgroup, conjugate, contains, from_automaton
from .words import Word, free_reduce

__all__ = [
    "Pullback",
    "SHNReport",
    "MalnormalReport",
    "pullback",
    "intersect",
    "rrk",
    "shn_report",
    "is_malnormal",
    "coset_intersection",
    "with_thread",
]


@dataclass
class Pullback:
    """Product automaton; vertex ``i`` of ``product`` is the pair ``pairs[i]``."""

    left: Automaton
    right: Automaton
    product: Automaton
    pairs: list[tuple[int, int]]
    components: list[list[int]]
    based_component: int | None
    per_component: list[tuple[bool, int]]

    def vertex(self, p: int, q: int) -> int | None:
        try:
            return self.pairs.index((p, q))
        except ValueError:
            return None

    def component_automaton(self, i: int) -> Automaton:
        comp = self.components[i]
        return self.product.subautomaton(comp, basepoint=comp[0] if i != self.based_component else self.product.basepoint)


def pullback(g1: Automaton, g2: Automaton) -> Pullback:
    if g1.alphabet.rank != g2.alphabet.rank:
        raise ValueError("automata over different alphabets")
    for g in (g1, g2):
        if not is_deterministic(g)[0]:
            raise ValueError("pullback needs deterministic automata")
    by_letter1: dict[int, list[int]] = {}
    by_letter2: dict[int, list[int]] = {}
    for a, (_, _, x) in sorted(g1.arcs.items()):
        by_letter1.setdefault(x, []).append(a)
    for a, (_, _, x) in sorted(g2.arcs.items()):
        by_letter2.setdefault(x, []).append(a)
    arc_pairs = []
    for x in sorted(by_letter1):
        for a1 in by_letter1[x]:
            for a2 in by_letter2.get(x, ()):
                arc_pairs.append((x, a1, a2))
    pairs_set = set()
    for x, a1, a2 in arc_pairs:
        s1, d1, _ = g1.arcs[a1]
        s2, d2, _ = g2.arcs[a2]
        pairs_set.add((s1, s2))
        pairs_set.add((d1, d2))
    base = None
    if g1.basepoint is not None and g2.basepoint is not None:
        base = (g1.basepoint, g2.basepoint)
        pairs_set.discard(base)
    pairs = ([base] if base else []) + sorted(pairs_set)
    ids = {p: i for i, p in enumerate(pairs)}
    product = Automaton(g1.alphabet, 0 if base else None, range(len(pairs)))
    for x, a1, a2 in arc_pairs:
        s1, d1, _ = g1.arcs[a1]
        s2, d2, _ = g2.arcs[a2]
        product.add_arc(ids[(s1, s2)], ids[(d1, d2)], x)
    comps = components(product)
    based = next((i for i, c in enumerate(comps) if 0 in c), None) if base else None
    per = []
    for comp in comps:
        members = set(comp)
        n_arcs = sum(1 for s, _, _ in product.arcs.values() if s in members)
        r = 1 - len(comp) + n_arcs
        per.append((r == 0, r))
    return Pullback(g1, g2, product, pairs, comps, based, per)


def intersect(h: Subgroup, k: Subgroup) -> Subgroup:
    pb = pullback(h.automaton, k.automaton)
    return from_automaton(pb.component_automaton(pb.based_component))


def rrk(h: Subgroup) -> int:
    return max(0, h.rank - 1)


@dataclass(frozen=True)
class SHNReport:
    terms: tuple[int, ...]
    lhs_sum: int
    mineyev_bound: int
    hn_bound: int


def shn_report(h: Subgroup, k: Subgroup) -> SHNReport:
    """Reduced ranks of the non-tree components of the product of strict cores."""
    bound = rrk(h) * rrk(k)
    sh, sk = strict_core(h.automaton), strict_core(k.automaton)
    if len(sh) == 0 or len(sk) == 0:
        return SHNReport((), 0, bound, 2 * bound)
    pb = pullback(sh, sk)
    terms = tuple(max(0, r - 1) for is_tree, r in pb.per_component if not is_tree)
    return SHNReport(terms, sum(terms), bound, 2 * bound)


@dataclass(frozen=True)
class MalnormalReport:
    malnormal: bool
    witness: Word | None = None

    def __bool__(self):
        return self.malnormal


def is_malnormal(h: Subgroup) -> MalnormalReport:
    """Malnormal iff every component of St(h) x St(h) away from the base pair is a tree.

    On failure the witness ``g`` satisfies ``g not in H`` and ``H^g`` meets ``H``
    nontrivially.
    """
    g = h.automaton
    pb = pullback(g, g)
    bad = [i for i, (is_tree, _) in enumerate(pb.per_component) if not is_tree and i != pb.based_component]
    if not bad:
        return MalnormalReport(True)
    paths = {v: p.label(g) for v, p in tree_paths(g).items()}
    for i in bad:
        for vid in pb.components[i]:
            p, q = pb.pairs[vid]
            for a, b in ((p, q), (q, p)):
                w = paths[a] * paths[b].inverse()
                if not contains(h, w) and not _intersection_trivial(conjugate(h, w), h):
                    return MalnormalReport(False, w)
    raise AssertionError("non-tree component found but no witness verified")


def _intersection_trivial(h: Subgroup, k: Subgroup) -> bool:
    pb = pullback(h.automaton, k.automaton)
    return pb.per_component[pb.based_component][1] == 0


def with_thread(g: Automaton, w: Sequence[int]) -> tuple[Automaton, int]:
    """Copy of deterministic ``g`` extended by a fresh path spelling the unreadable suffix of ``w``.

    Returns the copy and the vertex reached by reading ``w`` from the basepoint.
    """
    w = free_reduce(w)
    r = read(g, g.basepoint, w)
    t = g.copy()
    t.petals = None
    if r.end is not None:
        return t, r.end
    v = r.last
    for x in w[r.stopped_at :]:
        nxt = t.add_vertex()
        if x > 0:
            t.add_arc(v, nxt, x)
        else:
            t.add_arc(nxt, v, -x)
        v = nxt
    return t, v


def coset_intersection(h: Subgroup, u: Sequence[int], k: Subgroup, v: Sequence[int]) -> Word | None:
    """A word in ``Hu ∩ Kv``, or None if the cosets are disjoint."""
    gh, eu = with_thread(h.automaton, u)
    gk, ev = with_thread(k.automaton, v)
    pb = pullback(gh, gk)
    target = pb.vertex(eu, ev)
    if target is None:
        return None
    prod = pb.product
    parent: dict[int, tuple[int, int] | None] = {0: None}
    queue = deque([0])
    while queue and target not in parent:
        x = queue.popleft()
        for signed, _, y in prod.incident(x):
            if y not in parent:
                parent[y] = (x, signed)
                queue.append(y)
    if target not in parent:
        return None
    letters = []
    x = target
    while parent[x] is not None:
        x, signed = parent[x]
        letters.append(signed)
    w = Word(reversed(letters))
    u, v = free_reduce(u), free_reduce(v)
    if not (contains(h, w * u.inverse()) and contains(k, w * v.inverse())):
        raise AssertionError("coset intersection witness failed verification")
    return w

