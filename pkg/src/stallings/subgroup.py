"""Finitely generated subgroups of a free group, represented by Stallings automata."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .automaton import (
    Automaton,
    Walk,
    basis_from_tree,
    canonical_key,
    canonicalize,
    flower,
    iso_rooted,
    iso_unrooted,
    is_saturated,
    read,
    strict_core_with_tail,
    tree_paths,
)
from .folding import FoldingTrace, _elevate_walk, bracket_petals, reduce, relators
from .words import Alphabet, Word, free_reduce

__all__ = [
    "Subgroup",
    "IndexReport",
    "Dependence",
    "stallings",
    "from_automaton",
    "contains",
    "express",
    "basis",
    "rank",
    "is_free_basis",
    "equals",
    "is_subgroup_of",
    "hom_into",
    "index",
    "is_normal",
    "conjugate",
    "conjugator",
    "presentation",
    "dependence",
    "image_in",
]


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup given by generators, with its canonical Stallings automaton.

    ``generators`` are the freely reduced nonempty input words; symbol ``i``
    in the output of :func:`express` and :func:`presentation` stands for
    ``generators[i-1]``.
    """

    alphabet: Alphabet
    generators: tuple[Word, ...]
    automaton: Automaton
    trace: FoldingTrace
    # canonical arc id -> arc id in the last automaton of the trace
    _arc_back: dict[int, int] = field(default_factory=dict, repr=False)

    def __contains__(self, w) -> bool:
        return contains(self, w)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return equals(self, other)

    def __hash__(self):
        return hash(self.key())

    def __le__(self, other):
        return is_subgroup_of(self, other)

    def key(self) -> tuple:
        return canonical_key(self.automaton)

    @property
    def rank(self) -> int:
        return len(self.automaton.arcs) - len(self.automaton) + 1

    def is_trivial(self) -> bool:
        return not self.automaton.arcs

    def __repr__(self):
        from .words import format_word

        gens = ", ".join(format_word(w, self.alphabet, "compact" if self.alphabet.compact else "caret") for w in self.generators)
        return f"<Subgroup <{gens}>: {len(self.automaton)} vertices, rank {self.rank}>"


@dataclass(frozen=True)
class IndexReport:
    finite: bool
    index: int | None = None
    transversal: tuple[Word, ...] = ()
    witness_deficiency: tuple[int, int] | None = None


@dataclass(frozen=True)
class Dependence:
    """Outcome of a dependence test of ``g`` on ``H``.

    Symbol 1 is the unknown ``X``; symbol ``i+1`` is ``basis[i-1]``.
    """

    dependent: bool
    basis: tuple[Word, ...]
    equations: tuple[Word, ...] = ()


def _words(generators: Iterable[Sequence[int]]) -> list[Word]:
    out = []
    for g in generators:
        w = free_reduce(g)
        if w:
            out.append(w)
    return out


def _check_alphabet(w: Sequence[int], alphabet: Alphabet):
    for x in w:
        if abs(x) > alphabet.rank:
            raise ValueError(f"letter {x} outside alphabet of rank {alphabet.rank}")


def stallings(generators: Iterable[Sequence[int]], alphabet: Alphabet) -> Subgroup:
    gens = _words(generators)
    for w in gens:
        _check_alphabet(w, alphabet)
    fl = flower(gens, alphabet)
    reduced, trace = reduce(fl)
    can, _, amap = canonicalize(reduced, with_maps=True)
    back = {new: old for old, new in amap.items()}
    return Subgroup(alphabet, tuple(gens), can, trace, back)


def from_automaton(g: Automaton) -> Subgroup:
    """The subgroup recognized by ``g`` (any automaton), generated by a basis of it."""
    reduced, _ = reduce(g)
    return stallings(basis_from_tree(reduced), g.alphabet)


def contains(h: Subgroup, w: Sequence[int]) -> bool:
    r = read(h.automaton, h.automaton.basepoint, free_reduce(w))
    return r.end == h.automaton.basepoint


def express(h: Subgroup, w: Sequence[int]) -> Word:
    """Write ``w`` as a word in the generators of ``h`` (symbols 1..p)."""
    r = free_reduce(w)
    reading = read(h.automaton, h.automaton.basepoint, r)
    if reading.end != h.automaton.basepoint:
        raise ValueError("word is not in the subgroup")
    if not r:
        return Word()
    steps = tuple((h._arc_back[a], d) for a, d in reading.walk.steps)
    walk = Walk(h.trace.initial.basepoint, steps)
    lifted = _elevate_walk(h.trace, len(h.trace.records), walk)
    return bracket_petals(h.trace.petals, lifted)


def basis(h: Subgroup) -> list[Word]:
    return basis_from_tree(h.automaton)


def rank(h: Subgroup) -> int:
    return h.rank


def is_free_basis(words: Iterable[Sequence[int]], alphabet: Alphabet | None = None) -> bool:
    """True iff the words are freely independent (a free basis of the subgroup they generate)."""
    words = [free_reduce(w) for w in words]
    if any(not w for w in words):
        return False
    if alphabet is None:
        alphabet = Alphabet(max([1] + [w.max_generator() for w in words]))
    _, trace = reduce(flower(words, alphabet))
    return trace.loss() == 0


def _same_alphabet(h: Subgroup, k: Subgroup):
    if h.alphabet.rank != k.alphabet.rank:
        raise ValueError("subgroups live in free groups of different rank")


def equals(h: Subgroup, k: Subgroup) -> bool:
    _same_alphabet(h, k)
    return h.automaton.structure()[1:] == k.automaton.structure()[1:]


def hom_into(h: Subgroup, k: Subgroup) -> dict[int, int] | None:
    """The basepoint- and label-preserving map St(h) -> St(k), if ``h <= k``."""
    _same_alphabet(h, k)
    g, t = h.automaton, k.automaton
    vmap = {}
    for v, path in tree_paths(g).items():
        r = read(t, t.basepoint, path.label(g))
        if r.end is None:
            return None
        vmap[v] = r.end
    for src, dst, x in g.arcs.values():
        if t.target(vmap[src], x) != vmap[dst]:
            return None
    return vmap


def is_subgroup_of(h: Subgroup, k: Subgroup) -> bool:
    return hom_into(h, k) is not None


def index(h: Subgroup) -> IndexReport:
    g = h.automaton
    if not is_saturated(g):
        for v in g.sorted_vertices():
            for x in g.alphabet.letters():
                if not g.arcs_at(v, x):
                    return IndexReport(False, witness_deficiency=(v, x))
    paths = tree_paths(g)
    transversal = tuple(paths[v].label(g) for v in g.sorted_vertices())
    return IndexReport(True, len(g), transversal)


def is_normal(h: Subgroup) -> bool:
    g = h.automaton
    if h.is_trivial():
        return True
    if not is_saturated(g):
        return False
    return all(iso_rooted(g, g.rebased(v)) is not None for v in g.sorted_vertices())


def conjugate(h: Subgroup, w: Sequence[int]) -> Subgroup:
    """The conjugate ``w^-1 H w``."""
    w = free_reduce(w)
    return stallings([w.inverse() * s * w for s in h.generators], h.alphabet)


def _path_label(g: Automaton, start: int, end: int) -> Word:
    return tree_paths(g.rebased(start))[end].label(g)


def conjugator(h: Subgroup, k: Subgroup) -> Word | None:
    """A word ``w`` with ``w^-1 H w = K``, or None if the subgroups are not conjugate."""
    _same_alphabet(h, k)
    if h.is_trivial() or k.is_trivial():
        return Word() if h.is_trivial() and k.is_trivial() else None
    ch, th = strict_core_with_tail(h.automaton)
    ck, tk = strict_core_with_tail(k.automaton)
    found = iso_unrooted(ck, ch)
    if found is None:
        return None
    anchors = [found[0]] + [v for v in ch.sorted_vertices() if v != found[0]]
    for p in anchors:
        if p != found[0] and iso_rooted(ck, ch.rebased(p)) is None:
            continue
        w = th * _path_label(ch, ch.basepoint, p) * tk.inverse()
        if equals(conjugate(h, w), k):
            return w
    raise AssertionError("strict cores match but no conjugator verified")


def presentation(generators: Iterable[Sequence[int]], alphabet: Alphabet) -> tuple[list[Word], list[Word]]:
    """Relators among the generators: symbol ``i`` stands for the i-th nonempty reduced generator."""
    gens = _words(generators)
    _, trace = reduce(flower(gens, alphabet))
    return gens, relators(trace)


def dependence(h: Subgroup, g: Sequence[int]) -> Dependence:
    b = tuple(basis(h))
    g = free_reduce(g)
    if not g:
        return Dependence(True, b, (Word([1]),))
    _, trace = reduce(flower([g, *b], h.alphabet))
    eqs = tuple(relators(trace))
    return Dependence(bool(eqs), b, eqs)


def image_in(h: Subgroup, k: Subgroup) -> Subgroup:
    """Subgroup recognized by the image of St(h) inside St(k)."""
    vmap = hom_into(h, k)
    if vmap is None:
        raise ValueError("h is not a subgroup of k")
    t = k.automaton
    arcs = set()
    for src, _, x in h.automaton.arcs.values():
        arcs.add(t.arcs_at(vmap[src], x)[0])
    sub = t.subautomaton(set(vmap.values()), arcs, basepoint=t.basepoint)
    return from_automaton(sub)

