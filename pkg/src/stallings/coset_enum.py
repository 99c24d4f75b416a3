"""Coset enumeration by repeatedly gluing relator flowers onto every vertex and folding.

Starting from St(H), each round attaches a copy of the relator flower at
every vertex and folds.  When the index of H<<R>> in F is finite the
process reaches a saturated automaton that a further round leaves
unchanged: the coset graph of H in the presented group.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .automaton import Automaton, canonical_key, canonicalize, flower, is_saturated, tree_paths
from .folding import reduce
from .words import Alphabet, Word, free_reduce, parse_word

__all__ = ["Presentation", "CosetResult", "enumerate_cosets", "parse_presentation"]

MAX_ROUNDS = 64
MAX_VERTICES = 50_000


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        rels = tuple(w for w in (free_reduce(r) for r in self.relators) if w)
        for w in rels:
            if w.max_generator() > self.alphabet.rank:
                raise ValueError("relator uses a letter outside the alphabet")
        object.__setattr__(self, "relators", rels)


def parse_presentation(text: str) -> Presentation:
    """First line: generator names (space or comma separated); then one relator per line."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty presentation")
    names = [n for n in lines[0].replace(",", " ").split() if n]
    alphabet = Alphabet.from_names(names)
    return Presentation(alphabet, tuple(parse_word(ln, alphabet) for ln in lines[1:]))


@dataclass(frozen=True)
class CosetResult:
    """``success`` means the enumeration closed; otherwise it gave up (``exhausted``)."""

    success: bool
    rounds: int
    vertices: int
    index: int | None = None
    transversal: tuple[Word, ...] = ()
    automaton: Automaton | None = None

    @property
    def exhausted(self) -> bool:
        return not self.success


def _attach_relators(g: Automaton, relators: Sequence[Word]) -> Automaton:
    h = g.copy()
    for v in g.sorted_vertices():
        for r in relators:
            prev = v
            for i, x in enumerate(r):
                nxt = v if i == len(r) - 1 else h.add_vertex()
                if x > 0:
                    h.add_arc(prev, nxt, x)
                else:
                    h.add_arc(nxt, prev, -x)
                prev = nxt
    return h


def enumerate_cosets(
    p: Presentation,
    subgroup_gens: Iterable[Sequence[int]],
    max_rounds: int = MAX_ROUNDS,
    max_vertices: int = MAX_VERTICES,
) -> CosetResult:
    """Index and transversal of the subgroup generated by ``subgroup_gens`` in the presented group."""
    if max_rounds < 1:
        raise ValueError("max_rounds must be at least 1")
    gens = [w for w in (free_reduce(s) for s in subgroup_gens) if w]
    current = canonicalize(reduce(flower(gens, p.alphabet))[0])
    key = canonical_key(current)
    for rounds in range(1, max_rounds + 1):
        nxt = canonicalize(reduce(_attach_relators(current, p.relators))[0])
        nkey = canonical_key(nxt)
        if nkey == key:
            if not is_saturated(current):
                # nothing will ever change again, and the index is infinite
                return CosetResult(False, rounds, len(current))
            paths = tree_paths(current)
            transversal = tuple(paths[v].label(current) for v in current.sorted_vertices())
            return CosetResult(True, rounds, len(current), len(current), transversal, current)
        current, key = nxt, nkey
        if len(current) > max_vertices:
            return CosetResult(False, rounds, len(current))
    return CosetResult(False, max_rounds, len(current))
