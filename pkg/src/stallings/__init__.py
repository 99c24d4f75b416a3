"""Subgroups of free groups through Stallings automata."""

from .automaton import Automaton, Partition, Reading, Walk, bouquet, flower
from .coset_enum import Presentation, enumerate_cosets, parse_presentation
from .constructions import (
    BoundExceeded,
    avoid_element,
    count_index,
    enumerate_index,
    finite_index_envelope,
    fringe,
)
from .folding import FoldingTrace, FoldRecord, reduce, relators
from .intersections import coset_intersection, intersect, is_malnormal, pullback, shn_report
from .subgroup import (
    Subgroup,
    basis,
    conjugate,
    conjugator,
    contains,
    dependence,
    equals,
    express,
    from_automaton,
    hom_into,
    image_in,
    index,
    is_free_basis,
    is_normal,
    is_subgroup_of,
    presentation,
    rank,
    stallings,
)
from .words import Alphabet, Word, cyclic_reduce, format_word, free_reduce, parse_word, parse_words, substitute

__all__ = [name for name in dir() if not name.startswith("_")]
