"""Involutive labeled pointed digraphs ("automata" over a free alphabet).

Only positive arcs are stored.  An arc ``(src, dst, a)`` is read forwards as
the letter ``a`` and backwards (from ``dst`` to ``src``) as ``a^-1``.  Vertex
and arc identifiers are non-negative integers; deletions leave holes until
:func:`canonicalize` renumbers everything.

Tie-breaking is uniform across the module: ascending vertex id, then signed
letters in the order +1, -1, +2, -2, ..., then ascending arc id.
"""

from __future__ import annotations

import json
from bisect import insort
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

from .words import Alphabet, Word, free_reduce, letter_order

__all__ = [
    "Automaton",
    "Walk",
    "Reading",
    "Partition",
    "flower",
    "bouquet",
    "path_automaton",
    "is_deterministic",
    "is_saturated",
    "deficiency",
    "deficient_vertices",
    "core",
    "strict_core",
    "strict_core_with_tail",
    "components",
    "is_connected",
    "spanning_tree",
    "tree_paths",
    "rank",
    "basis_from_tree",
    "read",
    "quotient",
    "iso_rooted",
    "iso_unrooted",
    "canonicalize",
    "canonical_key",
    "to_dot",
    "to_json",
    "from_json",
]


class Automaton:
    """A finite involutive A-automaton with a basepoint.

    ``basepoint`` is ``None`` only for the empty automaton (zero vertices),
    which is how an empty strict core is represented.
    """

    def __init__(self, alphabet: Alphabet, basepoint: int | None = 0, vertices: Iterable[int] | None = None):
        self.alphabet = alphabet
        self.arcs: dict[int, tuple[int, int, int]] = {}
        self._out: dict[int, dict[int, list[int]]] = {}
        self._next_vertex = 0
        self._next_arc = 0
        self.basepoint = basepoint
        if vertices is None:
            vertices = [] if basepoint is None else [basepoint]
        for v in vertices:
            self.add_vertex(v)
        if basepoint is not None and basepoint not in self._out:
            self.add_vertex(basepoint)
        # flower automata remember which arcs form which petal
        self.petals: list[list[tuple[int, int]]] | None = None

    # -- construction -----------------------------------------------------

    @property
    def vertices(self) -> set[int]:
        return set(self._out)

    def sorted_vertices(self) -> list[int]:
        return sorted(self._out)

    def __len__(self):
        return len(self._out)

    def num_arcs(self) -> int:
        return len(self.arcs)

    def has_vertex(self, v: int) -> bool:
        return v in self._out

    def add_vertex(self, v: int | None = None) -> int:
        if v is None:
            v = self._next_vertex
        if v in self._out:
            return v
        self._out[v] = {}
        self._next_vertex = max(self._next_vertex, v + 1)
        return v

    def add_arc(self, src: int, dst: int, letter: int, arc_id: int | None = None) -> int:
        if letter <= 0 or letter > self.alphabet.rank:
            raise ValueError(f"arc letter {letter} outside alphabet")
        if src not in self._out or dst not in self._out:
            raise ValueError("arc endpoint is not a vertex")
        if arc_id is None:
            arc_id = self._next_arc
        if arc_id in self.arcs:
            raise ValueError(f"duplicate arc id {arc_id}")
        self.arcs[arc_id] = (src, dst, letter)
        self._next_arc = max(self._next_arc, arc_id + 1)
        insort(self._out[src].setdefault(letter, []), arc_id)
        insort(self._out[dst].setdefault(-letter, []), arc_id)
        return arc_id

    def remove_arc(self, arc_id: int) -> tuple[int, int, int]:
        src, dst, letter = self.arcs.pop(arc_id)
        self._unlink(src, letter, arc_id)
        self._unlink(dst, -letter, arc_id)
        return src, dst, letter

    def _unlink(self, v: int, signed: int, arc_id: int):
        slot = self._out[v][signed]
        slot.remove(arc_id)
        if not slot:
            del self._out[v][signed]

    def remove_vertex(self, v: int):
        for arc_id in {a for slot in self._out[v].values() for a in slot}:
            self.remove_arc(arc_id)
        del self._out[v]

    def set_arc(self, arc_id: int, src: int, dst: int):
        """Move the endpoints of an existing arc."""
        _, _, letter = self.remove_arc(arc_id)
        self.add_arc(src, dst, letter, arc_id)

    def copy(self) -> "Automaton":
        g = Automaton(self.alphabet, self.basepoint, self._out)
        for arc_id in sorted(self.arcs):
            src, dst, letter = self.arcs[arc_id]
            g.add_arc(src, dst, letter, arc_id)
        g._next_vertex = self._next_vertex
        g._next_arc = self._next_arc
        g.petals = None if self.petals is None else [list(p) for p in self.petals]
        return g

    def rebased(self, v: int) -> "Automaton":
        if v not in self._out:
            raise ValueError(f"{v} is not a vertex")
        g = self.copy()
        g.basepoint = v
        return g

    def subautomaton(self, vertices: Iterable[int], arcs: Iterable[int] | None = None, basepoint: int | None = None) -> "Automaton":
        vertices = set(vertices)
        if basepoint is None and self.basepoint in vertices:
            basepoint = self.basepoint
        if basepoint is None and vertices:
            basepoint = min(vertices)
        g = Automaton(self.alphabet, basepoint, sorted(vertices))
        if arcs is None:
            arcs = [a for a, (s, d, _) in self.arcs.items() if s in vertices and d in vertices]
        for a in sorted(arcs):
            s, d, x = self.arcs[a]
            g.add_arc(s, d, x, a)
        return g

    # -- local structure --------------------------------------------------

    def arcs_at(self, v: int, signed: int) -> list[int]:
        """Arcs leaving ``v`` reading ``signed`` (backward traversals included)."""
        return self._out[v].get(signed, [])

    def slots(self, v: int) -> list[tuple[int, list[int]]]:
        """Nonempty (signed letter, arcs) slots at ``v`` in canonical letter order."""
        return sorted(self._out[v].items(), key=lambda kv: letter_order(kv[0]))

    def other_end(self, arc_id: int, signed: int) -> int:
        """Endpoint reached by traversing ``arc_id`` while reading ``signed``."""
        src, dst, _ = self.arcs[arc_id]
        return dst if signed > 0 else src

    def target(self, v: int, signed: int) -> int | None:
        """The vertex reached from ``v`` reading ``signed`` (first arc if several)."""
        slot = self._out[v].get(signed)
        if not slot:
            return None
        return self.other_end(slot[0], signed)

    def degree(self, v: int) -> int:
        return sum(len(slot) for slot in self._out[v].values())

    def incident(self, v: int) -> Iterator[tuple[int, int, int]]:
        """Yield ``(signed letter, arc, other endpoint)`` in canonical order."""
        for signed, slot in self.slots(v):
            for a in slot:
                yield signed, a, self.other_end(a, signed)

    def structure(self) -> tuple:
        """Comparable description: alphabet, basepoint, vertices, arcs with ids."""
        return (
            self.alphabet,
            self.basepoint,
            tuple(sorted(self._out)),
            tuple(sorted((a, *e) for a, e in self.arcs.items())),
        )

    def __eq__(self, other):
        if not isinstance(other, Automaton):
            return NotImplemented
        return self.structure() == other.structure()

    __hash__ = None

    def __repr__(self):
        return f"<Automaton {len(self)} vertices, {len(self.arcs)} arcs, basepoint {self.basepoint}>"


@dataclass(frozen=True)
class Walk:
    """A walk: a start vertex and a sequence of ``(arc id, direction)`` steps, direction ±1."""

    start: int
    steps: tuple[tuple[int, int], ...] = ()

    def __len__(self):
        return len(self.steps)

    def label(self, g: Automaton) -> Word:
        return Word(g.arcs[a][2] * d for a, d in self.steps)

    def end(self, g: Automaton) -> int:
        v = self.start
        for a, d in self.steps:
            src, dst, _ = g.arcs[a]
            if (src if d > 0 else dst) != v:
                raise ValueError(f"step {a} is not incident to vertex {v}")
            v = dst if d > 0 else src
        return v

    def is_valid(self, g: Automaton) -> bool:
        try:
            self.end(g)
        except (ValueError, KeyError):
            return False
        return True

    def inverse(self, g: Automaton) -> "Walk":
        return Walk(self.end(g), tuple((a, -d) for a, d in reversed(self.steps)))

    def reduced(self) -> "Walk":
        """Cancel every backtracking ``e e^-1``."""
        stack: list[tuple[int, int]] = []
        for a, d in self.steps:
            if stack and stack[-1] == (a, -d):
                stack.pop()
            else:
                stack.append((a, d))
        return Walk(self.start, tuple(stack))

    def is_reduced(self) -> bool:
        return all(self.steps[i] != (self.steps[i + 1][0], -self.steps[i + 1][1]) for i in range(len(self.steps) - 1))


class Reading(NamedTuple):
    """Result of reading a word: ``end`` is None when the reading got stuck at ``stopped_at``."""

    end: int | None
    stopped_at: int | None
    last: int
    walk: Walk

    @property
    def complete(self) -> bool:
        return self.end is not None


@dataclass(frozen=True)
class Partition:
    blocks: tuple[frozenset, ...] = field(default_factory=tuple)

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        return cls(tuple(frozenset(b) for b in blocks))

    def validate(self, vertices: Iterable[int]):
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise ValueError("empty block in partition")
            if seen & b:
                raise ValueError("partition blocks overlap")
            seen |= b
        if seen != set(vertices):
            raise ValueError("partition does not cover the vertex set")


# -- basic constructions ---------------------------------------------------


def flower(generators: Sequence[Sequence[int]], alphabet: Alphabet) -> Automaton:
    """Flower automaton: one petal per generator, all petals glued at the basepoint.

    The result carries ``petals``: for each generator the list of
    ``(arc id, reading direction)`` pairs spelling it from the basepoint.
    """
    g = Automaton(alphabet, 0)
    petals = []
    for w in generators:
        petal = []
        prev = 0
        for i, x in enumerate(w):
            nxt = 0 if i == len(w) - 1 else g.add_vertex()
            if x > 0:
                a = g.add_arc(prev, nxt, x)
            else:
                a = g.add_arc(nxt, prev, -x)
            petal.append((a, 1 if x > 0 else -1))
            prev = nxt
        petals.append(petal)
    g.petals = petals
    return g


def bouquet(alphabet: Alphabet) -> Automaton:
    g = Automaton(alphabet, 0)
    for x in range(1, alphabet.rank + 1):
        g.add_arc(0, 0, x)
    return g


def path_automaton(w: Sequence[int], alphabet: Alphabet) -> Automaton:
    """Linear automaton reading ``w`` from vertex 0 to vertex ``len(w)``."""
    g = Automaton(alphabet, 0, range(len(w) + 1))
    for i, x in enumerate(w):
        if x > 0:
            g.add_arc(i, i + 1, x)
        else:
            g.add_arc(i + 1, i, -x)
    return g


# -- properties ------------------------------------------------------------


def is_deterministic(g: Automaton) -> tuple[bool, tuple[int, int] | None]:
    """Return ``(True, None)`` or ``(False, (arc1, arc2))`` for the first violation."""
    for v in g.sorted_vertices():
        for _, slot in g.slots(v):
            if len(slot) > 1:
                return False, (slot[0], slot[1])
    return True, None


def deficient_vertices(g: Automaton, signed: int) -> list[int]:
    return [v for v in g.sorted_vertices() if not g.arcs_at(v, signed)]


def deficiency(g: Automaton, signed: int) -> int:
    return len(deficient_vertices(g, signed))


def is_saturated(g: Automaton) -> bool:
    letters = g.alphabet.letters()
    return all(g.arcs_at(v, x) for v in g.vertices for x in letters)


def components(g: Automaton) -> list[list[int]]:
    """Connected components, each sorted, listed by their smallest vertex."""
    seen: set[int] = set()
    out = []
    for v in g.sorted_vertices():
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        stack = [v]
        while stack:
            u = stack.pop()
            for _, _, w in g.incident(u):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g: Automaton) -> bool:
    return len(components(g)) <= 1


def _prune(g: Automaton, keep: set[int]) -> list[int]:
    """Repeatedly delete vertices of degree <= 1 outside ``keep``; return them in order."""
    removed = []
    queue = deque(v for v in g.sorted_vertices() if v not in keep and g.degree(v) <= 1)
    while queue:
        v = queue.popleft()
        if not g.has_vertex(v) or v in keep or g.degree(v) > 1:
            continue
        nbrs = [w for _, _, w in g.incident(v)]
        g.remove_vertex(v)
        removed.append(v)
        for w in nbrs:
            if w != v and g.has_vertex(w) and w not in keep and g.degree(w) <= 1:
                queue.append(w)
    return removed


def _basepoint_component(g: Automaton) -> Automaton:
    for comp in components(g):
        if g.basepoint in comp:
            if len(comp) == len(g):
                return g.copy()
            return g.subautomaton(comp)
    raise ValueError("automaton has no basepoint")


def core(g: Automaton) -> Automaton:
    """Basepoint component with all hanging trees (not containing the basepoint) removed."""
    h = _basepoint_component(g)
    _prune(h, {h.basepoint})
    h.petals = None
    return h


def strict_core_with_tail(g: Automaton) -> tuple[Automaton, Word]:
    """Strict core plus the label of the tail from the old basepoint to its attachment vertex.

    The new basepoint is the attachment vertex.  For a tree the result is the
    empty automaton (``basepoint`` None) and the tail is empty.
    """
    h = g.copy()
    h.petals = None
    _prune(h, set())
    if len(h) == 0:
        empty = Automaton(g.alphabet, None)
        return empty, Word()
    if h.has_vertex(g.basepoint):
        return h, Word()
    # walk from the old basepoint through the pruned tree to the nearest surviving vertex
    parent: dict[int, tuple[int, int]] = {g.basepoint: (None, 0)}
    queue = deque([g.basepoint])
    while queue:
        u = queue.popleft()
        if h.has_vertex(u):
            letters = []
            while parent[u][0] is not None:
                prev, x = parent[u]
                letters.append(x)
                u = prev
            tail = Word(reversed(letters))
            break
        for x, _, w in g.incident(u):
            if w not in parent:
                parent[w] = (u, x)
                queue.append(w)
    else:
        raise ValueError("strict core is not reachable from the basepoint")
    end = g.basepoint
    for x in tail:
        end = g.target(end, x)
    h.basepoint = end
    return h, tail


def strict_core(g: Automaton) -> Automaton:
    return strict_core_with_tail(g)[0]


# -- trees and bases -------------------------------------------------------


def _bfs(g: Automaton, root: int | None = None) -> tuple[list[int], dict[int, tuple[int, int, int] | None]]:
    """Breadth-first search; returns visiting order and parent ``(prev, arc, dir)`` per vertex."""
    root = g.basepoint if root is None else root
    parent: dict[int, tuple[int, int, int] | None] = {root: None}
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for signed, a, w in g.incident(u):
            if w not in parent:
                parent[w] = (u, a, 1 if signed > 0 else -1)
                order.append(w)
                queue.append(w)
    return order, parent


def spanning_tree(g: Automaton) -> set[int]:
    order, parent = _bfs(g)
    if len(order) != len(g):
        raise ValueError("automaton is not connected")
    return {parent[v][1] for v in order[1:]}


def tree_paths(g: Automaton, tree: set[int] | None = None) -> dict[int, Walk]:
    """Walks from the basepoint to every vertex inside the given (default BFS) spanning tree."""
    if tree is None:
        tree = spanning_tree(g)
    paths = {g.basepoint: Walk(g.basepoint)}
    queue = deque([g.basepoint])
    while queue:
        u = queue.popleft()
        for signed, a, w in g.incident(u):
            if a in tree and w not in paths:
                paths[w] = Walk(g.basepoint, paths[u].steps + ((a, 1 if signed > 0 else -1),))
                queue.append(w)
    if len(paths) != len(g) or len(tree) != len(g) - 1:
        raise ValueError("not a spanning tree")
    return paths


def rank(g: Automaton) -> int:
    if not is_connected(g):
        raise ValueError("automaton is not connected")
    if len(g) == 0:
        return 0
    return 1 - len(g) + len(g.arcs)


def basis_from_tree(g: Automaton, tree: set[int] | None = None) -> list[Word]:
    """One reduced word per positive arc outside the tree: basepoint -> arc -> basepoint."""
    paths = tree_paths(g, tree)
    tree = {a for p in paths.values() for a, _ in p.steps}
    out = []
    for a in sorted(g.arcs):
        if a in tree:
            continue
        src, dst, x = g.arcs[a]
        out.append(free_reduce(paths[src].label(g).concat((x,)).concat(paths[dst].label(g).inverse())))
    return out


# -- reading ---------------------------------------------------------------


def read(g: Automaton, start: int, w: Sequence[int]) -> Reading:
    """Follow the (first available) walk spelling ``w`` from ``start``."""
    if not g.has_vertex(start):
        raise ValueError(f"{start} is not a vertex")
    v = start
    steps = []
    for i, x in enumerate(w):
        slot = g.arcs_at(v, x)
        if not slot:
            return Reading(None, i, v, Walk(start, tuple(steps)))
        a = slot[0]
        steps.append((a, 1 if x > 0 else -1))
        v = g.other_end(a, x)
    return Reading(v, None, v, Walk(start, tuple(steps)))


# -- quotients and isomorphism ----------------------------------------------


def quotient(g: Automaton, partition: Partition | Iterable[Iterable[int]]) -> Automaton:
    """Identify the vertices in each block; each block is named by its smallest vertex."""
    if not isinstance(partition, Partition):
        partition = Partition.of(partition)
    partition.validate(g.vertices)
    rep = {v: min(b) for b in partition.blocks for v in b}
    h = Automaton(g.alphabet, rep[g.basepoint], sorted(set(rep.values())))
    for a in sorted(g.arcs):
        src, dst, x = g.arcs[a]
        h.add_arc(rep[src], rep[dst], x, a)
    return h


def iso_rooted(g1: Automaton, g2: Automaton) -> dict[int, int] | None:
    """Basepoint- and label-preserving isomorphism between deterministic connected automata."""
    if len(g1) != len(g2) or len(g1.arcs) != len(g2.arcs) or g1.alphabet.rank != g2.alphabet.rank:
        return None
    if len(g1) == 0:
        return {}
    vmap = {g1.basepoint: g2.basepoint}
    used = {g2.basepoint}
    queue = deque([g1.basepoint])
    while queue:
        u = queue.popleft()
        u2 = vmap[u]
        s1, s2 = g1.slots(u), g2.slots(u2)
        if [x for x, _ in s1] != [x for x, _ in s2]:
            return None
        for (x, slot1), (_, slot2) in zip(s1, s2):
            if len(slot1) != 1 or len(slot2) != 1:
                raise ValueError("iso_rooted needs deterministic automata")
            w1 = g1.other_end(slot1[0], x)
            w2 = g2.other_end(slot2[0], x)
            if w1 in vmap:
                if vmap[w1] != w2:
                    return None
            else:
                if w2 in used:
                    return None
                vmap[w1] = w2
                used.add(w2)
                queue.append(w1)
    if len(vmap) != len(g1):
        return None
    return vmap


def iso_unrooted(g1: Automaton, g2: Automaton) -> tuple[int, dict[int, int]] | None:
    """Isomorphism ignoring basepoints: anchor g1's basepoint at each vertex of g2 in turn."""
    if len(g1) != len(g2) or len(g1.arcs) != len(g2.arcs):
        return None
    if len(g1) == 0:
        return None, {}
    for v in g2.sorted_vertices():
        m = iso_rooted(g1, g2.rebased(v))
        if m is not None:
            return v, m
    return None


def _canonical_numbering(g: Automaton) -> tuple[dict[int, int], dict[int, int]]:
    order, _ = _bfs(g)
    if len(order) != len(g):
        raise ValueError("automaton is not connected")
    vmap = {v: i for i, v in enumerate(order)}
    keyed = sorted(g.arcs, key=lambda a: (vmap[g.arcs[a][0]], g.arcs[a][2], vmap[g.arcs[a][1]], a))
    amap = {a: i for i, a in enumerate(keyed)}
    return vmap, amap


def canonicalize(g: Automaton, with_maps: bool = False):
    """Renumber vertices in BFS order from the basepoint and arcs by (source, letter)."""
    if len(g) == 0:
        h = Automaton(g.alphabet, None)
        return (h, {}, {}) if with_maps else h
    vmap, amap = _canonical_numbering(g)
    h = Automaton(g.alphabet, 0, range(len(g)))
    for a in sorted(amap, key=amap.get):
        src, dst, x = g.arcs[a]
        h.add_arc(vmap[src], vmap[dst], x, amap[a])
    if with_maps:
        return h, vmap, amap
    return h


def canonical_key(g: Automaton) -> tuple:
    """Hashable key; equal keys iff rooted-isomorphic (for deterministic connected automata)."""
    h = canonicalize(g)
    return (g.alphabet.rank, len(h), tuple(h.arcs[a] for a in sorted(h.arcs)))


# -- serialization -----------------------------------------------------------


def to_json(g: Automaton) -> str:
    data = {
        "alphabet": {"rank": g.alphabet.rank, "names": list(g.alphabet.names)},
        "basepoint": g.basepoint,
        "vertices": g.sorted_vertices(),
        "arcs": [{"id": a, "src": s, "dst": d, "letter": x} for a, (s, d, x) in sorted(g.arcs.items())],
    }
    return json.dumps(data)


def from_json(text: str | dict) -> Automaton:
    data = json.loads(text) if isinstance(text, str) else text
    try:
        alpha = data["alphabet"]
        alphabet = Alphabet(int(alpha["rank"]), tuple(alpha.get("names") or ()))
        vertices = [int(v) for v in data["vertices"]]
        basepoint = data["basepoint"]
        if basepoint is not None and basepoint not in vertices:
            raise ValueError("basepoint is not a vertex")
        g = Automaton(alphabet, basepoint, vertices)
        for arc in data["arcs"]:
            g.add_arc(int(arc["src"]), int(arc["dst"]), int(arc["letter"]), int(arc["id"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed automaton JSON: {exc}") from None
    return g


def to_dot(g: Automaton, name: str = "G") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=circle];"]
    for v in g.sorted_vertices():
        shape = ' [shape=doublecircle]' if v == g.basepoint else ""
        lines.append(f"  {v}{shape};")
    for a, (s, d, x) in sorted(g.arcs.items()):
        lines.append(f'  {s} -> {d} [label="{g.alphabet.name(x)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
