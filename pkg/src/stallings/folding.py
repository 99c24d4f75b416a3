"""Stallings foldings, the reduction process, walk elevation and relators.

A fold identifies two arcs with the same signed label leaving a common
vertex.  It is *closed* when the two arcs already end at the same vertex
(the rank drops by one) and *open* otherwise (two vertices get merged).

Arc identifiers survive folding, which is what makes elevation cheap: a walk
in a later automaton is also a sequence of arcs of an earlier one, and only
the seams where two merged vertices were glued need a detour.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from typing import Sequence

from .automaton import Automaton, Walk, _bfs, _prune, components
from .words import Word

__all__ = [
    "FoldRecord",
    "FoldingTrace",
    "find_fold",
    "fold_step",
    "reduce",
    "loss",
    "elementary_walk",
    "elevate",
    "bracket_petals",
    "relators",
]


@dataclass(frozen=True)
class FoldRecord:
    """One elementary fold.

    ``vertex`` and ``letter`` locate the fold (both arcs leave ``vertex``
    reading ``letter``).  ``merged`` is ``(survivor, absorbed)`` for open
    folds.  ``removed_ends`` and ``reattached`` are the undo data: the
    removed arc's endpoints and, for every arc touching the absorbed vertex,
    which of its ends was moved onto the survivor.
    """

    step: int
    kind: str
    kept_arc: int
    removed_arc: int
    vertex: int
    letter: int
    merged: tuple[int, int] | None = None
    removed_ends: tuple[int, int] = (0, 0)
    reattached: tuple[tuple[int, bool, bool], ...] = ()

    @property
    def orientation(self) -> str:
        """``"source"`` if the arcs shared their source, ``"target"`` if they shared their target."""
        return "source" if self.letter > 0 else "target"


@dataclass
class FoldingTrace:
    initial: Automaton
    records: list[FoldRecord] = field(default_factory=list)
    folded: Automaton | None = None  # last automaton of the sequence, before the core pass
    core_pruned: list[int] = field(default_factory=list)

    @property
    def petals(self):
        return self.initial.petals

    def __len__(self):
        return len(self.records)

    def automaton_at(self, j: int) -> Automaton:
        """Replay the first ``j`` folds on a copy of the initial automaton."""
        if not 0 <= j <= len(self.records):
            raise IndexError(f"step {j} out of range")
        g = self.initial.copy()
        g.petals = None
        for rec in self.records[:j]:
            _fold(g, rec.kept_arc, rec.removed_arc, rec.vertex, rec.letter, rec.step)
        return g

    def loss(self) -> int:
        return sum(1 for r in self.records if r.kind == "closed")


def _fold_pairs(g: Automaton, v: int) -> list[tuple[int, int, int]]:
    return [(x, slot[0], slot[1]) for x, slot in g.slots(v) if len(slot) > 1]


def find_fold(g: Automaton) -> tuple[int, int] | None:
    """First foldable pair by vertex id, signed letter order, then arc id."""
    for v in g.sorted_vertices():
        pairs = _fold_pairs(g, v)
        if pairs:
            return pairs[0][1], pairs[0][2]
    return None


def _locate(g: Automaton, a1: int, a2: int) -> tuple[int, int]:
    """Common vertex and signed letter of a foldable pair."""
    if a1 == a2 or a1 not in g.arcs or a2 not in g.arcs:
        raise ValueError(f"arcs {a1}, {a2} are not foldable")
    s1, d1, x1 = g.arcs[a1]
    s2, d2, x2 = g.arcs[a2]
    if x1 != x2:
        raise ValueError(f"arcs {a1}, {a2} carry different labels")
    if s1 == s2:
        return s1, x1
    if d1 == d2:
        return d1, -x1
    raise ValueError(f"arcs {a1}, {a2} share no endpoint in a foldable way")


def _fold(g: Automaton, kept: int, removed: int, x: int, d: int, step: int) -> FoldRecord:
    """Fold in place; ``kept`` and ``removed`` both leave ``x`` reading ``d``."""
    v1 = g.other_end(kept, d)
    v2 = g.other_end(removed, d)
    src, dst, _ = g.remove_arc(removed)
    if v1 == v2:
        return FoldRecord(step, "closed", kept, removed, x, d, None, (src, dst))
    survivor, absorbed = (v2, v1) if v2 == g.basepoint else (v1, v2)
    moved = []
    for a in sorted({a for _, slot in g.slots(absorbed) for a in slot}):
        s, t, _ = g.arcs[a]
        moved.append((a, s == absorbed, t == absorbed))
        g.set_arc(a, survivor if s == absorbed else s, survivor if t == absorbed else t)
    g.remove_vertex(absorbed)
    return FoldRecord(step, "open", kept, removed, x, d, (survivor, absorbed), (src, dst), tuple(moved))


def _unfold(g: Automaton, rec: FoldRecord):
    """Undo ``rec`` in place, turning the post-fold automaton back into the pre-fold one."""
    if rec.kind == "open":
        survivor, absorbed = rec.merged
        g.add_vertex(absorbed)
        for a, moved_src, moved_dst in rec.reattached:
            s, t, _ = g.arcs[a]
            g.set_arc(a, absorbed if moved_src else s, absorbed if moved_dst else t)
    letter = abs(rec.letter)
    g.add_arc(rec.removed_ends[0], rec.removed_ends[1], letter, rec.removed_arc)


def fold_step(g: Automaton, pair: tuple[int, int], step: int = 1) -> tuple[Automaton, FoldRecord]:
    """Fold ``pair`` on a copy of ``g``.  The lower arc id is kept."""
    x, d = _locate(g, *pair)
    kept, removed = sorted(pair)
    h = g.copy()
    h.petals = None
    rec = _fold(h, kept, removed, x, d, step)
    return h, rec


def reduce(g: Automaton, rng: random.Random | None = None) -> tuple[Automaton, FoldingTrace]:
    """Fold until deterministic, then take the core.

    Without ``rng`` the fold applied at each step is :func:`find_fold`'s first
    pair.  With ``rng`` a foldable pair is chosen at random, which is only
    useful for checking that the outcome does not depend on the order.
    """
    work = g.copy()
    work.petals = None
    trace = FoldingTrace(initial=g.copy())
    step = 0
    if rng is None:
        heap = work.sorted_vertices()
        heapq.heapify(heap)
        while heap:
            v = heap[0]
            if not work.has_vertex(v):
                heapq.heappop(heap)
                continue
            pairs = _fold_pairs(work, v)
            if not pairs:
                heapq.heappop(heap)
                continue
            d, kept, removed = pairs[0]
            step += 1
            rec = _fold(work, kept, removed, v, d, step)
            trace.records.append(rec)
            if rec.merged:
                heapq.heappush(heap, rec.merged[0])
            else:
                heapq.heappush(heap, work.other_end(kept, d))
    else:
        while True:
            candidates = []
            for v in work.sorted_vertices():
                for d, slot in work.slots(v):
                    for i in range(len(slot)):
                        for j in range(i + 1, len(slot)):
                            candidates.append((v, d, slot[i], slot[j]))
            if not candidates:
                break
            v, d, kept, removed = rng.choice(candidates)
            step += 1
            trace.records.append(_fold(work, kept, removed, v, d, step))
    trace.folded = work.copy()
    comps = components(work)
    if len(comps) > 1:
        keep = next(c for c in comps if work.basepoint in c)
        dropped = sorted(set(work.vertices) - set(keep))
        work = work.subautomaton(keep)
    else:
        dropped = []
    trace.core_pruned = dropped + _prune(work, {work.basepoint})
    return work, trace


def loss(trace: FoldingTrace) -> int:
    return trace.loss()


def _shortest_path(g: Automaton, target: int) -> Walk:
    _, parent = _bfs(g)
    steps = []
    v = target
    while parent[v] is not None:
        prev, a, direction = parent[v]
        steps.append((a, direction))
        v = prev
    return Walk(g.basepoint, tuple(reversed(steps)))


def elementary_walk(trace: FoldingTrace, j: int) -> Walk:
    """Closed basepoint walk in the automaton before closed fold ``j`` with trivial reduced label.

    It runs along a shortest path to the fold vertex, out along the removed
    arc, back along the kept arc and home again.
    """
    rec = trace.records[j - 1]
    if rec.kind != "closed":
        raise ValueError(f"step {j} is not a closed fold")
    after = trace.automaton_at(j)
    gamma = _shortest_path(after, rec.vertex)
    s = 1 if rec.letter > 0 else -1
    steps = gamma.steps + ((rec.removed_arc, s), (rec.kept_arc, -s)) + tuple((a, -d) for a, d in reversed(gamma.steps))
    return Walk(after.basepoint, steps).reduced()


def _step_ends(g: Automaton, arc: int, direction: int) -> tuple[int, int]:
    s, t, _ = g.arcs[arc]
    return (s, t) if direction > 0 else (t, s)


def _lift_open(before: Automaton, rec: FoldRecord, walk: Walk, end: int) -> Walk:
    """Lift a walk across open fold ``rec`` into ``before``, ending at vertex ``end``."""
    survivor, absorbed = rec.merged
    s = 1 if rec.letter > 0 else -1
    v1 = before.other_end(rec.kept_arc, rec.letter)
    # v1 -> x along the kept arc backwards, then out along the removed arc to v2
    detour = {
        v1: ((rec.kept_arc, -s), (rec.removed_arc, s)),
        before.other_end(rec.removed_arc, rec.letter): ((rec.removed_arc, -s), (rec.kept_arc, s)),
    }
    pair = {survivor, absorbed}
    steps: list[tuple[int, int]] = []

    def push(step):
        if steps and steps[-1] == (step[0], -step[1]):
            steps.pop()
        else:
            steps.append(step)

    here = walk.start
    for a, direction in list(walk.steps) + [(None, 0)]:
        want = end if a is None else _step_ends(before, a, direction)[0]
        if want != here:
            if {want, here} != pair:
                raise ValueError("walk does not lift across this fold")
            for st in detour[here]:
                push(st)
            here = want
        if a is not None:
            push((a, direction))
            here = _step_ends(before, a, direction)[1]
    return Walk(walk.start, tuple(steps))


def _elevate_walk(trace: FoldingTrace, j: int, walk: Walk) -> Walk:
    g = trace.folded.copy() if trace.folded is not None else trace.automaton_at(len(trace.records))
    for rec in reversed(trace.records[j:]):
        _unfold(g, rec)
    end = walk.end(g)
    for rec in reversed(trace.records[:j]):
        _unfold(g, rec)
        if rec.kind == "open":
            walk = _lift_open(g, rec, walk, end)
        else:
            walk = walk.reduced()
    return walk.reduced()


def elevate(trace: FoldingTrace, j: int, walk: Walk) -> Walk:
    """Lift a closed basepoint walk of the automaton after step ``j`` back to the initial automaton.

    The result is reduced and its label freely reduces to the same word as
    the label of ``walk``.
    """
    if not 0 <= j <= len(trace.records):
        raise IndexError(f"step {j} out of range")
    g = trace.automaton_at(j)
    if walk.start != g.basepoint or walk.end(g) != g.basepoint:
        raise ValueError("walk is not closed at the basepoint")
    return _elevate_walk(trace, j, walk)


def bracket_petals(petals: Sequence[Sequence[tuple[int, int]]], walk: Walk) -> Word:
    """Split a reduced closed flower walk into whole petal traversals; return the symbol word."""
    starts: dict[tuple[int, int], tuple[int, tuple]] = {}
    for i, petal in enumerate(petals, start=1):
        if not petal:
            continue
        starts[petal[0]] = (i, tuple(petal))
        back = tuple((a, -d) for a, d in reversed(petal))
        starts[back[0]] = (-i, back)
    symbols = []
    pos = 0
    steps = walk.steps
    while pos < len(steps):
        if steps[pos] not in starts:
            raise ValueError("walk does not decompose into petals")
        sym, seq = starts[steps[pos]]
        if steps[pos : pos + len(seq)] != seq:
            raise ValueError("walk leaves a petal midway")
        symbols.append(sym)
        pos += len(seq)
    return Word(symbols)


def relators(trace: FoldingTrace) -> list[Word]:
    """One relator over the petal symbols for every closed fold of a flower's reduction."""
    if trace.petals is None:
        raise ValueError("initial automaton is not a tagged flower")
    out = []
    for rec in trace.records:
        if rec.kind != "closed":
            continue
        walk = elementary_walk(trace, rec.step)
        lifted = _elevate_walk(trace, rec.step - 1, walk)
        out.append(bracket_petals(trace.petals, lifted))
    return out
