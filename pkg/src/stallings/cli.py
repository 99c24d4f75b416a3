"""Command-line interface: ``stallings <subcommand> [options]``.

Answers (including ``false`` and ``none``) exit with status 0, usage and
input errors with 2, refused or inconclusive exhaustive computations with 3.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import automaton as am
from .constructions import BoundExceeded, avoid_element, count_index, enumerate_index, finite_index_envelope, fringe
from .coset_enum import MAX_ROUNDS, enumerate_cosets, parse_presentation
from .intersections import coset_intersection, intersect, is_malnormal, shn_report
from .subgroup import (
    Subgroup,
    basis,
    conjugate,
    conjugator,
    contains,
    dependence,
    express,
    image_in,
    index,
    is_normal,
    is_subgroup_of,
    presentation,
    stallings,
)
from .words import Alphabet, Word, format_word, parse_word

EXIT_OK, EXIT_USAGE, EXIT_BOUND = 0, 2, 3


class UsageError(Exception):
    pass


class Context:
    def __init__(self, args):
        self.args = args
        if args.names:
            self.alphabet = Alphabet.from_names(n.strip() for n in args.names.split(","))
        else:
            if args.rank < 1:
                raise UsageError("rank must be at least 1")
            self.alphabet = Alphabet(args.rank)
        self.style = "compact" if self.alphabet.compact else "caret"
        self.format = args.format

    def word(self, text: str) -> Word:
        return parse_word(text, self.alphabet)

    def words(self, spec: str | None) -> list[Word]:
        if spec is None:
            return []
        if spec.startswith("@"):
            spec = Path(spec[1:]).read_text()
        parts = [p.strip() for line in spec.splitlines() for p in line.split(",")]
        return [self.word(p) for p in parts if p]

    def subgroup(self, which: str = "H") -> Subgroup:
        spec = getattr(self.args, which, None)
        if spec is None:
            raise UsageError(f"missing -{which}")
        return stallings(self.words(spec), self.alphabet)

    def fmt(self, w) -> str:
        return format_word(w, self.alphabet, self.style) or "e"

    def fmt_symbols(self, w, names: Sequence[str]) -> str:
        if not w:
            return "e"
        parts = []
        for x in w:
            name = names[abs(x) - 1]
            parts.append(name if x > 0 else f"{name}^-1")
        return " ".join(parts)


def _subgroup_data(ctx: Context, h: Subgroup) -> dict:
    rep = index(h)
    return {
        "basis": [ctx.fmt(w) for w in basis(h)],
        "rank": h.rank,
        "index": rep.index if rep.finite else None,
        "automaton": json.loads(am.to_json(h.automaton)),
    }


def _subgroup_text(ctx: Context, h: Subgroup) -> str:
    return "<" + ", ".join(ctx.fmt(w) for w in basis(h)) + ">"


def _emit_subgroup(ctx: Context, h: Subgroup, out):
    if ctx.format == "json":
        print(json.dumps(_subgroup_data(ctx, h)), file=out)
    elif ctx.format == "dot":
        out.write(am.to_dot(h.automaton))
    else:
        print(_subgroup_text(ctx, h), file=out)


def _emit(ctx: Context, text: str, data, out):
    if ctx.format == "json":
        print(json.dumps(data), file=out)
    else:
        print(text, file=out)


def _bool(b: bool) -> str:
    return "true" if b else "false"


# -- subcommand handlers ------------------------------------------------------


def cmd_basis(ctx, out):
    _emit_subgroup(ctx, ctx.subgroup(), out)


def cmd_rank(ctx, out):
    h = ctx.subgroup()
    _emit(ctx, str(h.rank), {"rank": h.rank}, out)


def cmd_member(ctx, out):
    h = ctx.subgroup()
    ans = contains(h, ctx.word(ctx.args.word))
    _emit(ctx, _bool(ans), {"member": ans}, out)


def cmd_express(ctx, out):
    h = ctx.subgroup()
    w = ctx.word(ctx.args.word)
    if not contains(h, w):
        _emit(ctx, "none", {"expression": None}, out)
        return
    e = express(h, w)
    names = [f"s{i}" for i in range(1, len(h.generators) + 1)]
    _emit(ctx, ctx.fmt_symbols(e, names), {"expression": list(e), "generators": [ctx.fmt(g) for g in h.generators]}, out)


def cmd_index(ctx, out):
    rep = index(ctx.subgroup())
    if rep.finite:
        text = f"{rep.index}: " + ", ".join(ctx.fmt(w) for w in rep.transversal)
        data = {"finite": True, "index": rep.index, "transversal": [ctx.fmt(w) for w in rep.transversal]}
    else:
        v, x = rep.witness_deficiency
        letter = ctx.fmt(Word([x]))
        text = f"infinite: vertex {v} lacks {letter}"
        data = {"finite": False, "witness": {"vertex": v, "letter": x}}
    _emit(ctx, text, data, out)


def cmd_normal(ctx, out):
    ans = is_normal(ctx.subgroup())
    _emit(ctx, _bool(ans), {"normal": ans}, out)


def cmd_conjugate(ctx, out):
    w = conjugator(ctx.subgroup("H"), ctx.subgroup("K"))
    if w is None:
        _emit(ctx, "false", {"conjugate": False, "conjugator": None}, out)
    else:
        _emit(ctx, f"true: {ctx.fmt(w)}", {"conjugate": True, "conjugator": ctx.fmt(w)}, out)


def cmd_conjugate_by(ctx, out):
    _emit_subgroup(ctx, conjugate(ctx.subgroup(), ctx.word(ctx.args.word)), out)


def cmd_intersect(ctx, out):
    _emit_subgroup(ctx, intersect(ctx.subgroup("H"), ctx.subgroup("K")), out)


def cmd_shn(ctx, out):
    r = shn_report(ctx.subgroup("H"), ctx.subgroup("K"))
    terms = ", ".join(map(str, r.terms)) or "-"
    text = f"terms: {terms}\nsum: {r.lhs_sum}\nmineyev: {r.mineyev_bound}\nhn: {r.hn_bound}"
    data = {"terms": list(r.terms), "lhs_sum": r.lhs_sum, "mineyev_bound": r.mineyev_bound, "hn_bound": r.hn_bound}
    _emit(ctx, text, data, out)


def cmd_malnormal(ctx, out):
    r = is_malnormal(ctx.subgroup())
    if r.malnormal:
        _emit(ctx, "true", {"malnormal": True, "witness": None}, out)
    else:
        _emit(ctx, f"false: {ctx.fmt(r.witness)}", {"malnormal": False, "witness": ctx.fmt(r.witness)}, out)


def cmd_coset_intersect(ctx, out):
    w = coset_intersection(ctx.subgroup("H"), ctx.word(ctx.args.u), ctx.subgroup("K"), ctx.word(ctx.args.v))
    text = "none" if w is None else ctx.fmt(w)
    _emit(ctx, text, {"witness": None if w is None else ctx.fmt(w)}, out)


def cmd_present(ctx, out):
    gens, rels = presentation(ctx.words(ctx.args.H), ctx.alphabet)
    names = [f"s{i}" for i in range(1, len(gens) + 1)]
    lines = [f"{n} = {ctx.fmt(g)}" for n, g in zip(names, gens)]
    lines += [f"{ctx.fmt_symbols(r, names)} = 1" for r in rels]
    data = {"generators": [ctx.fmt(g) for g in gens], "relators": [list(r) for r in rels]}
    _emit(ctx, "\n".join(lines), data, out)


def cmd_depends(ctx, out):
    d = dependence(ctx.subgroup(), ctx.word(ctx.args.word))
    names = ["X"] + [f"h{i}" for i in range(1, len(d.basis) + 1)]
    if not d.dependent:
        text = "independent"
    else:
        text = "\n".join(["dependent"] + [f"{n} = {ctx.fmt(b)}" for n, b in zip(names[1:], d.basis)] + [f"{ctx.fmt_symbols(e, names)} = 1" for e in d.equations])
    data = {"dependent": d.dependent, "basis": [ctx.fmt(b) for b in d.basis], "equations": [list(e) for e in d.equations]}
    _emit(ctx, text, data, out)


def cmd_fringe(ctx, out):
    members = fringe(ctx.subgroup(), ctx.args.max_vertices)
    if ctx.format == "json":
        for k in members:
            print(json.dumps(_subgroup_data(ctx, k)), file=out)
    else:
        for k in members:
            print(_subgroup_text(ctx, k), file=out)


def cmd_image(ctx, out):
    h, k = ctx.subgroup("H"), ctx.subgroup("K")
    if not is_subgroup_of(h, k):
        raise UsageError("H is not a subgroup of K")
    _emit_subgroup(ctx, image_in(h, k), out)


def cmd_count_index(ctx, out):
    n = ctx.alphabet.rank
    c = count_index(n, ctx.args.k)
    _emit(ctx, str(c), {"rank": n, "index": ctx.args.k, "count": c}, out)


def cmd_enum_index(ctx, out):
    entries = enumerate_index(ctx.alphabet.rank, ctx.args.k)
    for e in entries:
        g = e.automaton
        if ctx.format == "json":
            line = {"automaton": json.loads(am.to_json(g)), "index": len(g), "rank": am.rank(g)}
            print(json.dumps(line), file=out)
        else:
            print("<" + ", ".join(ctx.fmt(w) for w in am.basis_from_tree(g)) + ">", file=out)


def cmd_avoid(ctx, out):
    _emit_subgroup(ctx, avoid_element(ctx.word(ctx.args.word), ctx.alphabet), out)


def cmd_envelope(ctx, out):
    h = ctx.subgroup()
    avoid = ctx.words(ctx.args.avoid)
    for w in avoid:
        if contains(h, w):
            raise UsageError(f"{ctx.fmt(w)} lies in H")
    _emit_subgroup(ctx, finite_index_envelope(h, avoid), out)


def cmd_coset_enum(ctx, out):
    p = parse_presentation(Path(ctx.args.presentation).read_text())
    ctx.alphabet = p.alphabet
    ctx.style = "compact" if p.alphabet.compact else "caret"
    r = enumerate_cosets(p, ctx.words(ctx.args.H), ctx.args.max_rounds)
    if not r.success:
        _emit(ctx, f"exhausted after {r.rounds} rounds ({r.vertices} vertices)", {"exhausted": True, "rounds": r.rounds, "vertices": r.vertices}, out)
        return EXIT_BOUND
    if ctx.format == "dot":
        out.write(am.to_dot(r.automaton))
        return EXIT_OK
    text = f"{r.index}: " + ", ".join(ctx.fmt(w) for w in r.transversal)
    data = {"index": r.index, "transversal": [ctx.fmt(w) for w in r.transversal], "automaton": json.loads(am.to_json(r.automaton))}
    _emit(ctx, text, data, out)


def cmd_dot(ctx, out):
    out.write(am.to_dot(ctx.subgroup().automaton))


def cmd_json(ctx, out):
    print(am.to_json(ctx.subgroup().automaton), file=out)


# -- argument parsing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", "--rank", type=int, default=2, help="rank of the free group (default 2)")
    common.add_argument("--names", help="comma-separated generator names (overrides -n)")
    common.add_argument("-f", "--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--seed", type=int, default=0, help="random seed (outputs are deterministic regardless)")

    parser = argparse.ArgumentParser(prog="stallings", description="Subgroups of free groups via Stallings automata.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    def add(name, func, help, h=False, k=False, word=None):
        p = sub.add_parser(name, parents=[common], help=help, description=help)
        if h:
            p.add_argument("-H", required=h == "required", help="generators of H: comma-separated words or @file")
        if k:
            p.add_argument("-K", required=True, help="generators of K: comma-separated words or @file")
        if word:
            p.add_argument(word, help="a word, e.g. abA or 'a^2 b^-1'")
        p.set_defaults(func=func, usage=p.format_usage())
        return p

    add("basis", cmd_basis, "free basis of H", h="required")
    add("rank", cmd_rank, "rank of H", h="required")
    add("member", cmd_member, "is the word in H?", h="required", word="word")
    add("express", cmd_express, "write a member of H in terms of its generators", h="required", word="word")
    add("index", cmd_index, "index of H with a transversal", h="required")
    add("normal", cmd_normal, "is H normal?", h="required")
    add("conjugate", cmd_conjugate, "are H and K conjugate? (prints w with w^-1 H w = K)", h="required", k=True)
    add("conjugate-by", cmd_conjugate_by, "the conjugate w^-1 H w", h="required", word="word")
    add("intersect", cmd_intersect, "the intersection of H and K", h="required", k=True)
    add("shn", cmd_shn, "Hanna Neumann sum over double cosets and its bounds", h="required", k=True)
    add("malnormal", cmd_malnormal, "is H malnormal? (prints a witness if not)", h="required")
    p = add("coset-intersect", cmd_coset_intersect, "a word in Hu and Kv, or none", h="required", k=True)
    p.add_argument("u")
    p.add_argument("v")
    add("present", cmd_present, "relations among the generators of H", h="required")
    add("depends", cmd_depends, "is the word dependent on H? (prints the equations)", h="required", word="word")
    p = add("fringe", cmd_fringe, "the fringe of H", h="required")
    p.add_argument("--max-vertices", type=int, default=9)
    add("image", cmd_image, "image of St(H) inside St(K), for H <= K", h="required", k=True)
    p = add("count-index", cmd_count_index, "number of subgroups of index k")
    p.add_argument("-k", type=int, required=True)
    p = add("enum-index", cmd_enum_index, "all subgroups of index k")
    p.add_argument("-k", type=int, required=True)
    add("avoid", cmd_avoid, "a subgroup of index |w|+1 missing w", word="word")
    p = add("envelope", cmd_envelope, "a finite-index subgroup containing H as a free factor", h="required")
    p.add_argument("--avoid", help="comma-separated words the result must miss")
    p = add("coset-enum", cmd_coset_enum, "coset enumeration over a presentation file", h="optional")
    p.add_argument("presentation", help="file: generator names on the first line, then one relator per line")
    p.add_argument("--max-rounds", type=int, default=MAX_ROUNDS)
    add("dot", cmd_dot, "St(H) in Graphviz DOT", h="required")
    add("json", cmd_json, "St(H) as JSON", h="required")
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        ctx = Context(args)
        code = args.func(ctx, out)
    except BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.stderr.write(args.usage)
        return EXIT_USAGE
    return EXIT_OK if code is None else code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
