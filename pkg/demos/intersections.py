# Intersections through pullbacks, and the strengthened Hanna Neumann sum.

import random

from stallings import Alphabet, contains, format_word, intersect, parse_words, stallings
from stallings.words import parse_word
from stallings.intersections import coset_intersection, is_malnormal, pullback, rrk, shn_report

F2 = Alphabet(2)
H = stallings(parse_words("b, aaa, AbaBa", F2), F2)
K = stallings(parse_words("ab, aaa, Aba", F2), F2)

pb = pullback(H.automaton, K.automaton)
print("product vertices:", len(pb.product), "components:", len(pb.components))
I = intersect(H, K)
print("H meet K:", I)
for w in I.generators:
    print("  ", format_word(w, F2), contains(H, w), contains(K, w))

r = shn_report(H, K)
print("reduced ranks:", rrk(H), rrk(K), rrk(I))
print("component terms:", r.terms, "sum:", r.lhs_sum, "product bound:", r.mineyev_bound, "doubled:", r.hn_bound)

# a random sweep of the inequality chain
rng = random.Random(1)
worst = 0
for _ in range(200):
    gens = [[rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(1, 6))] for _ in range(3)]
    gens2 = [[rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(1, 6))] for _ in range(3)]
    h, k = stallings(gens, F2), stallings(gens2, F2)
    rep = shn_report(h, k)
    assert rrk(intersect(h, k)) <= rep.lhs_sum <= rep.mineyev_bound
    worst = max(worst, rep.lhs_sum)
print("largest sum seen in 200 random pairs:", worst)

# malnormality: <a> is malnormal, <a^2> is not
for text in ["a", "aa"]:
    rep = is_malnormal(stallings(parse_words(text, F2), F2))
    witness = "" if rep.witness is None else f"(witness {format_word(rep.witness, F2)})"
    print(f"<{text}> malnormal:", rep.malnormal, witness)

# cosets of finitely generated subgroups meet in a coset of the intersection, or not at all
for u, v in [("a", "b"), ("a", "")]:
    w = coset_intersection(H, parse_word(u, F2), K, parse_word(v, F2))
    print(f"H{u} meet K{v}:", "empty" if w is None else format_word(w, F2) or "e")
