# Counting and listing finite-index subgroups, separating words, and the fringe.

from stallings import Alphabet, format_word, index, parse_words, stallings
from stallings.constructions import avoid_element, count_index, enumerate_index, finite_index_envelope, fringe
from stallings.words import parse_word

for n in (1, 2, 3):
    print(f"rank {n}:", [count_index(n, k) for k in range(1, 7)])

census = enumerate_index(2, 3)
print("index-3 subgroups of F2 listed:", len(census))
for entry in census[:4]:
    h = entry.subgroup
    print("  basis", [format_word(w, h.alphabet) for w in h.generators], "rank", h.rank)

F2 = Alphabet(2)
w = parse_word("ABab", F2)
K = avoid_element(w, F2)
print("subgroup avoiding the commutator: index", index(K).index, "contains it:", w in K)

H = stallings(parse_words("ab", F2), F2)
E = finite_index_envelope(H, [parse_word("a", F2), parse_word("bb", F2)])
print("envelope of <ab> avoiding a and b^2:", E, "index", index(E).index)

for k in fringe(stallings(parse_words("aba", F2), F2)):
    print("  fringe member", k)
