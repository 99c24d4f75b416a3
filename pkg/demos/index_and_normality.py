# Finite index, transversals, normality and conjugacy.

from stallings import Alphabet, conjugate, conjugator, format_word, index, is_normal, parse_words, stallings
from stallings.words import parse_word

F2 = Alphabet(2)

H = stallings(parse_words("a, bb, baaB, babAB", F2), F2)
rep = index(H)
print(H)
print("finite index:", rep.finite, "index:", rep.index)
print("transversal:", [format_word(t, F2) or "e" for t in rep.transversal])
print("normal:", is_normal(H))

# an infinite-index subgroup reports the first missing arc instead
K = stallings(parse_words("a", F2), F2)
print("<a>:", index(K))

# the kernel of F2 -> Z/2 sending both letters to 1 is normal of index 2
N = stallings(parse_words("aa, ab, aB", F2), F2)
print("kernel of the parity map: index", index(N).index, "normal", is_normal(N))

# conjugators are checked before being returned
w = parse_word("bAb", F2)
C = conjugate(H, w)
c = conjugator(H, C)
print("conjugator found:", format_word(c, F2) or "e")
print("verified:", conjugate(H, c) == C)
print("<a> ~ <b>:", conjugator(K, stallings(parse_words("b", F2), F2)))
