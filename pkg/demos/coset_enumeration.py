# Coset enumeration in finitely presented groups by folding relator flowers.

from stallings import format_word
from stallings.coset_enum import enumerate_cosets, parse_presentation
from stallings.words import parse_word

S3 = parse_presentation("""
a b
aa
bb
ababab
""")
r = enumerate_cosets(S3, [parse_word("a", S3.alphabet)])
print("[S3 : <a>] =", r.index, "after", r.rounds, "rounds")
print("transversal:", [format_word(t, S3.alphabet) or "e" for t in r.transversal])
print("order of S3:", enumerate_cosets(S3, []).index)

Z5 = parse_presentation("a\naaaaa")
print("order of Z/5:", enumerate_cosets(Z5, []).index)

# Z^2 is infinite; the enumeration stops without claiming an index
Z2 = parse_presentation("a b\nabAB")
r = enumerate_cosets(Z2, [], max_rounds=5)
print("Z^2:", "exhausted" if r.exhausted else r.index, "with", r.vertices, "vertices")

# icosahedral group as <a, b | a^2, b^3, (ab)^5>
A5 = parse_presentation("a b\naa\nbbb\nababababab")
print("order of A5:", enumerate_cosets(A5, []).index)
