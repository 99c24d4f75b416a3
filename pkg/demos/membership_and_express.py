# Build the Stallings automaton of H = <a^3, abab^-1, a^-1bab^-1>, test
# membership and write members of H back in terms of the generators.

from stallings import Alphabet, express, format_word, parse_words, presentation, stallings, substitute
from stallings.automaton import to_dot
from stallings.words import parse_word

F2 = Alphabet(2)
gens = parse_words("aaa, abaB, AbaB", F2)
H = stallings(gens, F2)

print(H)
print("vertices:", len(H.automaton), "arcs:", H.automaton.num_arcs(), "rank:", H.rank)

# the folding trace records every identification made on the flower
for rec in H.trace.records:
    print(f"  fold {rec.step}: {rec.kind} on letter {rec.letter}, kept arc {rec.kept_arc}, removed arc {rec.removed_arc}")
print("closed folds (loss):", H.trace.loss())

for text in ["a", "b", "baBaaB"]:
    w = parse_word(text, F2)
    print(f"{text!r} in H: {w in H}")

# a lies in H; express it over the symbols s1, s2, s3 and check the answer
def symbols(w):
    return " ".join(f"s{abs(x)}" + ("^-1" if x < 0 else "") for x in w)


a = parse_word("a", F2)
e = express(H, a)
print("a =", symbols(e))
print("substituted back:", format_word(substitute(e, H.generators), F2))

# one closed fold means one relation among the three generators
_, rels = presentation(gens, F2)
for r in rels:
    print("relator:", symbols(r), "evaluates to", repr(format_word(substitute(r, gens), F2)))

print(to_dot(H.automaton, "H"))
