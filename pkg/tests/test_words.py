import pytest
from hypothesis import given
from hypothesis import strategies as st

from stallings.words import Alphabet, Word, cyclic_reduce, format_word, free_reduce, parse_word, parse_words, substitute
from support import A2, A3, W, reduced_words

a, b = 1, 2
A, B = -1, -2


def test_parse_compact():
    assert parse_word("abA", A2) == Word([a, b, A])


def test_parse_caret():
    assert parse_word("a^3", A2) == Word([a, a, a])
    assert parse_word("a^3 b^-1", A2) == Word([a, a, a, B])
    assert parse_word("b^-2", A2) == Word([B, B])


def test_parse_exponent_zero_contributes_nothing():
    assert parse_word("a^0 b", A2) == Word([b])


def test_parse_mixed_and_exponent_binds_to_last_letter():
    assert parse_word("ab^2", A2) == Word([a, b, b])
    assert parse_word("aB^2", A2) == Word([a, B, B])


def test_parse_empty_forms():
    for text in ("", "1", "ε", "  "):
        assert parse_word(text, A2) == Word()


def test_parse_errors():
    with pytest.raises(ValueError, match="unknown letter"):
        parse_word("c", A2)
    with pytest.raises(ValueError):
        parse_word("a^", A2)
    with pytest.raises(ValueError):
        parse_word("a^x", A2)


def test_parse_is_raw():
    assert parse_word("aA", A2) == Word([a, A])


def test_named_alphabet():
    X = Alphabet.from_names(["x1", "x2"])
    assert parse_word("x1^2 x2^-1", X) == Word([1, 1, -2])
    assert format_word(Word([1, 1, -2]), X, "caret") == "x1^2 x2^-1"
    with pytest.raises(ValueError):
        format_word(Word([1]), X, "compact")


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet(0)
    with pytest.raises(ValueError):
        Alphabet(2, ("a", "a"))
    assert Alphabet(3).names == ("a", "b", "c")


def test_parse_words():
    assert parse_words("a, bA ,", A2) == [Word([a]), Word([b, A]), Word()]


def test_free_reduce_examples():
    assert free_reduce(W("aA")) == Word()
    assert free_reduce(W("abBA")) == Word()
    w = W("AbaB").concat(W("bABA")).concat(W("aaa"))
    assert free_reduce(w) == Word([a])


def test_cyclic_reduce_examples():
    assert cyclic_reduce(W("abA")) == (Word([b]), Word([a]))
    assert cyclic_reduce(W("bb")) == (Word([b, b]), Word())
    assert cyclic_reduce(W("Abba")) == (Word([b, b]), Word([A]))


def test_format_examples():
    assert format_word(Word([a, B]), A2) == "aB"
    assert format_word(Word([a, a, a]), A2, "caret") == "a^3"
    assert format_word(Word(), A2) == ""
    assert format_word(Word([a, B, B]), A2, "caret") == "a b^-2"


def test_word_algebra():
    w = W("ab")
    assert w * w.inverse() == Word()
    assert w ** 2 == W("abab")
    assert w ** -1 == W("BA")
    assert W("aB").reduced and not W("aAb").reduced


def test_substitute():
    gens = [W("ab"), W("b")]
    assert substitute(Word([1, -2]), gens) == W("a")


def test_invalid_letters_rejected():
    with pytest.raises(ValueError):
        Word([0])


@given(reduced_words(3, 12) | st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12).map(Word))
def test_free_reduce_idempotent_and_parity(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert r.reduced
    assert len(r) <= len(w)
    assert (len(w) - len(r)) % 2 == 0
    assert free_reduce(Word(w).concat(Word(w).inverse())) == Word()


@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=14).map(Word))
def test_cyclic_reduce_properties(w):
    core, u = cyclic_reduce(w)
    assert len(core) <= len(free_reduce(w))
    assert core.concat(core).reduced
    assert free_reduce(u.concat(core).concat(u.inverse())) == free_reduce(w)


@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=14).map(Word), st.sampled_from(["compact", "caret"]))
def test_format_parse_round_trip(w, style):
    assert parse_word(format_word(w, A3, style), A3) == w
