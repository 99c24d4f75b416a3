"""Free group words over a finite alphabet.

A letter is a nonzero integer: ``+i`` is the i-th generator and ``-i`` its
formal inverse (generators are numbered from 1).  A :class:`Word` is an
immutable tuple of such letters.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "Alphabet",
    "Word",
    "EMPTY",
    "parse_word",
    "parse_words",
    "free_reduce",
    "cyclic_reduce",
    "format_word",
    "letter_order",
    "signed_letters",
    "substitute",
]


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of generator names for a free group of finite rank."""

    rank: int
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("alphabet rank must be at least 1")
        names = tuple(self.names)
        if not names:
            if self.rank > len(string.ascii_lowercase):
                names = tuple(f"x{i}" for i in range(1, self.rank + 1))
            else:
                names = tuple(string.ascii_lowercase[: self.rank])
        if len(names) != self.rank:
            raise ValueError(f"expected {self.rank} names, got {len(names)}")
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise ValueError(f"invalid generator name {name!r}")
        object.__setattr__(self, "names", names)

    @classmethod
    def from_names(cls, names: Iterable[str]) -> "Alphabet":
        names = tuple(names)
        return cls(len(names), names)

    @property
    def compact(self) -> bool:
        """True if every name is a single lowercase letter (compact style usable)."""
        return all(len(n) == 1 and n.islower() for n in self.names)

    def name(self, letter: int) -> str:
        return self.names[abs(letter) - 1]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name) + 1
        except ValueError:
            raise ValueError(f"unknown letter {name!r}") from None

    def letters(self) -> list[int]:
        """Signed letters in the canonical order +1, -1, +2, -2, ..."""
        return signed_letters(self.rank)


def signed_letters(rank: int) -> list[int]:
    out = []
    for i in range(1, rank + 1):
        out.extend((i, -i))
    return out


def letter_order(letter: int) -> int:
    """Sort key realizing the order +1, -1, +2, -2, ..."""
    return 2 * (abs(letter) - 1) + (letter < 0)


class Word(tuple):
    """An immutable sequence of signed letters.

    Multiplication concatenates and freely reduces; use :meth:`concat` for raw
    concatenation.
    """

    __slots__ = ()

    def __new__(cls, letters: Iterable[int] = ()):
        letters = tuple(letters)
        for x in letters:
            if not isinstance(x, int) or x == 0:
                raise ValueError(f"invalid letter {x!r}")
        return super().__new__(cls, letters)

    def __repr__(self):
        return f"Word({list(self)!r})"

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def reduced(self) -> bool:
        return all(self[i] != -self[i + 1] for i in range(len(self) - 1))

    def inverse(self) -> "Word":
        return Word(-x for x in reversed(self))

    def concat(self, other: Sequence[int]) -> "Word":
        return Word(tuple(self) + tuple(other))

    def __mul__(self, other):
        if not isinstance(other, tuple):
            return NotImplemented
        return free_reduce(self.concat(other))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return free_reduce(Word(tuple(base) * abs(k)))

    def max_generator(self) -> int:
        return max((abs(x) for x in self), default=0)


EMPTY = Word()

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|1|ε)\s*(?:\^\s*([+-]?\s*\d+))?\s*")


def _split_name(token: str, alphabet: Alphabet) -> list[int]:
    """Split an identifier run into letters (greedy single-letter for compact names)."""
    if token in alphabet.names:
        return [alphabet.index(token)]
    if alphabet.compact:
        out = []
        for ch in token:
            if ch in alphabet.names:
                out.append(alphabet.index(ch))
            elif ch.lower() in alphabet.names and ch.isupper():
                out.append(-alphabet.index(ch.lower()))
            else:
                raise ValueError(f"unknown letter {ch!r}")
        return out
    raise ValueError(f"unknown letter {token!r}")


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse ``text`` into a raw (unreduced) word.

    Accepts compact style (``"abA"``: uppercase is the inverse) and caret
    style (``"a^3 b^-1"``); the two may be mixed.  An exponent applies to the
    last letter of the preceding run, so ``"ab^2"`` is ``a b b``.  The
    strings ``""``, ``"1"`` and ``"ε"`` denote the empty word.
    """
    letters: list[int] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"malformed word at position {pos}: {text!r}")
        token, exp = m.group(1), m.group(2)
        pos = m.end()
        if token in ("1", "ε"):
            if exp is not None:
                raise ValueError(f"exponent on identity in {text!r}")
            continue
        run = _split_name(token, alphabet)
        if exp is not None:
            try:
                k = int(exp.replace(" ", ""))
            except ValueError:
                raise ValueError(f"malformed exponent {exp!r}") from None
            last = run.pop()
            run.extend([last if k > 0 else -last] * abs(k))
        letters.extend(run)
    return Word(letters)


def parse_words(text: str, alphabet: Alphabet) -> list[Word]:
    """Parse a comma-separated list of words."""
    if not text.strip():
        return []
    return [parse_word(part, alphabet) for part in text.split(",")]


def free_reduce(w: Sequence[int]) -> Word:
    stack: list[int] = []
    for x in w:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return Word(stack)


def cyclic_reduce(w: Sequence[int]) -> tuple[Word, Word]:
    """Return ``(core, u)`` with ``core`` cyclically reduced and ``w = u core u^-1``."""
    r = free_reduce(w)
    i, j = 0, len(r) - 1
    while i < j and r[i] == -r[j]:
        i += 1
        j -= 1
    return Word(r[i : j + 1]), Word(r[:i])


def format_word(w: Sequence[int], alphabet: Alphabet | None = None, style: str = "compact") -> str:
    if alphabet is None:
        alphabet = Alphabet(max(1, max((abs(x) for x in w), default=1)))
    if style == "compact":
        if not alphabet.compact:
            raise ValueError("compact style needs single lowercase generator names")
        return "".join(alphabet.name(x) if x > 0 else alphabet.name(x).upper() for x in w)
    if style != "caret":
        raise ValueError(f"unknown style {style!r}")
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        k = (j - i) * (1 if w[i] > 0 else -1)
        name = alphabet.name(w[i])
        parts.append(name if k == 1 else f"{name}^{k}")
        i = j
    return " ".join(parts)


def substitute(symbol_word: Iterable[int], images: Sequence[Sequence[int]]) -> Word:
    """Evaluate a word over symbols ``s_1..s_p`` by replacing ``s_i`` with ``images[i-1]``."""
    out: list[int] = []
    for x in symbol_word:
        img = Word(images[abs(x) - 1])
        out.extend(img if x > 0 else img.inverse())
    return free_reduce(out)
