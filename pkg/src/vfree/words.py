"""Inverse-closed alphabets and words over them.

A word is a plain tuple of letter identifiers.  Letters are opaque strings
(``"a"``, ``"t1.a"``), never split character-wise.  Nothing here knows about
groups; this module is purely syntactic.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence

Word = tuple[str, ...]

EMPTY: Word = ()


class AlphabetError(ValueError):
    pass


class InvolutiveAlphabet:
    """An ordered set of letters together with a formal inverse on them.

    The declaration order is fixed at construction and defines the ShortLex
    order used everywhere else.
    """

    __slots__ = ("_letters", "_inv", "_rank")

    def __init__(self, letters: Iterable[str], inverse: Mapping[str, str]):
        letters = tuple(letters)
        rank = {}
        for i, x in enumerate(letters):
            if not isinstance(x, str) or not x or any(ch.isspace() for ch in x):
                raise AlphabetError(f"bad letter identifier {x!r}")
            if x in rank:
                raise AlphabetError(f"duplicate letter {x!r}")
            rank[x] = i
        inv = {}
        for x in letters:
            if x not in inverse:
                raise AlphabetError(f"letter {x!r} has no inverse")
            y = inverse[x]
            if y not in rank:
                raise AlphabetError(f"inverse {y!r} of {x!r} is not a letter")
            inv[x] = y
        for x, y in inv.items():
            if inv[y] != x:
                raise AlphabetError(f"inverse is not an involution at {x!r}")
        self._letters = letters
        self._inv = inv
        self._rank = rank

    @property
    def letters(self) -> Word:
        return self._letters

    def __len__(self) -> int:
        return len(self._letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self._letters)

    def __contains__(self, x: object) -> bool:
        return x in self._rank

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InvolutiveAlphabet):
            return NotImplemented
        return self._letters == other._letters and self._inv == other._inv

    def __hash__(self) -> int:
        return hash(self._letters)

    def __repr__(self) -> str:
        return f"InvolutiveAlphabet({list(self._letters)!r})"

    def inv(self, x: str) -> str:
        return self._inv[x]

    def rank(self, x: str) -> int:
        return self._rank[x]

    def sub(self, letters: Iterable[str]) -> "InvolutiveAlphabet":
        """Restrict to ``letters`` (must be inverse-closed), keeping this order."""
        keep = set(letters)
        unknown = keep - set(self._letters)
        if unknown:
            raise AlphabetError(f"unknown letters {sorted(unknown)}")
        ordered = [x for x in self._letters if x in keep]
        return InvolutiveAlphabet(ordered, {x: self._inv[x] for x in ordered})

    def check(self, w: Sequence[str]) -> Word:
        for x in w:
            if x not in self._rank:
                raise AlphabetError(f"letter {x!r} not in alphabet")
        return tuple(w)

    def shortlex_key(self, w: Sequence[str]) -> tuple:
        rank = self._rank
        try:
            return (len(w), tuple(rank[x] for x in w))
        except KeyError as exc:
            raise AlphabetError(f"letter {exc.args[0]!r} not in alphabet") from None


def formal_inverse(w: Sequence[str], alphabet: InvolutiveAlphabet) -> Word:
    return tuple(alphabet.inv(x) for x in reversed(w))


def subwords(w: Sequence[str], max_len: int) -> list[Word]:
    """All factors of ``w`` of length 1..max_len, shortest first.

    Within one length the factors are listed by start position, so
    ``subwords("abab", 2)`` gives a, b, a, b, ab, ba, ab.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    w = tuple(w)
    n = len(w)
    return [w[i:i + j] for j in range(1, min(max_len, n) + 1) for i in range(n - j + 1)]


def shortlex_compare(u: Sequence[str], v: Sequence[str], alphabet: InvolutiveAlphabet) -> int:
    """Return -1, 0 or 1 as ``u`` is before, equal to or after ``v``."""
    ku, kv = alphabet.shortlex_key(u), alphabet.shortlex_key(v)
    return (ku > kv) - (ku < kv)


def parse_word(text: str, alphabet: InvolutiveAlphabet | None = None) -> Word:
    """Whitespace-separated letters; the empty string is the empty word."""
    w = tuple(text.split())
    if alphabet is not None:
        alphabet.check(w)
    return w


def format_word(w: Sequence[str]) -> str:
    return " ".join(w)
