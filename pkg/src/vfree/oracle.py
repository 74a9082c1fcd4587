"""Brute-force geodesics: balls in the Cayley graph and exhaustive word checks.

Everything here is deliberately naive.  Lengths come from breadth-first
search over normal forms, and local exclusion is checked by enumerating
words, so these results can be used to test the rewriting machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .normal_forms import GroupElement, VirtuallyFreeGroup
from .words import InvolutiveAlphabet, Word, format_word

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    pass


class Ball:
    """Ball around the identity, grown breadth first.

    ``table`` maps a normal form to ``(length, word)`` where ``word`` is the
    ShortLex-least geodesic for it.  Generators are tried in alphabet order
    and parents in first-visit order, which is what makes the recorded word
    ShortLex-least.
    """

    def __init__(self, group: VirtuallyFreeGroup, alphabet: InvolutiveAlphabet | None = None,
                 budget: int = DEFAULT_BUDGET):
        self.group = group
        self.alphabet = alphabet or group.alphabet
        self.budget = budget
        self._gens = [(x, group.letter(x).nf) for x in self.alphabet]
        ident = group.layer.identity
        self.table: dict = {ident: (0, ())}
        self.levels: list[list] = [[ident]]

    @property
    def radius(self) -> int:
        return len(self.levels) - 1

    def grow(self, radius: int) -> "Ball":
        mul = self.group.layer.mul
        table = self.table
        while self.radius < radius:
            n = self.radius + 1
            frontier = []
            for nf in self.levels[-1]:
                w = table[nf][1]
                for x, g in self._gens:
                    y = mul(nf, g)
                    if y not in table:
                        if len(table) >= self.budget:
                            raise BudgetExceeded(
                                f"ball of radius {n} exceeds the budget of {self.budget} elements")
                        table[y] = (n, w + (x,))
                        frontier.append(y)
            self.levels.append(frontier)
        return self

    def sizes(self) -> list[int]:
        """Number of elements of each length 0..radius."""
        return [len(level) for level in self.levels]

    def __contains__(self, g: GroupElement) -> bool:
        return g.nf in self.table

    def __len__(self) -> int:
        return len(self.table)

    def length(self, g: GroupElement) -> int | None:
        hit = self.table.get(g.nf)
        return None if hit is None else hit[0]

    def geodesic(self, g: GroupElement) -> Word | None:
        hit = self.table.get(g.nf)
        return None if hit is None else hit[1]

    def elements(self) -> Iterator[tuple[GroupElement, int, Word]]:
        for nf, (n, w) in self.table.items():
            yield GroupElement(nf, self.group), n, w


def grow_ball(group: VirtuallyFreeGroup, alphabet: InvolutiveAlphabet | None = None, radius: int = 0,
              budget: int = DEFAULT_BUDGET) -> Ball:
    if radius < 0:
        raise ValueError("radius must be non-negative")
    return Ball(group, alphabet, budget).grow(radius)


@dataclass(frozen=True)
class ExclusionSet:
    """Minimal forbidden factors: non-geodesic words all of whose proper factors are geodesic."""

    k: int
    forbidden: frozenset[Word]
    alphabet: InvolutiveAlphabet = field(compare=False)

    def __contains__(self, w: object) -> bool:
        return w in self.forbidden

    def __len__(self) -> int:
        return len(self.forbidden)

    def sorted(self) -> list[Word]:
        return sorted(self.forbidden, key=self.alphabet.shortlex_key)

    def first_factor(self, w: Sequence[str]) -> tuple[int, Word] | None:
        """Leftmost occurrence ``(start, factor)`` of a forbidden word, if any."""
        w = tuple(w)
        lengths = sorted({len(u) for u in self.forbidden})
        for i in range(len(w)):
            for n in lengths:
                if i + n <= len(w) and w[i:i + n] in self.forbidden:
                    return i, w[i:i + n]
        return None

    def avoids(self, w: Sequence[str]) -> bool:
        return self.first_factor(w) is None

    def lines(self) -> list[str]:
        return [format_word(u) for u in self.sorted()]


@dataclass
class VerifyResult:
    k: int
    max_len: int
    counterexample: Word | None
    counts: list[int]
    """Number of F-avoiding words of each length 0..max_len that were checked."""

    @property
    def ok(self) -> bool:
        return self.counterexample is None


class GeodesicOracle:
    """Geodesic length and local-geodesic tests over one generating set."""

    def __init__(self, group: VirtuallyFreeGroup, alphabet: InvolutiveAlphabet | None = None,
                 budget: int = DEFAULT_BUDGET):
        self.group = group
        self.alphabet = alphabet or group.alphabet
        self.ball = Ball(group, self.alphabet, budget)
        self._exclusion: dict[int, ExclusionSet] = {}
        self._gen_nf = {x: group.letter(x).nf for x in self.alphabet}

    def _length_nf(self, nf, upper: int) -> int:
        # the element is known to have length <= upper
        table = self.ball.table
        while nf not in table and self.ball.radius < upper - 1:
            self.ball.grow(self.ball.radius + 1)
        hit = table.get(nf)
        return upper if hit is None else hit[0]

    def _eval_nf(self, w: Sequence[str]):
        mul = self.group.layer.mul
        cur = self.group.layer.identity
        for x in reversed(w):
            cur = mul(self._gen_nf[x], cur)
        return cur

    def element_length(self, g: GroupElement, upper: int | None = None) -> int:
        """l_G(g); grows the ball until ``g`` appears (or up to ``upper``)."""
        if upper is None:
            while g.nf not in self.ball.table:
                self.ball.grow(self.ball.radius + 1)
            return self.ball.table[g.nf][0]
        return self._length_nf(g.nf, upper)

    def geodesic_length(self, w: Sequence[str]) -> int:
        self.alphabet.check(w)
        return self._length_nf(self._eval_nf(w), len(w))

    def is_geodesic(self, w: Sequence[str]) -> bool:
        return self.geodesic_length(w) == len(w)

    def is_k_local_geodesic(self, w: Sequence[str], k: int) -> bool:
        """All factors of length <= k are geodesic.

        Factors of geodesics are geodesic, so only the windows of length
        ``min(k, len(w))`` need testing.
        """
        if k < 1:
            raise ValueError("k must be at least 1")
        w = tuple(w)
        m = min(k, len(w))
        return all(self.is_geodesic(w[i:i + m]) for i in range(len(w) - m + 1)) if m else True

    def geodesic_words(self, max_len: int) -> Iterator[list[Word]]:
        """Lists of all geodesic words of length 0, 1, ..., max_len in lex order."""
        level = [((), self.group.layer.identity)]
        yield [()]
        mul = self.group.layer.mul
        for n in range(1, max_len + 1):
            nxt = []
            for w, nf in level:
                for x in self.alphabet:
                    y = mul(nf, self._gen_nf[x])
                    if self._length_nf(y, n) == n:
                        nxt.append((w + (x,), y))
            level = nxt
            yield [w for w, _ in level]

    def build_exclusion_set(self, k: int) -> ExclusionSet:
        if k < 1:
            raise ValueError("k must be at least 1")
        if k in self._exclusion:
            return self._exclusion[k]
        mul = self.group.layer.mul
        forbidden = []
        level = {(): self.group.layer.identity}
        for n in range(1, k + 1):
            nxt = {}
            for w, nf in level.items():
                for x in self.alphabet:
                    u = w + (x,)
                    if n > 1 and u[1:] not in level:
                        continue
                    y = mul(nf, self._gen_nf[x])
                    if self._length_nf(y, n) == n:
                        nxt[u] = y
                    else:
                        forbidden.append(u)
            level = nxt
        result = ExclusionSet(k, frozenset(forbidden), self.alphabet)
        self._exclusion[k] = result
        return result

    def verify_locally_excluding(self, k: int, max_len: int) -> VerifyResult:
        """Check every word of length <= max_len avoiding F(k) is geodesic.

        Words are generated length by length in lexicographic order, so the
        first failure found is the ShortLex-least counterexample.
        """
        F = self.build_exclusion_set(k)
        forbidden = F.forbidden
        mul = self.group.layer.mul
        counts = [1]
        level = [((), self.group.layer.identity)]
        for n in range(1, max_len + 1):
            nxt = []
            for w, nf in level:
                for x in self.alphabet:
                    u = w + (x,)
                    if any(u[n - j:] in forbidden for j in range(1, min(k, n) + 1)):
                        continue
                    y = mul(nf, self._gen_nf[x])
                    if self._length_nf(y, n) != n:
                        counts.append(len(nxt))
                        return VerifyResult(k, max_len, u, counts)
                    nxt.append((u, y))
            counts.append(len(nxt))
            level = nxt
        return VerifyResult(k, max_len, None, counts)

    def minimal_k(self, max_len: int) -> int | None:
        for k in range(1, max_len + 1):
            if self.verify_locally_excluding(k, max_len).ok:
                return k
        return None

    def suffix_reduction_violations(self, k: int, radius: int) -> list[str]:
        """Check the three one-letter extension facts for all geodesics up to ``radius``.

        For geodesic ``w`` and letter ``x``: ``l_G(wx) - l(w)`` is in
        {-1, 0, 1}; ``wx`` is geodesic iff ``vx`` is, for ``v`` the length
        ``k-1`` suffix; and ``l_G(wx) - l(w) = l_G(v'x) - l(v')`` for ``v'``
        the length ``2k-2`` suffix.  Only meaningful when the geodesics are
        k-locally excluding.
        """
        bad = []
        for words in self.geodesic_words(radius):
            for w in words:
                n = len(w)
                v = w[max(0, n - (k - 1)):] if k > 1 else ()
                v2 = w[max(0, n - (2 * k - 2)):]
                for x in self.alphabet:
                    delta = self.geodesic_length(w + (x,)) - n
                    if delta not in (-1, 0, 1):
                        bad.append(f"(i) {format_word(w)} . {x}: change {delta}")
                    if (delta == 1) != self.is_geodesic(v + (x,)):
                        bad.append(f"(ii) {format_word(w)} . {x}")
                    if delta != self.geodesic_length(v2 + (x,)) - len(v2):
                        bad.append(f"(iii) {format_word(w)} . {x}")
        return bad
