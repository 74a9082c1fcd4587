"""Length-reducing rewriting to geodesics and the pushdown word-problem solver."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .oracle import Ball, ExclusionSet
from .words import Word, format_word


class UncertifiedError(RuntimeError):
    """The (X, k) pair has neither a construction guarantee nor a verification."""


class ParanoidCheckFailed(AssertionError):
    pass


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Word

    def __post_init__(self):
        if len(self.rhs) >= len(self.lhs):
            raise ValueError(f"rule {self} does not shorten")

    def __str__(self) -> str:
        return f"{format_word(self.lhs)} -> {format_word(self.rhs)}"


def synthesize_rules(F: ExclusionSet, ball: Ball) -> list[RewriteRule]:
    """One rule ``u -> v`` per forbidden word, ``v`` its ShortLex-least geodesic.

    Rules come back in application-priority order: shorter left-hand sides
    first, ShortLex within a length.
    """
    ball.grow(F.k)
    group = ball.group
    rules = []
    for u in F.sorted():
        rhs = ball.geodesic(group.evaluate(u))
        if rhs is None:
            raise ValueError(f"ball of radius {ball.radius} does not reach {format_word(u)}")
        rules.append(RewriteRule(u, rhs))
    return rules


def format_rules(rules: Iterable[RewriteRule]) -> list[str]:
    return [str(r) for r in rules]


class RewriteSystem:
    """A rule list indexed for leftmost-match rewriting."""

    def __init__(self, rules: Sequence[RewriteRule]):
        self.rules = list(rules)
        self._by_lhs: dict[Word, RewriteRule] = {}
        for r in self.rules:
            self._by_lhs.setdefault(r.lhs, r)
        self.lengths = sorted({len(r.lhs) for r in self.rules})
        self.max_lhs = self.lengths[-1] if self.lengths else 0

    def find(self, w: Sequence[str], start: int = 0) -> tuple[int, RewriteRule] | None:
        by_lhs = self._by_lhs
        n = len(w)
        for i in range(start, n):
            for m in self.lengths:
                if i + m > n:
                    break
                r = by_lhs.get(tuple(w[i:i + m]))
                if r is not None:
                    return i, r
        return None

    def rewrite(self, w: Sequence[str]) -> Word:
        return self.rewrite_counted(w)[0]

    def rewrite_counted(self, w: Sequence[str]) -> tuple[Word, int]:
        """Apply rules at the leftmost match until none applies.

        Returns the result and the number of rule applications.
        """
        w = list(w)
        start = applied = 0
        while True:
            hit = self.find(w, start)
            if hit is None:
                return tuple(w), applied
            i, r = hit
            w[i:i + len(r.lhs)] = r.rhs
            applied += 1
            # everything left of i - max_lhs + 1 is untouched and match-free
            start = max(0, i - self.max_lhs + 1)


def rewrite_to_geodesic(w: Sequence[str], rules: Sequence[RewriteRule] | RewriteSystem) -> Word:
    system = rules if isinstance(rules, RewriteSystem) else RewriteSystem(rules)
    return system.rewrite(w)


@dataclass
class GeodesicStack:
    """Pushdown state: a geodesic for the input read so far."""

    pop_depth: int
    contents: list[str] = field(default_factory=list)
    last_applications: int = 0

    def word(self) -> Word:
        return tuple(self.contents)

    def __len__(self) -> int:
        return len(self.contents)


class DehnEngine:
    """Rewriting and word problem for one generating set and locality ``k``.

    ``certificate`` records why local exclusion at ``k`` may be assumed:
    ``"plan"`` when ``k`` is the constant guaranteed by the construction
    plan, ``"verified"`` when the oracle has checked it exhaustively.
    """

    CERTIFICATES = ("plan", "verified")

    def __init__(self, rules: Sequence[RewriteRule], k: int, certificate: str,
                 forbidden: ExclusionSet | None = None, paranoid: bool = False):
        if certificate not in self.CERTIFICATES:
            raise UncertifiedError(
                f"refusing to run at k={k} without a plan guarantee or verification (got {certificate!r})")
        if k < 1:
            raise ValueError("k must be at least 1")
        self.system = RewriteSystem(rules)
        self.k = k
        self.certificate = certificate
        self.forbidden = forbidden
        self.paranoid = paranoid
        if paranoid and forbidden is None:
            raise ValueError("paranoid mode needs the exclusion set")

    @property
    def rules(self) -> list[RewriteRule]:
        return self.system.rules

    @property
    def pop_depth(self) -> int:
        return 2 * self.k - 2

    def rewrite(self, w: Sequence[str]) -> Word:
        return self.system.rewrite(w)

    def new_stack(self) -> GeodesicStack:
        return GeodesicStack(self.pop_depth)

    def push_letter(self, st: GeodesicStack, x: str) -> GeodesicStack:
        """Pop up to ``2k-2`` letters, append ``x``, reduce, push back."""
        n = min(st.pop_depth, len(st.contents))
        window = st.contents[len(st.contents) - n:] + [x]
        del st.contents[len(st.contents) - n:]
        reduced, st.last_applications = self.system.rewrite_counted(window)
        st.contents.extend(reduced)
        if self.paranoid:
            hit = self.forbidden.first_factor(st.contents)
            if hit is not None:
                raise ParanoidCheckFailed(
                    f"stack {format_word(st.contents)} contains forbidden factor {format_word(hit[1])}")
        return st

    def run(self, w: Iterable[str]) -> GeodesicStack:
        st = self.new_stack()
        for x in w:
            self.push_letter(st, x)
        return st

    def word_problem(self, w: Iterable[str]) -> bool:
        return len(self.run(w)) == 0


def build_engine(oracle, k: int | None = None, verify_len: int = 8, paranoid: bool = False) -> DehnEngine:
    """Engine over ``oracle``'s alphabet, certified by the plan or by verification.

    With ``k`` omitted the plan's guaranteed constant is used.  A ``k`` below
    that (or any ``k`` over a non-plan alphabet) must first pass an
    exhaustive check of all words up to ``verify_len``.
    """
    plan = oracle.group.plan
    if k is None:
        k = plan.k
    if oracle.alphabet == plan.alphabet and k >= plan.k:
        certificate = "plan"
    else:
        result = oracle.verify_locally_excluding(k, verify_len)
        if not result.ok:
            raise UncertifiedError(
                f"not {k}-locally excluding: counterexample {format_word(result.counterexample)!r}")
        certificate = "verified"
    F = oracle.build_exclusion_set(k)
    rules = synthesize_rules(F, oracle.ball)
    return DehnEngine(rules, k, certificate, forbidden=F, paranoid=paranoid)
