"""Finite groups given by multiplication tables, and embeddings between them."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

EXHAUSTIVE_ASSOC_LIMIT = 512
ASSOC_SAMPLES = 10_000


class GroupSpecError(ValueError):
    """Raised for a malformed or non-group table."""


def name_key(name: str) -> tuple[int, str]:
    return (len(name), name)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group with elements ``0..order-1``; index 0 is the identity.

    Build through :func:`load_group` or :meth:`from_table`, which validate.
    """

    element_names: tuple[str, ...]
    mult: tuple[tuple[int, ...], ...]
    label: str = ""
    _inverse: tuple[int, ...] = field(default=(), repr=False)
    _index: dict = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return len(self.element_names)

    identity = 0

    def mul(self, x: int, y: int) -> int:
        return self.mult[x][y]

    def inv(self, x: int) -> int:
        return self._inverse[x]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no element named {name!r} in {self.label or 'group'}") from None

    def name(self, x: int) -> str:
        return self.element_names[x]

    def element_order(self, x: int) -> int:
        n, y = 1, x
        while y != 0:
            y = self.mult[y][x]
            n += 1
        return n

    @classmethod
    def from_table(cls, names: Sequence[str], table: Sequence[Sequence[int]], label: str = "",
                   rng: random.Random | None = None) -> "FiniteGroup":
        names = tuple(str(x) for x in names)
        n = len(names)
        if n == 0:
            raise GroupSpecError("a group needs at least one element")
        if len(set(names)) != n:
            raise GroupSpecError("element names must be distinct")
        if len(table) != n or any(len(row) != n for row in table):
            raise GroupSpecError(f"table must be {n}x{n}")
        mult = tuple(tuple(int(v) for v in row) for row in table)
        for i, row in enumerate(mult):
            for j, v in enumerate(row):
                if not 0 <= v < n:
                    raise GroupSpecError(f"entry ({names[i]}, {names[j]}) = {v} out of range")
        for x in range(n):
            if mult[0][x] != x or mult[x][0] != x:
                raise GroupSpecError(
                    f"element {names[0]!r} at index 0 is not an identity: "
                    f"({names[0]}, {names[x]}) -> {names[mult[0][x]]}, "
                    f"({names[x]}, {names[0]}) -> {names[mult[x][0]]}")
        for x in range(n):
            if len(set(mult[x])) != n:
                raise GroupSpecError(f"row of {names[x]!r} is not a permutation (not a Latin square)")
            if len({mult[y][x] for y in range(n)}) != n:
                raise GroupSpecError(f"column of {names[x]!r} is not a permutation (not a Latin square)")
        if n <= EXHAUSTIVE_ASSOC_LIMIT:
            triples = ((x, y, z) for x in range(n) for y in range(n) for z in range(n))
        else:
            rng = rng or random.Random(0)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(ASSOC_SAMPLES))
        for x, y, z in triples:
            if mult[mult[x][y]][z] != mult[x][mult[y][z]]:
                raise GroupSpecError(f"associativity fails at ({names[x]}, {names[y]}, {names[z]})")
        inverse = tuple(mult[x].index(0) for x in range(n))
        return cls(names, mult, label, inverse, {nm: i for i, nm in enumerate(names)})

    @classmethod
    def cyclic(cls, n: int, names: Sequence[str] | None = None, gen: str = "g", label: str = "") -> "FiniteGroup":
        if n < 1:
            raise GroupSpecError("cyclic order must be positive")
        if names is None:
            names = ["1"] + [gen if i == 1 else f"{gen}{i}" for i in range(1, n)]
        if len(names) != n:
            raise GroupSpecError(f"cyclic group of order {n} needs {n} element names")
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return cls.from_table(names, table, label or f"C{n}")

    @classmethod
    def trivial(cls, label: str = "1") -> "FiniteGroup":
        return cls.from_table(["1"], [[0]], label)

    def is_subgroup(self, sub: set[int] | frozenset[int]) -> bool:
        return 0 in sub and all(self.mult[x][self._inverse[y]] in sub for x in sub for y in sub)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label or '?'}, order={self.order})"


def load_group(spec: Mapping[str, Any] | None, label: str = "") -> FiniteGroup:
    """Build a group from ``{"cyclic": n}`` or ``{"elements": [...], "table": [[...]]}``.

    The cyclic form accepts an optional ``"elements"`` list naming the powers
    of the generator in order, or ``"gen"`` for the default naming.  ``None``
    or ``{}`` is the trivial group.
    """
    if not spec:
        return FiniteGroup.trivial(label or "1")
    if not isinstance(spec, Mapping):
        raise GroupSpecError(f"group spec must be an object, got {type(spec).__name__}")
    label = str(spec.get("name", label))
    if "cyclic" in spec:
        n = spec["cyclic"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise GroupSpecError(f"cyclic order must be an integer, got {n!r}")
        return FiniteGroup.cyclic(n, spec.get("elements"), spec.get("gen", "g"), label)
    if "elements" in spec and "table" in spec:
        return FiniteGroup.from_table(spec["elements"], spec["table"], label)
    raise GroupSpecError("group spec needs 'cyclic' or both 'elements' and 'table'")


@dataclass(frozen=True)
class SubgroupEmbedding:
    source: FiniteGroup
    target: FiniteGroup
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image(self) -> list[int]:
        return list(self.map)

    def compose(self, after: "SubgroupEmbedding") -> "SubgroupEmbedding":
        """``after`` applied after ``self``."""
        if after.source is not self.target:
            raise ValueError("embeddings do not compose")
        return SubgroupEmbedding(self.source, after.target, tuple(after.map[y] for y in self.map))


def load_embedding(spec: Mapping[str, Any] | None, source: FiniteGroup, target: FiniteGroup) -> SubgroupEmbedding:
    """``spec["map"]`` sends source names to target names; the identity may be omitted."""
    mapping = dict((spec or {}).get("map", {}))
    image = []
    for x in range(source.order):
        nm = source.name(x)
        if nm in mapping:
            image.append(target.index(str(mapping.pop(nm))))
        elif x == 0:
            image.append(0)
        else:
            raise GroupSpecError(f"embedding map has no image for {nm!r}")
    if mapping:
        raise GroupSpecError(f"embedding map names unknown elements {sorted(mapping)}")
    return SubgroupEmbedding(source, target, tuple(image))


def check_embedding(e: SubgroupEmbedding) -> str | None:
    """Return ``None`` if ``e`` is an injective homomorphism, else a report."""
    src, tgt, m = e.source, e.target, e.map
    if len(m) != src.order:
        return f"map has {len(m)} entries for a source of order {src.order}"
    if m[0] != 0:
        return f"identity maps to {tgt.name(m[0])!r}"
    for x in range(src.order):
        for y in range(src.order):
            if m[src.mul(x, y)] != tgt.mul(m[x], m[y]):
                return (f"not a homomorphism at ({src.name(x)}, {src.name(y)}): "
                        f"image of product {tgt.name(m[src.mul(x, y)])} != "
                        f"{tgt.name(m[x])}*{tgt.name(m[y])} = {tgt.name(tgt.mul(m[x], m[y]))}")
    if len(set(m)) != len(m):
        seen: dict[int, int] = {}
        for x, y in enumerate(m):
            if y in seen:
                return f"not injective: {src.name(seen[y])} and {src.name(x)} both map to {tgt.name(y)}"
            seen[y] = x
    return None


@dataclass(frozen=True)
class Coset:
    representative: int
    elements: tuple[int, ...]


def coset_partition(group: FiniteGroup, sub: set[int] | frozenset[int] | Sequence[int]) -> list[Coset]:
    """Right cosets ``sub*g`` of ``group``, in order of first element index.

    Each coset is represented by its ShortLex-least element name, except that
    the subgroup itself is always represented by the identity.
    """
    sub = frozenset(sub)
    if not group.is_subgroup(sub):
        raise ValueError("not a subgroup")
    seen: set[int] = set()
    cosets = []
    for g in range(group.order):
        if g in seen:
            continue
        cell = tuple(sorted(group.mul(h, g) for h in sub))
        seen.update(cell)
        rep = 0 if 0 in cell else min(cell, key=lambda x: name_key(group.name(x)))
        cosets.append(Coset(rep, cell))
    return cosets
