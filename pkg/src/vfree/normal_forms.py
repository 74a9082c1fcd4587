"""Exact arithmetic in the fundamental group of a graph of finite groups.

Elements are stored as layered normal forms that mirror the construction
plan.  At the base layer an element is an index into the first vertex
group.  At an amalgamation layer ``H *_A K`` it is ``(a, syllables)`` with
``a`` an edge-group index and each syllable ``(side, c)`` a non-trivial right
coset representative of ``A`` in ``H`` (side 0) or ``K`` (side 1), sides
alternating.  At an HNN layer it is ``(h, ((eps, c), ...))`` with ``c`` a
representative of ``A`` (eps = +1) or ``B`` (eps = -1) in ``H`` and no
``t^eps 1 t^-eps`` pinch.

Representatives are fixed once and for all (least under :meth:`key`), so two
elements are equal exactly when their stored forms are equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .finite_groups import FiniteGroup, coset_partition, name_key
from .graph import ConstructionPlan, GraphOfGroups, plan as make_plan
from .words import InvolutiveAlphabet


class NormalFormError(ValueError):
    pass


class UnknownLetterError(KeyError):
    pass


def _decompose(layer, m, sub: Sequence, edge: FiniteGroup, cache: dict):
    """Split ``m = sub[e] * c`` with ``c`` the canonical member of ``sub * m``."""
    hit = cache.get(m)
    if hit is not None:
        return hit
    best = None
    for e, s in enumerate(sub):
        p = layer.mul(s, m)
        if p == layer.identity:
            best = (e, p, None)
            break
        k = layer.key(p)
        if best is None or k < best[2]:
            best = (e, p, k)
    # sub[e] * m = c  =>  m = sub[e]^-1 * c
    out = (edge.inv(best[0]), best[1])
    cache[m] = out
    return out


class BaseLayer:
    def __init__(self, group: FiniteGroup):
        self.group = group
        self.identity = 0
        self.depth = 0

    def mul(self, x: int, y: int) -> int:
        return self.group.mult[x][y]

    def inv(self, x: int) -> int:
        return self.group.inv(x)

    def key(self, x: int):
        return name_key(self.group.name(x))

    def fmt(self, x: int) -> str:
        return self.group.name(x)

    def check(self, x) -> None:
        if not (isinstance(x, int) and 0 <= x < self.group.order):
            raise NormalFormError(f"bad base element {x!r}")

    def syllable_length(self, x) -> int:
        return 0


class AmalgamLayer:
    """``H *_A K`` with ``H`` the previous layer and ``K`` a finite vertex group."""

    def __init__(self, prev, k_group: FiniteGroup, edge: FiniteGroup, sub_h: Sequence, sub_k: Sequence[int]):
        self.prev = prev
        self.K = k_group
        self.E = edge
        self.sub_h = tuple(sub_h)
        self.sub_k = tuple(sub_k)
        self.identity = (0, ())
        self.depth = prev.depth + 1
        self._h_cache: dict = {}
        self._k_split = [None] * k_group.order
        where = {y: e for e, y in enumerate(self.sub_k)}
        for coset in coset_partition(k_group, set(self.sub_k)):
            c = coset.representative
            for x in coset.elements:
                # x = sub_k[e] * c
                self._k_split[x] = (where[k_group.mul(x, k_group.inv(c))], c)

    def split(self, side: int, m):
        if side == 0:
            return _decompose(self.prev, m, self.sub_h, self.E, self._h_cache)
        return self._k_split[m]

    def _factor_mul(self, side: int, x, y):
        return self.prev.mul(x, y) if side == 0 else self.K.mult[x][y]

    def _factor_identity(self, side: int):
        return self.prev.identity if side == 0 else 0

    def embed(self, side: int, m):
        e, c = self.split(side, m)
        if c == self._factor_identity(side):
            return (e, ())
        return (e, ((side, c),))

    def left_mul(self, side: int, g, x):
        """``g * x`` for ``g`` in factor ``side``."""
        a, syls = x
        g = self._factor_mul(side, g, self.sub_h[a] if side == 0 else self.sub_k[a])
        if syls and syls[0][0] == side:
            g = self._factor_mul(side, g, syls[0][1])
            syls = syls[1:]
        e, c = self.split(side, g)
        if c == self._factor_identity(side):
            return (e, syls)
        return (e, ((side, c),) + syls)

    def mul(self, x, y):
        cur = y
        for side, c in reversed(x[1]):
            cur = self.left_mul(side, c, cur)
        return (self.E.mult[x[0]][cur[0]], cur[1])

    def inv(self, x):
        a, syls = x
        cur = (self.E.inv(a), ())
        for side, c in syls:
            ci = self.prev.inv(c) if side == 0 else self.K.inv(c)
            cur = self.left_mul(side, ci, cur)
        return cur

    def key(self, x):
        a, syls = x
        return (len(syls), name_key(self.E.name(a)),
                tuple((side, self.prev.key(c) if side == 0 else name_key(self.K.name(c))) for side, c in syls))

    def fmt(self, x) -> str:
        a, syls = x
        parts = [self.E.name(a)]
        for side, c in syls:
            parts.append(("H:" + self.prev.fmt(c)) if side == 0 else ("K:" + self.K.name(c)))
        return "[" + " ".join(parts) + "]"

    def check(self, x) -> None:
        a, syls = x
        if not 0 <= a < self.E.order:
            raise NormalFormError(f"edge element {a!r} out of range")
        for i, (side, c) in enumerate(syls):
            if i and syls[i - 1][0] == side:
                raise NormalFormError("consecutive syllables from the same factor")
            if side == 0:
                self.prev.check(c)
            if c == self._factor_identity(side) or self.split(side, c) != (0, c):
                raise NormalFormError(f"syllable {i} is not a non-trivial coset representative")

    def syllable_length(self, x) -> int:
        return len(x[1])


class HnnLayer:
    """``<H, t | t a t^-1 = phi(a)>`` with ``phi(sub_a[e]) = sub_b[e]``."""

    def __init__(self, prev, edge: FiniteGroup, sub_a: Sequence, sub_b: Sequence):
        self.prev = prev
        self.E = edge
        self.sub_a = tuple(sub_a)
        self.sub_b = tuple(sub_b)
        self.identity = (prev.identity, ())
        self.depth = prev.depth + 1
        self._a_cache: dict = {}
        self._b_cache: dict = {}

    def split(self, eps: int, h):
        if eps == 1:
            return _decompose(self.prev, h, self.sub_a, self.E, self._a_cache)
        return _decompose(self.prev, h, self.sub_b, self.E, self._b_cache)

    def embed(self, h):
        return (h, ())

    def left_mul_h(self, g, x):
        return (self.prev.mul(g, x[0]), x[1])

    def left_mul_t(self, eps: int, x):
        """``t^eps * x``."""
        h, syls = x
        e, c = self.split(eps, h)
        moved = self.sub_b[e] if eps == 1 else self.sub_a[e]
        if c == self.prev.identity and syls and syls[0][0] == -eps:
            return (self.prev.mul(moved, syls[0][1]), syls[1:])
        return (moved, ((eps, c),) + syls)

    def mul(self, x, y):
        cur = y
        for eps, c in reversed(x[1]):
            cur = self.left_mul_h(c, cur)
            cur = self.left_mul_t(eps, cur)
        return self.left_mul_h(x[0], cur)

    def inv(self, x):
        h, syls = x
        prev = self.prev
        cur = (prev.inv(h), ())
        for eps, c in syls:
            cur = self.left_mul_t(-eps, cur)
            cur = self.left_mul_h(prev.inv(c), cur)
        return cur

    def key(self, x):
        h, syls = x
        prev = self.prev
        return (len(syls), prev.key(h), tuple((eps, prev.key(c)) for eps, c in syls))

    def fmt(self, x) -> str:
        h, syls = x
        parts = [self.prev.fmt(h)]
        for eps, c in syls:
            parts.append(("t+ " if eps == 1 else "t- ") + self.prev.fmt(c))
        return "(" + " | ".join(parts) + ")"

    def check(self, x) -> None:
        h, syls = x
        self.prev.check(h)
        for i, (eps, c) in enumerate(syls):
            if eps not in (1, -1):
                raise NormalFormError(f"bad exponent {eps!r}")
            self.prev.check(c)
            if self.split(eps, c) != (0, c):
                raise NormalFormError(f"syllable {i} is not a coset representative")
            if c == self.prev.identity and i + 1 < len(syls) and syls[i + 1][0] == -eps:
                raise NormalFormError(f"pinch t^{eps} 1 t^{-eps} at syllable {i}")

    def syllable_length(self, x) -> int:
        return len(x[1])


@dataclass(frozen=True, slots=True)
class GroupElement:
    """An element of a :class:`VirtuallyFreeGroup`; equality is group equality."""

    nf: Any
    group: "VirtuallyFreeGroup" = field(compare=False, repr=False)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.group.multiply(self, other)

    def __invert__(self) -> "GroupElement":
        return self.group.invert(self)

    def is_identity(self) -> bool:
        return self.nf == self.group.layer.identity

    @property
    def syllable_length(self) -> int:
        return self.group.layer.syllable_length(self.nf)

    def __str__(self) -> str:
        return self.group.layer.fmt(self.nf)


class VirtuallyFreeGroup:
    """The group described by a :class:`ConstructionPlan`, with its letters ``X'``."""

    def __init__(self, plan: ConstructionPlan):
        self.plan = plan
        g = plan.graph
        layers = []
        vertex_elems: dict[int, list] = {}
        stable_elems: dict[int, Any] = {}
        for step in plan.steps:
            if step.kind == "base":
                layer = BaseLayer(g.vertices[step.vertex])
                vertex_elems[step.vertex] = list(range(g.vertices[step.vertex].order))
            elif step.kind == "amalgamate":
                edge = g.edges[step.edge]
                m_old, m_new = edge.maps if edge.ends[0] == step.attach else edge.maps[::-1]
                sub_h = [vertex_elems[step.attach][m_old(y)] for y in range(edge.group.order)]
                layer = AmalgamLayer(layers[-1], g.vertices[step.vertex], edge.group, sub_h, m_new.map)
                vertex_elems = {v: [layer.embed(0, h) for h in hs] for v, hs in vertex_elems.items()}
                stable_elems = {i: layer.embed(0, h) for i, h in stable_elems.items()}
                vertex_elems[step.vertex] = [layer.embed(1, x) for x in range(g.vertices[step.vertex].order)]
            else:
                edge = g.edges[step.edge]
                (i, j), (m0, m1) = edge.ends, edge.maps
                sub_a = [vertex_elems[i][m0(y)] for y in range(edge.group.order)]
                sub_b = [vertex_elems[j][m1(y)] for y in range(edge.group.order)]
                layer = HnnLayer(layers[-1], edge.group, sub_a, sub_b)
                vertex_elems = {v: [layer.embed(h) for h in hs] for v, hs in vertex_elems.items()}
                stable_elems = {i: layer.embed(h) for i, h in stable_elems.items()}
                stable_elems[step.stable] = (layer.prev.identity, ((1, layer.prev.identity),))
            layers.append(layer)
        self.layers = layers
        self.layer = layers[-1]
        self._vertex_nf = vertex_elems
        self._stable_nf = stable_elems
        self.identity = GroupElement(self.layer.identity, self)
        self.letters: dict[str, GroupElement] = {}
        for name, d in plan.definitions.items():
            if d[0] == "vertex":
                nf = vertex_elems[d[1]][d[2]]
            else:
                _, i, eps, y = d
                edge = g.edges[plan.steps[self._hnn_step(i)].edge]
                t = stable_elems[i] if eps == 1 else self.layer.inv(stable_elems[i])
                v, emb = (edge.ends[0], edge.maps[0]) if eps == 1 else (edge.ends[1], edge.maps[1])
                nf = self.layer.mul(t, vertex_elems[v][emb(y)])
            self.letters[name] = GroupElement(nf, self)

    def _hnn_step(self, i: int) -> int:
        for n, s in enumerate(self.plan.steps):
            if s.kind == "hnn" and s.stable == i:
                return n
        raise KeyError(i)

    @classmethod
    def from_graph(cls, g: GraphOfGroups) -> "VirtuallyFreeGroup":
        return cls(make_plan(g))

    @property
    def alphabet(self) -> InvolutiveAlphabet:
        return self.plan.alphabet

    def vertex_element(self, vertex: int, x: int | str) -> GroupElement:
        if isinstance(x, str):
            x = self.plan.graph.vertices[vertex].index(x)
        return GroupElement(self._vertex_nf[vertex][x], self)

    def stable_letter(self, i: int) -> GroupElement:
        return GroupElement(self._stable_nf[i], self)

    def _same(self, *gs: GroupElement) -> None:
        for g in gs:
            if g.group is not self:
                raise NormalFormError("element belongs to a different group")

    def multiply(self, g1: GroupElement, g2: GroupElement) -> GroupElement:
        self._same(g1, g2)
        return GroupElement(self.layer.mul(g1.nf, g2.nf), self)

    def invert(self, g: GroupElement) -> GroupElement:
        self._same(g)
        return GroupElement(self.layer.inv(g.nf), self)

    def equal(self, g1: GroupElement, g2: GroupElement) -> bool:
        self._same(g1, g2)
        return g1.nf == g2.nf

    def letter(self, x: str) -> GroupElement:
        try:
            return self.letters[x]
        except KeyError:
            raise UnknownLetterError(f"unknown letter {x!r}") from None

    def evaluate(self, w: Iterable[str]) -> GroupElement:
        nfs = [self.letter(x).nf for x in w]
        mul = self.layer.mul
        cur = self.layer.identity
        for nf in reversed(nfs):
            cur = mul(nf, cur)
        return GroupElement(cur, self)

    def check(self, g: GroupElement) -> None:
        """Raise :class:`NormalFormError` unless ``g`` is a well-formed normal form."""
        self.layer.check(g.nf)

    def key(self, g: GroupElement):
        return self.layer.key(g.nf)

    def canonical_coset_rep(self, h: GroupElement, sub: Sequence[GroupElement]) -> tuple[GroupElement, GroupElement]:
        """Write ``h = a * c`` with ``a`` in the finite subgroup ``sub``.

        ``c`` is the least element of the coset ``sub * h`` under :meth:`key`,
        or the identity when ``h`` lies in ``sub``.
        """
        self._same(h, *sub)
        best = None
        for s in sub:
            c = s * h
            if c.is_identity():
                best = (s, c)
                break
            if best is None or self.key(c) < self.key(best[1]):
                best = (s, c)
        return ~best[0], best[1]
