"""Graphs of finite groups and the amalgam/HNN construction plan.

The fundamental group is built from the first vertex group by amalgamating
the remaining vertex groups along a breadth-first spanning tree, then adding
one HNN extension per remaining edge.  Each step enlarges the generating set
and replaces the locality constant ``k`` by ``3k - 2``.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .finite_groups import (
    FiniteGroup,
    GroupSpecError,
    SubgroupEmbedding,
    check_embedding,
    load_embedding,
    load_group,
)
from .words import InvolutiveAlphabet

BASE_K = 2


class GraphSpecError(ValueError):
    """The input file is malformed (as opposed to mathematically invalid)."""


class InvalidGraphError(ValueError):
    def __init__(self, diagnostics: list[str]):
        super().__init__("; ".join(diagnostics))
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class Edge:
    ends: tuple[int, int]
    group: FiniteGroup
    maps: tuple[SubgroupEmbedding, SubgroupEmbedding]

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class GraphOfGroups:
    vertices: tuple[FiniteGroup, ...]
    edges: tuple[Edge, ...] = ()


def load_graph(data: Mapping[str, Any]) -> GraphOfGroups:
    if not isinstance(data, Mapping) or "vertices" not in data:
        raise GraphSpecError("graph spec needs a 'vertices' list")
    try:
        vertices = tuple(load_group(spec, f"G{i}") for i, spec in enumerate(data["vertices"]))
        if not vertices:
            raise GraphSpecError("graph needs at least one vertex")
        edges = []
        for n, espec in enumerate(data.get("edges", [])):
            ends = tuple(espec.get("ends", ()))
            if len(ends) != 2 or not all(isinstance(i, int) and 0 <= i < len(vertices) for i in ends):
                raise GraphSpecError(f"edge {n}: 'ends' must be two vertex indices, got {list(ends)}")
            group = load_group(espec.get("group"), f"E{n}")
            mspecs = espec.get("maps") or [None, None]
            if len(mspecs) != 2:
                raise GraphSpecError(f"edge {n}: 'maps' must have two entries")
            maps = tuple(load_embedding(m, group, vertices[i]) for m, i in zip(mspecs, ends))
            edges.append(Edge(ends, group, maps))
    except (GroupSpecError, KeyError, TypeError, AttributeError) as exc:
        raise GraphSpecError(str(exc)) from exc
    return GraphOfGroups(vertices, tuple(edges))


def read_graph(path: str | Path) -> GraphOfGroups:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GraphSpecError(f"{path}: {exc}") from exc
    return load_graph(data)


def validate(g: GraphOfGroups) -> list[str]:
    """Diagnostics for ``g``; an empty list means the graph is usable."""
    problems = []
    for n, e in enumerate(g.edges):
        for side, emb in enumerate(e.maps):
            report = check_embedding(emb)
            if report:
                problems.append(f"edge {n} map {side} into vertex {e.ends[side]}: {report}")
    reached = _bfs_tree(g)[0]
    missing = [v for v in range(len(g.vertices)) if v not in reached]
    if missing:
        problems.append(f"graph is disconnected: vertices {missing} unreachable from vertex 0")
    return problems


def _bfs_tree(g: GraphOfGroups) -> tuple[list[int], list[tuple[int, int, int]]]:
    """BFS order of vertices and the tree edges as (edge, old end, new end)."""
    seen = {0}
    order = [0]
    tree = []
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for n, e in enumerate(g.edges):
            if e.is_loop or u not in e.ends:
                continue
            v = e.ends[1] if e.ends[0] == u else e.ends[0]
            if v not in seen:
                seen.add(v)
                order.append(v)
                tree.append((n, u, v))
                queue.append(v)
    return order, tree


@dataclass(frozen=True)
class Step:
    """One group in the chain ``H_1, ..., H_r``.

    ``kind`` is ``"base"``, ``"amalgamate"`` or ``"hnn"``.  For an
    amalgamation ``attach`` is the vertex already present and ``vertex`` the
    new one; for an HNN step ``stable`` is the 1-based stable letter index.
    """

    kind: str
    vertex: int | None
    edge: int | None
    attach: int | None
    stable: int | None
    x_before: InvolutiveAlphabet
    x_after: InvolutiveAlphabet
    k_before: int | None
    k_after: int

    def new_letters(self) -> tuple[str, ...]:
        old = set(self.x_before)
        return tuple(x for x in self.x_after if x not in old)


@dataclass(frozen=True)
class ConstructionPlan:
    graph: GraphOfGroups
    steps: tuple[Step, ...]
    # letter -> ("vertex", v, x) or ("stable", i, eps, e): t_i^eps times the
    # image of edge element e on the matching side
    definitions: Mapping[str, tuple] = field(default_factory=dict)
    vertex_letters: Mapping[tuple[int, int], str] = field(default_factory=dict)

    @property
    def alphabet(self) -> InvolutiveAlphabet:
        return self.steps[-1].x_after

    @property
    def k(self) -> int:
        return self.steps[-1].k_after

    def letter_for(self, vertex: int, x: int) -> str | None:
        return self.vertex_letters.get((vertex, x))


def next_k(k: int) -> int:
    return 3 * k - 2


def _own_names(g: GraphOfGroups) -> dict[tuple[int, int], str]:
    counts = Counter(grp.name(x) for grp in g.vertices for x in range(1, grp.order))
    names = {}
    for v, grp in enumerate(g.vertices):
        for x in range(1, grp.order):
            nm = grp.name(x)
            names[v, x] = nm if counts[nm] == 1 else f"{nm}_{v}"
    return names


def plan(g: GraphOfGroups) -> ConstructionPlan:
    problems = validate(g)
    if problems:
        raise InvalidGraphError(problems)
    own = _own_names(g)
    letter_of: dict[tuple[int, int], str] = {}
    letters: list[str] = []
    inverse: dict[str, str] = {}
    definitions: dict[str, tuple] = {}

    def add_vertex_letters(v: int, skip: set[int]) -> None:
        grp = g.vertices[v]
        for x in range(1, grp.order):
            if x not in skip:
                letter_of[v, x] = own[v, x]
                letters.append(own[v, x])
                definitions[own[v, x]] = ("vertex", v, x)
        for x in range(1, grp.order):
            inverse[letter_of[v, x]] = letter_of[v, grp.inv(x)]

    def alphabet() -> InvolutiveAlphabet:
        return InvolutiveAlphabet(letters, inverse)

    add_vertex_letters(0, set())
    empty = InvolutiveAlphabet((), {})
    steps = [Step("base", 0, None, None, None, empty, alphabet(), None, BASE_K)]

    order, tree = _bfs_tree(g)
    for n, old, new in tree:
        e = g.edges[n]
        m_old, m_new = (e.maps if e.ends[0] == old else e.maps[::-1])
        for y in range(1, e.group.order):
            letter_of[new, m_new(y)] = letter_of[old, m_old(y)]
        before, k = steps[-1].x_after, steps[-1].k_after
        add_vertex_letters(new, set(m_new.map))
        steps.append(Step("amalgamate", new, n, old, None, before, alphabet(), k, next_k(k)))

    tree_edges = {n for n, _, _ in tree}
    stable = 0
    for n, e in enumerate(g.edges):
        if n in tree_edges:
            continue
        stable += 1
        (i, j), (m0, m1) = e.ends, e.maps
        t, T = f"t{stable}", f"T{stable}"
        fwd = [(t, 0)] + [(f"{t}.{letter_of[i, m0(y)]}", y) for y in range(1, e.group.order)]
        back = [(T, 0)] + [(f"{T}.{letter_of[j, m1(y)]}", y) for y in range(1, e.group.order)]
        for name, y in fwd:
            definitions[name] = ("stable", stable, 1, y)
        for name, y in back:
            definitions[name] = ("stable", stable, -1, y)
        # (t a)^-1 = a^-1 t^-1 = t^-1 phi(a^-1)
        for name, y in fwd:
            inverse[name] = back[e.group.inv(y)][0]
            inverse[back[e.group.inv(y)][0]] = name
        clash = [name for name, _ in fwd + back if name in letters]
        if clash:
            raise InvalidGraphError([f"stable letter names {clash} collide with vertex element names"])
        letters.extend(name for name, _ in fwd + back)
        before, k = steps[-1].x_after, steps[-1].k_after
        steps.append(Step("hnn", None, n, None, stable, before, alphabet(), k, next_k(k)))

    return ConstructionPlan(g, tuple(steps), definitions, dict(letter_of))


def star_size(p: ConstructionPlan) -> tuple[int, int]:
    """Final ``(|X'|, k')`` of the plan."""
    return len(p.alphabet), p.k


def describe(p: ConstructionPlan) -> list[str]:
    lines = []
    for s in p.steps:
        if s.kind == "base":
            head = f"base G{s.vertex} ({p.graph.vertices[s.vertex].label})"
        elif s.kind == "amalgamate":
            head = f"amalgamate G{s.vertex} ({p.graph.vertices[s.vertex].label}) along edge {s.edge} at G{s.attach}"
        else:
            head = f"hnn edge {s.edge} with stable letter t{s.stable}"
        k = f"k={s.k_after}" if s.k_before is None else f"k {s.k_before} -> {s.k_after}"
        new = " ".join(s.new_letters()) or "-"
        lines.append(f"{head}: {k}; |X|={len(s.x_after)}; new letters: {new}")
    return lines
