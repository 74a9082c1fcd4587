from __future__ import annotations

from collections import deque
from pathlib import Path

import pytest

from vfree.graph import plan, read_graph
from vfree.normal_forms import VirtuallyFreeGroup
from vfree.oracle import GeodesicOracle

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"

FIXTURE_NAMES = ["dinf", "c2_c3", "c4_amalg_c4", "c2_x_z", "z"]


def load(name: str) -> VirtuallyFreeGroup:
    return VirtuallyFreeGroup(plan(read_graph(FIXTURES / f"{name}.json")))


@pytest.fixture(scope="session")
def groups() -> dict[str, VirtuallyFreeGroup]:
    return {name: load(name) for name in FIXTURE_NAMES}


@pytest.fixture(scope="session")
def oracles(groups) -> dict[str, GeodesicOracle]:
    return {name: GeodesicOracle(g) for name, g in groups.items()}


# Faithful 2x2 integer matrix representations of the fixture groups.  They
# share nothing with the normal-form code and serve as an independent check.

def _mat(a, b, c, d):
    return (a, b, c, d)


def mat_mul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


I2 = _mat(1, 0, 0, 1)
S = _mat(0, -1, 1, 0)
T = _mat(1, 1, 0, 1)
T_INV = _mat(1, -1, 0, 1)
U = _mat(0, -1, 1, 1)
NEG = _mat(-1, 0, 0, -1)


def _conj(m):
    return mat_mul(mat_mul(T, m), T_INV)


def _pow(m, n):
    out = I2
    for _ in range(n):
        out = mat_mul(out, m)
    return out


MATRIX_REPS = {
    # D_inf acting on Z by x -> -x and x -> 1 - x
    "dinf": ({"a": _mat(-1, 0, 0, 1), "b": _mat(-1, 1, 0, 1)}, False),
    # C2 * C3 = PSL(2, Z)
    "c2_c3": ({"a": S, "b": U, "B": mat_mul(U, U)}, True),
    # C4 *_{C2} C4 inside SL(2, Z): g -> S, h -> T S T^-1, g^2 = h^2 = -I
    "c4_amalg_c4": ({"g": S, "g2": _pow(S, 2), "g3": _pow(S, 3),
                     "h": _conj(S), "h3": _conj(_pow(S, 3))}, False),
    # C2 x Z = <-I> x <T>
    "c2_x_z": ({"a": NEG, "t1": T, "t1.a": mat_mul(T, NEG), "T1": T_INV, "T1.a": mat_mul(T_INV, NEG)}, False),
    "z": ({"t1": T, "T1": T_INV}, False),
}


def _norm(m, projective):
    if projective and (m[0] < 0 or (m[0] == 0 and m[1] < 0)):
        return tuple(-v for v in m)
    return m


def matrix_of(name: str, w) -> tuple:
    rep, projective = MATRIX_REPS[name]
    m = I2
    for x in w:
        m = mat_mul(m, rep[x])
    return _norm(m, projective)


def matrix_is_identity(name: str, w) -> bool:
    return matrix_of(name, w) == _norm(I2, MATRIX_REPS[name][1])


def matrix_ball_sizes(name: str, letters, radius: int) -> list[int]:
    """Sphere sizes by BFS over matrices, independent of normal forms."""
    rep, projective = MATRIX_REPS[name]
    start = _norm(I2, projective)
    seen = {start}
    frontier = [start]
    sizes = [1]
    for _ in range(radius):
        nxt = []
        for m in frontier:
            for x in letters:
                y = _norm(mat_mul(m, rep[x]), projective)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
        sizes.append(len(nxt))
    return sizes


def matrix_geodesic_length(name: str, w, letters) -> int:
    rep, projective = MATRIX_REPS[name]
    target = matrix_of(name, w)
    start = _norm(I2, projective)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        if m == target:
            return dist[m]
        for x in letters:
            y = _norm(mat_mul(m, rep[x]), projective)
            if y not in dist:
                dist[y] = dist[m] + 1
                queue.append(y)
    raise AssertionError("unreachable")


# Acceptance lines are collected here and printed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
