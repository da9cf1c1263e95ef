"""Shared fixtures: reference graphs drawn by hand and small helpers."""

from pathlib import Path

import pytest

from dpforge.graph import Graph, complete_graph


@pytest.fixture
def reference_g7() -> Graph:
    """4-regular on 7 vertices: bottom row 0..3 with edges 01 and 23, top row 4..6 joined to every bottom vertex."""
    edges = [(0, 1), (2, 3)] + [(b, t) for b in range(4) for t in range(4, 7)]
    return Graph.from_edges(7, edges)


@pytest.fixture
def reference_g9() -> Graph:
    """4-regular on 9 vertices: K_{4,4} on 1..4 / 5..8 minus the matching 15, 26, plus apex 0."""
    left, right, apex = [1, 2, 3, 4], [5, 6, 7, 8], 0
    edges = [(left[i], right[j]) for i in range(4) for j in range(4) if not (i < 2 and j < 2)]
    edges += [(apex, 1), (apex, 2), (apex, 5), (apex, 6), (1, 6), (5, 2)]
    return Graph.from_edges(9, edges)


@pytest.fixture
def reference_g12() -> Graph:
    """The cubic ladder on 12 vertices, with u_j and v_j interleaved as 2(j-1) and 2(j-1)+1."""

    def u(j):
        return 2 * (j - 1)

    def v(j):
        return 2 * (j - 1) + 1

    edges = [(u(j), u(j + 1)) for j in range(1, 6)] + [(v(j), v(j + 1)) for j in range(1, 6)]
    edges += [(u(j), v(j)) for j in (1, 3, 4, 6)]
    edges += [(u(1), v(2)), (u(2), v(1)), (u(5), v(6)), (u(6), v(5))]
    return Graph.from_edges(12, edges)


@pytest.fixture
def k5_sum_k5() -> Graph:
    """Two K5 copies with edges 01 and 56 swapped for 05 and 16."""
    edges = [(a, b) for a in range(5) for b in range(a + 1, 5)]
    edges += [(a + 5, b + 5) for a in range(5) for b in range(a + 1, 5)]
    edges.remove((0, 1))
    edges.remove((5, 6))
    edges += [(0, 5), (1, 6)]
    return Graph.from_edges(10, edges)


@pytest.fixture
def k5() -> Graph:
    return complete_graph(5)


@pytest.fixture
def write_file(tmp_path):
    """Write ``text`` under ``tmp_path`` and return the path as a string."""

    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def golden():
    """Text of a reference file under tests/golden."""

    def read(name: str) -> str:
        return (Path(__file__).parent / "golden" / name).read_text(encoding="utf-8")

    return read
