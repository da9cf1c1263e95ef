"""
Core graph representation for dpforge.

Graphs are simple, undirected and immutable. Vertices are the integers
0..n-1 (1-based labels in printed drawings map to ``label - 1``). Each vertex's
neighbourhood is stored as an int bitmask, which keeps subset and
neighbourhood operations cheap for the small orders the library targets.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import GraphError

Edge = Tuple[int, int]

# Distance between vertices in different components.
UNREACHABLE: None = None


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices 0..n-1.

    ``adj[v]`` is the bitmask of neighbours of ``v``. Construct through
    :meth:`from_edges` unless you already hold valid bitmasks.
    """

    n: int
    adj: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {self.n}")
        if len(self.adj) != self.n:
            raise GraphError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for w in iter_bits(row):
                if not self.adj[w] >> v & 1:
                    raise GraphError(f"adjacency is not symmetric at edge ({v}, {w})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build a graph from an edge iterable; duplicate edges are rejected."""
        rows = [0] * n
        for edge in edges:
            u, v = int(edge[0]), int(edge[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if rows[u] >> v & 1:
                raise GraphError(f"parallel edge ({u}, {v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def m(self) -> int:
        """Edge count (half the degree sum)."""
        return sum(bin(row).count("1") for row in self.adj) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> List[Edge]:
        """Edges as ``(u, v)`` pairs with ``u < v``, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        self._check_vertex(v)
        return tuple(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return bin(self.adj[v]).count("1")

    def degrees(self) -> Tuple[int, ...]:
        return tuple(bin(row).count("1") for row in self.adj)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for n={self.n}")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs hop distances; ``UNREACHABLE`` marks pairs in different components."""

    n: int
    d: Tuple[Tuple[Optional[int], ...], ...]

    def __getitem__(self, key: Tuple[int, int]) -> Optional[int]:
        u, v = key
        return self.d[u][v]

    def row(self, v: int) -> Tuple[Optional[int], ...]:
        return self.d[v]

    def diameter(self) -> Optional[int]:
        """Largest finite distance, or ``UNREACHABLE`` if some pair is disconnected."""
        best = 0
        for row in self.d:
            for value in row:
                if value is UNREACHABLE:
                    return UNREACHABLE
                best = max(best, value)
        return best


def bfs_distances(adj: Sequence[int], source: int, within: int) -> Dict[int, int]:
    """Hop distances from ``source`` to every vertex reachable inside the ``within`` mask."""
    dist = {source: 0}
    frontier = 1 << source
    seen = frontier
    level = 0
    while frontier:
        level += 1
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        nxt &= within & ~seen
        for v in iter_bits(nxt):
            dist[v] = level
        seen |= nxt
        frontier = nxt
    return dist


def distance_matrix(g: Graph) -> DistanceMatrix:
    rows = []
    full = g.vertex_mask
    for source in range(g.n):
        found = bfs_distances(g.adj, source, full)
        rows.append(tuple(found.get(v, UNREACHABLE) for v in range(g.n)))
    return DistanceMatrix(g.n, tuple(rows))


def induced_subgraph(g: Graph, s: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """Subgraph induced by ``s``, relabelled to 0..|s|-1 in increasing vertex order.

    Returns the subgraph and the old-id -> new-id map.
    """
    chosen = sorted(set(s))
    for v in chosen:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    relabel = {old: new for new, old in enumerate(chosen)}
    rows = []
    for old in chosen:
        row = 0
        for w in iter_bits(g.adj[old]):
            if w in relabel:
                row |= 1 << relabel[w]
        rows.append(row)
    return Graph(len(chosen), tuple(rows)), relabel


def reachable_mask(adj: Sequence[int], source: int, within: int) -> int:
    seen = frontier = 1 << source
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        frontier = nxt & within & ~seen
        seen |= frontier
    return seen


def is_connected_mask(adj: Sequence[int], within: int) -> bool:
    """True iff the vertices in ``within`` induce a connected subgraph (empty counts as connected)."""
    if not within:
        return True
    source = (within & -within).bit_length() - 1
    return reachable_mask(adj, source, within) == within


def is_connected(g: Graph) -> bool:
    return is_connected_mask(g.adj, g.vertex_mask)


def components(g: Graph) -> List[Tuple[int, ...]]:
    left = g.vertex_mask
    found = []
    while left:
        source = (left & -left).bit_length() - 1
        comp = reachable_mask(g.adj, source, left)
        found.append(tuple(iter_bits(comp)))
        left &= ~comp
    return found


def degree_sequence(g: Graph) -> Tuple[int, ...]:
    """Degrees sorted weakly decreasing."""
    return tuple(sorted(g.degrees(), reverse=True))


def is_regular(g: Graph, r: Optional[int] = None) -> bool:
    degs = set(g.degrees())
    if not degs:
        return r in (None, 0)
    return len(degs) == 1 and (r is None or degs == {r})


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Apply ``perm`` (old id -> new id) to every vertex."""
    if sorted(perm) != list(range(g.n)):
        raise GraphError("relabelling must be a permutation of 0..n-1")
    rows = [0] * g.n
    for old, row in enumerate(g.adj):
        new_row = 0
        for w in iter_bits(row):
            new_row |= 1 << perm[w]
        rows[perm[old]] = new_row
    return Graph(g.n, tuple(rows))


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shifted = tuple(row << g.n for row in h.adj)
    return Graph(g.n + h.n, g.adj + shifted)


def with_edges(g: Graph, add: Iterable[Edge] = (), remove: Iterable[Edge] = ()) -> Graph:
    """Copy of ``g`` with ``remove`` deleted, then ``add`` inserted."""
    rows = list(g.adj)
    for u, v in remove:
        if not rows[u] >> v & 1:
            raise GraphError(f"edge ({u}, {v}) is not in the graph")
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
    for u, v in add:
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if rows[u] >> v & 1:
            raise GraphError(f"edge ({u}, {v}) already present")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(g.n, tuple(rows))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, ((v, (v + 1) % n) for v in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((v, v + 1) for v in range(n - 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((u, a + v) for u in range(a) for v in range(b)))
