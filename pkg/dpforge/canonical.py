"""
Exact canonical labelling by individualisation and refinement.

The search colours vertices, refines the colouring until it is equitable,
then branches on the vertices of the first non-singleton cell. Every
discrete leaf yields a relabelled adjacency; the lexicographically largest
one is the canonical form. Two leaves with the same adjacency expose an
automorphism, and automorphisms that fix the current branch path prune
siblings lying in the same orbit.
"""

from __future__ import annotations

from typing import Dict, List, NewType, Optional, Sequence, Tuple

from .graph import Graph, iter_bits, relabel

CanonicalForm = NewType("CanonicalForm", bytes)

Labeling = Tuple[int, ...]


def _normalize(keys: Sequence) -> List[int]:
    ranks = {key: i for i, key in enumerate(sorted(set(keys)))}
    return [ranks[key] for key in keys]


def _refine(adj: Sequence[int], colors: List[int]) -> List[int]:
    """Colour refinement to the coarsest equitable partition finer than ``colors``.

    New colours are ranks of (old colour, sorted neighbour colours), so the
    result depends only on the structure and the ordering of input colours.
    """
    cells = len(set(colors))
    while True:
        signatures = [
            (colors[v], tuple(sorted(colors[w] for w in iter_bits(adj[v]))))
            for v in range(len(adj))
        ]
        refined = _normalize(signatures)
        refined_cells = len(set(refined))
        if refined_cells == cells:
            return refined
        colors, cells = refined, refined_cells


def _individualize(colors: List[int], v: int) -> List[int]:
    return _normalize([2 * c + (u != v) for u, c in enumerate(colors)])


def _target_cell(colors: List[int]) -> Optional[List[int]]:
    by_color: Dict[int, List[int]] = {}
    for v, c in enumerate(colors):
        by_color.setdefault(c, []).append(v)
    for c in sorted(by_color):
        if len(by_color[c]) > 1:
            return by_color[c]
    return None


def _permuted_rows(adj: Sequence[int], perm: Sequence[int]) -> Tuple[int, ...]:
    rows = [0] * len(adj)
    for v, row in enumerate(adj):
        new_row = 0
        for w in iter_bits(row):
            new_row |= 1 << perm[w]
        rows[perm[v]] = new_row
    return tuple(rows)


class _OrbitFinder:
    """Union-find over the orbits of the automorphisms fixing a branch path."""

    def __init__(self, n: int, generators: Sequence[Labeling], path: Sequence[int]):
        self.parent = list(range(n))
        for gamma in generators:
            if all(gamma[p] == p for p in path):
                for v in range(n):
                    self._union(v, gamma[v])

    def find(self, v: int) -> int:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def _union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def canonical_labeling(g: Graph, colors: Optional[Sequence[int]] = None) -> Tuple[Labeling, Tuple[int, ...]]:
    """Return ``(perm, rows)``: the canonical relabelling (old id -> new id) and
    the adjacency bitmasks of ``g`` under it.

    ``colors`` optionally restricts isomorphisms to colour-preserving ones;
    new labels are ordered by original colour.
    """
    n = g.n
    if n == 0:
        return (), ()
    adj = g.adj
    start = _normalize(list(colors)) if colors is not None else [0] * n
    generators: List[Labeling] = []
    best: Dict[str, Tuple] = {}

    def visit(current: List[int], path: List[int]) -> None:
        current = _refine(adj, current)
        cell = _target_cell(current)
        if cell is None:
            perm = tuple(current)
            rows = _permuted_rows(adj, perm)
            if not best or rows > best["rows"]:
                best["rows"], best["perm"] = rows, perm
            elif rows == best["rows"]:
                inverse = [0] * n
                for v, label in enumerate(best["perm"]):
                    inverse[label] = v
                generators.append(tuple(inverse[perm[v]] for v in range(n)))
            return
        explored: List[int] = []
        for v in cell:
            if explored:
                orbits = _OrbitFinder(n, generators, path)
                seen = {orbits.find(e) for e in explored}
                if orbits.find(v) in seen:
                    continue
            visit(_individualize(current, v), path + [v])
            explored.append(v)

    visit(start, [])
    return best["perm"], best["rows"]


def _pack(n: int, rows: Sequence[int], colors: Optional[Sequence[int]]) -> bytes:
    width = max(1, (n + 7) // 8)
    out = bytearray(n.to_bytes(2, "big"))
    if colors is not None:
        for c in sorted(colors):
            out += int(c).to_bytes(2, "big")
    for row in rows:
        out += row.to_bytes(width, "big")
    return bytes(out)


def canonical_form(g: Graph) -> CanonicalForm:
    """Byte string equal for isomorphic graphs and different otherwise."""
    _, rows = canonical_labeling(g)
    return CanonicalForm(_pack(g.n, rows, None))


def colored_canonical_form(g: Graph, colors: Sequence[int]) -> Tuple[bytes, Labeling]:
    """Canonical key of a vertex-coloured graph plus the labelling that produced it."""
    perm, rows = canonical_labeling(g, colors)
    return _pack(g.n, rows, colors), perm


def canonical_graph(g: Graph) -> Graph:
    """The canonical representative of ``g``'s isomorphism class."""
    perm, _ = canonical_labeling(g)
    return relabel(g, perm)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_form(g) == canonical_form(h)
