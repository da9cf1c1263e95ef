"""
Graph operations (circulant, join, direct sum) and the builder of regular
distance-preserving graphs for every admissible (n, r).

Every construction returns a TaggedGraph so callers can see where the
named pieces ended up, and ``build_regular_dp`` pairs the graph with a
certificate that is checked before it is returned.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import CertificateError, GraphError, InadmissiblePairError
from .graph import (
    Edge,
    Graph,
    complete_bipartite,
    complete_graph,
    disjoint_union,
    empty_graph,
    is_connected,
    iter_bits,
    with_edges,
)
from .isometry import DpCertificate, Subset, is_dp_bruteforce, verify_certificate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AdmissiblePair:
    n: int
    r: int

    def __post_init__(self):
        if not is_admissible(self.n, self.r):
            raise InadmissiblePairError(self.n, self.r)

    @property
    def case(self) -> str:
        """Which branch of the builder handles this pair."""
        n, r = self.n, self.r
        if r == 3:
            return "D" if n >= 8 else "D'"
        if n <= 2 * r:
            return "A"
        if n == 2 * r + 1:
            return "B"
        return "C"


@dataclass(frozen=True)
class TaggedGraph:
    """A graph with named vertex groups, named vertices and the edges sums removed."""

    graph: Graph
    parts: Mapping[str, Tuple[int, ...]] = field(default_factory=dict)
    labels: Mapping[str, int] = field(default_factory=dict)
    removed_edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.parts:
            members = sorted(v for part in self.parts.values() for v in part)
            if members != list(range(self.graph.n)):
                raise GraphError("parts must partition the vertex set")
        if len(set(self.labels.values())) != len(self.labels):
            raise GraphError("two labels name the same vertex")


@dataclass(frozen=True)
class ChainBlock:
    """One summand of a direct-sum chain with the edges it gives up."""

    graph: Graph
    in_edge: Optional[Edge] = None
    out_edge: Optional[Edge] = None


def is_admissible(n: int, r: int) -> bool:
    return r >= 3 and n >= r + 1 and (r % 2 == 0 or n % 2 == 0)


def circulant(n: int, r: int) -> Graph:
    """Vertices 0..n-1 joined when their circular distance is 1..r//2, plus diameters when r is odd."""
    if not 0 <= r < n:
        raise GraphError(f"circulant degree must satisfy 0 <= r < n, got n={n}, r={r}")
    if r % 2 and n % 2:
        raise GraphError(f"odd degree {r} needs an even order, got n={n}")
    edges = set()
    for i in range(n):
        for step in range(1, r // 2 + 1):
            edges.add(tuple(sorted((i, (i + step) % n))))
        if r % 2:
            edges.add(tuple(sorted((i, (i + n // 2) % n))))
    return Graph.from_edges(n, sorted(edges))


def join(g: Graph, h: Graph, names: Tuple[str, str] = ("left", "right")) -> TaggedGraph:
    """Disjoint union of ``g`` and ``h`` plus every edge between them."""
    union = disjoint_union(g, h)
    bridge = [(u, g.n + v) for u in range(g.n) for v in range(h.n)]
    joined = with_edges(union, add=bridge)
    parts = {names[0]: tuple(range(g.n)), names[1]: tuple(range(g.n, g.n + h.n))}
    return TaggedGraph(joined, parts)


def direct_sum(g: Graph, e_g: Edge, h: Graph, e_h: Edge) -> TaggedGraph:
    """Remove ``ux`` from ``g`` and ``vy`` from ``h``, then add ``uv`` and ``xy``.

    ``h`` is shifted by ``g.n``; endpoints pair up first-to-first and
    second-to-second in the order given.
    """
    return direct_sum_chain([ChainBlock(g, out_edge=e_g), ChainBlock(h, in_edge=e_h)])


def _check_block_edge(block: ChainBlock, edge: Optional[Edge], index: int, which: str) -> Edge:
    if edge is None:
        raise GraphError(f"block {index} needs an {which} edge")
    u, v = edge
    if not (0 <= u < block.graph.n and 0 <= v < block.graph.n) or not block.graph.adj[u] >> v & 1:
        raise GraphError(f"block {index} has no {which} edge ({u}, {v})")
    return (u, v)


def direct_sum_chain(blocks: Sequence[ChainBlock]) -> TaggedGraph:
    """Chain direct sums left to right: each block's out edge meets the next block's in edge."""
    if not blocks:
        raise GraphError("a direct-sum chain needs at least one block")
    ins: List[Optional[Edge]] = []
    outs: List[Optional[Edge]] = []
    for i, block in enumerate(blocks):
        e_in = _check_block_edge(block, block.in_edge, i, "in") if i > 0 else None
        e_out = _check_block_edge(block, block.out_edge, i, "out") if i < len(blocks) - 1 else None
        if e_in and e_out and set(e_in) & set(e_out):
            raise GraphError(f"block {i} in edge {e_in} and out edge {e_out} share a vertex")
        ins.append(e_in)
        outs.append(e_out)

    offsets = []
    union = Graph(0, ())
    for block in blocks:
        offsets.append(union.n)
        union = disjoint_union(union, block.graph)
    removed: List[Edge] = []
    added: List[Edge] = []
    for i in range(len(blocks) - 1):
        u, x = (w + offsets[i] for w in outs[i])
        v, y = (w + offsets[i + 1] for w in ins[i + 1])
        removed += [(min(u, x), max(u, x)), (min(v, y), max(v, y))]
        added += [(u, v), (x, y)]
    labels: Dict[str, int] = {}
    if len(blocks) == 2:
        labels.update(u=added[0][0], x=added[1][0], v=added[0][1], y=added[1][1])
    summed = with_edges(union, add=added, remove=removed)
    parts = {f"H{i}": tuple(range(offsets[i], offsets[i] + b.graph.n)) for i, b in enumerate(blocks)}
    return TaggedGraph(summed, parts, labels, tuple(removed))


def _lowest_edge_avoiding(g: Graph, avoid: Sequence[int] = ()) -> Edge:
    blocked = set(avoid)
    for u, v in g.edges():
        if u not in blocked and v not in blocked:
            return (u, v)
    raise GraphError(f"no edge of {g!r} avoids vertices {sorted(blocked)}")


def k_fold_direct_sum(
    g: Graph, k: int, in_edge: Optional[Edge] = None, out_edge: Optional[Edge] = None
) -> TaggedGraph:
    """``k`` copies of ``g`` chained by direct sums (lowest independent edges by default)."""
    if k < 1:
        raise GraphError(f"need at least one copy, got {k}")
    if k == 1:
        return direct_sum_chain([ChainBlock(g)])
    in_edge = in_edge or _lowest_edge_avoiding(g)
    out_edge = out_edge or _lowest_edge_avoiding(g, in_edge if k > 2 else ())
    blocks = [
        ChainBlock(g, in_edge=in_edge if i > 0 else None, out_edge=out_edge if i < k - 1 else None)
        for i in range(k)
    ]
    return direct_sum_chain(blocks)


def _subsets_by_removal(start: Sequence[int], removal: Sequence[int]) -> Dict[int, Subset]:
    """The start set and what remains after each successive removal, keyed by size."""
    remaining = list(start)
    subsets = {len(remaining): tuple(sorted(remaining))}
    for v in removal:
        remaining.remove(v)
        subsets[len(remaining)] = tuple(sorted(remaining))
    return subsets


def _two_part_peel(first: Sequence[int], second: Sequence[int], ties_to_second: bool, keep: int = 1) -> List[int]:
    """Removal order that always takes from the larger part, lowest id first, until ``keep`` remain."""
    a, b = sorted(first), sorted(second)
    order = []
    while len(a) + len(b) > keep:
        take_second = len(b) > len(a) or (len(b) == len(a) and ties_to_second)
        order.append((b if take_second else a).pop(0))
    return order


def _case_a(n: int, r: int) -> Tuple[TaggedGraph, Dict[int, Subset]]:
    tagged = join(circulant(r, 2 * r - n), empty_graph(n - r), names=("circulant", "independent"))
    circ, indep = tagged.parts["circulant"], tagged.parts["independent"]
    removal = _two_part_peel(circ, indep, ties_to_second=True)
    return tagged, _subsets_by_removal(range(n), removal)


def _case_b(r: int) -> Tuple[TaggedGraph, Dict[int, Subset]]:
    h = r // 2
    left, right, x = list(range(r)), list(range(r, 2 * r)), 2 * r
    matching = [(left[i], right[i]) for i in range(h)]
    base = with_edges(disjoint_union(complete_bipartite(r, r), empty_graph(1)), remove=matching)
    g = with_edges(base, add=[(x, v) for v in left[:h] + right[:h]])
    tagged = TaggedGraph(
        g,
        {"left": tuple(left), "right": tuple(right), "external": (x,)},
        {"x": x},
        tuple(matching),
    )
    # shrink N(x) to one vertex per side, then drop the first unmatched pair
    removal = left[1:h] + right[1:h] + [left[h], right[h]]
    subsets = _subsets_by_removal(range(2 * r + 1), removal)
    inner = _two_part_peel(left[h:], right[h:], ties_to_second=False)
    subsets.update(_subsets_by_removal(left[h:] + right[h:], inner))
    return tagged, subsets


def _blocks_for_case_c(n: int, r: int) -> Tuple[List[ChainBlock], int, int]:
    q, t = divmod(n, r + 1)
    p, s = q - 1, t + r + 1
    if s == 2 * r + 1:
        head, _ = _case_b(r)
        # both endpoints have degree r in the underlying bipartite graph
        out = (r // 2, r + r // 2)
    else:
        head, _ = _case_a(s, r)
        out = (0, r)
    blocks = [ChainBlock(head.graph, out_edge=out)]
    clique = complete_graph(r + 1)
    for j in range(1, p + 1):
        blocks.append(ChainBlock(clique, in_edge=(0, 1), out_edge=(2, 3) if j < p else None))
    return blocks, p, s


def _head_residue_removal(head: Graph, s: int, r: int) -> List[int]:
    """Removal order inside the head block leaving four vertices that keep every chain distance."""
    if s == 2 * r + 1:
        h = r // 2
        left, right, x = list(range(r)), list(range(r, 2 * r)), 2 * r
        return (
            left[h + 2:] + right[h + 2:]
            + left[1:h] + [right[0]] + right[2:h]
            + [x, right[1], left[0]]
        )
    circ, indep = list(range(r)), list(range(r, s))
    u, x = 0, r
    circ_neighbours = [w for w in iter_bits(head.adj[u]) if w < r]
    c_star = circ_neighbours[0] if circ_neighbours else circ[1]
    keepers = {u, x, c_star}
    extra = [v for v in indep if v != x]
    if extra:
        keepers.add(extra[0])
    return _two_part_peel_keeping(circ, indep, keepers, keep=4)


def _two_part_peel_keeping(first: Sequence[int], second: Sequence[int], keepers: set, keep: int) -> List[int]:
    """Like ``_two_part_peel`` (ties to ``second``) but never removes a keeper."""
    a, b = list(first), list(second)
    order = []
    while len(a) + len(b) > keep:
        free_a = [v for v in a if v not in keepers]
        free_b = [v for v in b if v not in keepers]
        take_second = bool(free_b) and (len(b) >= len(a) or not free_a)
        victim = free_b[0] if take_second else free_a[0]
        (b if take_second else a).remove(victim)
        order.append(victim)
    return order


def _case_c(n: int, r: int) -> Tuple[TaggedGraph, Dict[int, Subset]]:
    blocks, p, s = _blocks_for_case_c(n, r)
    chained = direct_sum_chain(blocks)
    offsets = [0, s] + [s + j * (r + 1) for j in range(1, p)]
    u, x = blocks[0].out_edge
    labels = {"u": u, "x": x, "v": s, "y": s + 1}
    if p > 1:
        labels.update(w=offsets[p], z=offsets[p] + 1)
    tagged = TaggedGraph(chained.graph, chained.parts, labels, chained.removed_edges)

    everything = list(range(n))
    rest = everything[s:]
    subsets = _subsets_by_removal(everything, _head_residue_removal(blocks[0].graph, s, r))
    residue = sorted(subsets[n - s + 4][:4])
    last = offsets[p]
    subsets[n - s + 3] = tuple(sorted(residue + [v for v in rest if v != last + 2]))
    subsets[n - s + 2] = tuple(sorted(residue + [v for v in rest if v not in (last + 2, last + 3)]))
    subsets[n - s + 1] = tuple([u] + rest)
    subsets[n - s] = tuple(rest)

    for j in range(1, p):
        base = offsets[j]
        later = list(range(base + r + 1, n))
        a, c, anchor = base + 2, base + 3, base + r
        inner = [base, base + 1] + list(range(base + 4, base + r))
        subsets.update(_subsets_by_removal(list(range(base, n)), inner))
        subsets[len(later) + 2] = tuple([a, c, anchor] + [v for v in later if v != last + 2])
        subsets[len(later) + 1] = tuple([a] + later)
        subsets[len(later)] = tuple(later)
    subsets.update(_subsets_by_removal(list(range(last, n)), list(range(last, last + r))))
    return tagged, subsets


def ladder(k: int) -> TaggedGraph:
    """The cubic ladder on u_1..u_k (ids 0..k-1) and v_1..v_k (ids k..2k-1), k >= 4."""
    if k < 4:
        raise GraphError(f"the cubic ladder needs k >= 4, got {k}")
    us = list(range(k))
    vs = list(range(k, 2 * k))
    edges = [(us[i], us[i + 1]) for i in range(k - 1)] + [(vs[i], vs[i + 1]) for i in range(k - 1)]
    edges += [(us[j - 1], vs[j - 1]) for j in range(1, k + 1) if j not in (2, k - 1)]
    edges += [(us[0], vs[1]), (us[1], vs[0]), (us[k - 2], vs[k - 1]), (us[k - 1], vs[k - 2])]
    labels = {f"u{j}": us[j - 1] for j in range(1, k + 1)}
    labels.update({f"v{j}": vs[j - 1] for j in range(1, k + 1)})
    return TaggedGraph(Graph.from_edges(2 * k, edges), {"u": tuple(us), "v": tuple(vs)}, labels)


def _case_d(n: int) -> Tuple[TaggedGraph, Dict[int, Subset]]:
    k = n // 2
    tagged = ladder(k)

    def u(j):
        return j - 1

    def v(j):
        return k + j - 1

    removal_sets = [
        {u(1)},
        {u(1), u(k)},
        {u(1), v(1), u(2)},
        {u(1), v(1), u(2), u(k)},
        {u(1), v(1), u(2), v(2), u(k)},
    ]
    if k == 4:
        removal_sets.append(removal_sets[-1] | {v(3)})
        removal_sets.append(removal_sets[-1] | {u(3)})
    else:
        removed = {u(1), v(1), u(2), v(k - 1), u(k), v(k)}
        removal_sets.append(set(removed))
        tail = [v(2)]
        for j in range(3, k - 2):
            tail += [u(j), v(j)]
        tail += [v(k - 2), u(k - 2)]
        for vertex in tail:
            removed.add(vertex)
            removal_sets.append(set(removed))
    return tagged, DpCertificate.from_removals(n, removal_sets).per_order


def _small_cubic(n: int) -> Tuple[TaggedGraph, Dict[int, Subset]]:
    g = complete_graph(4) if n == 4 else circulant(6, 3)
    report = is_dp_bruteforce(g)
    if not report.is_dp:
        raise CertificateError(f"substitute cubic graph on {n} vertices failed the dp check")
    return TaggedGraph(g, {"all": tuple(range(n))}), dict(report.witnesses)


def build_regular_dp(n: int, r: int) -> Tuple[TaggedGraph, DpCertificate]:
    """A connected r-regular dp graph on n vertices and a certificate that has been verified."""
    pair = AdmissiblePair(n, r)
    case = pair.case
    logger.debug("building (n=%d, r=%d) via case %s", n, r, case)
    if case == "A":
        tagged, subsets = _case_a(n, r)
    elif case == "B":
        tagged, subsets = _case_b(r)
    elif case == "C":
        tagged, subsets = _case_c(n, r)
    elif case == "D":
        tagged, subsets = _case_d(n)
    else:
        tagged, subsets = _small_cubic(n)
    cert = DpCertificate.from_subsets(n, subsets)
    g = tagged.graph
    if set(g.degrees()) != {r} or not is_connected(g):
        raise GraphError(f"case {case} produced a graph that is not connected {r}-regular")
    verdict = verify_certificate(g, cert)
    if not verdict:
        raise CertificateError(f"case {case} certificate fails at order {verdict.first_failing_order} for (n={n}, r={r})")
    return tagged, cert
