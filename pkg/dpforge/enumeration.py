"""
Isomorphism-free generation of regular graphs and the two surveys built on it.

Regular graphs of degree r <= (n-1)/2 are grown one vertex at a time:
each round saturates an open vertex in every possible way, and partial
graphs are deduplicated by their canonical form with the residual degrees
as vertex colours. Higher degrees come from complements, which are always
connected at those degrees.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from multiprocessing import Pool
from pathlib import Path
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, TypeVar

from .canonical import canonical_form, canonical_graph, colored_canonical_form
from .formats import encode_graph6
from .errors import GraphError
from .graph import Graph, complement, empty_graph, is_connected, iter_bits, relabel
from .havel_hakimi import enumerate_graphical_sequences, modified_hh
from .isometry import is_dp_bruteforce

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

State = Tuple[Tuple[int, ...], Tuple[int, ...]]


@dataclass(frozen=True)
class SurveyRow:
    """One table row: how many objects there were and how many passed."""

    n: int
    total: int
    successes: int
    extras: Dict[str, object] = field(default_factory=dict)

    @property
    def percentage(self) -> float:
        return round(100.0 * self.successes / self.total, 3) if self.total else 0.0

    def to_dict(self) -> Dict[str, object]:
        row = {"n": self.n, "total": self.total, "successes": self.successes, "percentage": self.percentage}
        row.update(self.extras)
        return row


def _candidates(adj: Sequence[int], residual: Sequence[int], v: int) -> int:
    """Open vertices that ``v`` could still be joined to."""
    mask = 0
    for w, need in enumerate(residual):
        if need and w != v and not adj[v] >> w & 1:
            mask |= 1 << w
    return mask


def _feasible(adj: Sequence[int], residual: Sequence[int]) -> bool:
    if sum(residual) % 2:
        return False
    return all(
        bin(_candidates(adj, residual, v)).count("1") >= need for v, need in enumerate(residual) if need
    )


def _canonical_state(adj: Tuple[int, ...], residual: Tuple[int, ...]) -> Tuple[bytes, State]:
    g = Graph(len(adj), adj)
    key, perm = colored_canonical_form(g, residual)
    moved = [0] * len(residual)
    for v, need in enumerate(residual):
        moved[perm[v]] = need
    return key, (relabel(g, perm).adj, tuple(moved))


def _children(state: State) -> Iterator[State]:
    adj, residual = state
    best = None
    for v, need in enumerate(residual):
        if need:
            choices = comb(bin(_candidates(adj, residual, v)).count("1"), need)
            if best is None or choices < best[0]:
                best = (choices, v)
    v = best[1]
    need = residual[v]
    for chosen in combinations(iter_bits(_candidates(adj, residual, v)), need):
        rows = list(adj)
        left = list(residual)
        left[v] = 0
        for w in chosen:
            rows[v] |= 1 << w
            rows[w] |= 1 << v
            left[w] -= 1
        yield tuple(rows), tuple(left)


def generate_regular(n: int, r: int) -> List[Graph]:
    """Every r-regular graph on n vertices up to isomorphism, connected or not, in canonical form order."""
    if not 0 <= r < max(n, 1) or n * r % 2:
        return []
    if r == 0:
        return [empty_graph(n)]
    frontier: Dict[bytes, State] = {}
    key, state = _canonical_state((0,) * n, (r,) * n)
    frontier[key] = state
    finished: Dict[bytes, Graph] = {}
    rounds = 0
    while frontier:
        rounds += 1
        following: Dict[bytes, State] = {}
        for state in frontier.values():
            for adj, residual in _children(state):
                if not any(residual):
                    g = Graph(n, adj)
                    finished.setdefault(canonical_form(g), g)
                    continue
                if not _feasible(adj, residual):
                    continue
                key, child = _canonical_state(adj, residual)
                following.setdefault(key, child)
        logger.debug("n=%d r=%d round %d: %d partial graphs", n, r, rounds, len(following))
        frontier = following
    return [canonical_graph(finished[key]) for key in sorted(finished)]


def enumerate_regular_by_degree(n: int) -> Dict[int, List[Graph]]:
    """Connected regular graphs on n vertices grouped by degree."""
    if n < 1:
        raise GraphError(f"order must be positive, got {n}")
    found: Dict[int, List[Graph]] = {}
    for r in range(0, (n - 1) // 2 + 1):
        if n * r % 2:
            continue
        graphs = generate_regular(n, r)
        found.setdefault(r, []).extend(g for g in graphs if is_connected(g))
        partner = n - 1 - r
        if partner != r:
            found.setdefault(partner, []).extend(canonical_graph(complement(g)) for g in graphs)
    return {
        r: sorted(graphs, key=canonical_form)
        for r, graphs in sorted(found.items())
        if graphs
    }


def enumerate_connected_regular(n: int) -> Iterator[Graph]:
    """One graph per isomorphism class of connected regular graphs on n vertices, sorted by canonical form."""
    graphs = [g for group in enumerate_regular_by_degree(n).values() for g in group]
    yield from sorted(graphs, key=canonical_form)


def parallel_map(func: Callable[[T], R], items: Iterable[T], jobs: int = 1, chunksize: int = 8) -> List[R]:
    """Order-preserving map, spread over a process pool when ``jobs`` > 1."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [func(item) for item in items]
    with Pool(processes=min(jobs, len(items))) as pool:
        return list(pool.imap(func, items, chunksize=chunksize))


def _dp_flag(g: Graph) -> bool:
    return is_dp_bruteforce(g, stop_at_first_failure=True).is_dp


def survey_regular_dp(n: int, jobs: int = 1, groups: Optional[Dict[int, List[Graph]]] = None) -> SurveyRow:
    """Count connected regular graphs on n vertices and how many of them are dp."""
    groups = groups if groups is not None else enumerate_regular_by_degree(n)
    ordered = [(r, g) for r, group in groups.items() for g in group]
    flags = parallel_map(_dp_flag, [g for _, g in ordered], jobs)
    by_degree: Dict[str, Dict[str, int]] = {}
    for (r, _), flag in zip(ordered, flags):
        entry = by_degree.setdefault(str(r), {"total": 0, "successes": 0})
        entry["total"] += 1
        entry["successes"] += int(flag)
    row = SurveyRow(n, len(ordered), sum(flags), {"by_degree": by_degree})
    logger.debug("regular survey n=%d: %d/%d dp", n, row.successes, row.total)
    return row


def _hh_counts(task: Tuple[int, int]) -> Tuple[int, int, int]:
    n, head = task
    total = successes = connected = 0
    for seq in enumerate_graphical_sequences(n, head):
        total += 1
        outcome = modified_hh(seq)
        if outcome.success:
            successes += 1
            connected += is_connected(outcome.graph)
    return total, successes, connected


def survey_modified_hh(n: int, jobs: int = 1) -> SurveyRow:
    """Count graphical positive sequences of length n and the modified Havel-Hakimi successes."""
    tasks = [(n, head) for head in range(n - 1, 0, -1)]
    counts = parallel_map(_hh_counts, tasks, jobs, chunksize=1)
    total = sum(c[0] for c in counts)
    successes = sum(c[1] for c in counts)
    connected = sum(c[2] for c in counts)
    logger.debug("modified HH survey n=%d: %d/%d succeed", n, successes, total)
    return SurveyRow(n, total, successes, {"connected_successes": connected})


def dump_graphs(n: int, directory: Path, groups: Optional[Dict[int, List[Graph]]] = None) -> List[Path]:
    """Write one graph6 file per isomorphism class as ``n{n}_r{r}_{index:05d}.g6``."""
    groups = groups if groups is not None else enumerate_regular_by_degree(n)
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for r, graphs in groups.items():
        for index, g in enumerate(graphs):
            path = directory / f"n{n}_r{r}_{index:05d}.g6"
            path.write_bytes(encode_graph6(g) + b"\n")
            written.append(path)
    return written
