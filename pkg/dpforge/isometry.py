"""
Isometric subgraphs and distance-preservation checks.

Only induced subgraphs are searched. If H is an isometric subgraph of G
with vertex set S then d_G <= d_G[S] <= d_H = d_G on S, so G[S] is
isometric as well; the restriction loses nothing.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ValidationError

from .errors import CertificateError, FormatError, GraphError
from .graph import Graph, bfs_distances, distance_matrix, is_connected, is_connected_mask, iter_bits, mask_of

logger = logging.getLogger(__name__)

Subset = Tuple[int, ...]


@dataclass(frozen=True)
class DpCertificate:
    """One vertex subset per order k = 1..n, each claimed to induce an isometric subgraph.

    Subsets need not be nested.
    """

    n: int
    per_order: Mapping[int, Subset] = field(default_factory=dict)

    @classmethod
    def from_subsets(cls, n: int, subsets: Mapping[int, Iterable[int]]) -> "DpCertificate":
        return cls(n, {int(k): tuple(sorted(s)) for k, s in sorted(subsets.items())})

    @classmethod
    def from_removals(cls, n: int, removals: Sequence[Iterable[int]]) -> "DpCertificate":
        """Build from removal sets: ``removals[i]`` is the set deleted to reach order n-1-i."""
        everything = set(range(n))
        subsets = {n: everything}
        for removed in removals:
            remaining = everything - set(removed)
            subsets[len(remaining)] = remaining
        return cls.from_subsets(n, subsets)

    @classmethod
    def from_chain(cls, order: Sequence[int]) -> "DpCertificate":
        """Prefix certificate: order k keeps the first k vertices of ``order``."""
        return cls.from_subsets(len(order), {k: order[:k] for k in range(1, len(order) + 1)})

    def check_structure(self) -> None:
        for k in range(1, self.n + 1):
            if k not in self.per_order:
                raise CertificateError(f"certificate has no subset for order {k}")
            subset = self.per_order[k]
            if len(set(subset)) != k:
                raise CertificateError(f"order {k} subset has {len(set(subset))} distinct vertices")
            for v in subset:
                if not 0 <= v < self.n:
                    raise CertificateError(f"order {k} subset names vertex {v} outside 0..{self.n - 1}")
        extra = set(self.per_order) - set(range(1, self.n + 1))
        if extra:
            raise CertificateError(f"certificate has orders outside 1..{self.n}: {sorted(extra)}")

    def is_nested(self) -> bool:
        return all(set(self.per_order[k]) <= set(self.per_order[k + 1]) for k in range(1, self.n))


@dataclass(frozen=True)
class DpReport:
    """Outcome of a brute-force search: a witness (or ``None``) for every order."""

    n: int
    witnesses: Mapping[int, Optional[Subset]]
    first_failing_order: Optional[int] = None

    @property
    def is_dp(self) -> bool:
        return all(w is not None for w in self.witnesses.values())

    def to_certificate(self) -> DpCertificate:
        if not self.is_dp:
            raise CertificateError(f"graph is not dp: order {self.first_failing_order} has no witness")
        return DpCertificate.from_subsets(self.n, self.witnesses)


@dataclass(frozen=True)
class CertificateVerdict:
    valid: bool
    first_failing_order: Optional[int] = None

    def __bool__(self) -> bool:
        return self.valid


class IsometryChecker:
    """Caches the host distances so many subsets of one graph can be tested cheaply."""

    def __init__(self, g: Graph):
        self.g = g
        self.distances = distance_matrix(g)

    def check_mask(self, mask: int) -> bool:
        adj = self.g.adj
        for u in iter_bits(mask):
            found = bfs_distances(adj, u, mask)
            row = self.distances.d[u]
            for v in iter_bits(mask):
                if found.get(v) != row[v]:
                    return False
        return True

    def check(self, s: Iterable[int]) -> bool:
        return self.check_mask(_subset_mask(self.g, s))


def _subset_mask(g: Graph, s: Iterable[int]) -> int:
    vertices = list(s)
    if not vertices:
        raise GraphError("subset must be nonempty")
    for v in vertices:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    return mask_of(vertices)


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise GraphError("distance preservation is only defined for connected graphs")


def is_isometric(g: Graph, s: Iterable[int]) -> bool:
    """True iff the subgraph induced by ``s`` preserves every pairwise distance of ``g``."""
    _require_connected(g)
    return IsometryChecker(g).check(s)


def _lemma_condition_mask(adj: Sequence[int], within: int, v: int) -> bool:
    neighbors = adj[v] & within
    others = within & ~(1 << v)
    for x in iter_bits(neighbors):
        # nonadjacent neighbours of v after x
        for y in iter_bits(neighbors & ~adj[x] & ~((2 << x) - 1)):
            if not adj[x] & adj[y] & others:
                return False
    return True


def lemma_condition_holds(g: Graph, v: int) -> bool:
    """Every two nonadjacent neighbours of ``v`` share a neighbour other than ``v``."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")
    return _lemma_condition_mask(g.adj, g.vertex_mask, v)


def is_dp_bruteforce(g: Graph, stop_at_first_failure: bool = False) -> DpReport:
    """Search every order from n down to 1 for an isometric induced subgraph.

    Subsets are tried in lexicographic order, so each recorded witness is the
    lexicographically first one. With ``stop_at_first_failure`` the search
    ends at the first order without a witness and lower orders are omitted.
    """
    _require_connected(g)
    checker = IsometryChecker(g)
    witnesses: Dict[int, Optional[Subset]] = {}
    first_failing: Optional[int] = None
    for k in range(g.n, 0, -1):
        witness = None
        for subset in combinations(range(g.n), k):
            mask = mask_of(subset)
            if k > 1 and not is_connected_mask(g.adj, mask):
                continue
            if checker.check_mask(mask):
                witness = subset
                break
        witnesses[k] = witness
        if witness is None:
            logger.debug("no isometric subgraph of order %d in %r", k, g)
            if first_failing is None:
                first_failing = k
            if stop_at_first_failure:
                break
    return DpReport(g.n, witnesses, first_failing)


def verify_certificate(g: Graph, cert: DpCertificate) -> CertificateVerdict:
    """Check every order of ``cert`` against ``g``, largest order first."""
    if cert.n != g.n:
        raise CertificateError(f"certificate is for n={cert.n}, graph has n={g.n}")
    _require_connected(g)
    cert.check_structure()
    checker = IsometryChecker(g)
    for k in range(g.n, 0, -1):
        if not checker.check(cert.per_order[k]):
            logger.debug("certificate subset of order %d is not isometric", k)
            return CertificateVerdict(False, k)
    return CertificateVerdict(True)


def isometric_peeling(g: Graph) -> Tuple[int, ...]:
    """Greedy common-neighbour peeling.

    Repeatedly deletes the lowest vertex whose neighbourhood satisfies the
    common-neighbour condition in the current subgraph and whose removal
    keeps it connected. Each prefix of the returned removal order leaves an
    isometric subgraph; if it has n-1 entries it certifies every order.
    """
    if not is_connected(g):
        raise GraphError("peeling needs a connected graph")
    within = g.vertex_mask
    removed: List[int] = []
    while bin(within).count("1") > 1:
        for v in iter_bits(within):
            rest = within & ~(1 << v)
            if _lemma_condition_mask(g.adj, within, v) and is_connected_mask(g.adj, rest):
                removed.append(v)
                within = rest
                break
        else:
            break
    return tuple(removed)


def peeling_certificate(g: Graph, removed: Sequence[int]) -> Dict[int, Subset]:
    """Subsets certified by a peeling order (possibly fewer than n orders)."""
    remaining = list(range(g.n))
    subsets = {g.n: tuple(remaining)}
    for v in removed:
        remaining.remove(v)
        subsets[len(remaining)] = tuple(remaining)
    return subsets


class CertificateDocument(BaseModel):
    schema_version: int = 1
    n: int
    per_order: Dict[int, List[int]]


def format_certificate(cert: DpCertificate) -> str:
    """Plain-text form: one ``k: v1 v2 ... vk`` line per order, ascending."""
    return "".join(f"{k}: {' '.join(str(v) for v in cert.per_order[k])}\n" for k in sorted(cert.per_order))


def certificate_to_json(cert: DpCertificate) -> str:
    document = CertificateDocument(n=cert.n, per_order={k: list(s) for k, s in cert.per_order.items()})
    return json.dumps(document.model_dump(), indent=2, sort_keys=True) + "\n"


def parse_certificate(text: str) -> DpCertificate:
    """Parse either the line format or the JSON document."""
    if text.lstrip().startswith("{"):
        try:
            document = CertificateDocument.model_validate_json(text)
        except ValidationError as exc:
            raise FormatError(f"malformed certificate JSON: {exc}") from exc
        return DpCertificate.from_subsets(document.n, document.per_order)
    subsets: Dict[int, List[int]] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, tail = line.partition(":")
        if not sep:
            raise FormatError(f"certificate line {number} lacks 'k:' prefix")
        try:
            k = int(head)
            subsets[k] = [int(token) for token in tail.split()]
        except ValueError as exc:
            raise FormatError(f"certificate line {number}: {exc}") from exc
    if not subsets:
        raise FormatError("certificate is empty")
    return DpCertificate.from_subsets(max(subsets), subsets)


def read_certificate(path: Union[str, Path]) -> DpCertificate:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read certificate {path}: {exc}") from exc
    return parse_certificate(text)


def write_certificate(cert: DpCertificate, path: Union[str, Path]) -> None:
    path = Path(path)
    text = certificate_to_json(cert) if path.suffix.lower() == ".json" else format_certificate(cert)
    path.write_text(text, encoding="utf-8")
