"""
Havel-Hakimi realisation of degree sequences.

The classic loop re-sorts the residual sequence after every step. The
modified loop never re-sorts: every entry keeps its position, and one that
reaches zero stays in place until it reaches the front. The run fails as
soon as the front entry asks for more neighbours than remain or one of its
targets is already exhausted. When it succeeds on a connected graph, the prefix
v_1..v_i induces an isometric subgraph for every i, which is what
``hh_dp_certificate`` records.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import dropwhile
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import CertificateError, GraphError
from .graph import Graph, is_connected
from .isometry import DpCertificate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DegreeSequence:
    """A weakly decreasing sequence of nonnegative integers."""

    d: Tuple[int, ...]

    def __post_init__(self):
        if any(x < 0 for x in self.d):
            raise GraphError(f"degrees must be nonnegative: {self.d}")
        if any(a < b for a, b in zip(self.d, self.d[1:])):
            raise GraphError(f"degree sequence must be weakly decreasing: {self.d}")

    @classmethod
    def parse(cls, text: str) -> "DegreeSequence":
        """Read ``"3,2,2,2,1"`` (commas and/or whitespace)."""
        tokens = text.replace(",", " ").split()
        if not tokens:
            raise GraphError("empty degree sequence")
        try:
            return cls(tuple(int(token) for token in tokens))
        except ValueError as exc:
            raise GraphError(f"degree sequence must contain integers: {text!r}") from exc

    @property
    def n(self) -> int:
        return len(self.d)

    def __iter__(self):
        return iter(self.d)

    def __len__(self) -> int:
        return len(self.d)

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.d) + ")"


class HHStatus(Enum):
    SUCCESS = "success"
    FAILURE = "failure"


@dataclass(frozen=True)
class HHOutcome:
    """Result of one Havel-Hakimi run.

    ``labeling[i]`` is the vertex realising the i-th entry of the input; the
    graph is only present on success and ``residual`` only on failure.
    """

    status: HHStatus
    sequence: DegreeSequence
    graph: Optional[Graph] = None
    labeling: Tuple[int, ...] = ()
    residual: Tuple[int, ...] = ()
    iterations: int = 0

    @property
    def success(self) -> bool:
        return self.status is HHStatus.SUCCESS


def _as_sequence(d) -> DegreeSequence:
    return d if isinstance(d, DegreeSequence) else DegreeSequence(tuple(d))


def erdos_gallai_graphical(d) -> bool:
    """Erdos-Gallai test on a weakly decreasing sequence."""
    seq = _as_sequence(d).d
    if sum(seq) % 2:
        return False
    n = len(seq)
    prefix = 0
    for k in range(1, n + 1):
        prefix += seq[k - 1]
        if prefix > k * (k - 1) + sum(min(x, k) for x in seq[k:]):
            return False
    return True


def _realise(seq: DegreeSequence, resort: bool) -> HHOutcome:
    rows = [0] * seq.n
    iterations = 0
    # (vertex, remaining degree); input zeros never enter
    pending = [(v, x) for v, x in enumerate(seq.d) if x > 0]
    while pending:
        if resort:
            pending.sort(key=lambda item: -item[1])
        head, need = pending[0]
        rest = pending[1:]
        if need > len(rest) or any(x == 0 for _, x in rest[:need]):
            logger.debug("%s stuck after %d iterations at %s", seq, iterations, [x for _, x in pending])
            return HHOutcome(HHStatus.FAILURE, seq, residual=tuple(x for _, x in pending), iterations=iterations)
        for index in range(need):
            v, x = rest[index]
            rows[head] |= 1 << v
            rows[v] |= 1 << head
            rest[index] = (v, x - 1)
        if resort:
            pending = [(v, x) for v, x in rest if x > 0]
        else:
            # exhausted entries keep their place; only leading ones go
            pending = list(dropwhile(lambda item: item[1] == 0, rest))
        iterations += 1
    return HHOutcome(HHStatus.SUCCESS, seq, Graph(seq.n, tuple(rows)), tuple(range(seq.n)), (), iterations)


def classic_hh(d) -> HHOutcome:
    """The textbook loop: connect the largest entry to the next ones, then re-sort."""
    return _realise(_as_sequence(d), resort=True)


def modified_hh(d) -> HHOutcome:
    """The loop without re-sorting; vertex v_i keeps the i-th position throughout."""
    return _realise(_as_sequence(d), resort=False)


def hh_dp_certificate(outcome: HHOutcome) -> DpCertificate:
    """Prefix certificate ``{v_1..v_i}`` for every order i."""
    if not outcome.success:
        raise CertificateError(f"no certificate for a failed run on {outcome.sequence}")
    if not is_connected(outcome.graph):
        raise CertificateError(f"the realisation of {outcome.sequence} is disconnected")
    return DpCertificate.from_chain(outcome.labeling)


def _decreasing(n: int, ceiling: int, prefix: List[int]) -> Iterator[Tuple[int, ...]]:
    if len(prefix) == n:
        yield tuple(prefix)
        return
    for x in range(ceiling, 0, -1):
        prefix.append(x)
        yield from _decreasing(n, x, prefix)
        prefix.pop()


def enumerate_graphical_sequences(n: int, head: Optional[int] = None) -> Iterator[DegreeSequence]:
    """Graphical sequences of length ``n`` with entries in 1..n-1, lexicographically decreasing.

    ``head`` restricts the stream to sequences starting with that entry.
    """
    if n < 1:
        raise GraphError(f"sequence length must be positive, got {n}")
    heads = [head] if head is not None else range(n - 1, 0, -1)
    for first in heads:
        for seq in _decreasing(n, first, [first]) if n > 1 else ():
            if erdos_gallai_graphical(seq):
                yield DegreeSequence(seq)


def read_sequences(lines: Sequence[str]) -> List[DegreeSequence]:
    """One comma-separated sequence per line; blank lines and ``#`` comments are skipped."""
    found = []
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if line:
            found.append(DegreeSequence.parse(line))
    return found
