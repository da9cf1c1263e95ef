"""
Interchange formats: graph6 (short form), a plain edge list and DOT.

graph6 is bit-exact with the format used by nauty and networkx: a size
byte n+63 followed by the upper triangle of the adjacency matrix in
column order (for j = 1..n-1, rows i = 0..j-1), six bits per byte,
big-endian, each byte offset by 63 and the last one zero-padded.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, List, Optional, Union

from .errors import FormatError
from .graph import Graph

GRAPH6_MAX_N = 62
GRAPH6_HEADER = b">>graph6<<"

FORMATS = ("graph6", "edges", "dot")
EXTENSIONS = {".g6": "graph6", ".graph6": "graph6", ".edges": "edges", ".txt": "edges", ".dot": "dot"}


def _upper_triangle_bits(g: Graph) -> List[int]:
    return [g.adj[i] >> j & 1 for j in range(1, g.n) for i in range(j)]


def encode_graph6(g: Graph) -> bytes:
    if g.n > GRAPH6_MAX_N:
        raise FormatError(f"graph6 short form holds at most {GRAPH6_MAX_N} vertices, got {g.n}")
    bits = _upper_triangle_bits(g)
    bits += [0] * (-len(bits) % 6)
    out = bytearray([g.n + 63])
    for start in range(0, len(bits), 6):
        value = 0
        for bit in bits[start:start + 6]:
            value = value << 1 | bit
        out.append(value + 63)
    return bytes(out)


def decode_graph6(data: Union[bytes, str]) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    if not data:
        raise FormatError("empty graph6 string")
    for position, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise FormatError(f"byte {byte} at position {position} is outside 63..126")
    n = data[0] - 63
    if n > GRAPH6_MAX_N:
        raise FormatError("graph6 long size headers (n > 62) are not supported")
    pairs = n * (n - 1) // 2
    expected = 1 + (pairs + 5) // 6
    if len(data) != expected:
        raise FormatError(f"graph6 for n={n} needs {expected} bytes, got {len(data)}")
    bits = []
    for byte in data[1:]:
        value = byte - 63
        bits.extend(value >> shift & 1 for shift in range(5, -1, -1))
    if any(bits[pairs:]):
        raise FormatError("nonzero padding bits in graph6 data")
    rows = [0] * n
    position = 0
    for j in range(1, n):
        for i in range(j):
            if bits[position]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            position += 1
    return Graph(n, tuple(rows))


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse an ``n m`` header followed by ``u v`` lines; ``#`` starts a comment."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise FormatError("edge list is empty")
    try:
        header = [int(token) for token in rows[0]]
        pairs = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise FormatError(f"edge list must contain integer pairs: {exc}") from exc
    if len(header) != 2:
        raise FormatError("edge list header must be 'n m'")
    n, m = header
    if len(pairs) != m:
        raise FormatError(f"edge list header announces {m} edges, found {len(pairs)}")
    try:
        return Graph.from_edges(n, pairs)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def format_dot(g: Graph, name: str = "G", groups: Optional[dict] = None) -> str:
    """DOT text for visualisation; ``groups`` (name -> vertex ids) become labelled clusters."""
    lines = [f"graph {name} {{"]
    if groups:
        for index, (label, members) in enumerate(groups.items()):
            lines.append(f"  subgraph cluster_{index} {{")
            lines.append(f'    label="{label}";')
            lines.append("    " + " ".join(f"{v};" for v in members))
            lines.append("  }")
    else:
        lines.extend(f"  {v};" for v in range(g.n))
    lines.extend(f"  {u} -- {v};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_graph(g: Graph, fmt: str, groups: Optional[dict] = None) -> str:
    if fmt == "graph6":
        return encode_graph6(g).decode("ascii") + "\n"
    if fmt == "edges":
        return format_edge_list(g)
    if fmt == "dot":
        return format_dot(g, groups=groups)
    raise FormatError(f"unknown output format {fmt!r}; choose from {', '.join(FORMATS)}")


def detect_format(path: Union[str, Path]) -> str:
    suffix = Path(path).suffix.lower()
    if suffix not in EXTENSIONS or EXTENSIONS[suffix] == "dot":
        raise FormatError(f"cannot infer a readable graph format from {str(path)!r}; pass --input-format")
    return EXTENSIONS[suffix]


def parse_graph(text: str, fmt: str) -> Graph:
    if fmt == "graph6":
        graphs = read_graph6_lines(text.splitlines())
        if len(graphs) != 1:
            raise FormatError(f"expected exactly one graph6 line, found {len(graphs)}")
        return graphs[0]
    if fmt == "edges":
        return parse_edge_list(text)
    raise FormatError(f"{fmt!r} is not a readable graph format")


def read_graph(path: Union[str, Path], fmt: Optional[str] = None) -> Graph:
    fmt = fmt or detect_format(path)
    try:
        text = Path(path).read_text(encoding="ascii")
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    return parse_graph(text, fmt)


def read_graph6_lines(lines: Iterable[str]) -> List[Graph]:
    return [decode_graph6(line) for line in lines if line.strip()]
