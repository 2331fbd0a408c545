"""Edge-list and graph6 text formats.

Edge list: a header line ``n m`` followed by ``m`` lines ``u v`` (0-based).
A stream holds several edge lists separated by blank lines.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .graph import Graph


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _ints(text: str, lineno: int, count: int) -> list[int]:
    parts = text.split()
    if len(parts) != count:
        raise FormatError(f"expected {count} integers, got {text.strip()!r}", lineno)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"non-integer token in {text.strip()!r}", lineno) from None


def _parse_block(lines: list[tuple[int, str]]) -> Graph:
    (lineno, header), body = lines[0], lines[1:]
    n, m = _ints(header, lineno, 2)
    if n < 0 or m < 0:
        raise FormatError("negative count in header", lineno)
    if len(body) != m:
        last = body[-1][0] if body else lineno
        raise FormatError(f"header announces {m} edges, found {len(body)}", last)
    seen = set()
    edges = []
    for ln, text in body:
        u, v = _ints(text, ln, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"vertex out of range in edge ({u}, {v}) for n={n}", ln)
        if u == v:
            raise FormatError(f"self-loop at vertex {u}", ln)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"duplicate edge ({u}, {v})", ln)
        seen.add(key)
        edges.append(key)
    return Graph(n, edges)


def parse_edge_list(text: str) -> Graph:
    lines = [(i, s) for i, s in enumerate(text.split("\n"), start=1) if s.strip()]
    if not lines:
        raise FormatError("empty input", 1)
    return _parse_block(lines)


def format_edge_list(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(out) + "\n"


def iter_edge_list_stream(lines: Iterable[str]) -> Iterator[Graph]:
    """Yield graphs from blank-line separated edge-list blocks."""
    block: list[tuple[int, str]] = []
    for lineno, raw in enumerate(lines, start=1):
        if raw.strip():
            block.append((lineno, raw.rstrip("\n")))
        elif block:
            yield _parse_block(block)
            block = []
    if block:
        yield _parse_block(block)


def format_edge_list_stream(graphs: Iterable[Graph]) -> str:
    return "\n".join(format_edge_list(g) for g in graphs)


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 string (orders below 63 only)."""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise FormatError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= x < 64 for x in data):
        raise FormatError(f"invalid graph6 character in {s!r}")
    n = data[0]
    if n == 63:
        raise FormatError("graph6 orders of 63 or more are not supported")
    bits = []
    for x in data[1:]:
        bits.extend((x >> (5 - k)) & 1 for k in range(6))
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if k < len(bits) and bits[k]:
                edges.append((u, v))
            k += 1
    if len(bits) < k:
        raise FormatError(f"graph6 string too short for n={n}")
    return Graph(n, edges)


def format_graph6(g: Graph) -> str:
    if g.n >= 63:
        raise FormatError("graph6 orders of 63 or more are not supported")
    bits = [1 if g.has_edge(u, v) else 0 for v in range(1, g.n) for u in range(v)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(g.n + 63)]
    for i in range(0, len(bits), 6):
        x = 0
        for b in bits[i:i + 6]:
            x = (x << 1) | b
        out.append(chr(x + 63))
    return "".join(out)


def iter_graph6_stream(lines: Iterable[str]) -> Iterator[Graph]:
    for raw in lines:
        if raw.strip():
            yield parse_graph6(raw)
