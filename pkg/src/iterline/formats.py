"""graph6 and edge-list readers/writers, plus DOT export.

graph6 covers simple graphs only and follows the standard layout: a size
prefix, then the upper triangle of the adjacency matrix column by column,
six bits per printable byte (value + 63), zero padded.  Multigraphs travel
in the edge-list format: a header ``n m`` then ``m`` lines ``u v``.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterator

from .graph import MultiGraph

HEADER = ">>graph6<<"


class ParseError(ValueError):
    """Malformed input; ``line`` is 1-based, ``offset`` 0-based within it."""

    def __init__(self, message: str, line: int | None = None, offset: int | None = None) -> None:
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"offset {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.offset = offset


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 68719476736:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def encode_graph6(g: MultiGraph, header: bool = False) -> str:
    if not g.is_simple:
        raise ValueError("graph6 cannot represent parallel edges; use the edge-list format")
    n = g.n
    adj = set(g.edges)
    bits = [1 if (i, j) in adj else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + (bits[k] << 5 | bits[k + 1] << 4 | bits[k + 2] << 3 | bits[k + 3] << 2 | bits[k + 4] << 1 | bits[k + 5]))
        for k in range(0, len(bits), 6)
    )
    return (HEADER if header else "") + _encode_n(n) + body


def decode_graph6(text: str, line: int | None = None) -> MultiGraph:
    """Decode one graph6 string.  Vertex ids follow the matrix order and edge
    ids follow the column-major bit order, so re-encoding is byte-identical."""
    s = text.strip()
    base = len(text) - len(text.lstrip())
    if s.startswith(HEADER):
        s = s[len(HEADER):]
        base += len(HEADER)
    if not s:
        raise ParseError("empty graph6 line", line, base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"invalid graph6 character {ch!r}", line, base + i)
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise ParseError("truncated graph6 size field", line, base + len(vals))
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    else:
        if len(vals) < 4:
            raise ParseError("truncated graph6 size field", line, base + len(vals))
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(vals) - pos != need:
        raise ParseError(
            f"graph6 body has {len(vals) - pos} bytes, expected {need} for n={n}",
            line,
            base + min(len(vals), pos + need),
        )
    body = vals[pos:]
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    if nbits % 6 and body[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise ParseError("nonzero graph6 padding bits", line, base + len(vals) - 1)
    return MultiGraph(n, edges)


def encode_edgelist(g: MultiGraph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def decode_edgelists(text: str) -> Iterator[MultiGraph]:
    """Parse one or more concatenated edge-list blocks.

    Blank lines and ``#`` comments are ignored.  Repeated pairs become
    parallel edges.
    """
    rows: list[tuple[int, list[str], str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        content = raw.split("#", 1)[0]
        if content.strip():
            rows.append((lineno, content.split(), raw))
    i = 0
    while i < len(rows):
        lineno, toks, raw = rows[i]
        n, m = _ints(toks, lineno, raw, "header 'n m'")
        if n < 0 or m < 0:
            raise ParseError("negative size in header", lineno, 0)
        if i + m >= len(rows):
            raise ParseError(f"header promises {m} edges but the input ends early", lineno, 0)
        edges = []
        for lineno_e, toks_e, raw_e in rows[i + 1 : i + 1 + m]:
            u, v = _ints(toks_e, lineno_e, raw_e, "edge 'u v'")
            for val, tok in ((u, toks_e[0]), (v, toks_e[1])):
                if not 0 <= val < n:
                    raise ParseError(f"vertex {val} outside 0..{n - 1}", lineno_e, raw_e.index(tok))
            if u == v:
                raise ParseError(f"loop at vertex {u}", lineno_e, 0)
            edges.append((u, v))
        yield MultiGraph(n, edges)
        i += 1 + m


def _ints(toks: list[str], lineno: int, raw: str, what: str) -> tuple[int, int]:
    if len(toks) != 2:
        raise ParseError(f"expected {what}, got {len(toks)} fields", lineno, 0)
    out = []
    for t in toks:
        try:
            out.append(int(t))
        except ValueError:
            raise ParseError(f"not an integer: {t!r}", lineno, raw.index(t)) from None
    return out[0], out[1]


def decode_graph6_lines(text: str) -> Iterator[MultiGraph]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        if raw.strip():
            yield decode_graph6(raw, line=lineno)


def read_graphs(path: str | Path, fmt: str = "auto") -> list[MultiGraph]:
    """Load every graph in ``path``; ``fmt`` is graph6, edgelist or auto
    (decided by the file suffix, ``.g6`` meaning graph6)."""
    path = Path(path)
    text = path.read_text(encoding="ascii")
    if fmt == "auto":
        fmt = "graph6" if path.suffix in (".g6", ".graph6") else "edgelist"
    if fmt == "graph6":
        return list(decode_graph6_lines(text))
    if fmt == "edgelist":
        return list(decode_edgelists(text))
    raise ValueError(f"unknown format {fmt!r}; expected graph6 or edgelist")


def serialize(g: MultiGraph) -> str:
    """graph6 when possible, otherwise a one-line edge list ``n m: u-v ...``."""
    if g.is_simple:
        return encode_graph6(g)
    return f"{g.n} {g.m}: " + " ".join(f"{u}-{v}" for u, v in g.edges)


def to_dot(g: MultiGraph, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    for v in range(g.n):
        lab = f' [label="{g.vertex_labels[v]}"]' if g.vertex_labels is not None else ""
        out.append(f"  {v}{lab};")
    for e, (u, v) in enumerate(g.edges):
        lab = f' [label="{g.edge_labels[e]}"]' if g.edge_labels is not None else ""
        out.append(f"  {u} -- {v}{lab};")
    out.append("}")
    return "\n".join(out) + "\n"
