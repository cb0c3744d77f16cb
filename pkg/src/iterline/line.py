"""The line-graph operator, iterated towers and subset pullback.

Vertex ``i`` of ``L(G)`` *is* edge ``i`` of ``G``: the provenance map from
level ``j`` vertices to level ``j-1`` edges is the identity on ids, so the
tower never has to store it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .graph import MultiGraph, in_class_G

log = logging.getLogger(__name__)

DEFAULT_MAX_VERTICES = 200_000


def line_graph(g: MultiGraph) -> MultiGraph:
    """``L(G)``: a simple graph on ``E(G)``, adjacency = sharing an endpoint.

    Edge order is deterministic: vertices of ``G`` ascending, then pairs of
    incident edge ids in lexicographic order.  Parallel edges of ``G`` give a
    single adjacency.
    """
    if g.m == 0:
        raise ValueError("line graph undefined for an edgeless graph")
    pairs: list[tuple[int, int]] = []
    for inc in g.incident:
        pairs.extend(combinations(inc, 2))
    if not g.is_simple:
        pairs = list(dict.fromkeys(pairs))
    return MultiGraph(g.m, pairs)


def line_graph_size(g: MultiGraph) -> tuple[int, int]:
    """``(|V(L(G))|, |E(L(G))|)`` without building it (exact for simple G)."""
    if g.is_simple:
        return g.m, sum(d * (d - 1) // 2 for d in g.degrees)
    return g.m, len({p for inc in g.incident for p in combinations(inc, 2)})


@dataclass(frozen=True)
class LineTower:
    """``L^0(G), ..., L^d(G)`` built until ``max_depth`` or the vertex cap.

    ``truncated`` is set when a further level was requested but would have
    exceeded ``max_vertices``.
    """

    levels: tuple[MultiGraph, ...]
    max_depth: int
    max_vertices: int
    truncated: bool

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def __getitem__(self, i: int) -> MultiGraph:
        return self.levels[i]

    def source_edge(self, level: int, v: int) -> int:
        """The edge of level ``level - 1`` that vertex ``v`` of ``level`` stands for."""
        if not 1 <= level <= self.depth:
            raise ValueError(f"level {level} has no source level in a tower of depth {self.depth}")
        if not 0 <= v < self.levels[level].n:
            raise ValueError(f"vertex {v} not in level {level}")
        return v

    def pull_back(self, level: int, S: Iterable[int], j: int, kind: str = "edges") -> frozenset[int]:
        """``L^(-j)(S)`` for a subset ``S`` of level ``level``.

        With ``kind="edges"`` the result is the unique edge set ``Z`` of level
        ``level - j`` with ``L^j(Z) = S``.  With ``kind="vertices"`` the first
        step sends vertices to their source edges and the remaining ``j - 1``
        steps treat that as an edge set.  ``j = 0`` returns ``S`` unchanged.
        """
        if not 0 <= level <= self.depth:
            raise ValueError(f"level {level} outside 0..{self.depth}")
        if not 0 <= j <= level:
            raise ValueError(f"pullback depth {j} outside 0..{level}")
        if kind not in ("edges", "vertices"):
            raise ValueError("kind must be 'edges' or 'vertices'")
        cur = frozenset(S)
        g = self.levels[level]
        limit = g.m if kind == "edges" else g.n
        bad = [x for x in cur if not 0 <= x < limit]
        if bad:
            raise ValueError(f"{kind} {sorted(bad)} not in level {level}")
        if j == 0:
            return cur
        if kind == "vertices":
            # vertex x of level i is edge x of level i-1
            level -= 1
            j -= 1
        for _ in range(j):
            edges = self.levels[level].edges
            cur = frozenset(v for e in cur for v in edges[e])
            level -= 1
        return cur


def iter_line_graphs(
    g: MultiGraph, max_depth: int, max_vertices: int = DEFAULT_MAX_VERTICES
) -> Iterator[MultiGraph]:
    """Yield ``L^0(G), L^1(G), ...`` lazily, stopping at ``max_depth`` or
    before the first level with more than ``max_vertices`` vertices."""
    cur = g
    yield cur
    for _ in range(max_depth):
        if cur.m == 0 or cur.m > max_vertices:
            return
        cur = line_graph(cur)
        yield cur


def build_tower(g: MultiGraph, depth: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> LineTower:
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if depth > 0 and not in_class_G(g):
        raise ValueError("iterated line graphs are only built for graphs in the class G")
    levels = [g]
    truncated = False
    while len(levels) <= depth:
        top = levels[-1]
        if top.m > max_vertices:
            truncated = True
            log.info("tower truncated at level %d: next level would have %d vertices", len(levels) - 1, top.m)
            break
        levels.append(line_graph(top))
    return LineTower(tuple(levels), depth, max_vertices, truncated)
