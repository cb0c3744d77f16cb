"""Loopless multigraphs with explicit edge identity.

Vertices are the dense integers ``0..n-1`` and edge ``i`` is ``edges[i]``, an
ordered pair ``(u, v)`` with ``u < v``.  Two edge ids may share endpoints
(parallel edges).  Graphs are never mutated after construction; every
operation here returns a new graph.
"""

from __future__ import annotations

import enum
from collections import deque
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

Edge = tuple[int, int]


class MultiGraph:
    """A finite loopless graph that may contain parallel edges.

    ``vertex_labels`` and ``edge_labels`` are optional provenance strings that
    survive deletion, contraction and subdivision.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[Sequence[int]] = (),
        vertex_labels: Sequence[str] | None = None,
        edge_labels: Sequence[str] | None = None,
    ) -> None:
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = []
        for idx, (u, v) in enumerate(edges):
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {idx} = ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"edge {idx} is a loop at vertex {u}")
            norm.append((u, v) if u < v else (v, u))
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(norm)
        if vertex_labels is not None and len(vertex_labels) != n:
            raise ValueError("vertex_labels length must equal n")
        if edge_labels is not None and len(edge_labels) != len(self.edges):
            raise ValueError("edge_labels length must equal the number of edges")
        self.vertex_labels = tuple(vertex_labels) if vertex_labels is not None else None
        self.edge_labels = tuple(edge_labels) if edge_labels is not None else None

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        # Structural equality on the normalized form; labels are provenance only.
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    # -- adjacency ---------------------------------------------------------

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """``incident[v]``: edge ids at ``v`` in ascending order."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append(e)
            inc[v].append(e)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.incident)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    @cached_property
    def is_simple(self) -> bool:
        return len(set(self.edges)) == len(self.edges)

    @property
    def min_degree(self) -> int:
        if self.n == 0:
            raise ValueError("minimum degree of the empty graph is undefined")
        return min(self.degrees)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.neighbors[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    @property
    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components) == 1

    def edge_index(self) -> dict[Edge, list[int]]:
        """Map each endpoint pair to the edge ids joining it."""
        idx: dict[Edge, list[int]] = {}
        for e, uv in enumerate(self.edges):
            idx.setdefault(uv, []).append(e)
        return idx

    def relabel(self, perm: Sequence[int]) -> MultiGraph:
        """Rename vertex ``v`` to ``perm[v]``; edge ids keep their order."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of 0..n-1")
        labels = None
        if self.vertex_labels is not None:
            labels = [""] * self.n
            for v, lab in enumerate(self.vertex_labels):
                labels[perm[v]] = lab
        return MultiGraph(self.n, [(perm[u], perm[v]) for u, v in self.edges], labels, self.edge_labels)

    def _vlabel(self, v: int) -> str:
        return self.vertex_labels[v] if self.vertex_labels is not None else str(v)

    def _elabel(self, e: int) -> str:
        return self.edge_labels[e] if self.edge_labels is not None else f"e{e}"


class DegreeView:
    """Degree classes ``D_i``, the odd-degree set and neighbourhood accessors."""

    def __init__(self, g: MultiGraph) -> None:
        self.graph = g
        classes: dict[int, set[int]] = {}
        for v, d in enumerate(g.degrees):
            classes.setdefault(d, set()).add(v)
        self._classes = {d: frozenset(vs) for d, vs in classes.items()}
        self.odd = frozenset(v for v, d in enumerate(g.degrees) if d % 2)
        self.delta = min(g.degrees) if g.n else None

    def D(self, i: int) -> frozenset[int]:
        return self._classes.get(i, frozenset())

    @property
    def degree_classes(self) -> dict[int, frozenset[int]]:
        return dict(sorted(self._classes.items()))

    def N(self, v: int) -> frozenset[int]:
        return self.graph.neighbors[v]

    def E(self, v: int) -> tuple[int, ...]:
        return self.graph.incident[v]


class GraphClass(enum.Enum):
    PATH = "Path"
    CYCLE = "Cycle"
    K13 = "K13"
    J1 = "J1"
    J2 = "J2"
    IN_G = "InG"
    DISCONNECTED = "Disconnected"


def classify(g: MultiGraph) -> GraphClass:
    """Place ``g`` in exactly one of the exceptional families or the class G.

    J1 is K_{1,3} with two leaves identified (a doubled edge plus a pendant
    edge); J2 is K_{1,3} with all three leaves identified (a tripled edge).
    """
    if g.n == 0:
        raise ValueError("empty input")
    if not g.is_connected:
        return GraphClass.DISCONNECTED
    degs = g.degrees
    if g.is_simple and g.m == g.n - 1 and max(degs, default=0) <= 2:
        return GraphClass.PATH
    if g.n >= 2 and all(d == 2 for d in degs):
        return GraphClass.CYCLE
    if g.m == 3:
        if g.n == 4 and g.is_simple and sorted(degs) == [1, 1, 1, 3]:
            return GraphClass.K13
        if g.n == 3 and sorted(degs) == [1, 2, 3]:
            return GraphClass.J1
        if g.n == 2:
            return GraphClass.J2
    return GraphClass.IN_G


def in_class_G(g: MultiGraph) -> bool:
    return g.n > 0 and classify(g) is GraphClass.IN_G


# -- structural operations -------------------------------------------------


def delete_vertices(g: MultiGraph, X: Iterable[int]) -> MultiGraph:
    """``G - X`` for a vertex set: drop ``X`` and every edge touching it."""
    drop = set(X)
    bad = [v for v in drop if not 0 <= v < g.n]
    if bad:
        raise ValueError(f"vertices {sorted(bad)} are not in the graph")
    keep = [v for v in range(g.n) if v not in drop]
    new_id = {v: i for i, v in enumerate(keep)}
    edges, elabels = [], []
    for e, (u, v) in enumerate(g.edges):
        if u in new_id and v in new_id:
            edges.append((new_id[u], new_id[v]))
            elabels.append(g._elabel(e))
    return MultiGraph(len(keep), edges, [g._vlabel(v) for v in keep], elabels)


def delete_edges(g: MultiGraph, X: Iterable[int]) -> MultiGraph:
    """``G - X`` for an edge set: all vertices are kept."""
    drop = set(X)
    bad = [e for e in drop if not 0 <= e < g.m]
    if bad:
        raise ValueError(f"edges {sorted(bad)} are not in the graph")
    kept = [e for e in range(g.m) if e not in drop]
    return MultiGraph(
        g.n,
        [g.edges[e] for e in kept],
        g.vertex_labels,
        [g._elabel(e) for e in kept],
    )


def delete(g: MultiGraph, vertices: Iterable[int] = (), edges: Iterable[int] = ()) -> MultiGraph:
    """Vertex deletion or edge deletion; asking for both at once is an error."""
    vertices, edges = list(vertices), list(edges)
    if vertices and edges:
        raise ValueError("delete takes a vertex set or an edge set, not both")
    if vertices:
        return delete_vertices(g, vertices)
    return delete_edges(g, edges)


def contract(g: MultiGraph, X: Iterable[int]) -> MultiGraph:
    """``G/X``: identify the ends of every edge in ``X`` and drop the loops.

    Parallel edges created by the identification are kept.  Each new vertex
    is labelled with the sorted labels of the class it absorbed.
    """
    X = set(X)
    bad = [e for e in X if not 0 <= e < g.m]
    if bad:
        raise ValueError(f"edges {sorted(bad)} are not in the graph")
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in X:
        a, b = (find(x) for x in g.edges[e])
        if a != b:
            parent[max(a, b)] = min(a, b)
    roots = sorted({find(v) for v in range(g.n)})
    new_id = {r: i for i, r in enumerate(roots)}
    members: dict[int, list[int]] = {}
    for v in range(g.n):
        members.setdefault(find(v), []).append(v)
    vlabels = []
    for r in roots:
        cls = members[r]
        vlabels.append(g._vlabel(cls[0]) if len(cls) == 1 else "{" + ",".join(g._vlabel(v) for v in cls) + "}")
    edges, elabels = [], []
    for e, (u, v) in enumerate(g.edges):
        a, b = new_id[find(u)], new_id[find(v)]
        if a != b:
            edges.append((a, b))
            elabels.append(g._elabel(e))
    return MultiGraph(len(roots), edges, vlabels, elabels)


def subdivide(g: MultiGraph, X: Iterable[int]) -> MultiGraph:
    """``G(X)``: replace each edge ``uv`` of ``X`` by a path ``u, v_e, v``.

    Untouched edges keep their relative order; the two halves of each
    subdivided edge are appended, ordered by source edge id.
    """
    X = sorted(set(X))
    bad = [e for e in X if not 0 <= e < g.m]
    if bad:
        raise ValueError(f"edges {bad} are not in the graph")
    drop = set(X)
    edges = [g.edges[e] for e in range(g.m) if e not in drop]
    elabels = [g._elabel(e) for e in range(g.m) if e not in drop]
    vlabels = [g._vlabel(v) for v in range(g.n)]
    n = g.n
    for e in X:
        u, v = g.edges[e]
        vlabels.append(f"sub({g._elabel(e)})")
        edges += [(u, n), (n, v)]
        elabels += [f"{g._elabel(e)}.0", f"{g._elabel(e)}.1"]
        n += 1
    return MultiGraph(n, edges, vlabels, elabels)


def edge_subgraph(g: MultiGraph, X: Iterable[int]) -> MultiGraph:
    """``G[X]`` for an edge set, vertices renumbered in ascending order."""
    X = sorted(set(X))
    verts = sorted({v for e in X for v in g.edges[e]})
    new_id = {v: i for i, v in enumerate(verts)}
    return MultiGraph(
        len(verts),
        [(new_id[g.edges[e][0]], new_id[g.edges[e][1]]) for e in X],
        [g._vlabel(v) for v in verts],
        [g._elabel(e) for e in X],
    )


def induced_subgraph(g: MultiGraph, V: Iterable[int]) -> MultiGraph:
    keep = set(V)
    return delete_vertices(g, [v for v in range(g.n) if v not in keep])


def is_claw_free(g: MultiGraph) -> bool:
    """True when no vertex has three pairwise non-adjacent neighbours."""
    nb = g.neighbors
    for v in range(g.n):
        for a, b, c in combinations(sorted(nb[v]), 3):
            if b not in nb[a] and c not in nb[a] and c not in nb[b]:
                return False
    return True


def is_regular(g: MultiGraph) -> bool:
    return len(set(g.degrees)) <= 1


# -- named graphs ------------------------------------------------------------


def complete_graph(n: int) -> MultiGraph:
    return MultiGraph(n, combinations(range(n), 2))


def path_graph(n: int) -> MultiGraph:
    """The path on ``n`` vertices."""
    return MultiGraph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> MultiGraph:
    if n < 3:
        raise ValueError("a simple cycle needs at least 3 vertices")
    return MultiGraph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> MultiGraph:
    """``K_{1,leaves}`` with the centre at vertex 0."""
    return MultiGraph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> MultiGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return MultiGraph(10, outer + spokes + inner)


def cube_graph() -> MultiGraph:
    return MultiGraph(8, [(a, a ^ (1 << b)) for a in range(8) for b in range(3) if a < a ^ (1 << b)])


def bowtie_graph() -> MultiGraph:
    """Two triangles sharing vertex 0."""
    return MultiGraph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])


def double_star_tree() -> MultiGraph:
    """The smallest tree whose degrees are all 1 or 3: two adjacent centres, four leaves."""
    return MultiGraph(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])


def j1_graph() -> MultiGraph:
    return MultiGraph(3, [(0, 1), (0, 1), (0, 2)])


def j2_graph() -> MultiGraph:
    return MultiGraph(2, [(0, 1), (0, 1), (0, 1)])
