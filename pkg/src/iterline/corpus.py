"""Graph corpora: named graphs, trees with all degrees in {1, 3}, seeded
random graphs and external files."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import graph as G
from .formats import read_graphs, serialize
from .graph import MultiGraph, in_class_G


@dataclass(frozen=True)
class Member:
    name: str
    graph: MultiGraph
    tags: tuple[str, ...] = ()


@dataclass
class Corpus:
    seed: int | None
    members: list[Member] = field(default_factory=list)

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def select(self, *tags: str) -> list[Member]:
        return [m for m in self.members if any(t in m.tags for t in tags)]

    def serialize(self) -> str:
        return "".join(f"{m.name}\t{serialize(m.graph)}\n" for m in self.members)

    def __add__(self, other: Corpus) -> Corpus:
        return Corpus(self.seed if self.seed is not None else other.seed, self.members + other.members)


def named_graphs() -> dict[str, MultiGraph]:
    return {
        "K3": G.complete_graph(3),
        "K4": G.complete_graph(4),
        "K5": G.complete_graph(5),
        "K1,3": G.star_graph(3),
        "K1,4": G.star_graph(4),
        "P5": G.path_graph(5),
        "bowtie": G.bowtie_graph(),
        "petersen": G.petersen_graph(),
        "cube": G.cube_graph(),
        "double-star": G.double_star_tree(),
    }


def named_corpus() -> Corpus:
    return Corpus(None, [Member(name, g, ("named",)) for name, g in named_graphs().items()])


# -- trees with all degrees in {1, 3} ----------------------------------------


def _tree_adj(k: int, edges: list[tuple[int, int]]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(k)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def _centers(adj: list[list[int]]) -> list[int]:
    k = len(adj)
    if k <= 2:
        return list(range(k))
    deg = [len(a) for a in adj]
    layer = [v for v in range(k) if deg[v] == 1]
    left = k
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _encode(adj: list[list[int]], v: int, parent: int) -> str:
    return "(" + "".join(sorted(_encode(adj, w, v) for w in adj[v] if w != parent)) + ")"


def tree_canonical_form(k: int, edges: list[tuple[int, int]]) -> str:
    """AHU string of the tree rooted at its centre (the smaller one if bicentral)."""
    adj = _tree_adj(k, edges)
    return min(_encode(adj, c, -1) for c in _centers(adj))


def _tree_from_code(code: str) -> list[tuple[int, int]]:
    """Edges of the rooted tree spelled by ``code``, ids in preorder."""
    edges, stack, nxt = [], [], 0
    for ch in code:
        if ch == "(":
            if stack:
                edges.append((stack[-1], nxt))
            stack.append(nxt)
            nxt += 1
        else:
            stack.pop()
    return edges


def subcubic_trees(k: int) -> list[str]:
    """Canonical forms of all unlabeled trees on ``k`` vertices with maximum degree <= 3."""
    if k < 1:
        return []
    level = {tree_canonical_form(1, [])}
    for size in range(2, k + 1):
        nxt = set()
        for code in level:
            edges = _tree_from_code(code)
            deg = [0] * (size - 1)
            for u, v in edges:
                deg[u] += 1
                deg[v] += 1
            for v in range(size - 1):
                if deg[v] < 3:
                    nxt.add(tree_canonical_form(size, edges + [(v, size - 1)]))
        level = nxt
    return sorted(level)


def b_tree_from_skeleton(code: str) -> MultiGraph:
    """Hang leaves on a subcubic tree until every internal vertex has degree 3."""
    edges = _tree_from_code(code)
    k = len(code) // 2
    deg = [0] * k
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    n = k
    for v in range(k):
        for _ in range(3 - deg[v]):
            edges.append((v, n))
            n += 1
    return MultiGraph(n, edges)


def generate_B_family(max_vertices: int) -> Corpus:
    """All trees with degrees in {1, 3} on 6..max_vertices vertices, up to isomorphism.

    Such a tree on ``n`` vertices has ``(n - 2) / 2`` internal vertices
    forming a subcubic tree, which is its canonical skeleton.
    """
    if max_vertices < 6:
        raise ValueError("the family starts at 6 vertices")
    members = []
    for k in range(2, (max_vertices - 2) // 2 + 1):
        for i, code in enumerate(subcubic_trees(k)):
            members.append(Member(f"B{2 * k + 2}.{i}", b_tree_from_skeleton(code), ("B",)))
    return Corpus(None, members)


# -- random graphs -------------------------------------------------------------


def _gnp(rng: random.Random, n: int, p: float) -> MultiGraph:
    return MultiGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_connected(seed: int, n_values=range(5, 10), per_n: int = 50) -> Corpus:
    """Connected-conditioned G(n, p) members of the class G, ``p`` drawn per sample."""
    rng = random.Random(seed)
    members = []
    for n in n_values:
        count = 0
        while count < per_n:
            g = _gnp(rng, n, rng.uniform(0.25, 0.6))
            if in_class_G(g):
                members.append(Member(f"er{n}.{count}", g, ("random",)))
                count += 1
    return Corpus(seed, members)


def random_low_degree(seed: int, count: int = 200, n_values=range(5, 11)) -> Corpus:
    """Random members of the class G with minimum degree at most 2."""
    rng = random.Random(seed + 1)
    members = []
    ns = list(n_values)
    while len(members) < count:
        n = rng.choice(ns)
        g = _gnp(rng, n, rng.uniform(0.15, 0.45))
        if in_class_G(g) and g.min_degree <= 2:
            members.append(Member(f"low{len(members)}", g, ("random-low",)))
    return Corpus(seed, members)


def builtin_corpus(seed: int = 42, b_max: int = 14) -> Corpus:
    return named_corpus() + generate_B_family(b_max) + random_connected(seed) + random_low_degree(seed)


def exhaustive_small() -> Corpus:
    """All connected simple graphs on at most 7 vertices (shipped graph6 list)."""
    ref = resources.files("iterline") / "data" / "connected_le7.g6"
    with resources.as_file(ref) as path:
        graphs = read_graphs(path, "graph6")
    return Corpus(None, [Member(f"atlas{i}", g, ("exhaustive",)) for i, g in enumerate(graphs)])


def file_corpus(path: str | Path, fmt: str = "auto") -> Corpus:
    graphs = read_graphs(path, fmt)
    stem = Path(path).stem
    return Corpus(None, [Member(f"{stem}:{i}", g, ("file",)) for i, g in enumerate(graphs)])
