"""Per-edge triangle counts, k-triangularity and the k-triangular index."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import GraphClass, MultiGraph, classify, delete_edges
from .line import DEFAULT_MAX_VERTICES, iter_line_graphs, line_graph


def ceil_lg_ratio(a: int, b: int) -> int:
    """``ceil(lg(a/b))`` for positive integers, i.e. the least ``m`` with ``a <= b * 2**m``."""
    if a <= 0 or b <= 0:
        raise ValueError("ceil_lg_ratio needs positive integers")
    m = 0
    if a <= b:
        while a << (1 - m) <= b:
            m -= 1
    else:
        while b << m < a:
            m += 1
    return m


def triangle_counts(g: MultiGraph) -> list[int]:
    """``counts[e]``: number of distinct third vertices adjacent to both ends of ``e``."""
    nb = g.neighbors
    return [len(nb[u] & nb[v]) for u, v in g.edges]


def is_k_triangular(g: MultiGraph, k: int) -> bool:
    """Every edge lies in at least ``k`` triangles (early exit on the first miss)."""
    nb = g.neighbors
    for u, v in g.edges:
        a, b = nb[u], nb[v]
        if len(a) < k + 1 or len(b) < k + 1 or len(a & b) < k:
            return False
    return True


def triangularity(g: MultiGraph) -> int:
    """Largest ``k`` with ``g`` k-triangular (0 if some edge is in no triangle)."""
    return min(triangle_counts(g), default=0)


@dataclass
class TriangularReport:
    k: int
    counts: list[int]
    is_k_triangular: bool
    t_k_exact: int | None
    t_k_bound: int | None
    last_level: int

    def to_dict(self) -> dict:
        slack = None
        if self.t_k_exact is not None and self.t_k_bound is not None:
            slack = self.t_k_bound - self.t_k_exact
        return {
            "k": self.k,
            "min_triangle_count": min(self.counts, default=None),
            "is_k_triangular": self.is_k_triangular,
            "t_k_exact": self.t_k_exact,
            "t_k_bound": self.t_k_bound,
            "slack": slack,
            "last_level": self.last_level,
        }


def t_k_exact(
    g: MultiGraph, k: int, max_depth: int = 16, max_vertices: int = DEFAULT_MAX_VERTICES
) -> tuple[int | None, int]:
    """Least ``m >= 0`` with ``L^m(G)`` k-triangular.

    Returns ``(m, m)`` when found, or ``(None, last_level_checked)`` when a
    cap stops the tower first.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    tag = classify(g)
    if tag is not GraphClass.IN_G:
        raise ValueError(f"t_k is defined for graphs in the class G, got {tag.value}")
    last = -1
    for i, level in enumerate(iter_line_graphs(g, max_depth, max_vertices)):
        last = i
        if is_k_triangular(level, k):
            return i, i
    return None, last


def t_k_bound(delta: int, d_tilde: int, k: int) -> int:
    if k < 2:
        raise ValueError("the k-triangular index bound needs k >= 2")
    if delta <= 2:
        return d_tilde + 1 + ceil_lg_ratio(k, 1)
    if delta <= k + 1:
        return 1 + ceil_lg_ratio(k, delta - 2)
    return 1


def triangular_report(
    g: MultiGraph, k: int, d_tilde: int | None, max_depth: int = 16, max_vertices: int = DEFAULT_MAX_VERTICES
) -> TriangularReport:
    exact, last = t_k_exact(g, k, max_depth, max_vertices)
    bound = t_k_bound(g.min_degree, d_tilde, k) if k >= 2 and d_tilde is not None else None
    counts = triangle_counts(g)
    return TriangularReport(k, counts, min(counts, default=k) >= k, exact, bound, last)


def check_stability(g: MultiGraph, k: int) -> bool:
    """Is ``L(g)`` k-triangular, given that ``g`` is?  Expected: always."""
    if k < 2:
        raise ValueError("stability is asserted for k >= 2")
    if not g.is_simple:
        raise ValueError("stability check needs a simple graph")
    tag = classify(g)
    if tag is not GraphClass.IN_G:
        raise ValueError(f"graph not in the class G ({tag.value})")
    if not is_k_triangular(g, k):
        raise ValueError(f"graph is not {k}-triangular")
    return is_k_triangular(line_graph(g), k)


def triangular_after_deletion(g: MultiGraph, k: int, X: Iterable[int]) -> bool:
    """Is ``g - X`` (k - |X|)-triangular, given ``g`` k-triangular and ``1 <= |X| < k``?"""
    X = set(X)
    if not 1 <= len(X) < k:
        raise ValueError(f"need 1 <= |X| < k, got |X|={len(X)}, k={k}")
    if not is_k_triangular(g, k):
        raise ValueError(f"graph is not {k}-triangular")
    return is_k_triangular(delete_edges(g, X), k - len(X))
