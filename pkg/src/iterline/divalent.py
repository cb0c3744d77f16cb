"""Divalent-path statistics and the minimum-degree-3 depth ``d~(G)``.

A *thread* is a maximal divalent path: it starts at a vertex whose degree
is not 2, passes only through degree-2 vertices, and stops at the next
vertex whose degree is not 2.  It is *closed* when it returns to its
starting vertex.  Every divalent path of a graph is a subpath of a thread.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import GraphClass, MultiGraph, classify
from .line import DEFAULT_MAX_VERTICES, iter_line_graphs


@dataclass(frozen=True)
class DivalentPath:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    end_degrees: tuple[int, int]
    closed: bool
    in_k3: bool

    @property
    def length(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class DivalentDecomposition:
    paths: tuple[DivalentPath, ...]
    cycles: tuple[tuple[int, ...], ...]  # edge ids of components made only of degree-2 vertices


def _in_k3(g: MultiGraph, verts: tuple[int, ...], closed: bool) -> bool:
    nb = g.neighbors
    if closed:
        return len(verts) == 4 and len(set(verts)) == 3
    if len(verts) == 2:
        return bool(nb[verts[0]] & nb[verts[1]])
    if len(verts) == 3:
        return verts[2] in nb[verts[0]]
    return False


def divalent_paths(g: MultiGraph) -> DivalentDecomposition:
    """Every thread of ``g`` exactly once, plus all-degree-2 cycle components.

    Thread orientation: starts at the lower-id anchor (ties broken by the
    first edge id), so output is deterministic.
    """
    deg = g.degrees
    inc = g.incident
    used = [False] * g.m
    paths = []
    for a in range(g.n):
        if deg[a] == 2:
            continue
        for e0 in inc[a]:
            if used[e0]:
                continue
            verts, edges = [a], [e0]
            used[e0] = True
            cur, e = g.other_end(e0, a), e0
            while deg[cur] == 2 and cur != a:
                verts.append(cur)
                e = inc[cur][0] if inc[cur][1] == e else inc[cur][1]
                used[e] = True
                edges.append(e)
                cur = g.other_end(e, cur)
            verts.append(cur)
            closed = cur == a
            vt = tuple(verts)
            paths.append(DivalentPath(vt, tuple(edges), (deg[a], deg[cur]), closed, _in_k3(g, vt, closed)))
    cycles = []
    for e0 in range(g.m):
        if used[e0]:
            continue
        cyc, e, cur = [], e0, g.edges[e0][1]
        while not used[e]:
            used[e] = True
            cyc.append(e)
            e = inc[cur][0] if inc[cur][1] == e else inc[cur][1]
            cur = g.other_end(e, cur)
        cycles.append(tuple(cyc))
    return DivalentDecomposition(tuple(paths), tuple(cycles))


@dataclass
class DivalentProfile:
    """ell, ell1..ell3, ell0 with witnesses, and the pendant predicate.

    Absent categories score 0.  ``ell3`` also ranges over closed threads
    anchored at a vertex of degree at least 3.
    """

    ell: int
    ell1: int
    ell2: int
    ell3: int
    ell0: int
    pendant_condition: bool
    min_degree: int
    witnesses: dict[str, tuple[int, ...]] = field(default_factory=dict)
    d_tilde_formula: int | None = None
    d_tilde_direct: int | None = None

    @property
    def agree(self) -> bool | None:
        if self.d_tilde_formula is None or self.d_tilde_direct is None:
            return None
        return self.d_tilde_formula == self.d_tilde_direct

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "ell1": self.ell1,
            "ell2": self.ell2,
            "ell3": self.ell3,
            "ell0": self.ell0,
            "pendant_condition": self.pendant_condition,
            "min_degree": self.min_degree,
            "d_tilde_formula": self.d_tilde_formula,
            "d_tilde_direct": self.d_tilde_direct,
            "agree": self.agree,
            "witnesses": {k: list(v) for k, v in sorted(self.witnesses.items())},
        }


class NotInClassG(ValueError):
    def __init__(self, tag: GraphClass) -> None:
        super().__init__(f"graph is not in the class G (classified as {tag.value})")
        self.tag = tag


def _longest_proper(p: DivalentPath) -> tuple[int, tuple[int, ...]]:
    """Longest non-closed proper divalent subpath of a thread, as (length, vertices)."""
    if not p.closed:
        if p.length == 2 and p.in_k3:
            return 1, p.vertices[:2]
        return p.length, p.vertices
    # dropping the last edge of a closed thread leaves an open path; for a
    # closed thread of length 3 (a triangle) that path is improper
    sub = p.vertices[:-1]
    if p.length == 3:
        return 1, sub[:2]
    return len(sub) - 1, sub


def pendant_condition(g: MultiGraph) -> bool:
    """Some degree-3 vertex has exactly two edges to vertices with a single neighbour."""
    U = {v for v in range(g.n) if len(g.neighbors[v]) == 1}
    F = {e for v in U for e in g.incident[v]}
    return any(sum(1 for e in g.incident[v] if e in F) == 2 for v in range(g.n) if g.degrees[v] == 3)


def ell_statistics(g: MultiGraph) -> DivalentProfile:
    tag = classify(g)
    if tag is not GraphClass.IN_G:
        raise NotInClassG(tag)
    best = {"ell": (0, ()), "ell1": (0, ()), "ell2": (0, ()), "ell3": (0, ())}

    def offer(key: str, length: int, verts: tuple[int, ...]) -> None:
        if length > best[key][0]:
            best[key] = (length, verts)

    for p in divalent_paths(g).paths:
        offer("ell", *_longest_proper(p))
        s, t = sorted(p.end_degrees)
        if p.closed:
            if s >= 3:
                offer("ell3", p.length, p.vertices)
        elif s == 1 and t == 3:
            offer("ell1", p.length, p.vertices)
        elif s == 1 and t >= 4:
            offer("ell2", p.length, p.vertices)
        elif s >= 3:
            offer("ell3", p.length, p.vertices)
    ell1, ell2, ell3 = best["ell1"][0], best["ell2"][0], best["ell3"][0]
    return DivalentProfile(
        ell=best["ell"][0],
        ell1=ell1,
        ell2=ell2,
        ell3=ell3,
        ell0=max(ell1 + 1, ell2, ell3 - 1),
        pendant_condition=pendant_condition(g),
        min_degree=g.min_degree,
        witnesses={k: v[1] for k, v in best.items() if v[0] > 0},
    )


def d_tilde_formula(g: MultiGraph, profile: DivalentProfile | None = None) -> int:
    """Closed-form ``d~``: ``max(ell0, 3)`` under the pendant condition, else ``ell0``."""
    if profile is None:
        profile = ell_statistics(g)
    if profile.min_degree >= 3:
        return 0
    if profile.pendant_condition:
        return max(profile.ell0, 3)
    return profile.ell0


def d_tilde_direct(
    g: MultiGraph, max_depth: int = 64, max_vertices: int = DEFAULT_MAX_VERTICES
) -> int | None:
    """Least ``i`` with ``delta(L^i(G)) >= 3``; ``None`` if the caps stop the tower first."""
    for i, level in enumerate(iter_line_graphs(g, max_depth, max_vertices)):
        if level.n and level.min_degree >= 3:
            return i
    return None


def d_tilde(
    g: MultiGraph,
    mode: str = "audit",
    max_depth: int = 64,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> DivalentProfile | int | None:
    """``mode`` is ``formula``, ``direct`` or ``audit``; audit returns the
    full profile with both values filled in (``agree`` compares them)."""
    if mode == "formula":
        return d_tilde_formula(g)
    if mode == "direct":
        tag = classify(g)
        if tag is not GraphClass.IN_G:
            raise NotInClassG(tag)
        return d_tilde_direct(g, max_depth, max_vertices)
    if mode != "audit":
        raise ValueError(f"unknown mode {mode!r}; expected formula, direct or audit")
    profile = ell_statistics(g)
    profile.d_tilde_formula = d_tilde_formula(g, profile)
    profile.d_tilde_direct = d_tilde_direct(g, max_depth, max_vertices)
    return profile
