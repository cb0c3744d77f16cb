"""Exact search cores.

``find_parity_subgraph`` looks for an edge set ``H`` whose odd-degree
vertices are exactly a given set, whose edges form one connected piece, and
which covers the required vertices, optionally forcing edges in or out.
Closed trails (spanning or dominating), ``(s,t)`` trails and the subgraphs
``L_R`` of collapsibility are all instances.

The search runs in three stages: a constructive attempt (spanning
connected ``S`` plus a parity fix-up ``J`` taken from the complement), a
Gray-code walk over the cycle space when its dimension is small, and
otherwise a backtracking search with parity propagation and connectivity
pruning.  Only the last two can answer "no".

``hamiltonian_cycle`` is a path-extension backtracking search on bitsets.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graph import MultiGraph

DEFAULT_BUDGET = 2_000_000
GRAY_RANK_LIMIT = 12

UNK, OUT, IN = -1, 0, 1


class _OutOfBudget(Exception):
    pass


@dataclass(frozen=True)
class SearchResult:
    found: bool | None  # None: budget exhausted before a decision
    edges: tuple[int, ...] | None
    nodes: int
    method: str


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def odd_vertices(g: MultiGraph, H: Iterable[int]) -> set[int]:
    odd: set[int] = set()
    for e in H:
        for x in g.edges[e]:
            odd ^= {x}
    return odd


def edges_connected(g: MultiGraph, H: Sequence[int]) -> bool:
    """True when the edges of ``H`` form a single connected piece (vacuous if empty)."""
    if not H:
        return True
    parent = list(range(g.n))
    for e in H:
        a, b = (_find(parent, x) for x in g.edges[e])
        if a != b:
            parent[a] = b
    roots = {_find(parent, x) for e in H for x in g.edges[e]}
    return len(roots) == 1


def is_solution(
    g: MultiGraph,
    H: Sequence[int],
    odd: Iterable[int] = (),
    forced_in: Iterable[int] = (),
    forced_out: Iterable[int] = (),
    spanning: bool = True,
    clauses: Sequence[Sequence[int]] = (),
    nonempty: bool = False,
) -> bool:
    """Independent check of every constraint ``find_parity_subgraph`` promises."""
    Hs = set(H)
    if len(Hs) != len(H) or not all(0 <= e < g.m for e in Hs):
        return False
    if not set(forced_in) <= Hs or Hs & set(forced_out):
        return False
    if odd_vertices(g, Hs) != set(odd):
        return False
    if nonempty and not Hs:
        return False
    if not edges_connected(g, sorted(Hs)):
        return False
    touched = {x for e in Hs for x in g.edges[e]}
    if spanning and g.n >= 2 and len(touched) != g.n:
        return False
    return all(any(v in touched for v in c) for c in clauses)


def _forest_tjoin(n: int, forest: list[tuple[int, int, int]], need: list[bool]) -> list[int] | None:
    """Edge ids ``J`` of a forest with odd-degree set exactly ``{v : need[v]}``.

    ``forest`` holds ``(edge_id, u, v)``; ``None`` when some tree holds an odd
    number of needy vertices.
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for e, u, v in forest:
        adj[u].append((v, e))
        adj[v].append((u, e))
    need = list(need)
    seen = [False] * n
    J = []
    for r in range(n):
        if seen[r]:
            continue
        seen[r] = True
        order, up = [r], {r: (-1, -1)}
        i = 0
        while i < len(order):
            x = order[i]
            i += 1
            for y, e in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    up[y] = (x, e)
                    order.append(y)
        for x in reversed(order[1:]):
            if need[x]:
                p, e = up[x]
                J.append(e)
                need[x] = False
                need[p] = not need[p]
        if need[r]:
            return None
    return J


class _Problem:
    def __init__(self, g, odd, forced_in, forced_out, spanning, clauses, nonempty):
        self.g = g
        self.odd = frozenset(odd)
        self.forced_in = frozenset(forced_in)
        self.forced_out = frozenset(forced_out)
        self.spanning = spanning
        self.clauses = [tuple(c) for c in clauses]
        self.nonempty = nonempty
        self.allowed = [e for e in range(g.m) if e not in self.forced_out]

    def check(self, H: Sequence[int]) -> bool:
        return is_solution(
            self.g, H, self.odd, self.forced_in, self.forced_out, self.spanning, self.clauses, self.nonempty
        )


def _constructive(p: _Problem, attempts: int, seed: int) -> tuple[bool | None, tuple[int, ...] | None]:
    """Spanning connected ``S`` plus a parity fix-up from the complement.

    Returns ``(False, None)`` only for the definitive case of a disconnected
    allowed graph under a spanning requirement.
    """
    g = p.g
    if g.n == 1:
        return (True, ()) if p.check([]) else (None, None)
    rng = random.Random(seed)
    order = list(p.allowed)
    for attempt in range(attempts):
        if attempt:
            rng.shuffle(order)
        parent = list(range(g.n))
        S = []
        for e in sorted(p.forced_in) + [e for e in order if e not in p.forced_in]:
            u, v = g.edges[e]
            a, b = _find(parent, u), _find(parent, v)
            if a != b:
                parent[a] = b
                S.append(e)
            elif e in p.forced_in:
                S.append(e)
        if len({_find(parent, v) for v in range(g.n)}) > 1:
            return (False, None) if p.spanning else (None, None)
        Sset = set(S)
        deg_par = [False] * g.n
        for e in S:
            for x in g.edges[e]:
                deg_par[x] = not deg_par[x]
        need = [deg_par[v] != (v in p.odd) for v in range(g.n)]
        cparent = list(range(g.n))
        forest = []
        for e in p.allowed:
            if e in Sset:
                continue
            u, v = g.edges[e]
            a, b = _find(cparent, u), _find(cparent, v)
            if a != b:
                cparent[a] = b
                forest.append((e, u, v))
        J = _forest_tjoin(g.n, forest, need)
        if J is not None:
            H = tuple(sorted(Sset | set(J)))
            if p.check(H):
                return True, H
    return None, None


def _gray(p: _Problem) -> tuple[bool, tuple[int, ...] | None, int]:
    g = p.g
    parent = list(range(g.n))
    tree, nontree = [], []
    for e in p.allowed:
        u, v = g.edges[e]
        a, b = _find(parent, u), _find(parent, v)
        if a != b:
            parent[a] = b
            tree.append((e, u, v))
        else:
            nontree.append(e)
    P0 = _forest_tjoin(g.n, tree, [v in p.odd for v in range(g.n)])
    if P0 is None:
        return False, None, 0
    # root-path masks give fundamental cycles as xor of two masks
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for e, u, v in tree:
        adj[u].append((v, e))
        adj[v].append((u, e))
    rootpath = [0] * g.n
    seen = [False] * g.n
    for r in range(g.n):
        if seen[r]:
            continue
        seen[r] = True
        stack = [r]
        while stack:
            x = stack.pop()
            for y, e in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    rootpath[y] = rootpath[x] ^ (1 << e)
                    stack.append(y)
    basis = [(1 << e) ^ rootpath[g.edges[e][0]] ^ rootpath[g.edges[e][1]] for e in nontree]
    cur = 0
    for e in P0:
        cur ^= 1 << e
    forced = 0
    for e in p.forced_in:
        forced |= 1 << e
    nodes = 0
    for i in range(1 << len(basis)):
        if i:
            cur ^= basis[(i & -i).bit_length() - 1]
        nodes += 1
        if cur & forced != forced:
            continue
        H = list(_bits(cur))
        if p.check(H):
            return True, tuple(H), nodes
    return False, None, nodes


def _backtrack(p: _Problem, budget: int) -> tuple[bool | None, tuple[int, ...] | None, int]:
    g = p.g
    n, m = g.n, g.m
    E = g.edges
    inc = g.incident
    tgt = [1 if v in p.odd else 0 for v in range(n)]
    spanning_req = p.spanning and n >= 2
    req = [spanning_req] * n
    val = [UNK] * m
    for e in p.forced_out:
        val[e] = OUT
    nin = [0] * n
    nunk = [0] * n
    for e in range(m):
        if val[e] == UNK:
            for x in E[e]:
                nunk[x] += 1
    trail: list[int] = []
    nodes = 0

    def assign(e: int, b: int, queue: list[int]) -> None:
        val[e] = b
        trail.append(e)
        for x in E[e]:
            nunk[x] -= 1
            nin[x] += b
            queue.append(x)

    def undo(mark: int) -> None:
        while len(trail) > mark:
            e = trail.pop()
            b = val[e]
            val[e] = UNK
            for x in E[e]:
                nunk[x] += 1
                nin[x] -= b

    def propagate(queue: list[int]) -> bool:
        while queue:
            v = queue.pop()
            if nunk[v] == 0:
                if nin[v] & 1 != tgt[v] or (req[v] and nin[v] == 0):
                    return False
            elif nunk[v] == 1:
                e = next(x for x in inc[v] if val[x] == UNK)
                assign(e, IN if (nin[v] & 1) != tgt[v] else OUT, queue)
            elif req[v] and nin[v] == 0 and nunk[v] == 2 and tgt[v] == 0:
                for e in [x for x in inc[v] if val[x] == UNK]:
                    if val[e] == UNK:
                        assign(e, IN, queue)
        return True

    def connected_ok() -> bool:
        parent = list(range(n))
        for e in range(m):
            if val[e] != OUT:
                a, b = _find(parent, E[e][0]), _find(parent, E[e][1])
                if a != b:
                    parent[a] = b
        root = None
        for e in range(m):
            if val[e] == IN:
                r = _find(parent, E[e][0])
                if root is None:
                    root = r
                elif r != root:
                    return False
        if spanning_req and len({_find(parent, v) for v in range(n)}) > 1:
            return False
        for c in p.clauses:
            if not any(nin[v] + nunk[v] > 0 and (root is None or _find(parent, v) == root) for v in c):
                return False
        return True

    def choose() -> int | None:
        best, best_unk = -1, 1 << 30
        for v in range(n):
            k = nunk[v]
            if 0 < k < best_unk and (nin[v] or req[v] or tgt[v]):
                best, best_unk = v, k
                if k <= 2:
                    break
        if best >= 0:
            return next(x for x in inc[best] if val[x] == UNK)
        return next((e for e in range(m) if val[e] == UNK), None)

    def dfs() -> tuple[int, ...] | None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _OutOfBudget
        e = choose()
        if e is None:
            H = tuple(x for x in range(m) if val[x] == IN)
            return H if p.check(H) else None
        for b in (IN, OUT):
            mark = len(trail)
            queue: list[int] = []
            assign(e, b, queue)
            if propagate(queue) and connected_ok():
                found = dfs()
                if found is not None:
                    return found
            undo(mark)
        return None

    queue: list[int] = list(range(n))
    for e in sorted(p.forced_in):
        if val[e] == OUT:
            return False, None, 0
        if val[e] == UNK:
            assign(e, IN, queue)
    if not (propagate(queue) and connected_ok()):
        return False, None, 1
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * m + 1000))
    try:
        H = dfs()
    except _OutOfBudget:
        return None, None, nodes
    finally:
        sys.setrecursionlimit(old)
    return (H is not None), H, nodes


def cycle_rank(g: MultiGraph, allowed: Iterable[int]) -> int:
    parent = list(range(g.n))
    rank = 0
    for e in allowed:
        a, b = (_find(parent, x) for x in g.edges[e])
        if a == b:
            rank += 1
        else:
            parent[a] = b
    return rank


def find_parity_subgraph(
    g: MultiGraph,
    odd: Iterable[int] = (),
    *,
    forced_in: Iterable[int] = (),
    forced_out: Iterable[int] = (),
    spanning: bool = True,
    clauses: Sequence[Sequence[int]] = (),
    nonempty: bool = False,
    budget: int = DEFAULT_BUDGET,
    attempts: int = 24,
    seed: int = 0,
    method: str = "auto",
) -> SearchResult:
    """Find connected ``H`` with odd-degree set ``odd`` under the given constraints.

    ``spanning`` asks every vertex to be touched (vacuous on one vertex);
    ``clauses`` asks each listed vertex group to contain a touched vertex.
    ``method`` is ``auto``, ``gray`` or ``backtrack``; the last two skip the
    constructive stage and are exposed so each can be checked against the
    other.
    """
    p = _Problem(g, odd, forced_in, forced_out, spanning, clauses, nonempty)
    if p.forced_in & p.forced_out or len(p.odd) % 2:
        return SearchResult(False, None, 0, "trivial")
    if spanning and g.n >= 2 and any(
        all(e in p.forced_out for e in g.incident[v]) for v in range(g.n)
    ):
        return SearchResult(False, None, 0, "trivial")
    if method == "auto":
        found, H = _constructive(p, attempts, seed)
        if found is not None:
            return SearchResult(found, H, 0, "constructive")
        method = "gray" if cycle_rank(g, p.allowed) <= GRAY_RANK_LIMIT else "backtrack"
    if method == "gray":
        found, H, nodes = _gray(p)
        return SearchResult(found, H, nodes, "gray")
    if method == "backtrack":
        found, H, nodes = _backtrack(p, budget)
        return SearchResult(found, H, nodes, "backtrack")
    raise ValueError(f"unknown method {method!r}")


# -- Hamiltonian cycles ------------------------------------------------------


def articulation_points(g: MultiGraph) -> set[int]:
    n = g.n
    nb = [sorted(s) for s in g.neighbors]
    disc = [-1] * n
    low = [0] * n
    cut: set[int] = set()
    t = 0
    for r in range(n):
        if disc[r] >= 0:
            continue
        disc[r] = low[r] = t
        t += 1
        children = 0
        stack = [(r, -1, iter(nb[r]))]
        while stack:
            v, par, it = stack[-1]
            w = next(it, None)
            if w is None:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    # stack[0] is the root, handled by its child count
                    if len(stack) > 1 and low[v] >= disc[u]:
                        cut.add(u)
                continue
            if w == par:
                continue
            if disc[w] >= 0:
                low[v] = min(low[v], disc[w])
            else:
                disc[w] = low[w] = t
                t += 1
                if v == r:
                    children += 1
                stack.append((w, v, iter(nb[w])))
        if children > 1:
            cut.add(r)
    return cut


def hamiltonian_cycle(g: MultiGraph, budget: int = DEFAULT_BUDGET) -> tuple[bool | None, list[int] | None, int]:
    """Return ``(found, cycle, nodes)``; ``cycle`` lists every vertex once.

    Pruning: each unvisited vertex needs two usable neighbours, a vertex
    left with exactly two usable neighbours one of which is the path end
    forces the next step, and the unvisited part plus the path end must
    stay connected.
    """
    n = g.n
    if n < 3:
        raise ValueError("Hamiltonicity needs at least 3 vertices")
    if not g.is_connected or min(len(s) for s in g.neighbors) < 2 or articulation_points(g):
        return False, None, 0
    nbm = [sum(1 << u for u in s) for s in g.neighbors]
    full = (1 << n) - 1
    start = min(range(n), key=lambda v: (len(g.neighbors[v]), v))
    path = [start]
    nodes = 0

    def region_connected(v: int, region: int) -> bool:
        reach = frontier = 1 << v
        while frontier:
            nxt = 0
            for x in _bits(frontier):
                nxt |= nbm[x]
            nxt &= region & ~reach
            reach |= nxt
            frontier = nxt
        return reach == region

    def rec(v: int, visited: int, count: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _OutOfBudget
        if count == n:
            return bool(nbm[v] >> start & 1)
        unvisited = full & ~visited
        if not nbm[start] & unvisited:
            return False
        avail = unvisited | (1 << v) | (1 << start)
        forced = -1
        for u in _bits(unvisited):
            c = (nbm[u] & avail).bit_count()
            if c < 2:
                return False
            if c == 2 and count > 1 and nbm[u] >> v & 1:
                if forced >= 0 and forced != u:
                    return False
                forced = u
        if not region_connected(v, unvisited | (1 << v)):
            return False
        if forced >= 0:
            cands = [forced]
        else:
            cands = sorted(_bits(nbm[v] & unvisited), key=lambda u: (nbm[u] & unvisited).bit_count())
        for u in cands:
            path.append(u)
            if rec(u, visited | (1 << u), count + 1):
                return True
            path.pop()
        return False

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * n + 1000))
    try:
        ok = rec(start, 1 << start, 1)
    except _OutOfBudget:
        return None, None, nodes
    finally:
        sys.setrecursionlimit(old)
    return ok, (list(path) if ok else None), nodes
