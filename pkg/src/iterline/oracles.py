"""Certificate-producing deciders for Hamiltonian-type properties.

Every positive verdict carries a witness that :func:`replay` re-validates
against the graph without trusting the search that produced it.  A verdict
of ``None`` means a cap or search budget was hit.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Sequence

from .caps import Caps
from .graph import GraphClass, MultiGraph, classify, contract, delete_vertices, edge_subgraph
from .line import iter_line_graphs
from .search import DEFAULT_BUDGET, _bits, edges_connected, find_parity_subgraph, hamiltonian_cycle


@dataclass
class OracleCertificate:
    name: str
    verdict: bool | None
    witness: Any = None
    counterexample: Any = None
    nodes: int = 0
    elapsed: float = 0.0
    method: str = ""

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "oracle": self.name,
            "verdict": self.verdict,
            "witness": _jsonable(self.witness),
            "counterexample": _jsonable(self.counterexample),
            "nodes": self.nodes,
            "method": self.method,
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {(",".join(map(str, k)) if isinstance(k, tuple) else str(k)): _jsonable(v) for k, v in sorted(x.items())}
    if isinstance(x, (list, tuple, frozenset, set)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    return x


def _timed(name: str, fn: Callable[[], OracleCertificate]) -> OracleCertificate:
    t0 = time.perf_counter()
    cert = fn()
    cert.name = name
    cert.elapsed = time.perf_counter() - t0
    return cert


# -- trails -----------------------------------------------------------------


def euler_circuit(g: MultiGraph, H: Sequence[int], start: int | None = None) -> tuple[list[int], list[int]]:
    """Hierholzer on the edge set ``H`` (connected, all degrees even).

    Returns ``(vertices, edges)`` with ``vertices[0] == vertices[-1]``.
    """
    if not H:
        return ([start] if start is not None else []), []
    adj: dict[int, list[int]] = {}
    for e in sorted(H):
        for x in g.edges[e]:
            adj.setdefault(x, []).append(e)
    used = set()
    v0 = min(adj) if start is None or start not in adj else start
    stack = [(v0, -1)]
    verts, edges = [], []
    ptr = {v: 0 for v in adj}
    while stack:
        v, via = stack[-1]
        lst = adj[v]
        while ptr[v] < len(lst) and lst[ptr[v]] in used:
            ptr[v] += 1
        if ptr[v] == len(lst):
            stack.pop()
            verts.append(v)
            if via >= 0:
                edges.append(via)
        else:
            e = lst[ptr[v]]
            used.add(e)
            stack.append((g.other_end(e, v), e))
    verts.reverse()
    edges.reverse()
    return verts, edges


def valid_closed_trail(g: MultiGraph, verts: Sequence[int], edges: Sequence[int]) -> bool:
    if len(verts) != len(edges) + 1 or not verts:
        return False
    if len(set(edges)) != len(edges) or verts[0] != verts[-1]:
        return False
    for i, e in enumerate(edges):
        if not 0 <= e < g.m or {verts[i], verts[i + 1]} != set(g.edges[e]):
            return False
    return all(0 <= v < g.n for v in verts)


def _trail_witness(g: MultiGraph, H: Sequence[int], start: int | None = None) -> dict:
    verts, edges = euler_circuit(g, H, start)
    return {"vertices": verts, "edges": edges}


# -- oracles ----------------------------------------------------------------


def hamiltonian(g: MultiGraph, budget: int = DEFAULT_BUDGET) -> OracleCertificate:
    if g.n < 3:
        raise ValueError("Hamiltonicity needs at least 3 vertices")

    def run() -> OracleCertificate:
        found, cycle, nodes = hamiltonian_cycle(g, budget)
        return OracleCertificate("", found, cycle, nodes=nodes, method="backtrack")

    return _timed("hamiltonian", run)


def _shortcut(g: MultiGraph, cycle: Sequence[int], y: int) -> list[int] | None:
    """Close the path ``cycle - y`` back into a cycle, directly or by one rotation."""
    if len(cycle) <= 3:
        return None
    i = cycle.index(y)
    path = list(cycle[i + 1:]) + list(cycle[:i])
    a, b = path[0], path[-1]
    if b in g.neighbors[a]:
        return path
    na, nb = g.neighbors[a], g.neighbors[b]
    for j in range(1, len(path) - 2):
        if path[j] in nb and path[j + 1] in na:
            return path[: j + 1] + path[:j:-1]
    return None


def s_hamiltonian(g: MultiGraph, s: int, budget: int = DEFAULT_BUDGET) -> OracleCertificate:
    """Every deletion of at most ``s`` vertices leaves a Hamiltonian graph.

    The witness maps each deleted set to a cycle in original vertex ids.
    A cycle already found for ``S - {y}`` is shortcut past ``y`` when
    possible; otherwise ``G - S`` is searched directly.
    """
    if s < 0 or s > g.n - 3:
        raise ValueError(f"s must lie in 0..|V|-3 = {g.n - 3}, got {s}")

    def run() -> OracleCertificate:
        witness: dict[tuple[int, ...], list[int]] = {}
        nodes = 0
        undetermined = None
        for size in range(s + 1):
            for S in combinations(range(g.n), size):
                cycle = None
                for y in S:
                    base = witness.get(tuple(v for v in S if v != y))
                    if base is not None:
                        cycle = _shortcut(g, base, y)
                        if cycle is not None:
                            break
                if cycle is None:
                    gone = set(S)
                    keep = [v for v in range(g.n) if v not in gone]
                    found, local, k = hamiltonian_cycle(delete_vertices(g, S), budget)
                    nodes += k
                    if found is None:
                        undetermined = undetermined or S
                        continue
                    if not found:
                        return OracleCertificate("", False, counterexample=list(S), nodes=nodes, method="backtrack")
                    cycle = [keep[v] for v in local]
                witness[S] = cycle
        if undetermined is not None:
            return OracleCertificate("", None, counterexample=list(undetermined), nodes=nodes, method="backtrack")
        return OracleCertificate("", True, witness, nodes=nodes, method="backtrack")

    return _timed("s_hamiltonian", run)


def dominating_closed_trail(g: MultiGraph, budget: int = DEFAULT_BUDGET) -> OracleCertificate:
    """A closed trail ``H`` with ``G - V(H)`` edgeless; one vertex counts as a trail."""

    def run() -> OracleCertificate:
        for v in range(g.n):
            if len(g.incident[v]) == g.m:
                return OracleCertificate("", True, {"vertices": [v], "edges": []}, method="single-vertex")
        res = find_parity_subgraph(g, spanning=False, clauses=g.edges, nonempty=True, budget=budget)
        witness = _trail_witness(g, res.edges) if res.found else None
        return OracleCertificate("", res.found, witness, nodes=res.nodes, method=res.method)

    return _timed("dominating_closed_trail", run)


def spanning_closed_trail(g: MultiGraph, budget: int = DEFAULT_BUDGET) -> OracleCertificate:
    """Supereulerian test: a closed trail through every vertex."""

    def run() -> OracleCertificate:
        if g.n == 1:
            return OracleCertificate("", True, {"vertices": [0], "edges": []}, method="trivial")
        res = find_parity_subgraph(g, spanning=True, budget=budget)
        witness = _trail_witness(g, res.edges) if res.found else None
        return OracleCertificate("", res.found, witness, nodes=res.nodes, method=res.method)

    return _timed("spanning_closed_trail", run)


def st_supereulerian(g: MultiGraph, s: int, t: int, budget: int = DEFAULT_BUDGET) -> OracleCertificate:
    """For all disjoint ``X, Y`` with ``|X| <= s``, ``|Y| <= t``: ``G - Y`` has a
    spanning closed trail through ``X``.

    Pairs are enumerated ``X`` first, then ``Y``, both in lexicographic order
    of edge ids; the first failing pair is the counterexample.  A trail
    found earlier is reused for every later pair it contains ``X`` of and
    avoids ``Y`` of.  The witness is ``{"trails": [...], "pairs": {"X|Y": i}}``
    with trails as edge ids of ``g``.
    """
    if s < 0 or t < 0:
        raise ValueError("s and t must be non-negative")

    def run() -> OracleCertificate:
        trails: list[list[int]] = []
        trail_sets: list[frozenset[int]] = []
        pairs: dict[str, int] = {}
        nodes = 0
        undetermined = None
        for xs in range(min(s, g.m) + 1):
            for X in combinations(range(g.m), xs):
                rest = [e for e in range(g.m) if e not in X]
                for ys in range(min(t, len(rest)) + 1):
                    for Y in combinations(rest, ys):
                        key = _xy_key(X, Y)
                        hit = next(
                            (i for i, H in enumerate(trail_sets)
                             if H.issuperset(X) and H.isdisjoint(Y)),
                            None,
                        )
                        if hit is not None:
                            pairs[key] = hit
                            continue
                        if g.n == 1:
                            res_edges: tuple[int, ...] = ()
                        else:
                            res = find_parity_subgraph(g, forced_in=X, forced_out=Y, spanning=True, budget=budget)
                            nodes += res.nodes
                            if res.found is None:
                                undetermined = undetermined or (X, Y)
                                continue
                            if not res.found:
                                return OracleCertificate(
                                    "", False, counterexample={"X": list(X), "Y": list(Y)}, nodes=nodes,
                                    method="search",
                                )
                            res_edges = res.edges
                        pairs[key] = len(trails)
                        trails.append(list(res_edges))
                        trail_sets.append(frozenset(res_edges))
        if undetermined is not None:
            X, Y = undetermined
            return OracleCertificate("", None, counterexample={"X": list(X), "Y": list(Y)}, nodes=nodes, method="search")
        return OracleCertificate("", True, {"trails": trails, "pairs": pairs}, nodes=nodes, method="search")

    return _timed("st_supereulerian", run)


def _xy_key(X: Sequence[int], Y: Sequence[int]) -> str:
    return ",".join(map(str, X)) + "|" + ",".join(map(str, Y))


def _cycle_2_or_3_everywhere(g: MultiGraph) -> bool:
    idx = g.edge_index()
    nb = g.neighbors
    return all(len(idx[(u, v)]) >= 2 or nb[u] & nb[v] for u, v in g.edges)


def collapsible(g: MultiGraph, edge_cap: int = 14) -> OracleCertificate:
    """For every even ``R``, a spanning connected subgraph with odd set ``R``.

    Up to ``edge_cap`` edges this is decided by walking all edge subsets in
    Gray-code order; above it only the sufficient rule (connected, every
    edge on a cycle of length 2 or 3) can answer, and only with ``True``.
    """

    def run() -> OracleCertificate:
        if not g.is_connected:
            return OracleCertificate("", False, counterexample=[], method="disconnected")
        if g.m > edge_cap:
            if _cycle_2_or_3_everywhere(g):
                return OracleCertificate("", True, "short-cycle-rule", method="sufficient")
            return OracleCertificate("", None, method="cap")
        n, m = g.n, g.m
        target = 1 << (n - 1)
        found: dict[int, int] = {}
        if n == 1:
            found[0] = 0
        deg = [0] * n
        touched = par = cur = 0
        nodes = 0
        for i in range(1, 1 << m):
            if len(found) == target:
                break
            b = (i & -i).bit_length() - 1
            cur ^= 1 << b
            step = 1 if cur >> b & 1 else -1
            for x in g.edges[b]:
                par ^= 1 << x
                if step > 0:
                    touched += deg[x] == 0
                    deg[x] += 1
                else:
                    deg[x] -= 1
                    touched -= deg[x] == 0
            nodes += 1
            if touched == n and par not in found and edges_connected(g, list(_bits(cur))):
                found[par] = cur
        witness = {tuple(_bits(R)): tuple(_bits(H)) for R, H in found.items()}
        if len(found) == target:
            return OracleCertificate("", True, witness, nodes=nodes, method="exhaustive")
        missing = next(R for R in range(1 << n) if bin(R).count("1") % 2 == 0 and R not in found)
        return OracleCertificate("", False, witness, counterexample=list(_bits(missing)), nodes=nodes, method="exhaustive")

    return _timed("collapsible", run)


@dataclass
class ContractionCheck:
    holds: bool | None
    verdict_g: bool | None
    verdict_contracted: bool | None


def collapsible_contract_equiv(g: MultiGraph, h_edges: Sequence[int], edge_cap: int = 14) -> ContractionCheck:
    """Compare ``collapsible(G)`` with ``collapsible(G/H)`` for collapsible ``H``."""
    h = edge_subgraph(g, h_edges)
    hc = collapsible(h, edge_cap).verdict
    if hc is False:
        raise ValueError("the subgraph to contract is not collapsible")
    a = collapsible(g, edge_cap).verdict
    b = collapsible(contract(g, h_edges), edge_cap).verdict
    if hc is None or a is None or b is None:
        return ContractionCheck(None, a, b)
    return ContractionCheck(a == b, a, b)


# -- replay ------------------------------------------------------------------


def _valid_ham_cycle(g: MultiGraph, cycle: Sequence[int]) -> bool:
    n = g.n
    if sorted(cycle) != list(range(n)):
        return False
    return all(cycle[(i + 1) % n] in g.neighbors[cycle[i]] for i in range(n))


def replay(g: MultiGraph, cert: OracleCertificate, s: int = 0, t: int = 0) -> bool:
    """Re-validate a positive certificate's witness from scratch.

    Negative and undetermined certificates carry nothing to replay and
    return True.  ``s``/``t`` are the parameters the certificate was built with.
    """
    if cert.verdict is not True:
        return True
    w = cert.witness
    name = cert.name
    if name == "hamiltonian":
        return _valid_ham_cycle(g, w)
    if name == "s_hamiltonian":
        expected = {S for size in range(s + 1) for S in combinations(range(g.n), size)}
        if set(w) != expected:
            return False
        for S, cycle in w.items():
            keep = [v for v in range(g.n) if v not in S]
            pos = {v: i for i, v in enumerate(keep)}
            if any(v not in pos for v in cycle):
                return False
            if not _valid_ham_cycle(delete_vertices(g, S), [pos[v] for v in cycle]):
                return False
        return True
    if name in ("dominating_closed_trail", "spanning_closed_trail"):
        verts, edges = w["vertices"], w["edges"]
        if not edges:
            if len(verts) != 1:
                return False
            V = set(verts)
        else:
            if not valid_closed_trail(g, verts, edges):
                return False
            V = set(verts)
        if name == "spanning_closed_trail":
            return V == set(range(g.n))
        return all(u in V or v in V for u, v in g.edges)
    if name == "st_supereulerian":
        trails, pairs = w["trails"], w["pairs"]
        good = []
        for H in trails:
            if g.n == 1:
                good.append(not H)
                continue
            verts, edges = euler_circuit(g, H) if H else ([], [])
            good.append(
                bool(H)
                and sorted(edges) == sorted(H)
                and valid_closed_trail(g, verts, edges)
                and set(verts) == set(range(g.n))
            )
        for xs in range(min(s, g.m) + 1):
            for X in combinations(range(g.m), xs):
                rest = [e for e in range(g.m) if e not in X]
                for ys in range(min(t, len(rest)) + 1):
                    for Y in combinations(rest, ys):
                        i = pairs.get(_xy_key(X, Y))
                        if i is None or not good[i]:
                            return False
                        H = set(trails[i])
                        if not H.issuperset(X) or not H.isdisjoint(Y):
                            return False
        return True
    if name == "collapsible":
        if w == "short-cycle-rule":
            return g.is_connected and _cycle_2_or_3_everywhere(g)
        evens = {R for R in range(1 << g.n) if bin(R).count("1") % 2 == 0}
        if {sum(1 << v for v in R) for R in w} != evens:
            return False
        for R, H in w.items():
            odd: set[int] = set()
            for e in H:
                odd ^= set(g.edges[e])
            touched = {x for e in H for x in g.edges[e]}
            if odd != set(R) or not edges_connected(g, list(H)):
                return False
            if g.n > 1 and touched != set(range(g.n)):
                return False
        return True
    raise ValueError(f"no replay rule for oracle {name!r}")


# -- indices -------------------------------------------------------------------


@dataclass
class IndexResult:
    name: str
    value: int | None
    cap_hit: bool
    verdicts: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"index": self.name, "value": self.value, "cap_hit": self.cap_hit, "levels": self.verdicts}


INDEX_NAMES = ("h_s", "s", "i_st")


def level_predicate(name: str, s: int = 0, t: int = 0, caps: Caps = Caps()) -> Callable[[MultiGraph], OracleCertificate | None]:
    """The per-level test behind an index; ``None`` means "not applicable here"."""
    budget = caps.search_budget
    if name == "h_s":
        return lambda L: s_hamiltonian(L, s, budget) if L.n >= s + 3 else None
    if name == "s":
        return lambda L: spanning_closed_trail(L, budget)
    if name == "i_st":
        return lambda L: st_supereulerian(L, s, t, budget)
    raise ValueError(f"unknown index {name!r}; expected one of {INDEX_NAMES}")


def exact_index(g: MultiGraph, name: str, s: int = 0, t: int = 0, caps: Caps = Caps()) -> IndexResult:
    """Least ``i`` such that ``L^i(G)`` has the property, walking the tower.

    A level larger than ``caps.oracle_vertex_cap``, a tower cap, or an
    undetermined oracle verdict ends the walk with ``cap_hit`` set.
    """
    tag = classify(g)
    if tag is not GraphClass.IN_G:
        raise ValueError(f"indices are defined for graphs in the class G, got {tag.value}")
    test = level_predicate(name, s, t, caps)
    label = {"h_s": f"h_{s}", "s": "s", "i_st": f"i_{s},{t}"}[name]
    result = IndexResult(label, None, True)
    for i, L in enumerate(iter_line_graphs(g, caps.max_depth, caps.oracle_vertex_cap)):
        if L.n > caps.oracle_vertex_cap:
            break
        cert = test(L)
        verdict = False if cert is None else cert.verdict
        result.verdicts.append({"level": i, "vertices": L.n, "edges": L.m, "verdict": verdict,
                                "applicable": cert is not None})
        if verdict is None:
            break
        if verdict:
            result.value = i
            result.cap_hit = False
            break
    return result
