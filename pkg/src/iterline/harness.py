"""Invariant suites run over a corpus, with machine-readable reports.

Each suite yields one row per graph it applies to.  A row's ``status`` is
``pass``, ``fail`` or ``undetermined`` (a cap or search budget was hit);
the d~ audit additionally uses ``disagree`` for formula/direct mismatches
on graphs outside the named and tree families.  Reports contain no timing
data, so equal inputs give byte-identical JSON.
"""

from __future__ import annotations

import json
import logging
from itertools import combinations
from typing import Callable, Iterable

from .bounds import comparison_holds, hs_bound, ist_bound, prior_bound_comparison
from .caps import Caps
from .corpus import Corpus, Member
from .divalent import d_tilde, divalent_paths, ell_statistics
from .formats import serialize
from .graph import (
    MultiGraph,
    complete_graph,
    cycle_graph,
    in_class_G,
    is_regular,
)
from .line import build_tower, iter_line_graphs, line_graph
from .oracles import (
    collapsible,
    collapsible_contract_equiv,
    dominating_closed_trail,
    exact_index,
    hamiltonian,
    replay,
    s_hamiltonian,
    spanning_closed_trail,
    st_supereulerian,
)
from .triangular import (
    check_stability,
    is_k_triangular,
    t_k_bound,
    t_k_exact,
    triangular_after_deletion,
    triangularity,
)

log = logging.getLogger(__name__)

SCHEMA = 1

# Towers built inside suites stop at this many vertices per level (or at
# ``caps.max_vertices`` if smaller); levels past it are reported as not built.
SUITE_LEVEL_CAP = 20_000


def _level_cap(caps: Caps) -> int:
    return min(caps.max_vertices, SUITE_LEVEL_CAP)


def _row(m: Member, status: str, **details) -> dict:
    return {"graph": m.name, "serialized": serialize(m.graph), "status": status, **details}


def _status(ok: bool | None) -> str:
    return "undetermined" if ok is None else ("pass" if ok else "fail")


# -- Harary–Nash-Williams ------------------------------------------------------


def suite_hnw(corpus: Iterable[Member], caps: Caps) -> list[dict]:
    rows = []
    for m in corpus:
        g = m.graph
        if g.m < 3 or g.m > caps.oracle_vertex_cap:
            continue
        L = line_graph(g)
        ham = hamiltonian(L, caps.search_budget)
        dct = dominating_closed_trail(g, caps.search_budget)
        replayed = replay(L, ham) and replay(g, dct)
        if ham.verdict is None or dct.verdict is None:
            ok = None
        else:
            ok = ham.verdict == dct.verdict and replayed
        rows.append(_row(m, _status(ok), hamiltonian_line_graph=ham.verdict, dominating_closed_trail=dct.verdict,
                         replayed=replayed))
    return rows


# -- pullback of divalent paths ------------------------------------------------------


def divalent_path_shape(g: MultiGraph, edge_set: Iterable[int]) -> tuple[int, tuple[int, int]] | None:
    """``(length, sorted end degrees)`` if ``edge_set`` is a divalent path of ``g``.

    A closed path (a cycle through one anchor vertex, all other vertices of
    degree 2) counts, with the anchor's degree at both ends.
    """
    E = set(edge_set)
    if not E:
        return None
    local: dict[int, int] = {}
    sub_nb: dict[int, set[int]] = {}
    for e in E:
        u, v = g.edges[e]
        local[u] = local.get(u, 0) + 1
        local[v] = local.get(v, 0) + 1
        sub_nb.setdefault(u, set()).add(v)
        sub_nb.setdefault(v, set()).add(u)
    if any(d > 2 for d in local.values()):
        return None
    start = next(iter(local))
    seen, stack = {start}, [start]
    while stack:
        x = stack.pop()
        for y in sub_nb[x] - seen:
            seen.add(y)
            stack.append(y)
    if len(seen) != len(local):
        return None
    ends = [v for v, d in local.items() if d == 1]
    if ends:
        if len(ends) != 2 or any(g.degrees[v] != 2 for v, d in local.items() if d == 2):
            return None
        return len(E), tuple(sorted(g.degrees[v] for v in ends))
    anchors = [v for v in local if g.degrees[v] != 2]
    if len(anchors) > 1:
        return None
    d = g.degrees[anchors[0]] if anchors else 2
    return len(E), (d, d)


def suite_lemma21(corpus: Iterable[Member], caps: Caps, depth: int = 3) -> list[dict]:
    rows = []
    for m in corpus:
        if not in_class_G(m.graph):
            continue
        tower = build_tower(m.graph, depth, _level_cap(caps))
        checked, failures = 0, []
        for i in range(1, tower.depth + 1):
            for p in divalent_paths(tower[i]).paths:
                if p.closed or p.in_k3:
                    continue
                want_deg = tuple(sorted(p.end_degrees))
                for j in range(1, i + 1):
                    Z = tower.pull_back(i, p.edges, j)
                    shape = divalent_path_shape(tower[i - j], Z)
                    checked += 1
                    if shape != (p.length + j, want_deg):
                        failures.append({"level": i, "j": j, "path": list(p.vertices), "got": shape})
        rows.append(_row(m, _status(not failures), levels=tower.depth, checked=checked, failures=failures[:5]))
    return rows


# -- degree growth and triangularity of towers ---------------------------------


def suite_degree_growth(corpus: Iterable[Member], caps: Caps, depth: int = 4) -> list[dict]:
    rows = []
    for m in corpus:
        g = m.graph
        if not in_class_G(g) or g.min_degree < 3:
            continue
        delta, regular = g.min_degree, is_regular(g)
        levels, ok = [], True
        for i, L in enumerate(iter_line_graphs(g, depth, caps.max_vertices)):
            want = 2**i * (delta - 2) + 2
            good = L.min_degree >= want and (not regular or L.min_degree == want)
            ok &= good
            levels.append({"level": i, "min_degree": L.min_degree, "lower_bound": want, "ok": good})
        rows.append(_row(m, _status(ok), regular=regular, levels=levels))
    return rows


def suite_lemma35(corpus: Iterable[Member], caps: Caps, depth: int = 4, extra: int = 2) -> list[dict]:
    rows = []
    for m in corpus:
        g = m.graph
        if not in_class_G(g):
            continue
        delta = g.min_degree
        if delta >= 3:
            base, delta0, top = 0, delta, depth
        else:
            base = d_tilde(g, "direct", caps.max_depth, caps.max_vertices)
            if base is None:
                rows.append(_row(m, "undetermined", reason="d_tilde not reached under caps"))
                continue
            delta0, top = None, base + extra
        levels, ok, reached = [], True, -1
        for i, L in enumerate(iter_line_graphs(g, top, _level_cap(caps))):
            reached = i
            if i == base and delta0 is None:
                delta0 = L.min_degree
            if i <= base:
                continue
            k = 2 ** (i - base - 1) * (delta0 - 2)
            good = is_k_triangular(L, k)
            ok &= good
            levels.append({"level": i, "k": k, "ok": good})
        stable = None
        k_g = triangularity(g)
        if g.is_simple and k_g >= 2:
            stable = check_stability(g, k_g)
            ok &= stable
        rows.append(_row(m, _status(ok), base_level=base, base_min_degree=delta0, levels=levels,
                         truncated=reached < top, stability=stable))
    return rows


def suite_lemma41(corpus: Iterable[Member], caps: Caps, max_edges: int = 15) -> list[dict]:
    rows = []
    for m in corpus:
        g = m.graph
        if not g.is_simple or g.m > max_edges or not in_class_G(g):
            continue
        k = triangularity(g)
        if k < 2:
            continue
        checked, bad = 0, []
        for s in range(1, k):
            for X in combinations(range(g.m), s):
                checked += 1
                if not triangular_after_deletion(g, k, X):
                    bad.append(list(X))
        rows.append(_row(m, _status(not bad), k=k, subsets=checked, violations=bad[:5]))
    return rows


def suite_lemma42(corpus: Iterable[Member], caps: Caps, max_edges: int = 12) -> list[dict]:
    rows = []
    for m in corpus:
        g = m.graph
        if not g.is_simple or g.m > max_edges or not in_class_G(g):
            continue
        k = triangularity(g)
        if k < 1:
            continue
        checks = []
        for total in range(min(k - 1, 2) + 1):
            for s in range(total + 1):
                t = total - s
                cert = st_supereulerian(g, s, t, caps.search_budget)
                ok = None if cert.verdict is None else (cert.verdict and replay(g, cert, s, t))
                checks.append({"s": s, "t": t, "verdict": cert.verdict, "ok": ok,
                               "counterexample": cert.counterexample})
        oks = [c["ok"] for c in checks]
        ok = False if False in oks else (None if None in oks else True)
        rows.append(_row(m, _status(ok), k=k, checks=checks))
    return rows


# -- d~ audit ---------------------------------------------------------------------


def suite_eq4_audit(corpus: Iterable[Member], caps: Caps) -> list[dict]:
    rows = []
    for m in corpus:
        g = m.graph
        if not in_class_G(g) or g.min_degree > 2:
            continue
        prof = d_tilde(g, "audit", caps.max_depth, caps.max_vertices)
        notes = []
        strict = "named" in m.tags or "B" in m.tags
        if prof.d_tilde_direct is None:
            status = "undetermined"
        else:
            status = "pass"
            if not prof.agree:
                status = "fail" if strict else "disagree"
                notes.append("formula and direct iteration disagree")
            if prof.d_tilde_direct > prof.ell + 2:
                status = "fail"
                notes.append("d_tilde exceeds ell + 2")
            if "B" in m.tags and (prof.d_tilde_direct != 3 or prof.ell0 != 2):
                status = "fail"
                notes.append("tree family member without d_tilde = 3, ell0 = 2")
        rows.append(_row(m, status, profile=prof.to_dict(), notes=notes))
    return rows


# -- bounds against exact indices --------------------------------------------------


def _small(corpus: Iterable[Member], max_n: int) -> list[Member]:
    return [m for m in corpus if in_class_G(m.graph) and m.graph.is_simple and m.graph.n <= max_n]


def suite_eq5(corpus: Iterable[Member], caps: Caps, max_n: int = 8, s_max: int = 20) -> list[dict]:
    rows = []
    for m in _small(corpus, max_n):
        g = m.graph
        prof = ell_statistics(g)
        dt = d_tilde(g, "direct", caps.max_depth, caps.max_vertices)
        delta = g.min_degree
        checks, ok = [], True
        exact: dict[tuple[int, int], int | None] = {}
        for s, t in ((0, 0), (1, 0), (0, 1)):
            res = exact_index(g, "i_st", s, t, caps)
            exact[(s, t)] = res.value
            bound = ist_bound(delta, dt, prof.ell, s, t) if dt is not None else None
            good = None if res.value is None or bound is None else res.value <= bound
            checks.append({"s": s, "t": t, "exact": res.value, "bound": bound, "ok": good})
        h0 = exact_index(g, "h_s", 0, 0, caps).value
        s_idx = exact[(0, 0)]
        # the s <= ell, h_0 <= s + 1 relations only apply when a vertex of degree <= 2 exists
        thm = None
        if delta <= 2 and s_idx is not None and h0 is not None:
            thm = s_idx <= prof.ell and h0 <= s_idx + 1 <= prof.ell + 1
        table = prior_bound_comparison(delta, dt, prof.ell, range(6, s_max + 1)) if dt is not None else []
        sharp = comparison_holds(table)
        oks = [c["ok"] for c in checks] + [sharp]
        if delta <= 2:
            oks.append(thm if s_idx is not None and h0 is not None else None)
        ok = False if False in oks else (None if None in oks else True)
        rows.append(_row(m, _status(ok), delta=delta, d_tilde=dt, ell=prof.ell, checks=checks, h0=h0,
                         prior_results_ok=thm, comparison=[r.to_dict() for r in table]))
    return rows


def suite_corollary16(corpus: Iterable[Member], caps: Caps, max_n: int = 8) -> list[dict]:
    rows = []
    for m in _small(corpus, max_n):
        g = m.graph
        prof = ell_statistics(g)
        dt = d_tilde(g, "direct", caps.max_depth, caps.max_vertices)
        checks = []
        for s in (0, 1):
            res = exact_index(g, "h_s", s, 0, caps)
            bound = hs_bound(g.min_degree, dt, prof.ell, s) if dt is not None else None
            good = None if res.value is None or bound is None else res.value <= bound
            checks.append({"s": s, "exact": res.value, "bound": bound, "ok": good})
        oks = [c["ok"] for c in checks]
        ok = False if False in oks else (None if None in oks else True)
        rows.append(_row(m, _status(ok), checks=checks))
    return rows


def suite_obs14(corpus: Iterable[Member], caps: Caps, max_n: int = 8) -> list[dict]:
    rows = []
    for m in _small(corpus, max_n):
        g = m.graph
        L = line_graph(g)
        checks, ok = [], True
        for s in (0, 1):
            if L.n < s + 3:
                continue
            pre = st_supereulerian(g, 0, s, caps.search_budget).verdict
            post = s_hamiltonian(L, s, caps.search_budget).verdict if pre else None
            good = True if pre is False else (None if pre is None or post is None else post)
            if good is None and ok is not False:
                ok = None
            elif good is False:
                ok = False
            checks.append({"s": s, "st_supereulerian": pre, "line_graph_s_hamiltonian": post})
        rows.append(_row(m, _status(ok), checks=checks))
    return rows


def suite_eq6(corpus: Iterable[Member], caps: Caps, ks: range = range(2, 9)) -> list[dict]:
    """Exact t_k against its bound on named graphs and graphs read from files."""
    rows = []
    for m in corpus:
        g = m.graph
        if not in_class_G(g) or not {"named", "file"} & set(m.tags):
            continue
        dt = d_tilde(g, "direct", caps.max_depth, caps.max_vertices)
        checks, ok, onset = [], True, None
        for k in ks:
            exact, last = t_k_exact(g, k, caps.max_depth, caps.max_vertices)
            bound = t_k_bound(g.min_degree, dt, k) if dt is not None else None
            good = None if exact is None or bound is None else exact <= bound
            if good is None and ok is not False:
                ok = None
            elif good is False:
                ok = False
            if onset is None and exact is not None and exact == bound:
                onset = k
            checks.append({"k": k, "exact": exact, "bound": bound, "last_level": last, "ok": good})
        rows.append(_row(m, _status(ok), d_tilde=dt, checks=checks, equality_onset=onset))
    return rows


# -- collapsibility ------------------------------------------------------------


def contraction_pairs() -> list[tuple[str, MultiGraph, tuple[int, ...]]]:
    """Hand-built ``(name, G, edges of H)`` pairs, ``H`` collapsible."""
    M = MultiGraph
    return [
        ("diamond/K3", M(4, [(0, 1), (1, 2), (0, 2), (1, 3), (2, 3)]), (0, 1, 2)),
        ("C4+chord/K3", M(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]), (0, 1, 4)),
        ("K3+pendant/K3", M(4, [(0, 1), (1, 2), (0, 2), (2, 3)]), (0, 1, 2)),
        ("K4/K3", complete_graph(4), (0, 1, 3)),
        ("bowtie/K3", M(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]), (0, 1, 2)),
        ("K5/K4", complete_graph(5), (0, 1, 2, 4, 5, 7)),
        ("K3+pendant-path/K3", M(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]), (0, 1, 2)),
        ("bridged-triangles/K3", M(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]), (0, 1, 2)),
        ("house/K3", M(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)]), (0, 4, 5)),
        ("wheel4/K3", M(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4), (2, 4), (3, 4)]), (0, 4, 5)),
    ]


def _short_cycles_everywhere(g: MultiGraph) -> bool:
    idx = g.edge_index()
    nb = g.neighbors
    return all(len(idx[(u, v)]) >= 2 or bool(nb[u] & nb[v]) for u, v in g.edges)


def suite_collapsible(corpus: Iterable[Member], caps: Caps, max_edges: int = 12) -> list[dict]:
    rows = []
    fixed = [(f"K{n}", complete_graph(n), n >= 3) for n in range(2, 6)] + [("C4", cycle_graph(4), False)]
    for name, g, want in fixed:
        cert = collapsible(g, caps.collapsible_edge_cap)
        ok = None if cert.verdict is None else (cert.verdict == want and replay(g, cert))
        rows.append(_row(Member(name, g), _status(ok), kind="definition", expected=want, verdict=cert.verdict))
    for name, g, h in contraction_pairs():
        res = collapsible_contract_equiv(g, h, caps.collapsible_edge_cap)
        rows.append(_row(Member(name, g), _status(res.holds), kind="contraction", contracted=list(h),
                         verdict_g=res.verdict_g, verdict_contracted=res.verdict_contracted))
    for m in corpus:
        g = m.graph
        if not g.is_connected or g.m == 0 or g.m > max_edges:
            continue
        rule = _short_cycles_everywhere(g)
        cert = collapsible(g, caps.collapsible_edge_cap)
        if cert.verdict is None:
            rows.append(_row(m, "undetermined", kind="corpus"))
            continue
        ok = replay(g, cert)
        if rule:
            ok &= cert.verdict is True
        supereulerian = None
        if cert.verdict:
            supereulerian = spanning_closed_trail(g, caps.search_budget).verdict
            ok = None if supereulerian is None and ok else (ok and bool(supereulerian))
        rows.append(_row(m, _status(ok), kind="corpus", short_cycle_rule=rule, collapsible=cert.verdict,
                         supereulerian=supereulerian))
    return rows


SUITES: dict[str, Callable[[Iterable[Member], Caps], list[dict]]] = {
    "hnw": suite_hnw,
    "lemma21": suite_lemma21,
    "degree-growth": suite_degree_growth,
    "lemma35": suite_lemma35,
    "lemma41": suite_lemma41,
    "lemma42": suite_lemma42,
    "eq4-audit": suite_eq4_audit,
    "eq5": suite_eq5,
    "eq6": suite_eq6,
    "corollary16": suite_corollary16,
    "obs14": suite_obs14,
    "collapsible": suite_collapsible,
}


def _summary(rows: list[dict]) -> dict:
    out = {"rows": len(rows)}
    for key in ("pass", "fail", "undetermined", "disagree"):
        out[key] = sum(1 for r in rows if r["status"] == key)
    return out


def run_suite(name: str, corpus: Corpus, caps: Caps = Caps()) -> dict:
    """Run one suite and wrap its rows in a report with summary and counterexamples."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; valid suites: {', '.join(['all', *SUITES])}")
    log.info("suite %s over %d graphs", name, len(corpus))
    rows = SUITES[name](corpus.members, caps)
    summary = _summary(rows)
    if name == "eq4-audit":
        decided = [r for r in rows if r["status"] != "undetermined"]
        agree = sum(1 for r in decided if r["profile"]["agree"])
        summary["agreement_rate"] = round(agree / len(decided), 6) if decided else None
    counter = [
        {"suite": name, "graph": r["graph"], "serialized": r["serialized"]}
        for r in rows
        if r["status"] in ("fail", "disagree")
    ]
    return {"suite": name, "summary": summary, "rows": rows, "counterexamples": counter}


def run_suites(names: list[str], corpus: Corpus, caps: Caps = Caps(), config: dict | None = None) -> dict:
    if names == ["all"]:
        names = list(SUITES)
    suites = [run_suite(n, corpus, caps) for n in names]
    total = {"fail": 0, "undetermined": 0, "disagree": 0, "pass": 0}
    for s in suites:
        for k in total:
            total[k] += s["summary"][k]
    return {
        "schema": SCHEMA,
        "config": config if config is not None else {"caps": caps.to_dict(), "seed": corpus.seed},
        "corpus_size": len(corpus),
        "summary": total,
        "suites": suites,
    }


def exit_code(report: dict) -> int:
    """0 all pass, 1 counterexample found, 3 some result left undetermined."""
    s = report["summary"]
    if s["fail"] or s["disagree"]:
        return 1
    if s["undetermined"]:
        return 3
    return 0


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=1) + "\n"


# -- single-graph report ---------------------------------------------------------


def analyze(g: MultiGraph, caps: Caps = Caps(), ks: Iterable[int] = (2, 3, 4), st_max: int = 1) -> dict:
    """Everything the package computes about one graph; exacts only where caps allow.

    Bound rows cover every ``(s, t)`` with ``s + t <= st_max``; the
    s-Hamiltonian columns are filled on the ``s = 0`` rows (``h_t``).
    """
    from .bounds import BoundReport, BoundRow, prior_bound
    from .graph import classify

    tag = classify(g)
    out: dict = {
        "serialized": serialize(g),
        "vertices": g.n,
        "edges": g.m,
        "class": tag.value,
        "simple": g.is_simple,
        "min_degree": g.min_degree,
        "max_degree": g.max_degree,
        "triangularity": triangularity(g) if g.m else None,
    }
    if not in_class_G(g):
        out["divalent"] = out["triangular"] = out["bounds"] = "not-applicable"
        return out
    prof = d_tilde(g, "audit", caps.max_depth, caps.max_vertices)
    out["divalent"] = prof.to_dict()
    dt = prof.d_tilde_direct
    delta = g.min_degree
    tri = []
    for k in ks:
        exact, last = t_k_exact(g, k, caps.max_depth, caps.max_vertices)
        bound = t_k_bound(delta, dt, k) if dt is not None and k >= 2 else None
        tri.append({"k": k, "exact": exact, "last_level": last, "bound": bound,
                    "slack": None if exact is None or bound is None else bound - exact})
    out["triangular"] = tri
    report = BoundReport(out["serialized"], delta, dt, prof.ell, prof.ell0)
    for total in range(st_max + 1):
        for s in range(total + 1):
            t = total - s
            name, a, b = ("s", 0, 0) if total == 0 else ("i_st", s, t)
            ist = exact_index(g, name, a, b, caps)
            row = BoundRow(s, t, ist_bound(delta, dt, prof.ell, s, t) if dt is not None else None,
                           ist_exact=ist.value, cap_hit=ist.cap_hit)
            if s == 0:
                hs = exact_index(g, "h_s", t, 0, caps)
                row.hs_exact = hs.value
                row.hs_bound = hs_bound(delta, dt, prof.ell, t) if dt is not None else None
                row.prior_bound = prior_bound(prof.ell, t)
                row.cap_hit |= hs.cap_hit
            report.rows.append(row)
    out["bounds"] = report.to_dict()
    return out
