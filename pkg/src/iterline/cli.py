"""Command-line entry point.

Exit codes: 0 everything passed, 1 a counterexample was found, 2 usage or
parse error, 3 a result was left undetermined by a cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import fields, replace
from pathlib import Path

from .caps import Caps
from .corpus import builtin_corpus, file_corpus, generate_B_family, named_corpus, random_connected
from .divalent import NotInClassG, d_tilde
from .formats import ParseError, decode_edgelists, decode_graph6_lines, encode_graph6, read_graphs, serialize, to_dot
from .graph import MultiGraph, classify, in_class_G
from .harness import SUITES, analyze, dumps, exit_code, run_suites
from .line import iter_line_graphs
from .oracles import (
    collapsible,
    dominating_closed_trail,
    exact_index,
    hamiltonian,
    s_hamiltonian,
    spanning_closed_trail,
    st_supereulerian,
)
from .triangular import t_k_bound, t_k_exact

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE, EXIT_UNDETERMINED = 0, 1, 2, 3

ORACLES = ("hamiltonian", "s-hamiltonian", "dominating-trail", "supereulerian", "st-supereulerian", "collapsible")


class UsageError(Exception):
    pass


def _add_caps(p: argparse.ArgumentParser) -> None:
    for f in fields(Caps):
        p.add_argument("--" + f.name.replace("_", "-"), type=int, dest=f.name, default=None,
                       help=f"override cap {f.name} (default {f.default}, env ITERLINE_{f.name.upper()})")


def _caps(args: argparse.Namespace) -> Caps:
    caps = Caps().with_env()
    flags = {f.name: getattr(args, f.name) for f in fields(Caps) if getattr(args, f.name, None) is not None}
    return replace(caps, **flags)


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", "-i", help="graph file (default: stdin)")
    p.add_argument("--format", "-f", choices=("auto", "graph6", "edgelist"), default="auto")


def _graphs(args: argparse.Namespace) -> list[MultiGraph]:
    if args.input:
        return read_graphs(args.input, args.format)
    text = sys.stdin.read()
    first = next((ln for ln in text.splitlines() if ln.split("#", 1)[0].strip()), "")
    # graph6 lines never contain whitespace, edge-list headers always do
    if args.format == "edgelist" or (args.format == "auto" and len(first.split()) > 1):
        return list(decode_edgelists(text))
    return list(decode_graph6_lines(text))


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _worse(a: int, b: int) -> int:
    """A counterexample outranks an undetermined result, which outranks success."""
    rank = {EXIT_OK: 0, EXIT_UNDETERMINED: 1, EXIT_COUNTEREXAMPLE: 2}
    return a if rank[a] >= rank[b] else b


def _need_G(g: MultiGraph) -> None:
    if not in_class_G(g):
        raise UsageError(f"graph is not in the class G ({classify(g).value})")


# -- subcommands -------------------------------------------------------------------


def cmd_analyze(args) -> int:
    caps = _caps(args)
    graphs = _graphs(args)
    code = EXIT_OK
    for g in graphs:
        rep = analyze(g, caps, args.k or (2, 3, 4), args.st_max)
        _emit(rep)
        if isinstance(rep["bounds"], dict):
            if rep["bounds"]["violations"]:
                code = _worse(code, EXIT_COUNTEREXAMPLE)
            elif any(r["cap_hit"] for r in rep["bounds"]["rows"]):
                code = _worse(code, EXIT_UNDETERMINED)
    if args.dot:
        Path(args.dot).write_text("".join(to_dot(g, f"G{i}") for i, g in enumerate(graphs)))
    return code


def cmd_tower(args) -> int:
    caps = _caps(args)
    for g in _graphs(args):
        if args.depth > 0:
            _need_G(g)
        for i, L in enumerate(iter_line_graphs(g, args.depth, caps.max_vertices)):
            row = {"level": i, "vertices": L.n, "edges": L.m, "min_degree": L.min_degree,
                   "max_degree": L.max_degree}
            if args.emit_graph6:
                row["graph6"] = encode_graph6(L)
            _emit(row)
    return EXIT_OK


def cmd_dtilde(args) -> int:
    caps = _caps(args)
    code = EXIT_OK
    bad = []
    for g in _graphs(args):
        _need_G(g)
        if not args.audit:
            _emit({"d_tilde": d_tilde(g, "formula")})
            continue
        prof = d_tilde(g, "audit", caps.max_depth, caps.max_vertices)
        _emit(prof.to_dict())
        if prof.d_tilde_direct is None:
            code = _worse(code, EXIT_UNDETERMINED)
        elif not prof.agree:
            code = _worse(code, EXIT_COUNTEREXAMPLE)
            bad.append(g)
    if bad:
        _append_counterexamples(args.counterexamples, [serialize(g) for g in bad])
    return code


def cmd_index(args) -> int:
    caps = _caps(args)
    code = EXIT_OK
    for g in _graphs(args):
        _need_G(g)
        prof = d_tilde(g, "audit", caps.max_depth, caps.max_vertices)
        dt, delta = prof.d_tilde_direct, g.min_degree
        if args.kind == "tk":
            exact, last = t_k_exact(g, args.k, caps.max_depth, caps.max_vertices)
            bound = t_k_bound(delta, dt, args.k) if dt is not None and args.k >= 2 else None
            row = {"index": f"t_{args.k}", "exact": exact, "last_level": last, "bound": bound}
        else:
            from .bounds import hs_bound, ist_bound

            name = {"hs": "h_s", "ist": "i_st", "s": "s"}[args.kind]
            res = exact_index(g, name, args.s, args.t, caps)
            exact = res.value
            if dt is None:
                bound = None
            elif name == "h_s":
                bound = hs_bound(delta, dt, prof.ell, args.s)
            elif name == "s":
                bound = ist_bound(delta, dt, prof.ell, 0, 0)
            else:
                bound = ist_bound(delta, dt, prof.ell, args.s, args.t)
            row = res.to_dict() | {"bound": bound}
        _emit(row)
        if exact is None:
            code = _worse(code, EXIT_UNDETERMINED)
        elif bound is not None and exact > bound:
            code = _worse(code, EXIT_COUNTEREXAMPLE)
    return code


def cmd_oracle(args) -> int:
    caps = _caps(args)
    budget = caps.search_budget
    verdicts = []
    for g in _graphs(args):
        if args.name == "hamiltonian":
            cert = hamiltonian(g, budget)
        elif args.name == "s-hamiltonian":
            cert = s_hamiltonian(g, args.s, budget)
        elif args.name == "dominating-trail":
            cert = dominating_closed_trail(g, budget)
        elif args.name == "supereulerian":
            cert = spanning_closed_trail(g, budget)
        elif args.name == "st-supereulerian":
            cert = st_supereulerian(g, args.s, args.t, budget)
        else:
            cert = collapsible(g, caps.collapsible_edge_cap)
        _emit(cert.to_dict())
        verdicts.append(cert.verdict)
    return EXIT_UNDETERMINED if None in verdicts else EXIT_OK


def cmd_verify(args) -> int:
    caps = _caps(args)
    names: list[str] = []
    for chunk in args.suite or ["all"]:
        names.extend(x for x in chunk.split(",") if x)
    valid = ["all", *SUITES]
    for n in names:
        if n not in valid:
            raise UsageError(f"unknown suite {n!r}; valid suites: {', '.join(valid)}")
    if "all" in names:
        names = ["all"]
    if args.corpus == "builtin":
        corpus = builtin_corpus(args.seed)
    else:
        corpus = file_corpus(args.corpus)
        corpus.seed = args.seed
    config = {"suites": names, "corpus": args.corpus, "seed": args.seed, "caps": caps.to_dict()}
    report = run_suites(names, corpus, caps, config)
    text = _csv(report) if args.csv else dumps(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    found = [c for s in report["suites"] for c in s["counterexamples"]]
    if found:
        _append_counterexamples(args.counterexamples, [c["serialized"] for c in found])
    return exit_code(report)


def _append_counterexamples(path: str, lines: list[str]) -> None:
    """Append graph6 lines; multigraph serializations are not graph6 and are skipped."""
    keep = [x for x in lines if ":" not in x]
    if len(keep) < len(lines):
        logging.getLogger(__name__).warning("%d multigraph counterexamples not written", len(lines) - len(keep))
    with open(path, "a") as fh:
        fh.writelines(x + "\n" for x in keep)


def _csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "graph", "serialized", "status"])
    for s in report["suites"]:
        for r in s["rows"]:
            w.writerow([s["suite"], r["graph"], r["serialized"], r["status"]])
    return buf.getvalue()


def cmd_gen(args) -> int:
    if args.family == "b-family":
        corpus = generate_B_family(args.max_vertices)
    elif args.family == "random":
        corpus = random_connected(args.seed, per_n=args.count)
    else:
        corpus = named_corpus()
    for m in corpus:
        if not m.graph.is_simple:
            raise UsageError(f"{m.name} is a multigraph and has no graph6 form")
        line = encode_graph6(m.graph)
        sys.stdout.write(f"{line}\t{m.name}\n" if args.names else line + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="iterline", description="Iterated line graph indices and their bounds.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full report per input graph (JSON lines)")
    _add_input(a)
    _add_caps(a)
    a.add_argument("--k", type=int, action="append", help="triangularity level to report (repeatable)")
    a.add_argument("--st-max", type=int, default=1, help="bound rows for every (s, t) with s + t <= this")
    a.add_argument("--dot", help="also write the input graphs in DOT format here")
    a.set_defaults(func=cmd_analyze)

    t = sub.add_parser("tower", help="sizes and degrees of L^i(G), one JSON line per level")
    _add_input(t)
    t.add_argument("--depth", type=int, default=3)
    t.add_argument("--emit-graph6", action="store_true")
    _add_caps(t)
    t.set_defaults(func=cmd_tower)

    d = sub.add_parser("dtilde", help="least i with min degree of L^i(G) at least 3")
    _add_input(d)
    d.add_argument("--audit", action="store_true", help="compare the closed form with the tower")
    d.add_argument("--counterexamples", default="counterexamples.g6", help="file disagreements are appended to")
    _add_caps(d)
    d.set_defaults(func=cmd_dtilde)

    x = sub.add_parser("index", help="exact index next to its closed-form bound")
    x.add_argument("kind", choices=("tk", "hs", "ist", "s"))
    x.add_argument("--k", type=int, default=2)
    x.add_argument("--s", type=int, default=0)
    x.add_argument("--t", type=int, default=0)
    _add_input(x)
    _add_caps(x)
    x.set_defaults(func=cmd_index)

    o = sub.add_parser("oracle", help="run one exact oracle and print its certificate")
    o.add_argument("name", choices=ORACLES)
    o.add_argument("--s", type=int, default=0)
    o.add_argument("--t", type=int, default=0)
    _add_input(o)
    _add_caps(o)
    o.set_defaults(func=cmd_oracle)

    v = sub.add_parser("verify", help="run invariant suites and write a JSON report")
    v.add_argument("--suite", action="append", help=f"suite name, repeatable or comma separated: all, {', '.join(SUITES)}")
    v.add_argument("--corpus", default="builtin", help="'builtin' or a graph file")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--csv", action="store_true", help="one CSV row per graph instead of JSON")
    v.add_argument("--out", help="write the report here instead of stdout")
    v.add_argument("--counterexamples", default="counterexamples.g6", help="file counterexamples are appended to")
    _add_caps(v)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="print a corpus as graph6 lines")
    g.add_argument("family", choices=("b-family", "random", "named"))
    g.add_argument("--max-vertices", type=int, default=14)
    g.add_argument("--seed", type=int, default=42)
    g.add_argument("--count", type=int, default=10, help="graphs per vertex count (random)")
    g.add_argument("--names", action="store_true", help="append a tab and the member name")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, ParseError, NotInClassG, ValueError, OSError) as exc:
        sys.stderr.write(f"iterline: error: {exc}\n")
        return EXIT_USAGE
