from __future__ import annotations

import json

import pytest

from iterline import divalent
from iterline.caps import Caps
from iterline.corpus import Corpus, Member, generate_B_family, named_corpus, random_connected, random_low_degree
from iterline.formats import encode_graph6
from iterline.graph import MultiGraph, bowtie_graph, complete_graph, double_star_tree, petersen_graph
from iterline.harness import (
    SUITES,
    analyze,
    divalent_path_shape,
    dumps,
    exit_code,
    run_suite,
    run_suites,
)


@pytest.fixture(scope="module")
def small_corpus() -> Corpus:
    return (named_corpus() + generate_B_family(10) + random_connected(1, n_values=range(5, 8), per_n=4)
            + random_low_degree(1, count=10, n_values=range(5, 8)))


@pytest.mark.parametrize("suite", list(SUITES))
def test_every_suite_passes_on_small_corpus(suite, small_corpus):
    rep = run_suite(suite, small_corpus, Caps())
    assert rep["summary"]["rows"] > 0
    assert rep["summary"]["fail"] == 0 and rep["summary"]["disagree"] == 0
    assert rep["counterexamples"] == []
    assert {r["status"] for r in rep["rows"]} <= {"pass", "undetermined"}


def test_unknown_suite_lists_valid_names(small_corpus):
    with pytest.raises(ValueError, match="valid suites: all, hnw"):
        run_suite("lemma99", small_corpus)


def test_report_is_deterministic_and_versioned(small_corpus):
    a = dumps(run_suites(["eq4-audit", "hnw"], small_corpus, Caps(), {"seed": 1}))
    b = dumps(run_suites(["eq4-audit", "hnw"], small_corpus, Caps(), {"seed": 1}))
    assert a == b
    rep = json.loads(a)
    assert rep["schema"] == 1 and rep["config"] == {"seed": 1}
    assert [s["suite"] for s in rep["suites"]] == ["eq4-audit", "hnw"]


def test_all_expands_to_every_suite():
    tiny = Corpus(0, [Member("K4", complete_graph(4), ("named",))])
    rep = run_suites(["all"], tiny)
    assert [s["suite"] for s in rep["suites"]] == list(SUITES)


def test_exit_codes():
    assert exit_code({"summary": {"fail": 0, "disagree": 0, "undetermined": 0}}) == 0
    assert exit_code({"summary": {"fail": 0, "disagree": 0, "undetermined": 2}}) == 3
    assert exit_code({"summary": {"fail": 1, "disagree": 0, "undetermined": 2}}) == 1
    assert exit_code({"summary": {"fail": 0, "disagree": 1, "undetermined": 0}}) == 1


def test_audit_reports_disagreements_as_counterexamples(monkeypatch):
    monkeypatch.setattr(divalent, "d_tilde_formula", lambda g, profile=None: 99)
    c = Corpus(0, [Member("dstar", double_star_tree(), ("named",)), Member("rnd", bowtie_graph(), ("random",))])
    rep = run_suite("eq4-audit", c, Caps())
    assert [r["status"] for r in rep["rows"]] == ["fail", "disagree"]
    assert [x["graph"] for x in rep["counterexamples"]] == ["dstar", "rnd"]
    assert rep["counterexamples"][0]["serialized"] == encode_graph6(double_star_tree())
    assert rep["summary"]["agreement_rate"] == 0.0


def test_eq4_audit_undetermined_under_tight_cap():
    c = Corpus(0, [Member("dstar", double_star_tree(), ("named",))])
    rep = run_suite("eq4-audit", c, Caps(max_vertices=3))
    assert rep["rows"][0]["status"] == "undetermined"
    assert exit_code({"summary": rep["summary"]}) == 3


def test_eq6_rows_record_equality_onset():
    c = Corpus(0, [Member("petersen", petersen_graph(), ("named",))])
    (row,) = run_suite("eq6", c, Caps())["rows"]
    assert row["checks"][0] == {"k": 2, "exact": 2, "bound": 2, "last_level": 2, "ok": True}
    assert row["equality_onset"] == 2


def test_collapsible_suite_fixed_rows():
    rep = run_suite("collapsible", Corpus(0, []), Caps())
    kinds = [r["kind"] for r in rep["rows"]]
    assert kinds.count("definition") == 5 and kinds.count("contraction") == 10


def test_divalent_path_shape():
    g = double_star_tree()
    assert divalent_path_shape(g, [0]) == (1, (3, 3))
    assert divalent_path_shape(g, [1]) == (1, (1, 3))
    assert divalent_path_shape(g, [1, 3]) is None
    bow = bowtie_graph()
    assert divalent_path_shape(bow, [0, 1, 2]) == (3, (4, 4))
    assert divalent_path_shape(bow, [0, 3]) is None
    assert divalent_path_shape(MultiGraph(4, [(0, 1), (1, 2), (2, 3), (1, 3)]), [0, 1]) is None
    assert divalent_path_shape(g, []) is None


def test_analyze_fields():
    rep = analyze(double_star_tree())
    assert rep["divalent"]["ell0"] == 2 and rep["divalent"]["d_tilde_direct"] == 3
    assert rep["divalent"]["pendant_condition"] is True
    pet = analyze(petersen_graph())
    h0 = next(r for r in pet["bounds"]["rows"] if (r["s"], r["t"]) == (0, 0))
    assert h0["hs_exact"] == 1 and h0["hs_bound"] == 2
    c5 = analyze(MultiGraph(5, [(i, (i + 1) % 5) for i in range(5)]))
    assert c5["class"] == "Cycle" and c5["bounds"] == "not-applicable"
