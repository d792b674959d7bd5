"""Exit criteria. Each test checks one criterion at its stated scale.

A summary line per criterion is printed at the end of the pytest run.
Comparisons are exact; the domain is discrete.
"""

import subprocess
import sys
import time

import numpy as np
import pytest

from flowrank import kernels
from flowrank.io import loads, network_to_edges, parse_network, relation_from_tree
from flowrank.maxflow import exhaustive_min_cut, flow_matrix, lambda_oracle, max_flow_value
from flowrank.methods import flow_relation, rule, schulze_relation, solution
from flowrank.network import Network, margin_value
from flowrank.relation import Relation, classify_relation
from flowrank.verify import generators as gen
from flowrank.verify import run_suite
from flowrank.verify.generators import GeneratorSpec, default_labels, generate

from .conftest import DATA

NC_FLOWS = {
    ("a", "b"): 4, ("b", "a"): 2, ("a", "c"): 4, ("c", "a"): 4, ("a", "d"): 4, ("d", "a"): 4,
    ("b", "c"): 2, ("c", "b"): 4, ("b", "d"): 2, ("d", "b"): 4, ("c", "d"): 5, ("d", "c"): 4,
}
MARGINS = {
    ("a", "b"): 2, ("b", "a"): -2, ("a", "c"): 2, ("c", "a"): -2, ("a", "d"): 1, ("d", "a"): -1,
    ("b", "c"): 2, ("c", "b"): -2, ("b", "d"): 1, ("d", "b"): -1, ("c", "d"): 1, ("d", "c"): -1,
}


def suite_failures(names, count, seed, **config):
    """Failure counts for every listed property, exploratory or not."""
    reports = run_suite(names, count=count, seed=seed, **config)
    assert [r.name for r in reports] == list(names)
    return {r.name: len(r.failures) for r in reports if r.failures}


def cli(*args: str, stdin: str | None = None) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "flowrank", *args],
        input=stdin, capture_output=True, text=True, encoding="utf-8",
    )


@pytest.mark.acceptance(criterion=1)
def test_competition_flow_values(n_c, record_property):
    kernels.warmup()
    start = time.perf_counter()
    phi = flow_matrix(n_c).as_dict()
    single = {(s, t): max_flow_value(n_c, s, t) for s, t in NC_FLOWS}
    elapsed = time.perf_counter() - start
    assert phi == NC_FLOWS and single == NC_FLOWS
    assert elapsed < 1.0, f"took {elapsed:.3f}s"
    record_property("detail", f"12 values exact in {elapsed * 1000:.1f} ms")


@pytest.mark.acceptance(criterion=2)
def test_competition_relation_rule_solution(n_c, record_property):
    f = flow_relation(n_c)
    expected = {("a", "b"), ("a", "c"), ("c", "a"), ("a", "d"), ("d", "a"), ("c", "b"), ("d", "b"), ("c", "d")}
    assert set(f.pairs()) == expected | {(x, x) for x in "abcd"}
    assert [str(o) for o in rule("flow", n_c, None)] == ["a>c>d>b", "c>a>d>b", "c>d>a>b"]
    assert solution("flow", n_c, 1) == [frozenset("a"), frozenset("c")]
    record_property("detail", "relation, 3 rankings and winners {a},{c} exact")


@pytest.mark.acceptance(criterion=3)
def test_table_flow_versus_borda(table1, record_property):
    assert [str(o) for o in rule("flow", table1, None)] == ["a>b>c"]
    assert classify_relation(flow_relation(table1)).in_L
    assert solution("borda", table1, 1) == [frozenset("b")]
    out = cli("compare", str(DATA / "table1.table"), "--methods", "flow,borda")
    assert out.returncode == 0
    lines = out.stdout.splitlines()
    assert "maxima\tflow\t{a}" in lines and "maxima\tborda\t{b}" in lines
    assert "a b\t>\t<" in lines
    record_property("detail", "flow a>b>c, Borda winner b, contrast shown by compare")


@pytest.mark.acceptance(criterion=4)
def test_flow_versus_schulze_example(n_d, record_property):
    assert schulze_relation(n_d) == Relation.total(n_d.vertices)
    assert solution("schulze", n_d, 1) == [frozenset("a"), frozenset("b"), frozenset("c")]
    phi = flow_matrix(n_d)
    printed = [phi[p] for p in [("a", "b"), ("b", "a"), ("a", "c"), ("c", "a"), ("b", "c"), ("c", "b")]]
    assert printed == [2, 1, 1, 2, 1, 2]
    assert [str(o) for o in rule("flow", n_d, None)] == ["c>a>b"]
    assert classify_relation(flow_relation(n_d)).in_L
    assert solution("flow", n_d, 1) == [frozenset("c")]
    record_property("detail", "Schulze flat, flow c>a>b, winners {c}")


@pytest.mark.acceptance(criterion=5)
def test_margin_example(margin4, record_property):
    assert {p: margin_value(margin4, *p) for p in MARGINS} == MARGINS
    assert frozenset("d") not in solution("flow", margin4, 1)
    record_property("detail", "12 margins exact, {d} not a flow winner")


@pytest.mark.acceptance(criterion=6)
def test_single_arc_is_not_transitive(record_property):
    for n in (3, 4, 5):
        labels = default_labels(n)
        net = Network.from_arcs(labels, {(labels[0], labels[1]): 1})
        flags = classify_relation(flow_relation(net))
        assert flags.complete and flags.quasi_transitive and not flags.transitive, n
    record_property("detail", "n=3,4,5 complete, quasi-transitive, not transitive")


@pytest.mark.acceptance(criterion=7)
def test_path_oracle_equals_max_flow(record_property):
    rng = np.random.default_rng(7)
    start = time.perf_counter()
    pairs = 0
    for _ in range(200):
        net = gen.random_budget_network(rng, int(rng.integers(2, 5)), 12)
        assert net.n <= 4 and net.total_capacity <= 12
        for s, t, _ in flow_matrix(net).items():
            assert lambda_oracle(net, s, t) == max_flow_value(net, s, t), (network_to_edges(net), s, t)
            pairs += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 60, f"took {elapsed:.1f}s"
    record_property("detail", f"200 networks, {pairs} pairs equal in {elapsed:.1f}s")


@pytest.mark.acceptance(criterion=8)
def test_exhaustive_cut_duality(record_property):
    rng = np.random.default_rng(8)
    for _ in range(200):
        n = int(rng.integers(2, 7))
        net = gen.random_network(rng, n, 4, zero_prob=float(rng.random() * 0.6))
        for s, t, _ in flow_matrix(net).items():
            assert exhaustive_min_cut(net, s, t) == max_flow_value(net, s, t), (network_to_edges(net), s, t)
    record_property("detail", "200 networks up to n=6, every pair equal")


STRUCTURAL = [
    "quasi-transitivity", "gomory", "neut-F", "homo-net", "reversal", "szigeti",
    "flat", "flat-add", "oi", "begv-lemma1", "cor-new",
]


@pytest.mark.acceptance(criterion=9)
def test_structural_suite(record_property):
    start = time.perf_counter()
    failures = suite_failures(STRUCTURAL, 1000, 9, max_n=6, max_cap=4)
    elapsed = time.perf_counter() - start
    assert not failures, f"failing properties: {failures}"
    assert elapsed < 120, f"took {elapsed:.1f}s"
    record_property("detail", f"{len(STRUCTURAL)} properties x 1000 instances in {elapsed:.1f}s")


RELATION_THEORY = [
    "greco-a", "greco-b", "lin-ref", "ckR", "ckrev", "totale", "inclusion",
    "prop-2", "prop-2-bis", "prop-3", "prop-3-bis", "qA", "exist-max-min",
]


@pytest.mark.acceptance(criterion=10)
def test_relation_theory_suite(record_property):
    failures = suite_failures(RELATION_THEORY, 500, 10, max_n=5)
    assert not failures, f"failing properties: {failures}"
    record_property("detail", f"{len(RELATION_THEORY)} properties x 500 instances")


@pytest.mark.acceptance(criterion=11)
def test_relation_round_trip(record_property):
    failures = suite_failures(["main-qt", "core"], 500, 11, max_n=6)
    assert not failures, f"failing properties: {failures}"
    record_property("detail", "500 quasi-transitive relations recovered exactly")


RULE_SOLUTION = [
    "bg-1", "bg-2", "bg-3", "bg-4", "bg-5", "sym-rule", "no-impo-rule",
    "decisive", "neut-sol", "homo-net2", "no-impo-k", "inclusion2", "eff", "mon1",
    "reversal-bias", "reversal-bias-schulze", "sym-sol", "balan-ut-2",
]


@pytest.mark.acceptance(criterion=12)
def test_rule_and_solution_suite(record_property):
    failures = suite_failures(RULE_SOLUTION, 500, 12)
    assert not failures, f"failing properties: {failures}"
    record_property("detail", f"{len(RULE_SOLUTION)} properties x 500 instances")


@pytest.mark.acceptance(criterion=13)
def test_schulze_consistency(record_property):
    failures = suite_failures(["lemma-schulze", "schulze-bruteforce"], 500, 13, max_n=5)
    assert not failures, f"failing properties: {failures}"
    record_property("detail", "Gomory-Hu condition and path maximin agree on 500 networks")


@pytest.mark.acceptance(criterion=14)
def test_cli_contract(tmp_path, record_property):
    def pipeline() -> list[str]:
        text = cli("gen", "--class", "arbitrary", "--n", "5", "--seed", "14").stdout
        ranked = cli("rank", "-", stdin=text)
        winners = cli("winners", "-k", "2", "-", stdin=text)
        assert ranked.returncode == winners.returncode == 0
        return [text, ranked.stdout, winners.stdout]

    first = pipeline()
    assert first == pipeline()

    bad = tmp_path / "bad.edges"
    bad.write_text("a,b,1\nb,c,x\n")
    assert cli("rank", str(bad)).returncode == 2
    assert cli("check", "--props", "no-such-prop").returncode == 2
    assert cli("winners", str(DATA / "n_c.table"), "-k", "9").returncode == 2
    assert cli("check", "--props", "quasi-transitivity", "--count", "5").returncode == 0

    assert parse_network(first[0]) == generate(GeneratorSpec("arbitrary", 5, seed=14))
    tree = cli("--format", "tree", "rank", "-", stdin=first[0])
    assert relation_from_tree(loads(tree.stdout)["relation"]) == flow_relation(parse_network(first[0]))
    record_property("detail", "pipeline byte-identical, exit codes 0/2, round-trips exact")


def test_acceptance_report_covers_every_criterion():
    numbers = sorted(
        m.kwargs["criterion"]
        for name, fn in globals().items()
        if name.startswith("test_") and hasattr(fn, "pytestmark")
        for m in fn.pytestmark
        if m.name == "acceptance"
    )
    assert numbers == list(range(1, 15))
