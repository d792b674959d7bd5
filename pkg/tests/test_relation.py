import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from flowrank.errors import (
    EnumerationLimitError,
    InfeasibleForcingError,
    InvalidKError,
    InvalidRestrictionError,
    NotQuasiAcyclicError,
)
from flowrank.maxflow import flow_matrix
from flowrank.methods import flow_relation
from flowrank.network import Network
from flowrank.relation import (
    LinearOrder,
    Relation,
    brute_force_extensions,
    brute_force_refinements,
    classify_relation,
    count_linear_extensions,
    count_linear_refinements,
    iter_linear_extensions,
    k_maximum_sets,
    k_maximum_sets_via_refinements,
    linear_extension_forcing,
    linear_extensions,
    linear_refinements,
    maxima,
    minima,
    relation_from_scores,
    restrict,
    reverse_rel,
    satisfies_gomory_hu_condition,
    strict,
)
from flowrank.verify.generators import default_labels

from .conftest import complete_relations, relations


def orders(items):
    return {o.ranking for o in items}


def pairs_of(rel):
    return set(rel.pairs())


def test_strict_reverse_restrict(n_c):
    full = Relation.total("abc")
    assert not strict(full).pairs()
    f = flow_relation(n_c)
    assert pairs_of(strict(f)) == {("a", "b"), ("c", "b"), ("d", "b"), ("c", "d")}
    sub = restrict(f, ["c", "b"])
    assert sub.labels == ("b", "c") and sub.strictly_prefers("c", "b")
    with pytest.raises(InvalidRestrictionError):
        restrict(f, [])


@given(relations())
def test_reverse_is_involution(rel):
    assert reverse_rel(reverse_rel(rel)) == rel


def test_classify_examples():
    full = classify_relation(Relation.total("abc"))
    assert full.complete and full.reflexive and full.quasi_transitive and not full.antisymmetric
    for n in (3, 4, 5):
        labels = default_labels(n)
        net = Network.from_arcs(labels, {(labels[0], labels[1]): 1})
        flags = classify_relation(flow_relation(net))
        assert flags.complete and flags.quasi_transitive and not flags.transitive
    order = classify_relation(LinearOrder(("b", "a", "c")).to_relation())
    assert order.in_L and order.in_O and order.in_T and order.in_A


def test_classify_acyclicity_matches_brute_force_cycle_search():
    # reflexive pairs do not make a cycle; a 2-cycle does
    assert classify_relation(Relation.from_pairs("ab", [("a", "b")], reflexive=True)).acyclic
    assert not classify_relation(Relation.from_pairs("ab", [("a", "b"), ("b", "a")])).acyclic


def has_cycle_brute(rel: Relation) -> bool:
    m = rel.matrix
    for size in range(2, rel.n + 1):
        for seq in itertools.permutations(range(rel.n), size):
            if all(m[seq[i], seq[(i + 1) % size]] for i in range(size)):
                return True
    return False


@given(relations(max_n=4))
def test_acyclic_flag_matches_sequence_definition(rel):
    assert classify_relation(rel).acyclic == (not has_cycle_brute(rel))


@given(complete_relations())
def test_class_hierarchy(rel):
    flags = classify_relation(rel)
    if flags.in_L:
        assert flags.in_O
    if flags.in_O:
        assert flags.in_T
    if flags.in_T:
        assert flags.in_A


def test_scores_examples(n_c):
    assert relation_from_scores("abc", np.full((3, 3), 7)) == Relation.total("abc")
    assert relation_from_scores(n_c.vertices, flow_matrix(n_c)) == flow_relation(n_c)
    theta = np.zeros((3, 3), dtype=int)
    theta[0, 1] = theta[1, 2] = 5
    theta[0, 2] = 1
    assert not satisfies_gomory_hu_condition(theta)


@given(st.integers(2, 5).flatmap(
    lambda n: st.lists(st.integers(0, 4), min_size=n * n, max_size=n * n).map(
        lambda v: np.array(v).reshape(n, n))))
def test_gomory_hu_scores_give_quasi_transitive(theta):
    if satisfies_gomory_hu_condition(theta):
        flags = classify_relation(relation_from_scores(default_labels(len(theta)), theta))
        assert flags.complete and flags.quasi_transitive


def test_extension_examples():
    assert len(linear_extensions(Relation.empty("abc"))) == 6
    order = LinearOrder(("c", "a", "b"))
    assert orders(linear_extensions(order.to_relation())) == {order.ranking}
    cyclic = Relation.from_pairs("abc", [("a", "b"), ("b", "c"), ("c", "a")])
    assert linear_extensions(cyclic) == []
    with pytest.raises(EnumerationLimitError):
        linear_extensions(Relation.empty("abcdefgh"), limit=100)
    assert count_linear_extensions(Relation.empty("abcdefgh")) == math.factorial(8)


def test_extensions_are_lexicographic():
    got = [str(o) for o in iter_linear_extensions(Relation.from_pairs("abc", [("c", "a")]))]
    assert got == ["b>c>a", "c>a>b", "c>b>a"]


@given(relations(max_n=5))
def test_extensions_match_brute_force(rel):
    got = linear_extensions(rel, None)
    assert orders(got) == orders(brute_force_extensions(rel))
    assert count_linear_extensions(rel) == len(got)
    assert bool(got) == classify_relation(rel).acyclic


def test_forcing(n_c):
    o = linear_extension_forcing(Relation.empty("abc"), [("a", "b")])
    assert o.above("a", "b")
    f = linear_extension_forcing(strict(flow_relation(n_c)), [("a", "c")])
    assert str(f) == "a>c>d>b"
    with pytest.raises(InfeasibleForcingError):
        linear_extension_forcing(Relation.empty("abc"), [("a", "b"), ("b", "a")])


def test_refinement_examples(n_c):
    got = [str(o) for o in linear_refinements(flow_relation(n_c))]
    assert got == ["a>c>d>b", "c>a>d>b", "c>d>a>b"]
    assert len(linear_refinements(Relation.total("abc"))) == 6
    order = LinearOrder(("b", "c", "a"))
    assert orders(linear_refinements(order.to_relation())) == {order.ranking}
    with pytest.raises(NotQuasiAcyclicError):
        linear_refinements(Relation.from_pairs("abc", [("a", "b"), ("b", "c"), ("c", "a")], reflexive=True))


@given(complete_relations())
def test_refinements_match_brute_force(rel):
    if not classify_relation(rel).in_A:
        return
    got = linear_refinements(rel, None)
    assert got
    assert orders(got) == orders(brute_force_refinements(rel))
    assert orders(got) == orders(linear_extensions(strict(rel), None))
    assert count_linear_refinements(rel) == len(got)


def test_k_maximum_examples(n_c):
    f = flow_relation(n_c)
    assert k_maximum_sets(f, 1) == [frozenset("a"), frozenset("c")]
    assert k_maximum_sets(f, 3) == [frozenset("acd")]
    order = LinearOrder(("d", "b", "a", "c")).to_relation()
    assert k_maximum_sets(order, 2) == [frozenset("db")]
    assert len(k_maximum_sets(Relation.total("abcd"), 2)) == 6
    with pytest.raises(InvalidKError):
        k_maximum_sets(f, 0)
    with pytest.raises(InvalidKError):
        k_maximum_sets(f, 4)


def test_maxima_minima(n_c):
    f = flow_relation(n_c)
    assert maxima(f) == {"a", "c"} and minima(f) == {"b"}
    full = Relation.total("abc")
    assert maxima(full) == minima(full) == {"a", "b", "c"}
    order = LinearOrder(("b", "a", "c")).to_relation()
    assert (maxima(order), minima(order)) == ({"b"}, {"c"})


@given(complete_relations(min_n=2))
def test_k_maximum_sets_laws(rel):
    n = rel.n
    in_a = classify_relation(rel).in_A
    families = {k: set(k_maximum_sets(rel, k)) for k in range(1, n)}
    for k in range(1, n):
        complement = {frozenset(rel.labels) - w for w in families[n - k]}
        assert set(k_maximum_sets(reverse_rel(rel), k)) == complement
        if in_a:
            assert families[k] == set(k_maximum_sets_via_refinements(rel, k))
            assert 1 <= len(families[k]) <= count_linear_refinements(rel)
    if in_a:
        assert maxima(rel) and minima(rel)
        for l, k, m in itertools.combinations_with_replacement(range(1, n), 3):
            for w in families[k]:
                assert any(w <= big for big in families[m])
                assert any(small <= w for small in families[l])


@given(complete_relations(min_n=2))
def test_totale(rel):
    every = all(len(k_maximum_sets(rel, k)) == math.comb(rel.n, k) for k in range(1, rel.n))
    assert every == (rel == Relation.total(rel.vertices))


# --- the acyclic-but-not-quasi-transitive gap ---------------------------------


def test_incomparable_pair_need_not_be_orderable_both_ways():
    rel = Relation.from_pairs("xyz", [("y", "z"), ("z", "x")])
    assert classify_relation(rel).acyclic
    assert ("x", "y") not in rel and ("y", "x") not in rel
    assert not any(o.above("x", "y") for o in linear_extensions(rel))


def test_weak_preference_not_realised_outside_quasi_transitive():
    rel = Relation.from_pairs("xzw", [("z", "w"), ("w", "x"), ("x", "z"), ("z", "x")], reflexive=True)
    flags = classify_relation(rel)
    assert flags.in_A and not flags.in_T
    assert rel.weakly_prefers("x", "z")
    assert not any(o.above("x", "z") for o in linear_refinements(rel))
    assert all("x" not in w for w in k_maximum_sets(rel, 2))


@given(complete_relations(min_n=2), st.data())
def test_weak_preference_realised_for_quasi_transitive(rel, data):
    if not classify_relation(rel).in_T:
        return
    x = data.draw(st.sampled_from(rel.labels))
    beaten = [y for y in rel.labels if y != x and rel.weakly_prefers(x, y)]
    refs = linear_refinements(rel, None)
    assert any(all(o.above(x, y) for y in beaten) for o in refs)
    k = rel.n - len(beaten)
    if 1 <= k <= rel.n - 1:
        assert any(x in w for w in k_maximum_sets(rel, k))
