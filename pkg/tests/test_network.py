import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from flowrank.errors import (
    CapacityOverflowError,
    DomainTooSmallError,
    IncompatibleNetworksError,
    InvalidPermutationError,
    MalformedInputError,
    UnknownVertexError,
)
from flowrank.network import (
    CAPACITY_LIMIT,
    CompetitionTable,
    Network,
    VertexSet,
    add,
    classify,
    from_table,
    indegree,
    indegrees,
    margin,
    margin_value,
    network_from_relation,
    outdegree,
    outdegrees,
    relabel,
    reverse,
    scale,
)
from flowrank.relation import LinearOrder, Relation
from flowrank.verify.generators import GeneratorSpec, generate

from .conftest import networks

NC_CAPACITIES = {
    ("a", "b"): 1, ("b", "a"): 0, ("a", "c"): 1, ("c", "a"): 2,
    ("a", "d"): 2, ("d", "a"): 2, ("b", "c"): 1, ("c", "b"): 2,
    ("b", "d"): 1, ("d", "b"): 1, ("c", "d"): 2, ("d", "c"): 2,
}


def test_table1_capacities(table1):
    expected = {("a", "b"): 2, ("b", "a"): 0, ("a", "c"): 2, ("c", "a"): 0, ("b", "c"): 5, ("c", "b"): 0}
    assert {(x, y): table1.c(x, y) for x, y in expected} == expected


def test_competition_capacities(n_c):
    assert {(x, y): c for x, y, c in n_c.arcs()} == NC_CAPACITIES


def test_repeated_rows_add_up():
    net = from_table([("a", 1, 0, "b"), ("a", 2, 1, "b")])
    assert (net.c("a", "b"), net.c("b", "a")) == (3, 1)


def test_table_errors():
    with pytest.raises(MalformedInputError):
        from_table([("a", 1, 0, "a")])
    with pytest.raises(DomainTooSmallError):
        from_table([])
    with pytest.raises(MalformedInputError):
        CompetitionTable((("a", -1, 0, "b"),))
    with pytest.raises(UnknownVertexError):
        from_table([("a", 1, 0, "z")], vertices=["a", "b"])


def test_sort_labels():
    net = from_table([("c", 1, 0, "a"), ("b", 2, 0, "a")], sort_labels=True)
    assert net.labels == ("a", "b", "c")
    assert net.c("c", "a") == 1


@given(st.permutations(range(6)))
def test_from_table_ignores_row_order(perm):
    rows = [("a", 1, 0, "b"), ("a", 1, 2, "c"), ("a", 2, 2, "d"),
            ("b", 1, 2, "c"), ("b", 1, 1, "d"), ("c", 2, 2, "d")]
    base = from_table(rows, vertices="abcd")
    assert from_table([rows[i] for i in perm], vertices="abcd") == base


def test_network_validation():
    with pytest.raises(DomainTooSmallError):
        Network(VertexSet("a"), [[0]])
    with pytest.raises(MalformedInputError):
        Network(VertexSet("ab"), [[0, -1], [0, 0]])
    with pytest.raises(MalformedInputError):
        Network(VertexSet("ab"), [[1, 0], [0, 0]])
    with pytest.raises(MalformedInputError):
        Network(VertexSet("abc"), [[0, 1], [0, 0]])
    with pytest.raises(MalformedInputError):
        VertexSet(["a", "a"])
    with pytest.raises(CapacityOverflowError):
        Network(VertexSet("ab"), [[0, CAPACITY_LIMIT], [0, 0]])


def test_capacity_is_read_only(n_c):
    with pytest.raises(ValueError):
        n_c.capacity[0, 1] = 5


def test_degrees(n_c):
    assert (outdegree(n_c, "a"), indegree(n_c, "a")) == (4, 4)
    assert (outdegree(n_c, "b"), indegree(n_c, "b")) == (2, 4)
    zero = Network.zero("abc")
    assert outdegree(zero, "b") == indegree(zero, "b") == 0
    with pytest.raises(UnknownVertexError):
        outdegree(n_c, "z")


@given(networks())
def test_degree_sums(net):
    assert outdegrees(net).sum() == indegrees(net).sum() == net.total_capacity


def test_reverse(n_c):
    rev = reverse(n_c)
    assert (rev.c("a", "b"), rev.c("b", "a")) == (0, 1)
    assert outdegree(rev, "b") == indegree(n_c, "b")
    assert reverse(Network.zero("ab")) == Network.zero("ab")


@given(networks())
def test_reverse_is_involution(net):
    assert reverse(reverse(net)) == net


def test_relabel(n_c):
    assert relabel(n_c, {x: x for x in "abcd"}) == n_c
    swapped = relabel(n_c, {"a": "b", "b": "a", "c": "c", "d": "d"})
    assert swapped.c("b", "a") == n_c.c("a", "b") == 1
    with pytest.raises(InvalidPermutationError):
        relabel(n_c, {"a": "b", "b": "b", "c": "c", "d": "d"})


@given(networks(), st.data())
def test_relabel_round_trip_and_composition(net, data):
    labels = list(net.labels)
    psi = dict(zip(labels, data.draw(st.permutations(labels))))
    phi = dict(zip(labels, data.draw(st.permutations(labels))))
    inverse = {v: k for k, v in psi.items()}
    assert relabel(relabel(net, psi), inverse) == net
    composed = {x: psi[phi[x]] for x in labels}
    assert relabel(net, composed) == relabel(relabel(net, phi), psi)


def test_scale_and_add(n_c):
    assert scale(n_c, 1) == n_c
    assert scale(n_c, 2).c("c", "d") == 4
    assert add(n_c, Network.zero(n_c.vertices)) == n_c
    with pytest.raises(IncompatibleNetworksError):
        add(n_c, Network.zero("abc"))
    with pytest.raises(MalformedInputError):
        scale(n_c, 0)


def test_classify_examples(n_c, table1):
    t = classify(table1)
    assert not t.balanced and not t.pseudo_symmetric
    c = classify(n_c)
    assert not c.balanced and not c.pseudo_symmetric
    const = classify(Network(VertexSet("abcd"), np.full((4, 4), 3) - 3 * np.eye(4, dtype=int)))
    assert const.balance == 6 and const.in_O and const.in_I and const.constant == 3
    assert const.pseudo_symmetric


@given(networks())
def test_class_implications(net):
    cls = classify(net)
    if cls.is_constant:
        assert cls.balanced and cls.in_O and cls.in_I
    if cls.balanced:
        total = outdegrees(net) + indegrees(net)
        assert np.all(total == cls.balance * (net.n - 1))


@given(st.integers(2, 6), st.integers(0, 2**32), st.integers(0, 2**32))
def test_sum_of_pseudo_symmetric_is_pseudo_symmetric(n, s1, s2):
    first = generate(GeneratorSpec("pseudo_symmetric", n, seed=s1))
    second = generate(GeneratorSpec("pseudo_symmetric", n, seed=s2))
    assert classify(add(first, second)).pseudo_symmetric


def test_margin(margin4):
    assert margin_value(margin4, "a", "b") == 2
    assert margin_value(margin4, "b", "a") == -2
    assert margin_value(margin4, "a", "d") == 1
    assert margin_value(margin4, "d", "c") == -1
    assert not margin(Network.zero("abc")).any()


@given(networks())
def test_margin_antisymmetric(net):
    g = margin(net)
    assert np.array_equal(g, -g.T)


def test_network_from_relation():
    assert network_from_relation(Relation.total("abc")) == Network.zero("abc")
    net = network_from_relation(LinearOrder(("a", "b", "c")).to_relation())
    assert {(x, y): c for x, y, c in net.arcs() if c} == {("a", "b"): 1, ("a", "c"): 1, ("b", "c"): 1}
