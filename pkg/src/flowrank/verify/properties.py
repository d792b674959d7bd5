"""Named randomized properties.

Each property draws one random instance from the ``Generator`` of a
:class:`Trial`, records a text rendering of it, and reports every violated
expectation. Properties marked exploratory are run and reported but never
make a suite fail.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from flowrank.io import network_to_edges
from flowrank.maxflow import (
    check_gomory_hu,
    cut_capacity,
    exhaustive_min_cut,
    flow_matrix,
    lambda_oracle,
    max_flow_value,
    max_flow_witness,
    min_cut,
)
from flowrank.methods import (
    borda_relation,
    dual_borda_relation,
    flow_relation,
    schulze_relation,
    schulze_strength,
    schulze_strength_bruteforce,
)
from flowrank.network import (
    Network,
    add,
    classify,
    indegrees,
    network_from_relation,
    outdegrees,
    relabel,
    reverse,
    scale,
)
from flowrank.relation import (
    LinearOrder,
    Relation,
    brute_force_extensions,
    brute_force_refinements,
    classify_relation,
    count_linear_refinements,
    iter_linear_extensions,
    iter_linear_refinements,
    k_maximum_sets,
    k_maximum_sets_via_refinements,
    linear_refinements,
    maxima,
    minima,
    relation_from_scores,
    reverse_rel,
    satisfies_gomory_hu_condition,
    strict,
)
from flowrank.verify import generators as gen
from flowrank.verify.sufficiency import fb_check, fb_sufficient_oracle, parametric_coefficients_ok


@dataclass(frozen=True)
class SuiteConfig:
    max_n: int = 6
    max_cap: int = 4


class Trial:
    """One randomized instance: its generator, rendering and violations."""

    def __init__(self, rng: np.random.Generator, config: SuiteConfig):
        self.rng = rng
        self.config = config
        self.instance = ""
        self.problems: list[str] = []

    def size(self, lo: int = 2, hi: int | None = None) -> int:
        top = self.config.max_n if hi is None else min(hi, self.config.max_n)
        return int(self.rng.integers(lo, max(lo, top) + 1))

    def cap(self) -> int:
        return self.config.max_cap

    def seed(self) -> int:
        return int(self.rng.integers(0, 2**63))

    def show_network(self, net: Network, label: str = "") -> Network:
        text = network_to_edges(net, header=False)
        self.instance += (f"[{label}]\n" if label else "") + text
        return net

    def show_relation(self, rel: Relation, label: str = "") -> Relation:
        doc = {"vertices": list(rel.labels), "pairs": [list(p) for p in rel.pairs()]}
        self.instance += (f"[{label}] " if label else "") + json.dumps(doc) + "\n"
        return rel

    def note(self, text: str) -> None:
        self.instance += text + "\n"

    def expect(self, condition: bool, message: str) -> bool:
        if not condition:
            self.problems.append(message)
        return bool(condition)


@dataclass(frozen=True)
class Property:
    name: str
    group: str
    check: Callable[[Trial], None]
    exploratory: bool = False
    summary: str = ""


REGISTRY: dict[str, Property] = {}


def register(name: str, group: str, *, exploratory: bool = False):
    def wrap(func: Callable[[Trial], None]) -> Callable[[Trial], None]:
        if name in REGISTRY:
            raise ValueError(f"duplicate property {name!r}")
        doc = (func.__doc__ or "").strip().splitlines()
        REGISTRY[name] = Property(name, group, func, exploratory, doc[0] if doc else "")
        return func

    return wrap


# --- instance helpers -----------------------------------------------------


def class_network(t: Trial, kind: str, n: int) -> Network:
    cap = t.cap()
    spec = gen.GeneratorSpec(
        kind,
        n,
        max_capacity=cap,
        seed=t.seed(),
        k=int(t.rng.integers(0, cap + 1)) if kind == "k_balanced" else None,
        value=int(t.rng.integers(0, cap + 1)) if kind == "constant" else None,
    )
    return gen.generate(spec)


def any_network(t: Trial, lo: int = 2, hi: int | None = None, label: str = "") -> Network:
    """Mixture of arbitrary, sparse and structured networks."""
    n = t.size(lo, hi)
    r = t.rng.random()
    if r < 0.5:
        net = gen.random_network(t.rng, n, t.cap())
    elif r < 0.75:
        net = gen.random_network(t.rng, n, t.cap(), zero_prob=0.6)
    elif r < 0.85:
        half = gen.random_network(t.rng, n, t.cap())
        net = add(half, reverse(half))
    else:
        kind = ["k_balanced", "class_O", "class_I", "pseudo_symmetric", "constant"][
            int(t.rng.integers(5))
        ]
        net = class_network(t, kind, n)
    return t.show_network(net, label)


def agreeing_class_network(t: Trial, lo: int = 2) -> Network:
    kind = ["k_balanced", "class_O", "class_I", "constant"][int(t.rng.integers(4))]
    net = class_network(t, kind, t.size(lo))
    t.note(f"class: {kind}")
    return t.show_network(net)


def orders(items) -> set[tuple[str, ...]]:
    return {o.ranking for o in items}


def set_family(sets) -> set[frozenset[str]]:
    return set(sets)


def map_order(order: LinearOrder, psi: dict[str, str]) -> LinearOrder:
    return LinearOrder(tuple(psi[x] for x in order.ranking))


def all_k_subsets(labels, k: int) -> set[frozenset[str]]:
    return {frozenset(c) for c in itertools.combinations(labels, k)}


def strictly_beats(rel: Relation, x: int, y: int) -> bool:
    return bool(rel.matrix[x, y] and not rel.matrix[y, x])


def beaten_by(order: LinearOrder, x: str) -> frozenset[str]:
    return order.beaten_by(x)


# --- maximum flow ---------------------------------------------------------


@register("phi-equals-lambda", "maxflow")
def _phi_equals_lambda(t: Trial) -> None:
    """Path-counting oracle equals max-flow value on every pair."""
    net = t.show_network(gen.random_budget_network(t.rng, t.size(2, 4), 12))
    for s, x in itertools.permutations(net.labels, 2):
        phi, lam = max_flow_value(net, s, x), lambda_oracle(net, s, x)
        t.expect(phi == lam, f"({s},{x}): max flow {phi} != path oracle {lam}")


@register("max-flow-min-cut", "maxflow")
def _max_flow_min_cut(t: Trial) -> None:
    """Max-flow value equals the minimum over all admissible cuts."""
    net = any_network(t, hi=6)
    for s, x in itertools.permutations(net.labels, 2):
        phi, cut = max_flow_value(net, s, x), exhaustive_min_cut(net, s, x)
        t.expect(phi == cut, f"({s},{x}): max flow {phi} != min cut {cut}")


@register("degree-bound", "maxflow")
def _degree_bound(t: Trial) -> None:
    """Flow value never exceeds the source outdegree or the sink indegree."""
    net = any_network(t)
    out, inn = outdegrees(net), indegrees(net)
    m = flow_matrix(net).values
    for i, j in itertools.permutations(range(net.n), 2):
        t.expect(m[i, j] <= min(out[i], inn[j]), f"phi[{i},{j}]={m[i, j]} exceeds degree bound")


@register("witness", "maxflow")
def _witness(t: Trial) -> None:
    """Witness flow is feasible, optimal and has no inflow at the source."""
    net = any_network(t)
    for s, x in itertools.permutations(net.labels, 2):
        f = max_flow_witness(net, s, x)
        si = net.vertices.index(s)
        t.expect(f.is_feasible(net), f"({s},{x}): witness infeasible")
        t.expect(f.value == max_flow_value(net, s, x), f"({s},{x}): witness value {f.value}")
        t.expect(int(f.values[:, si].sum()) == 0, f"({s},{x}): flow enters the source")


@register("min-cut", "maxflow")
def _min_cut(t: Trial) -> None:
    """Returned cut separates the pair and has capacity equal to the flow."""
    net = any_network(t)
    for s, x in itertools.permutations(net.labels, 2):
        cut = min_cut(net, s, x)
        t.expect(cut.separates(s, x), f"({s},{x}): cut does not separate")
        t.expect(
            cut_capacity(net, cut) == max_flow_value(net, s, x),
            f"({s},{x}): cut capacity differs from max flow",
        )


@register("gomory", "maxflow")
def _gomory(t: Trial) -> None:
    """Flow matrix satisfies the triple inequality."""
    net = any_network(t)
    t.expect(check_gomory_hu(flow_matrix(net)), "triple inequality violated")


@register("reversal", "maxflow")
def _reversal(t: Trial) -> None:
    """Reversing all arcs transposes the flow matrix and reverses F and S."""
    net = any_network(t)
    rev = reverse(net)
    t.expect(
        np.array_equal(flow_matrix(rev).values, flow_matrix(net).values.T),
        "flow matrix of reversal is not the transpose",
    )
    t.expect(flow_relation(rev) == reverse_rel(flow_relation(net)), "flow relation not reversed")
    t.expect(
        schulze_relation(rev) == reverse_rel(schulze_relation(net)), "Schulze relation not reversed"
    )


@register("homo-net", "maxflow")
def _homo_net(t: Trial) -> None:
    """Scaling capacities scales flows and leaves the flow relation unchanged."""
    net = any_network(t)
    for alpha in (2, 3):
        scaled = scale(net, alpha)
        t.expect(
            np.array_equal(flow_matrix(scaled).values, alpha * flow_matrix(net).values),
            f"flow matrix not multiplied by {alpha}",
        )
        t.expect(flow_relation(scaled) == flow_relation(net), f"relation changed under x{alpha}")


@register("symmetric-matrix", "maxflow")
def _symmetric_matrix(t: Trial) -> None:
    """Pseudo-symmetric networks have symmetric flow matrices."""
    net = t.show_network(class_network(t, "pseudo_symmetric", t.size()))
    m = flow_matrix(net).values
    t.expect(np.array_equal(m, m.T), "flow matrix is not symmetric")


@register("begv-lemma1", "maxflow")
def _begv_lemma1(t: Trial) -> None:
    """On balanced networks flow differences equal outdegree differences."""
    net = t.show_network(class_network(t, "k_balanced", t.size()))
    m = flow_matrix(net).values
    out = outdegrees(net)
    diff = m - m.T
    expected = out[:, None] - out[None, :]
    np.fill_diagonal(expected, 0)
    t.expect(np.array_equal(diff, expected), "phi_xy - phi_yx != o(x) - o(y)")


# --- relations ------------------------------------------------------------


def _relation_size(t: Trial, lo: int = 1) -> int:
    return t.size(lo, 5)


@register("greco-a", "relation")
def _greco_a(t: Trial) -> None:
    """A relation has a linear extension exactly when it is acyclic."""
    n = _relation_size(t)
    if t.rng.random() < 0.5:
        rel = gen.random_acyclic(t.rng, n)
    else:
        rel = gen.random_relation(t.rng, n)
    t.show_relation(rel)
    ext = orders(iter_linear_extensions(rel))
    t.expect(ext == orders(brute_force_extensions(rel)), "extensions differ from brute force")
    t.expect(bool(ext) == classify_relation(rel).acyclic, "extension existence != acyclicity")


def _incomparable_pairs_extend(t: Trial, rel: Relation) -> None:
    ext = list(iter_linear_extensions(rel))
    m = rel.matrix
    for i, j in itertools.permutations(range(rel.n), 2):
        if not m[i, j] and not m[j, i]:
            x, y = rel.labels[i], rel.labels[j]
            t.expect(any(o.above(x, y) for o in ext), f"no extension ranks {x} above {y}")


@register("greco-b", "relation", exploratory=True)
def _greco_b(t: Trial) -> None:
    """Incomparable pairs of an acyclic relation can go either way (all acyclic relations)."""
    _incomparable_pairs_extend(t, t.show_relation(gen.random_acyclic(t.rng, _relation_size(t))))


@register("greco-b-transitive", "relation")
def _greco_b_transitive(t: Trial) -> None:
    """Incomparable pairs of a partial order can be ranked either way."""
    _incomparable_pairs_extend(
        t, t.show_relation(gen.random_partial_order(t.rng, _relation_size(t)))
    )


@register("lin-ref", "relation")
def _lin_ref(t: Trial) -> None:
    """Refinements of a complete quasi-acyclic relation extend its strict part."""
    rel = t.show_relation(gen.random_quasi_acyclic(t.rng, _relation_size(t)))
    refs = orders(iter_linear_refinements(rel))
    t.expect(bool(refs), "no linear refinement")
    t.expect(refs == orders(iter_linear_extensions(strict(rel))), "refinements != extensions of strict part")
    t.expect(refs == orders(brute_force_refinements(rel)), "refinements differ from brute force")
    t.expect(len(refs) == count_linear_refinements(rel), "refinement count mismatch")


@register("ckR", "relation")
def _ckr(t: Trial) -> None:
    """k-maximum sets are the top-k sets of the refinements."""
    rel = t.show_relation(gen.random_quasi_acyclic(t.rng, _relation_size(t, 2)))
    n_refs = count_linear_refinements(rel)
    for k in range(1, rel.n):
        direct = k_maximum_sets(rel, k)
        t.expect(
            set_family(direct) == set_family(k_maximum_sets_via_refinements(rel, k)),
            f"k={k}: direct sets differ from refinement union",
        )
        t.expect(1 <= len(direct) <= n_refs, f"k={k}: {len(direct)} sets for {n_refs} refinements")


@register("ckrev", "relation")
def _ckrev(t: Trial) -> None:
    """Complements swap k-maximum sets of a relation and its reversal."""
    rel = t.show_relation(gen.random_relation(t.rng, _relation_size(t, 2)))
    rev = reverse_rel(rel)
    everything = frozenset(rel.labels)
    for k in range(1, rel.n):
        lhs = set_family(k_maximum_sets(rev, k))
        rhs = {everything - w for w in k_maximum_sets(rel, rel.n - k)}
        t.expect(lhs == rhs, f"k={k}: reversal/complement mismatch")


@register("totale", "relation")
def _totale(t: Trial) -> None:
    """Every k-subset is k-maximum exactly for the total relation."""
    n = _relation_size(t, 2)
    if t.rng.random() < 0.3:
        rel = Relation.total(gen.default_labels(n))
    else:
        rel = gen.random_relation(t.rng, n, density=0.5 + 0.5 * t.rng.random(), reflexive=True)
    t.show_relation(rel)
    for k in range(1, n):
        full = set_family(k_maximum_sets(rel, k)) == all_k_subsets(rel.labels, k)
        t.expect(full == rel.is_total(), f"k={k}: all subsets selected={full}, total={rel.is_total()}")


@register("inclusion", "relation")
def _inclusion(t: Trial) -> None:
    """k-maximum sets nest inside larger and around smaller ones."""
    rel = t.show_relation(gen.random_quasi_acyclic(t.rng, _relation_size(t, 2)))
    _nesting(t, {k: k_maximum_sets(rel, k) for k in range(1, rel.n)})


def _nesting(t: Trial, families: dict[int, list[frozenset[str]]]) -> None:
    ks = sorted(families)
    for k in ks:
        for w in families[k]:
            for m in ks:
                if m > k:
                    t.expect(any(w <= big for big in families[m]), f"{sorted(w)} has no superset at size {m}")
                elif m < k:
                    t.expect(any(small <= w for small in families[m]), f"{sorted(w)} has no subset at size {m}")


@register("prop-2-bis", "relation")
def _prop_2_bis(t: Trial) -> None:
    """Every refinement keeps a vertex above all vertices it strictly beats."""
    rel = t.show_relation(gen.random_quasi_acyclic(t.rng, _relation_size(t)))
    refs = list(iter_linear_refinements(rel))
    for i, x in enumerate(rel.labels):
        below = [rel.labels[j] for j in range(rel.n) if strictly_beats(rel, i, j)]
        t.expect(all(o.above(x, y) for o in refs for y in below), f"{x} not above {below} everywhere")


def _weak_dominance_refinable(t: Trial, rel: Relation) -> None:
    refs = list(iter_linear_refinements(rel))
    for i, x in enumerate(rel.labels):
        below = [rel.labels[j] for j in range(rel.n) if j != i and rel.matrix[i, j]]
        t.expect(
            any(all(o.above(x, y) for y in below) for o in refs),
            f"no refinement ranks {x} above all of {below}",
        )


@register("prop-2", "relation", exploratory=True)
def _prop_2(t: Trial) -> None:
    """Some refinement ranks a vertex above everything it weakly beats (all quasi-acyclic relations)."""
    _weak_dominance_refinable(t, t.show_relation(gen.random_quasi_acyclic(t.rng, _relation_size(t))))


@register("prop-2-qt", "relation")
def _prop_2_qt(t: Trial) -> None:
    """Some refinement ranks a vertex above everything it weakly beats."""
    _weak_dominance_refinable(
        t, t.show_relation(gen.random_quasi_transitive(t.rng, _relation_size(t)))
    )


@register("prop-3-bis", "relation")
def _prop_3_bis(t: Trial) -> None:
    """A vertex strictly beating n-k others is in every k-maximum set."""
    n = _relation_size(t, 2)
    if t.rng.random() < 0.5:
        rel = gen.random_quasi_acyclic(t.rng, n)
    else:
        rel = gen.random_relation(t.rng, n, reflexive=True)
    t.show_relation(rel)
    for k in range(1, n):
        sets = k_maximum_sets(rel, k)
        for i, x in enumerate(rel.labels):
            wins = sum(strictly_beats(rel, i, j) for j in range(n))
            if wins >= n - k:
                t.expect(all(x in w for w in sets), f"k={k}: {x} missing from some set")


def _weak_winner_selected(t: Trial, rel: Relation) -> None:
    n = rel.n
    for k in range(1, n):
        sets = k_maximum_sets(rel, k)
        for i, x in enumerate(rel.labels):
            weak = sum(bool(rel.matrix[i, j]) for j in range(n) if j != i)
            if weak >= n - k:
                t.expect(any(x in w for w in sets), f"k={k}: {x} in no k-maximum set")


@register("prop-3", "relation", exploratory=True)
def _prop_3(t: Trial) -> None:
    """A vertex weakly beating n-k others is in some k-maximum set (all quasi-acyclic relations)."""
    _weak_winner_selected(t, t.show_relation(gen.random_quasi_acyclic(t.rng, _relation_size(t, 2))))


@register("prop-3-qt", "relation")
def _prop_3_qt(t: Trial) -> None:
    """A vertex weakly beating n-k others is in some k-maximum set."""
    _weak_winner_selected(
        t, t.show_relation(gen.random_quasi_transitive(t.rng, _relation_size(t, 2)))
    )


@register("qA", "relation")
def _qa(t: Trial) -> None:
    """Reversal never keeps all k-maximum sets of a non-flat relation."""
    rel = t.show_relation(gen.random_quasi_transitive(t.rng, _relation_size(t, 2)))
    if rel.is_total():
        return
    rev = reverse_rel(rel)
    for k in range(1, rel.n):
        t.expect(
            not set_family(k_maximum_sets(rel, k)) <= set_family(k_maximum_sets(rev, k)),
            f"k={k}: all sets survive reversal",
        )


@register("exist-max-min", "relation")
def _exist_max_min(t: Trial) -> None:
    """Maxima and minima exist and are bounded by the refinement count."""
    rel = t.show_relation(gen.random_quasi_acyclic(t.rng, _relation_size(t)))
    refs = count_linear_refinements(rel)
    t.expect(1 <= len(maxima(rel)) <= refs, f"|max|={len(maxima(rel))}, refinements={refs}")
    t.expect(1 <= len(minima(rel)) <= refs, f"|min|={len(minima(rel))}, refinements={refs}")


@register("gomory-hu-condition", "relation")
def _gomory_hu_condition(t: Trial) -> None:
    """Scores meeting the triple inequality induce complete quasi-transitive relations."""
    n = t.size(2)
    r = t.rng.random()
    if r < 0.4:
        theta = gen.random_network(t.rng, n, t.cap()).capacity
        theta = schulze_strength(Network(gen.default_labels(n), theta)).values
    elif r < 0.7:
        theta = flow_matrix(gen.random_network(t.rng, n, t.cap())).values
    else:
        theta = t.rng.integers(0, 3, size=(n, n))
    t.note(f"scores: {np.asarray(theta).tolist()}")
    if satisfies_gomory_hu_condition(theta):
        flags = classify_relation(relation_from_scores(gen.default_labels(n), theta))
        t.expect(flags.in_T, "relation from scores is not complete and quasi-transitive")


@register("class-hierarchy", "relation")
def _class_hierarchy(t: Trial) -> None:
    """Linear orders, weak orders and the other classes nest as expected."""
    n = _relation_size(t)
    rel = [
        gen.random_relation(t.rng, n),
        gen.random_quasi_acyclic(t.rng, n),
        gen.random_quasi_transitive(t.rng, n),
        gen.random_weak_order(t.rng, n),
    ][int(t.rng.integers(4))]
    f = classify_relation(t.show_relation(rel))
    t.expect(not f.in_L or f.in_O, "linear but not a weak order")
    t.expect(not f.in_O or f.in_T, "weak order but not quasi-transitive")
    t.expect(not f.in_T or f.in_A, "quasi-transitive but not quasi-acyclic")
    t.expect(not f.complete or f.reflexive, "complete but not reflexive")
    t.expect(not f.acyclic or f.quasi_acyclic, "acyclic but not quasi-acyclic")


# --- methods --------------------------------------------------------------


@register("quasi-transitivity", "methods")
def _quasi_transitivity(t: Trial) -> None:
    """The flow relation is complete and quasi-transitive."""
    t.expect(classify_relation(flow_relation(any_network(t))).in_T, "flow relation not in T")


@register("schulze-qt", "methods")
def _schulze_qt(t: Trial) -> None:
    """The Schulze relation is complete and quasi-transitive."""
    t.expect(classify_relation(schulze_relation(any_network(t))).in_T, "Schulze relation not in T")


@register("main-qt", "methods")
def _main_qt(t: Trial) -> None:
    """The unit network of a quasi-transitive relation gives that relation back."""
    rel = t.show_relation(gen.random_quasi_transitive(t.rng, t.size(2, 6)))
    t.expect(flow_relation(network_from_relation(rel)) == rel, "round trip changed the relation")


@register("core", "methods")
def _core(t: Trial) -> None:
    """In the unit network, positive flow marks strict wins and zero both ways marks ties."""
    rel = t.show_relation(gen.random_quasi_transitive(t.rng, t.size(2, 6)))
    m = flow_matrix(network_from_relation(rel)).values
    for i, j in itertools.permutations(range(rel.n), 2):
        x, y = rel.labels[i], rel.labels[j]
        t.expect((m[i, j] > 0) == strictly_beats(rel, i, j), f"({x},{y}): positive flow != strict win")
        tie = bool(rel.matrix[i, j] and rel.matrix[j, i])
        t.expect((m[i, j] == 0 and m[j, i] == 0) == tie, f"({x},{y}): zero flows != tie")


@register("neut-F", "methods")
def _neut_f(t: Trial) -> None:
    """Relabelling vertices relabels flows and the flow relation."""
    net = any_network(t)
    psi = gen.random_bijection(t.rng, net.vertices)
    t.note(f"relabel: {psi}")
    moved = relabel(net, psi)
    phi, phi2 = flow_matrix(net), flow_matrix(moved)
    rel, rel2 = flow_relation(net), flow_relation(moved)
    for x, y in itertools.permutations(net.labels, 2):
        t.expect(phi2[(psi[x], psi[y])] == phi[(x, y)], f"flow ({x},{y}) not carried over")
        t.expect(((psi[x], psi[y]) in rel2) == ((x, y) in rel), f"relation ({x},{y}) not carried over")


def _dominance_check(t: Trial, relation_of, label: str, conditions: str) -> None:
    net = any_network(t)
    x, y = (int(v) for v in t.rng.choice(net.n, size=2, replace=False))
    cap = np.array(net.capacity)
    gen.dominate(cap, x, y)
    net = Network(net.vertices, cap)
    t.show_network(net, f"dominated {net.labels[x]} over {net.labels[y]}")
    rel = relation_of(net)
    t.expect(bool(rel.matrix[x, y]), f"{label}: dominating vertex not weakly above")
    if gen.strict_dominance(cap, x, y, conditions):
        t.expect(strictly_beats(rel, x, y), f"{label}: strict dominance not strict")


@register("eff-F", "methods", exploratory=True)
def _eff_f(t: Trial) -> None:
    """Arc-wise dominance implies weak preference, strict under any of (a)-(d)."""
    _dominance_check(t, flow_relation, "flow", gen.STRICTNESS_CONDITIONS)


@register("eff-F-ad", "methods")
def _eff_f_ad(t: Trial) -> None:
    """Arc-wise dominance implies weak preference, strict under (a) or (d)."""
    _dominance_check(t, flow_relation, "flow", gen.SOUND_STRICTNESS)


@register("schulze-eff-F", "methods", exploratory=True)
def _schulze_eff_f(t: Trial) -> None:
    """Dominance check applied to the Schulze relation."""
    _dominance_check(t, schulze_relation, "schulze", gen.STRICTNESS_CONDITIONS)


def _monotonicity_check(t: Trial, relation_of, label: str) -> None:
    net = any_network(t)
    x = int(t.rng.integers(net.n))
    better = gen.improve(t.rng, net, x)
    t.show_network(better, f"improved {net.labels[x]}")
    before, after = relation_of(net), relation_of(better)
    c, c2 = net.capacity, better.capacity
    for y in range(net.n):
        if y == x or not before.matrix[x, y]:
            continue
        t.expect(bool(after.matrix[x, y]), f"{label}: lost weak win over {net.labels[y]}")
        if strictly_beats(before, x, y) or c2[x, y] > c[x, y] or c2[y, x] < c[y, x]:
            t.expect(strictly_beats(after, x, y), f"{label}: no strict win over {net.labels[y]}")


@register("mon1-flow-rule", "methods")
def _mon1_flow_rule(t: Trial) -> None:
    """Improving one vertex's results keeps (and sharpens) its wins."""
    _monotonicity_check(t, flow_relation, "flow")


@register("schulze-mon1", "methods", exploratory=True)
def _schulze_mon1(t: Trial) -> None:
    """Monotonicity check applied to the Schulze relation."""
    _monotonicity_check(t, schulze_relation, "schulze")


@register("szigeti", "methods")
def _szigeti(t: Trial) -> None:
    """More wins than losses means beating someone; fewer means losing to someone."""
    net = any_network(t)
    rel = flow_relation(net)
    out, inn = outdegrees(net), indegrees(net)
    for i, x in enumerate(net.labels):
        if out[i] > inn[i]:
            t.expect(any(strictly_beats(rel, i, j) for j in range(net.n)), f"{x} beats nobody")
        if out[i] < inn[i]:
            t.expect(any(strictly_beats(rel, j, i) for j in range(net.n)), f"nobody beats {x}")


@register("flat", "methods")
def _flat(t: Trial) -> None:
    """The flow relation is total exactly on pseudo-symmetric networks."""
    if t.rng.random() < 0.5:
        net = t.show_network(class_network(t, "pseudo_symmetric", t.size()))
    else:
        net = any_network(t)
    pseudo = classify(net).pseudo_symmetric
    t.expect(flow_relation(net).is_total() == pseudo, f"flat={not pseudo}, pseudo-symmetric={pseudo}")


@register("flat-add", "methods")
def _flat_add(t: Trial) -> None:
    """Adding two networks on which flow is flat keeps it flat."""
    n = t.size()
    first = t.show_network(class_network(t, "pseudo_symmetric", n), "first")
    second = t.show_network(class_network(t, "pseudo_symmetric", n), "second")
    if flow_relation(first).is_total() and flow_relation(second).is_total():
        t.expect(flow_relation(add(first, second)).is_total(), "sum is not flat")


@register("oi", "methods")
def _oi(t: Trial) -> None:
    """Flow, Borda and dual Borda coincide on balanced, out- and in-weighted networks."""
    net = agreeing_class_network(t)
    f = flow_relation(net)
    t.expect(f == borda_relation(net), "flow != Borda")
    t.expect(f == dual_borda_relation(net), "flow != dual Borda")


@register("balan-ut", "methods")
def _balan_ut(t: Trial) -> None:
    """Flow, Borda and dual Borda coincide on balanced networks."""
    net = t.show_network(class_network(t, "k_balanced", t.size()))
    f = flow_relation(net)
    t.expect(f == borda_relation(net) == dual_borda_relation(net), "methods disagree")


def _parametric(t: Trial, n: int, *, satisfying: bool) -> tuple[Network, int, int]:
    top = max(t.cap(), 1)
    while True:
        a, b = (int(v) for v in t.rng.integers(0, top * n + 1, size=2))
        if a + b > 0 and parametric_coefficients_ok(n, a, b) == satisfying:
            break
        if not satisfying and a + b > 0:
            break
    l = int(t.rng.integers(0, top + 1))
    spec = gen.GeneratorSpec("parametric", n, max_capacity=top, seed=t.seed(), a=a, b=b, l=l)
    t.note(f"parametric a={a} b={b} l={l}")
    return t.show_network(gen.generate(spec)), a, b


@register("cor-new", "methods")
def _cor_new(t: Trial) -> None:
    """Weighted networks with a dominant coefficient give flow = Borda = dual Borda."""
    net, _, _ = _parametric(t, t.size(3), satisfying=True)
    f = flow_relation(net)
    t.expect(f == borda_relation(net), "flow != Borda")
    t.expect(f == dual_borda_relation(net), "flow != dual Borda")


@register("fb-closed-form", "methods")
def _fb_closed_form(t: Trial) -> None:
    """Closed-form triple condition agrees with the rational witness search."""
    if t.rng.random() < 0.5:
        net = any_network(t, 3, 5)
    else:
        net, _, _ = _parametric(t, t.size(3, 5), satisfying=bool(t.rng.random() < 0.5))
    for dual in (False, True):
        closed = fb_check(net, dual=dual).satisfied
        t.expect(closed == fb_sufficient_oracle(net, dual=dual), f"dual={dual}: closed form disagrees")


@register("fb-sufficient", "methods")
def _fb_sufficient(t: Trial) -> None:
    """When the triple condition holds, flow agrees with (dual) Borda."""
    if t.rng.random() < 0.3:
        net = any_network(t, 3)
    else:
        net, _, _ = _parametric(t, t.size(3), satisfying=bool(t.rng.random() < 0.5))
    f = flow_relation(net)
    fb, fbhat = fb_check(net), fb_check(net, dual=True)
    if fb.boundary_triples or fbhat.boundary_triples:
        t.note(f"boundary triples: {fb.boundary_triples} {fbhat.boundary_triples}")
    if fb.satisfied:
        t.expect(f == borda_relation(net), "condition holds but flow != Borda")
    if fbhat.satisfied:
        t.expect(f == dual_borda_relation(net), "dual condition holds but flow != dual Borda")


@register("lemma-schulze", "methods")
def _lemma_schulze(t: Trial) -> None:
    """Schulze strengths satisfy the triple inequality and dominate capacities."""
    net = any_network(t)
    s = schulze_strength(net).values
    t.expect(satisfies_gomory_hu_condition(s), "triple inequality violated")
    off = ~np.eye(net.n, dtype=bool)
    t.expect(bool(np.all(s[off] >= net.capacity[off])), "strength below direct capacity")


@register("schulze-bruteforce", "methods")
def _schulze_bruteforce(t: Trial) -> None:
    """Dynamic-programming strengths equal the simple-path maximum."""
    net = any_network(t, hi=5)
    t.expect(schulze_strength(net) == schulze_strength_bruteforce(net), "strengths differ")


# --- rules ----------------------------------------------------------------


def _rule_network(t: Trial, label: str = "") -> Network:
    return any_network(t, hi=5, label=label)


@register("bg-1", "rule")
def _bg_1(t: Trial) -> None:
    """The flow rule always offers a ranking."""
    t.expect(count_linear_refinements(flow_relation(_rule_network(t))) >= 1, "empty rule")


@register("neut-rule", "rule")
def _neut_rule(t: Trial) -> None:
    """Relabelling maps the rankings accordingly."""
    net = _rule_network(t)
    psi = gen.random_bijection(t.rng, net.vertices)
    t.note(f"relabel: {psi}")
    expected = {map_order(o, psi).ranking for o in linear_refinements(flow_relation(net), None)}
    got = orders(linear_refinements(flow_relation(relabel(net, psi)), None))
    t.expect(got == expected, "relabelled rankings differ")


@register("bg-2", "rule")
def _bg_2(t: Trial) -> None:
    """Scaling leaves the rankings unchanged."""
    net = _rule_network(t)
    alpha = int(t.rng.integers(2, 4))
    t.expect(
        orders(linear_refinements(flow_relation(scale(net, alpha)), None))
        == orders(linear_refinements(flow_relation(net), None)),
        f"rankings changed under x{alpha}",
    )


@register("no-impo-rule", "rule")
def _no_impo_rule(t: Trial) -> None:
    """Every linear order is the unique ranking of its unit network."""
    order = gen.random_linear_order(t.rng, t.size(2))
    t.note(f"order: {order}")
    rel = order.to_relation(gen.default_labels(len(order.ranking)))
    got = orders(linear_refinements(flow_relation(network_from_relation(rel)), None))
    t.expect(got == {order.ranking}, f"rankings {sorted(got)}")


def _bg_4_check(t: Trial, conditions: str) -> None:
    net = _rule_network(t)
    x, y = (int(v) for v in t.rng.choice(net.n, size=2, replace=False))
    cap = np.array(net.capacity)
    gen.dominate(cap, x, y)
    net = t.show_network(Network(net.vertices, cap), "dominated")
    xs, ys = net.labels[x], net.labels[y]
    refs = linear_refinements(flow_relation(net), None)
    t.expect(any(o.above(xs, ys) for o in refs), f"no ranking puts {xs} above {ys}")
    if gen.strict_dominance(cap, x, y, conditions):
        t.expect(all(o.above(xs, ys) for o in refs), f"some ranking puts {ys} above {xs}")


@register("bg-4", "rule", exploratory=True)
def _bg_4(t: Trial) -> None:
    """A dominating vertex is ranked above in some ranking, in every one under (a)-(d)."""
    _bg_4_check(t, gen.STRICTNESS_CONDITIONS)


@register("bg-4-ad", "rule")
def _bg_4_ad(t: Trial) -> None:
    """A dominating vertex is ranked above in some ranking, in every one under (a) or (d)."""
    _bg_4_check(t, gen.SOUND_STRICTNESS)


@register("bg-5", "rule")
def _bg_5(t: Trial) -> None:
    """Improving a vertex can only grow the set it is ranked above."""
    net = _rule_network(t)
    x = int(t.rng.integers(net.n))
    better = gen.improve(t.rng, net, x)
    t.show_network(better, f"improved {net.labels[x]}")
    xs = net.labels[x]
    below = {o.beaten_by(xs) for o in linear_refinements(flow_relation(net), None)}
    below2 = {o.beaten_by(xs) for o in linear_refinements(flow_relation(better), None)}
    for b in below:
        t.expect(any(b <= b2 for b2 in below2), f"{sorted(b)} not covered after improvement")
    c, c2 = net.capacity, better.capacity
    if all(c2[x, y] > c[x, y] or c2[y, x] < c[y, x] for y in range(net.n) if y != x):
        union = frozenset().union(*below)
        common = frozenset.intersection(*below2)
        t.expect(union <= common, "strict improvement but a ranking lost ground")


@register("bg-3", "rule")
def _bg_3(t: Trial) -> None:
    """Reversing the network reverses every ranking."""
    net = _rule_network(t)
    expected = {o.reversed().ranking for o in linear_refinements(flow_relation(net), None)}
    t.expect(orders(linear_refinements(flow_relation(reverse(net)), None)) == expected, "not reversed")


@register("sym-rule", "rule")
def _sym_rule(t: Trial) -> None:
    """Every ranking is admissible exactly on pseudo-symmetric networks."""
    if t.rng.random() < 0.5:
        net = t.show_network(class_network(t, "pseudo_symmetric", t.size()))
    else:
        net = any_network(t)
    everything = count_linear_refinements(flow_relation(net)) == math.factorial(net.n)
    t.expect(everything == classify(net).pseudo_symmetric, "all-rankings != pseudo-symmetric")


@register("balan-ut-rule", "rule")
def _balan_ut_rule(t: Trial) -> None:
    """Flow, Borda and dual Borda rules coincide on the agreeing classes."""
    net = agreeing_class_network(t)
    rules = [
        orders(linear_refinements(r(net), None))
        for r in (flow_relation, borda_relation, dual_borda_relation)
    ]
    t.expect(rules[0] == rules[1] == rules[2], "rules differ")


# --- solutions ------------------------------------------------------------


def _families(rel: Relation) -> dict[int, list[frozenset[str]]]:
    return {k: k_maximum_sets(rel, k) for k in range(1, rel.n)}


@register("decisive", "solution")
def _decisive(t: Trial) -> None:
    """Every k has at least one winner set."""
    for k, sets in _families(flow_relation(any_network(t))).items():
        t.expect(bool(sets), f"k={k}: no winner set")


@register("neut-sol", "solution")
def _neut_sol(t: Trial) -> None:
    """Relabelling maps winner sets accordingly."""
    net = any_network(t)
    psi = gen.random_bijection(t.rng, net.vertices)
    t.note(f"relabel: {psi}")
    before, after = _families(flow_relation(net)), _families(flow_relation(relabel(net, psi)))
    for k in before:
        mapped = {frozenset(psi[x] for x in w) for w in before[k]}
        t.expect(set_family(after[k]) == mapped, f"k={k}: winner sets not relabelled")


@register("homo-net2", "solution")
def _homo_net2(t: Trial) -> None:
    """Scaling leaves winner sets unchanged."""
    net = any_network(t)
    alpha = int(t.rng.integers(2, 4))
    t.expect(
        _families(flow_relation(scale(net, alpha))) == _families(flow_relation(net)),
        f"winner sets changed under x{alpha}",
    )


@register("no-impo-k", "solution")
def _no_impo_k(t: Trial) -> None:
    """Any k-subset is the unique winner set of a suitable network."""
    n = t.size(2)
    k = int(t.rng.integers(1, n))
    order = gen.random_linear_order(t.rng, n)
    target = order.top(k)
    t.note(f"order: {order}, k={k}")
    rel = order.to_relation(gen.default_labels(n))
    got = k_maximum_sets(flow_relation(network_from_relation(rel)), k)
    t.expect(set_family(got) == {target}, f"winner sets {[sorted(w) for w in got]}")


@register("inclusion2", "solution")
def _inclusion2(t: Trial) -> None:
    """Winner sets for different k nest."""
    _nesting(t, _families(flow_relation(any_network(t))))


def _eff_check(t: Trial, conditions: str) -> None:
    net = any_network(t)
    x = int(t.rng.integers(net.n))
    k = int(t.rng.integers(1, net.n))
    others = [int(v) for v in t.rng.choice([v for v in range(net.n) if v != x], size=k, replace=False)]
    cap = np.array(net.capacity)
    for _ in range(4 * net.n * net.n):
        before = cap.copy()
        for y in others:
            gen.dominate(cap, y, x)
        if np.array_equal(before, cap):
            break
    if not all(gen.dominance_holds(cap, y, x) for y in others):
        return
    net = t.show_network(Network(net.vertices, cap), f"k={k}, x*={net.labels[x]}")
    sets = k_maximum_sets(flow_relation(net), k)
    xs = net.labels[x]
    t.expect(any(xs not in w for w in sets), f"{xs} in every winner set")
    if all(gen.strict_dominance(cap, y, x, conditions) for y in others):
        t.expect(all(xs not in w for w in sets), f"{xs} in some winner set")


@register("eff", "solution", exploratory=True)
def _eff(t: Trial) -> None:
    """A vertex dominated by k others misses some winner set, every one under (a)-(d)."""
    _eff_check(t, gen.STRICTNESS_CONDITIONS)


@register("eff-ad", "solution")
def _eff_ad(t: Trial) -> None:
    """A vertex dominated by k others misses some winner set, every one under (a) or (d)."""
    _eff_check(t, gen.SOUND_STRICTNESS)


@register("mon1", "solution")
def _mon1(t: Trial) -> None:
    """Improving a winner keeps it among the winners."""
    net = any_network(t)
    k = int(t.rng.integers(1, net.n))
    rel = flow_relation(net)
    sets = k_maximum_sets(rel, k)
    w = sets[int(t.rng.integers(len(sets)))]
    xs = sorted(w)[int(t.rng.integers(len(w)))]
    x = net.vertices.index(xs)
    better = gen.improve(t.rng, net, x)
    t.show_network(better, f"k={k}, W={sorted(w)}, improved {xs}")
    after = k_maximum_sets(flow_relation(better), k)
    t.expect(any(xs in w2 for w2 in after), f"{xs} dropped from every winner set")
    c, c2 = net.capacity, better.capacity
    outside = [net.vertices.index(y) for y in net.labels if y not in w]
    if all(strictly_beats(rel, x, y) or c2[x, y] > c[x, y] or c2[y, x] < c[y, x] for y in outside):
        t.expect(all(xs in w2 for w2 in after), f"{xs} dropped from some winner set")


def _reversal_bias(t: Trial, relation_of, label: str) -> None:
    net = any_network(t)
    rev = reverse(net)
    fam, fam_rev = _families(relation_of(net)), _families(relation_of(rev))
    symmetric = net == rev
    for k in fam:
        sets, sets_rev = set_family(fam[k]), set_family(fam_rev[k])
        everything = all_k_subsets(net.labels, k)
        if sets != everything:
            t.expect(not sets <= sets_rev, f"{label} k={k}: (i) sets survive reversal")
        if len(sets) == 1:
            t.expect(not sets <= sets_rev, f"{label} k={k}: (ii) unique set survives reversal")
            if len(sets_rev) == 1:
                t.expect(sets != sets_rev, f"{label} k={k}: (iii) same unique set")
        if symmetric:
            t.expect(sets == everything, f"{label} k={k}: (iv) symmetric network not flat")
        t.expect((sets == everything) == (sets_rev == everything), f"{label} k={k}: (v)")


@register("reversal-bias", "solution")
def _reversal_bias_flow(t: Trial) -> None:
    """Flow winner sets react to reversal: items (i) to (v)."""
    _reversal_bias(t, flow_relation, "flow")


@register("reversal-bias-schulze", "solution")
def _reversal_bias_schulze(t: Trial) -> None:
    """Schulze winner sets react to reversal: items (i) to (v)."""
    _reversal_bias(t, schulze_relation, "schulze")


@register("sym-sol", "solution")
def _sym_sol(t: Trial) -> None:
    """All k-subsets win exactly on pseudo-symmetric networks."""
    if t.rng.random() < 0.5:
        net = t.show_network(class_network(t, "pseudo_symmetric", t.size()))
    else:
        net = any_network(t)
    pseudo = classify(net).pseudo_symmetric
    for k, sets in _families(flow_relation(net)).items():
        t.expect((set_family(sets) == all_k_subsets(net.labels, k)) == pseudo, f"k={k}")


@register("balan-ut-2", "solution")
def _balan_ut_2(t: Trial) -> None:
    """Flow, Borda and dual Borda winner sets coincide on the agreeing classes."""
    net = agreeing_class_network(t)
    fams = [_families(r(net)) for r in (flow_relation, borda_relation, dual_borda_relation)]
    t.expect(fams[0] == fams[1] == fams[2], "winner sets differ")


# --- generators -----------------------------------------------------------


def _spec_for(t: Trial, kind: str) -> gen.GeneratorSpec:
    n, cap = t.size(), t.cap()
    if kind == "parametric":
        return gen.GeneratorSpec(kind, n, cap, t.seed(), a=int(t.rng.integers(0, 3)),
                                 b=int(t.rng.integers(1, 3)), l=int(t.rng.integers(0, 3)))
    return gen.GeneratorSpec(
        kind,
        n,
        cap,
        t.seed(),
        k=int(t.rng.integers(0, cap + 1)) if kind == "k_balanced" else None,
        value=int(t.rng.integers(0, cap + 1)) if kind == "constant" else None,
    )


@register("generator-soundness", "verify")
def _generator_soundness(t: Trial) -> None:
    """Generated networks belong to the requested class."""
    kind = gen.KINDS[int(t.rng.integers(len(gen.KINDS)))]
    spec = _spec_for(t, kind)
    t.note(repr(spec))
    net = t.show_network(gen.generate(spec))
    c = classify(net)
    cap = net.capacity
    if kind == "k_balanced":
        t.expect(c.balance == spec.k, f"balance {c.balance} != {spec.k}")
    elif kind == "class_O":
        t.expect(c.in_O, "not out-weighted")
    elif kind == "class_I":
        t.expect(c.in_I, "not in-weighted")
    elif kind == "constant":
        t.expect(c.constant == spec.value, "not constant")
    elif kind == "pseudo_symmetric":
        t.expect(c.pseudo_symmetric, "not pseudo-symmetric")
    elif kind == "parametric":
        w = np.random.default_rng(spec.seed).integers(0, spec.max_capacity + 1, size=spec.n)
        expected = spec.a * w[:, None] + spec.b * w[None, :] + spec.l
        off = ~np.eye(spec.n, dtype=bool)
        t.expect(np.array_equal(cap[off], expected[off]), "capacities do not follow the formula")
    else:
        t.expect(bool(np.all(cap <= spec.max_capacity)), "capacity above the bound")


@register("generator-determinism", "verify")
def _generator_determinism(t: Trial) -> None:
    """The same spec always yields the same network."""
    kind = gen.KINDS[int(t.rng.integers(len(gen.KINDS)))]
    spec = _spec_for(t, kind)
    t.note(repr(spec))
    t.expect(gen.generate(spec) == gen.generate(spec), "two draws differ")
