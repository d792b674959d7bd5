"""Network ranking methods: flow, Borda, dual Borda and Schulze.

Each method maps a network to a complete relation. The rule of a method is
the set of linear refinements of that relation, and its ``k``-winner
solution is the set of ``k``-maximum sets.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from flowrank import kernels
from flowrank.errors import FlowRankError
from flowrank.maxflow import PairMatrix, flow_matrix, simple_paths
from flowrank.network import Network, indegrees, outdegrees
from flowrank.relation import (
    DEFAULT_LIMIT,
    LinearOrder,
    Relation,
    count_linear_refinements,
    iter_linear_refinements,
    k_maximum_sets,
    linear_refinements,
    maxima,
    relation_from_scores,
    relation_from_utility,
)


class MethodId(enum.Enum):
    FLOW = "flow"
    BORDA = "borda"
    DUAL_BORDA = "dual_borda"
    SCHULZE = "schulze"

    @classmethod
    def parse(cls, name: "str | MethodId") -> "MethodId":
        if isinstance(name, MethodId):
            return name
        key = name.strip().lower().replace("-", "_")
        for m in cls:
            if m.value == key:
                return m
        raise FlowRankError(f"unknown method {name!r}")

    @property
    def cli_name(self) -> str:
        return self.value.replace("_", "-")


class StrengthMatrix(PairMatrix):
    """Widest-path strengths ``s[x, y]``."""


def flow_relation(net: Network) -> Relation:
    return relation_from_scores(net.vertices, flow_matrix(net))


def borda_relation(net: Network) -> Relation:
    return relation_from_utility(net.vertices, outdegrees(net))


def dual_borda_relation(net: Network) -> Relation:
    return relation_from_utility(net.vertices, -indegrees(net))


def schulze_strength(net: Network) -> StrengthMatrix:
    return StrengthMatrix(net.vertices, kernels.widest_paths(net.capacity))


def schulze_strength_bruteforce(net: Network) -> StrengthMatrix:
    """Max over enumerated simple paths of the smallest arc capacity."""
    cap = net.capacity
    out = np.zeros_like(cap)
    for s, t in itertools.permutations(range(net.n), 2):
        widths = [min(int(cap[u, v]) for u, v in zip(p, p[1:])) for p in simple_paths(cap, s, t)]
        out[s, t] = max(widths, default=0)
    return StrengthMatrix(net.vertices, out)


def schulze_relation(net: Network) -> Relation:
    return relation_from_scores(net.vertices, schulze_strength(net))


_RELATIONS = {
    MethodId.FLOW: flow_relation,
    MethodId.BORDA: borda_relation,
    MethodId.DUAL_BORDA: dual_borda_relation,
    MethodId.SCHULZE: schulze_relation,
}


def method_relation(method: MethodId | str, net: Network) -> Relation:
    return _RELATIONS[MethodId.parse(method)](net)


def iter_rule(method: MethodId | str, net: Network) -> Iterator[LinearOrder]:
    return iter_linear_refinements(method_relation(method, net))


def rule(
    method: MethodId | str, net: Network, limit: int | None = DEFAULT_LIMIT
) -> list[LinearOrder]:
    return linear_refinements(method_relation(method, net), limit)


def count_rule(method: MethodId | str, net: Network) -> int:
    return count_linear_refinements(method_relation(method, net))


def solution(method: MethodId | str, net: Network, k: int) -> list[frozenset[str]]:
    return k_maximum_sets(method_relation(method, net), k)


@dataclass(frozen=True)
class ComparisonReport:
    methods: tuple[MethodId, ...]
    verdicts: dict[tuple[str, str], tuple[bool, ...]]
    agreeing: tuple[tuple[str, str], ...]
    disagreeing: tuple[tuple[str, str], ...]
    relations_equal: bool
    maxima: dict[MethodId, frozenset[str]]

    @property
    def full_agreement(self) -> bool:
        return not self.disagreeing


def compare_methods(net: Network, methods: Iterable[MethodId | str]) -> ComparisonReport:
    """Pairwise membership verdicts of several methods on one network."""
    chosen: list[MethodId] = []
    for m in methods:
        m = MethodId.parse(m)
        if m not in chosen:
            chosen.append(m)
    if len(chosen) < 2:
        raise FlowRankError("comparison needs at least two distinct methods")
    rels = [method_relation(m, net) for m in chosen]
    verdicts: dict[tuple[str, str], tuple[bool, ...]] = {}
    agreeing, disagreeing = [], []
    for i, x in enumerate(net.labels):
        for j, y in enumerate(net.labels):
            if i == j:
                continue
            v = tuple(bool(r.matrix[i, j]) for r in rels)
            verdicts[(x, y)] = v
            (agreeing if len(set(v)) == 1 else disagreeing).append((x, y))
    return ComparisonReport(
        methods=tuple(chosen),
        verdicts=verdicts,
        agreeing=tuple(agreeing),
        disagreeing=tuple(disagreeing),
        relations_equal=not disagreeing,
        maxima={m: maxima(r) for m, r in zip(chosen, rels)},
    )
