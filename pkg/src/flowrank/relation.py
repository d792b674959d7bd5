"""Binary relations on a finite vertex set.

A :class:`Relation` is a boolean membership matrix over ``V x V`` with the
diagonal stored explicitly; ``matrix[i, j]`` means "``x_i`` is at least as
good as ``x_j``". Enumerations of linear orders are lazy generators that
visit orders lexicographically by canonical vertex order; the list-returning
wrappers stop with :class:`EnumerationLimitError` past ``limit`` items.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from flowrank.errors import (
    EnumerationLimitError,
    InfeasibleForcingError,
    InvalidKError,
    InvalidRestrictionError,
    NotQuasiAcyclicError,
)
from flowrank.network import VertexSet

DEFAULT_LIMIT = 10_000


def _vertex_set(vertices) -> VertexSet:
    return vertices if isinstance(vertices, VertexSet) else VertexSet(vertices)


@dataclass(frozen=True, eq=False)
class Relation:
    vertices: VertexSet
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        vertices = _vertex_set(self.vertices)
        m = np.array(self.matrix, dtype=bool)
        if m.shape != (vertices.n, vertices.n):
            raise ValueError(f"membership matrix shape {m.shape} does not match {vertices.n} vertices")
        m.flags.writeable = False
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_pairs(
        cls, vertices, pairs: Iterable[tuple[str, str]], *, reflexive: bool = False
    ) -> "Relation":
        vertices = _vertex_set(vertices)
        m = np.eye(vertices.n, dtype=bool) if reflexive else np.zeros((vertices.n,) * 2, dtype=bool)
        for x, y in pairs:
            m[vertices.index(x), vertices.index(y)] = True
        return cls(vertices, m)

    @classmethod
    def total(cls, vertices) -> "Relation":
        vertices = _vertex_set(vertices)
        return cls(vertices, np.ones((vertices.n, vertices.n), dtype=bool))

    @classmethod
    def empty(cls, vertices) -> "Relation":
        vertices = _vertex_set(vertices)
        return cls(vertices, np.zeros((vertices.n, vertices.n), dtype=bool))

    @property
    def n(self) -> int:
        return self.vertices.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.vertices.labels

    def __contains__(self, pair: tuple[str, str]) -> bool:
        x, y = pair
        return bool(self.matrix[self.vertices.index(x), self.vertices.index(y)])

    def weakly_prefers(self, x: str, y: str) -> bool:
        return (x, y) in self

    def strictly_prefers(self, x: str, y: str) -> bool:
        return (x, y) in self and (y, x) not in self

    def indifferent(self, x: str, y: str) -> bool:
        return (x, y) in self and (y, x) in self

    def pairs(self) -> list[tuple[str, str]]:
        return [(self.labels[i], self.labels[j]) for i, j in zip(*np.nonzero(self.matrix))]

    def is_total(self) -> bool:
        return bool(self.matrix.all())

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Relation)
            and self.vertices == other.vertices
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.matrix.tobytes()))

    def __repr__(self) -> str:
        return f"Relation({list(self.labels)!r}, {self.pairs()!r})"


@dataclass(frozen=True)
class LinearOrder:
    """A ranking of every vertex, best first."""

    ranking: tuple[str, ...]

    def __post_init__(self):
        ranking = tuple(self.ranking)
        if len(set(ranking)) != len(ranking):
            raise ValueError(f"ranking repeats a vertex: {ranking!r}")
        object.__setattr__(self, "ranking", ranking)

    def position(self, x: str) -> int:
        return self.ranking.index(x)

    def above(self, x: str, y: str) -> bool:
        """``x`` strictly above ``y``."""
        return self.ranking.index(x) < self.ranking.index(y)

    def top(self, k: int) -> frozenset[str]:
        return frozenset(self.ranking[:k])

    def beaten_by(self, x: str) -> frozenset[str]:
        return frozenset(self.ranking[self.ranking.index(x) + 1 :])

    def reversed(self) -> "LinearOrder":
        return LinearOrder(self.ranking[::-1])

    def to_relation(self, vertices=None) -> Relation:
        vertices = _vertex_set(vertices if vertices is not None else self.ranking)
        pos = {x: i for i, x in enumerate(self.ranking)}
        if set(pos) != set(vertices.labels):
            raise ValueError("ranking is not a permutation of the vertex set")
        p = np.array([pos[x] for x in vertices.labels])
        return Relation(vertices, p[:, None] <= p[None, :])

    def __str__(self) -> str:
        return ">".join(self.ranking)


@dataclass(frozen=True)
class RelationClassFlags:
    complete: bool
    reflexive: bool
    antisymmetric: bool
    transitive: bool
    quasi_transitive: bool
    acyclic: bool
    quasi_acyclic: bool

    @property
    def in_A(self) -> bool:
        return self.complete and self.quasi_acyclic

    @property
    def in_T(self) -> bool:
        return self.complete and self.quasi_transitive

    @property
    def in_O(self) -> bool:
        return self.complete and self.transitive

    @property
    def in_L(self) -> bool:
        return self.complete and self.quasi_transitive and self.antisymmetric


# --- basic operations ----------------------------------------------------


def strict(rel: Relation) -> Relation:
    m = rel.matrix
    return Relation(rel.vertices, m & ~m.T)


def reverse_rel(rel: Relation) -> Relation:
    return Relation(rel.vertices, rel.matrix.T)


def restrict(rel: Relation, subset: Iterable[str]) -> Relation:
    keep = set(subset)
    if not keep:
        raise InvalidRestrictionError("cannot restrict to an empty set")
    idx = [rel.vertices.index(x) for x in rel.labels if x in keep]
    if len(idx) != len(keep):
        for x in keep:
            rel.vertices.index(x)
    sub = VertexSet(rel.labels[i] for i in idx)
    return Relation(sub, rel.matrix[np.ix_(idx, idx)])


def _is_transitive(m: np.ndarray) -> bool:
    # m o m subset of m
    comp = (m.astype(np.int64) @ m.astype(np.int64)) > 0
    return not np.any(comp & ~m)


def _has_cycle(m: np.ndarray) -> bool:
    """Cycle through distinct vertices in the off-diagonal part of ``m``."""
    g = m.copy()
    np.fill_diagonal(g, False)
    indeg = g.sum(axis=0)
    ready = [i for i in range(len(indeg)) if indeg[i] == 0]
    done = 0
    while ready:
        u = ready.pop()
        done += 1
        for v in np.flatnonzero(g[u]):
            indeg[v] -= 1
            if indeg[v] == 0:
                ready.append(int(v))
    return done < len(indeg)


def classify_relation(rel: Relation) -> RelationClassFlags:
    m = rel.matrix
    s = m & ~m.T
    off = ~np.eye(rel.n, dtype=bool)
    return RelationClassFlags(
        complete=bool(np.all(m | m.T)),
        reflexive=bool(np.all(np.diag(m))),
        antisymmetric=not np.any(m & m.T & off),
        transitive=_is_transitive(m),
        quasi_transitive=_is_transitive(s),
        acyclic=not _has_cycle(m),
        quasi_acyclic=not _has_cycle(s),
    )


def relation_from_scores(vertices, theta) -> Relation:
    """``R(theta)``: ``x >= y`` iff ``theta(x,y) >= theta(y,x)``, plus the diagonal.

    ``theta`` is an ``n x n`` array (diagonal ignored) or anything with a
    ``values`` array such as a :class:`~flowrank.maxflow.FlowMatrix`.
    """
    vertices = _vertex_set(vertices)
    t = np.asarray(getattr(theta, "values", theta))
    m = t >= t.T
    np.fill_diagonal(m, True)
    return Relation(vertices, m)


def relation_from_utility(vertices, u: Sequence) -> Relation:
    """``R(u)``: ``x >= y`` iff ``u(x) >= u(y)``."""
    u = np.asarray(u)
    return Relation(_vertex_set(vertices), u[:, None] >= u[None, :])


def satisfies_gomory_hu_condition(theta) -> bool:
    t = np.asarray(getattr(theta, "values", theta))
    n = t.shape[0]
    for y in range(n):
        bound = np.minimum(t[:, y : y + 1], t[y : y + 1, :])
        bad = t < bound
        bad[y, :] = False
        bad[:, y] = False
        np.fill_diagonal(bad, False)
        if bad.any():
            return False
    return True


# --- linear extensions and refinements -----------------------------------


def _preds(m: np.ndarray) -> list[int]:
    """Bitmask of required predecessors per vertex (off-diagonal pairs of m)."""
    n = m.shape[0]
    masks = [0] * n
    for i, j in zip(*np.nonzero(m)):
        if i != j:
            masks[j] |= 1 << int(i)
    return masks


def _topological_orders(masks: list[int]) -> Iterator[tuple[int, ...]]:
    n = len(masks)
    full = (1 << n) - 1
    order: list[int] = []

    def walk(placed: int) -> Iterator[tuple[int, ...]]:
        if placed == full:
            yield tuple(order)
            return
        for v in range(n):
            bit = 1 << v
            if not placed & bit and masks[v] & ~placed == 0:
                order.append(v)
                yield from walk(placed | bit)
                order.pop()

    yield from walk(0)


def _count_topological_orders(masks: list[int]) -> int:
    n = len(masks)
    ways = [0] * (1 << n)
    ways[0] = 1
    for placed in range(1 << n):
        w = ways[placed]
        if not w:
            continue
        for v in range(n):
            bit = 1 << v
            if not placed & bit and masks[v] & ~placed == 0:
                ways[placed | bit] += w
    return ways[-1]


def _take(items: Iterator, limit: int | None) -> list:
    if limit is None:
        return list(items)
    out = list(itertools.islice(items, limit + 1))
    if len(out) > limit:
        raise EnumerationLimitError(limit)
    return out


def iter_linear_extensions(rel: Relation) -> Iterator[LinearOrder]:
    """Lazily yield every linear order containing ``rel`` (none if cyclic)."""
    if _has_cycle(rel.matrix):
        return
    labels = rel.labels
    for order in _topological_orders(_preds(rel.matrix)):
        yield LinearOrder(tuple(labels[i] for i in order))


def linear_extensions(rel: Relation, limit: int | None = DEFAULT_LIMIT) -> list[LinearOrder]:
    return _take(iter_linear_extensions(rel), limit)


def count_linear_extensions(rel: Relation) -> int:
    if _has_cycle(rel.matrix):
        return 0
    m = rel.matrix
    if not np.any(m & ~np.eye(rel.n, dtype=bool)):
        return math.factorial(rel.n)
    return _count_topological_orders(_preds(m))


def linear_extension_forcing(rel: Relation, pairs: Iterable[tuple[str, str]]) -> LinearOrder:
    """One linear extension of ``rel`` that also ranks each forced ``x`` above ``y``.

    Pairs are added one at a time; an error is raised as soon as one of them
    closes a cycle.
    """
    m = np.array(rel.matrix, dtype=bool)
    if _has_cycle(m):
        raise InfeasibleForcingError("relation is not acyclic")
    for x, y in pairs:
        i, j = rel.vertices.index(x), rel.vertices.index(y)
        if i == j:
            continue
        m[i, j] = True
        if _has_cycle(m):
            raise InfeasibleForcingError(f"forcing {x} above {y} creates a cycle")
    return next(iter_linear_extensions(Relation(rel.vertices, m)))


def _check_refinable(rel: Relation) -> None:
    flags = classify_relation(rel)
    if not (flags.complete and flags.quasi_acyclic):
        raise NotQuasiAcyclicError("linear refinements need a complete, quasi-acyclic relation")


def iter_linear_refinements(rel: Relation) -> Iterator[LinearOrder]:
    """Linear orders contained in ``rel``; for complete quasi-acyclic ``rel``
    these are the linear extensions of its strict part."""
    _check_refinable(rel)
    return iter_linear_extensions(strict(rel))


def linear_refinements(rel: Relation, limit: int | None = DEFAULT_LIMIT) -> list[LinearOrder]:
    return _take(iter_linear_refinements(rel), limit)


def count_linear_refinements(rel: Relation) -> int:
    _check_refinable(rel)
    return count_linear_extensions(strict(rel))


def _brute_force(rel: Relation, keep) -> list[LinearOrder]:
    out = []
    for perm in itertools.permutations(range(rel.n)):
        pos = np.empty(rel.n, dtype=np.int64)
        pos[list(perm)] = np.arange(rel.n)
        if keep(pos[:, None] <= pos[None, :]):
            out.append(LinearOrder(tuple(rel.labels[i] for i in perm)))
    return out


def brute_force_refinements(rel: Relation) -> list[LinearOrder]:
    """Every permutation whose order relation is a subset of ``rel``."""
    return _brute_force(rel, lambda lin: not np.any(lin & ~rel.matrix))


def brute_force_extensions(rel: Relation) -> list[LinearOrder]:
    """Every permutation whose order relation contains ``rel``."""
    return _brute_force(rel, lambda lin: not np.any(rel.matrix & ~lin))


# --- k-maximum sets ------------------------------------------------------


def _check_k(n: int, k: int) -> None:
    if not 1 <= k <= n - 1:
        raise InvalidKError(f"k must lie in [1, {n - 1}], got {k}")


def _sort_sets(sets: Iterable[frozenset[str]], vertices: VertexSet) -> list[frozenset[str]]:
    return sorted(sets, key=lambda w: sorted(vertices.index(x) for x in w))


def k_maximum_sets(rel: Relation, k: int) -> list[frozenset[str]]:
    """Every ``k``-subset whose members are all weakly above every non-member."""
    _check_k(rel.n, k)
    m = rel.matrix
    out = []
    for combo in itertools.combinations(range(rel.n), k):
        inside = np.zeros(rel.n, dtype=bool)
        inside[list(combo)] = True
        if m[np.ix_(inside, ~inside)].all():
            out.append(frozenset(rel.labels[i] for i in combo))
    return out


def k_maximum_sets_via_refinements(rel: Relation, k: int) -> list[frozenset[str]]:
    """Union of the top-``k`` sets of all linear refinements (cross-check)."""
    _check_k(rel.n, k)
    tops = {order.top(k) for order in iter_linear_refinements(rel)}
    return _sort_sets(tops, rel.vertices)


def maxima(rel: Relation) -> frozenset[str]:
    m = rel.matrix
    return frozenset(x for i, x in enumerate(rel.labels) if m[i].all())


def minima(rel: Relation) -> frozenset[str]:
    return maxima(reverse_rel(rel))


def sorted_labels(subset: Iterable[str], vertices: VertexSet) -> list[str]:
    subset = set(subset)
    return [x for x in vertices if x in subset]
