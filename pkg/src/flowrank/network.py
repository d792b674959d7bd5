"""Competitions as capacitated complete digraphs.

A :class:`Network` stores its capacities as a dense ``n x n`` int64 matrix
indexed by the canonical vertex order; ``capacity[i, j]`` is the number of
times vertex ``i`` beat vertex ``j``. The diagonal is always zero. Instances
are immutable: the matrix is flagged read-only and every transform returns a
new network.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

import numpy as np

from flowrank.errors import (
    CapacityOverflowError,
    DomainTooSmallError,
    IncompatibleNetworksError,
    InvalidPermutationError,
    MalformedInputError,
    UnknownVertexError,
)

# Totals stay below this so sums of capacities never overflow int64.
CAPACITY_LIMIT = 2**62


class VertexSet:
    """Ordered set of distinct text labels.

    The order is the canonical order used for every deterministic iteration
    and every printed result.
    """

    __slots__ = ("labels", "_index")

    def __init__(self, labels: Iterable[str]):
        labels = tuple(str(x) for x in labels)
        if not labels:
            raise DomainTooSmallError("a vertex set needs at least one label")
        index = {x: i for i, x in enumerate(labels)}
        if len(index) != len(labels):
            raise MalformedInputError(f"duplicate vertex labels in {labels!r}")
        self.labels = labels
        self._index = index

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {label!r}") from None

    def sorted(self) -> "VertexSet":
        return VertexSet(sorted(self.labels))

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __getitem__(self, i: int) -> str:
        return self.labels[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VertexSet) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"VertexSet({list(self.labels)!r})"


def _as_vertex_set(vertices: VertexSet | Iterable[str]) -> VertexSet:
    return vertices if isinstance(vertices, VertexSet) else VertexSet(vertices)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def _checked_capacity(values) -> np.ndarray:
    """Convert to int64, rejecting negatives and totals that could overflow."""
    obj = np.asarray(values, dtype=object)
    if obj.ndim != 2 or obj.shape[0] != obj.shape[1]:
        raise MalformedInputError("capacity matrix must be square")
    total = 0
    for v in obj.flat:
        if int(v) != v:
            raise MalformedInputError(f"capacity {v!r} is not an integer")
        if v < 0:
            raise MalformedInputError(f"negative capacity {v!r}")
        total += int(v)
    if total >= CAPACITY_LIMIT:
        raise CapacityOverflowError(f"total capacity {total} exceeds the supported bound 2**62")
    return np.array(obj.tolist(), dtype=np.int64).reshape(obj.shape)


@dataclass(frozen=True, eq=False)
class Network:
    """Complete loop-free digraph with nonnegative integer arc capacities."""

    vertices: VertexSet
    capacity: np.ndarray = field(repr=False)

    def __post_init__(self):
        vertices = _as_vertex_set(self.vertices)
        if vertices.n < 2:
            raise DomainTooSmallError("a network needs at least 2 vertices")
        cap = _checked_capacity(self.capacity)
        if cap.shape != (vertices.n, vertices.n):
            raise MalformedInputError(
                f"capacity shape {cap.shape} does not match {vertices.n} vertices"
            )
        if np.any(np.diag(cap)):
            raise MalformedInputError("self-arcs are not allowed")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "capacity", _frozen(cap))

    @classmethod
    def zero(cls, vertices: VertexSet | Iterable[str]) -> "Network":
        vertices = _as_vertex_set(vertices)
        return cls(vertices, np.zeros((vertices.n, vertices.n), dtype=np.int64))

    @classmethod
    def from_arcs(
        cls, vertices: VertexSet | Iterable[str], arcs: Mapping[tuple[str, str], int]
    ) -> "Network":
        """Build from ``{(x, y): c}``; missing arcs get capacity 0."""
        vertices = _as_vertex_set(vertices)
        cap = [[0] * vertices.n for _ in range(vertices.n)]
        for (x, y), c in arcs.items():
            if x == y:
                raise MalformedInputError(f"self-arc ({x}, {y})")
            cap[vertices.index(x)][vertices.index(y)] += c
        return cls(vertices, cap)

    @property
    def n(self) -> int:
        return self.vertices.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.vertices.labels

    @property
    def total_capacity(self) -> int:
        return int(self.capacity.sum())

    def c(self, x: str, y: str) -> int:
        return int(self.capacity[self.vertices.index(x), self.vertices.index(y)])

    def arcs(self) -> Iterator[tuple[str, str, int]]:
        """All ``n(n-1)`` arcs in canonical order, zero-capacity arcs included."""
        for i, x in enumerate(self.labels):
            for j, y in enumerate(self.labels):
                if i != j:
                    yield x, y, int(self.capacity[i, j])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Network)
            and self.vertices == other.vertices
            and np.array_equal(self.capacity, other.capacity)
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.capacity.tobytes()))

    def __repr__(self) -> str:
        return f"Network({list(self.labels)!r}, {self.capacity.tolist()!r})"


class TableRow(NamedTuple):
    """``x`` and ``y`` met ``m + n`` times; ``x`` won ``m``, ``y`` won ``n``."""

    x: str
    m: int
    n: int
    y: str


@dataclass(frozen=True)
class CompetitionTable:
    rows: tuple[TableRow, ...]

    def __post_init__(self):
        rows = tuple(TableRow(*r) for r in self.rows)
        for r in rows:
            if r.x == r.y:
                raise MalformedInputError(f"row pairs {r.x!r} with itself")
            if r.m < 0 or r.n < 0:
                raise MalformedInputError(f"negative win count in row {tuple(r)!r}")
        object.__setattr__(self, "rows", rows)

    def labels(self) -> list[str]:
        """Labels in first-seen order."""
        seen: dict[str, None] = {}
        for r in self.rows:
            seen.setdefault(r.x)
            seen.setdefault(r.y)
        return list(seen)


def from_table(
    table: CompetitionTable | Iterable[Sequence],
    vertices: VertexSet | Iterable[str] | None = None,
    *,
    sort_labels: bool = False,
) -> Network:
    """Aggregate match results into a network.

    Repeated pairs add up. Without ``vertices`` the vertex set is the union of
    labels in first-seen order (sorted if ``sort_labels``).
    """
    if not isinstance(table, CompetitionTable):
        table = CompetitionTable(tuple(table))
    if vertices is None:
        labels = table.labels()
        if len(labels) < 2:
            raise DomainTooSmallError("a competition needs at least 2 distinct teams")
        vertices = VertexSet(labels)
    vertices = _as_vertex_set(vertices)
    if sort_labels:
        vertices = vertices.sorted()
    cap = [[0] * vertices.n for _ in range(vertices.n)]
    for r in table.rows:
        i, j = vertices.index(r.x), vertices.index(r.y)
        cap[i][j] += r.m
        cap[j][i] += r.n
    return Network(vertices, cap)


def outdegree(net: Network, x: str) -> int:
    return int(net.capacity[net.vertices.index(x)].sum())


def indegree(net: Network, x: str) -> int:
    return int(net.capacity[:, net.vertices.index(x)].sum())


def outdegrees(net: Network) -> np.ndarray:
    return net.capacity.sum(axis=1)


def indegrees(net: Network) -> np.ndarray:
    return net.capacity.sum(axis=0)


def reverse(net: Network) -> Network:
    return Network(net.vertices, net.capacity.T.copy())


def _permutation_indices(vertices: VertexSet, psi: Mapping[str, str]) -> np.ndarray:
    if set(psi) != set(vertices.labels) or set(psi.values()) != set(vertices.labels):
        raise InvalidPermutationError("mapping is not a bijection of the vertex labels")
    return np.array([vertices.index(psi[x]) for x in vertices.labels], dtype=np.int64)


def relabel(net: Network, psi: Mapping[str, str]) -> Network:
    """Return ``N^psi``: the arc ``(psi(x), psi(y))`` gets capacity ``c(x, y)``."""
    perm = _permutation_indices(net.vertices, psi)
    cap = np.zeros_like(net.capacity)
    cap[np.ix_(perm, perm)] = net.capacity
    return Network(net.vertices, cap)


def scale(net: Network, alpha: int) -> Network:
    if int(alpha) != alpha or alpha < 1:
        raise MalformedInputError(f"scale factor must be a positive integer, got {alpha!r}")
    return Network(net.vertices, [[int(v) * int(alpha) for v in row] for row in net.capacity])


def add(first: Network, second: Network) -> Network:
    if first.vertices != second.vertices:
        raise IncompatibleNetworksError("networks are defined on different vertex sets")
    return Network(
        first.vertices,
        [
            [int(a) + int(b) for a, b in zip(ra, rb)]
            for ra, rb in zip(first.capacity, second.capacity)
        ],
    )


@dataclass(frozen=True)
class NetworkClass:
    """Every structural class a network belongs to.

    ``balance`` is the common value of ``c(x,y) + c(y,x)`` (None if not
    balanced); ``out_weights`` / ``in_weights`` are the witnesses of
    membership in the classes where capacity depends only on the tail / only
    on the head of an arc.
    """

    balance: int | None
    out_weights: dict[str, int] | None
    in_weights: dict[str, int] | None
    constant: int | None
    pseudo_symmetric: bool

    @property
    def balanced(self) -> bool:
        return self.balance is not None

    @property
    def in_O(self) -> bool:
        return self.out_weights is not None

    @property
    def in_I(self) -> bool:
        return self.in_weights is not None

    @property
    def is_constant(self) -> bool:
        return self.constant is not None


def classify(net: Network) -> NetworkClass:
    cap = net.capacity
    off = ~np.eye(net.n, dtype=bool)
    pair_sums = (cap + cap.T)[off]
    balance = int(pair_sums[0]) if np.all(pair_sums == pair_sums[0]) else None

    # c(x, y) depends only on x: each row constant off the diagonal
    rows = [cap[i, off[i]] for i in range(net.n)]
    out_w = (
        {x: int(r[0]) for x, r in zip(net.labels, rows)}
        if all(np.all(r == r[0]) for r in rows)
        else None
    )
    cols = [cap[off[:, j], j] for j in range(net.n)]
    in_w = (
        {y: int(col[0]) for y, col in zip(net.labels, cols)}
        if all(np.all(col == col[0]) for col in cols)
        else None
    )
    values = cap[off]
    constant = int(values[0]) if np.all(values == values[0]) else None
    pseudo = bool(np.array_equal(outdegrees(net), indegrees(net)))
    return NetworkClass(balance, out_w, in_w, constant, pseudo)


def margin(net: Network) -> np.ndarray:
    """Margin function ``g(x, y) = c(x, y) - c(y, x)`` as an antisymmetric matrix."""
    return _frozen(net.capacity - net.capacity.T)


def margin_value(net: Network, x: str, y: str) -> int:
    i, j = net.vertices.index(x), net.vertices.index(y)
    return int(net.capacity[i, j] - net.capacity[j, i])


def network_from_relation(rel) -> Network:
    """``N_R``: unit capacity exactly on the strict pairs of ``rel``."""
    m = rel.matrix
    strict = m & ~m.T
    return Network(rel.vertices, strict.astype(np.int64))
