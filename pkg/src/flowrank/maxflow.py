"""Maximum flows, minimum cuts and the all-pairs flow matrix.

Max flows come from shortest augmenting paths started at the null flow (see
:mod:`flowrank.kernels`). Because every augmenting path is simple and starts
at the source, the source never receives flow, so the witness returned by
:func:`max_flow_witness` has zero inflow at the source.

:func:`lambda_oracle` and :func:`exhaustive_min_cut` are brute-force
cross-checks that share no code with the kernels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from flowrank import kernels
from flowrank.errors import InvalidCutError, InvalidPairError, OracleTooLargeError
from flowrank.network import Network, VertexSet

ORACLE_MAX_N = 5
ORACLE_MAX_TOTAL = 12


def _pair(net: Network, s: str, t: str) -> tuple[int, int]:
    i, j = net.vertices.index(s), net.vertices.index(t)
    if i == j:
        raise InvalidPairError(f"source and sink must differ (got {s!r} twice)")
    return i, j


@dataclass(frozen=True, eq=False)
class Flow:
    """Arc flow from ``source`` to ``sink``; ``values[i, j]`` is ``f(x_i, x_j)``."""

    vertices: VertexSet
    source: str
    sink: str
    values: np.ndarray = field(repr=False)

    @property
    def value(self) -> int:
        s = self.vertices.index(self.source)
        return int(self.values[s].sum() - self.values[:, s].sum())

    def __getitem__(self, arc: tuple[str, str]) -> int:
        x, y = arc
        return int(self.values[self.vertices.index(x), self.vertices.index(y)])

    def is_feasible(self, net: Network) -> bool:
        """Capacity bounds plus conservation away from source and sink."""
        f = self.values
        if np.any(f < 0) or np.any(f > net.capacity) or np.any(np.diag(f)):
            return False
        balance = f.sum(axis=1) - f.sum(axis=0)
        s, t = self.vertices.index(self.source), self.vertices.index(self.sink)
        mask = np.ones(len(balance), dtype=bool)
        mask[[s, t]] = False
        return bool(np.all(balance[mask] == 0))


@dataclass(frozen=True)
class Cut:
    """Vertex set ``S`` with ``{} != S != V``."""

    vertices: VertexSet
    side: frozenset[str]

    def __post_init__(self):
        side = frozenset(self.side)
        for x in side:
            self.vertices.index(x)
        if not side or len(side) == self.vertices.n:
            raise InvalidCutError("a cut must be a nonempty proper subset of the vertices")
        object.__setattr__(self, "side", side)

    def separates(self, s: str, t: str) -> bool:
        return s in self.side and t not in self.side

    def sorted_side(self) -> list[str]:
        return [x for x in self.vertices if x in self.side]


class PairMatrix:
    """Integer scores on ordered pairs of distinct vertices."""

    def __init__(self, vertices: VertexSet, values: np.ndarray):
        values = np.array(values, dtype=np.int64)
        values.flags.writeable = False
        self.vertices = vertices
        self.values = values

    def __getitem__(self, pair: tuple[str, str]) -> int:
        x, y = pair
        i, j = self.vertices.index(x), self.vertices.index(y)
        if i == j:
            raise InvalidPairError("diagonal entries are undefined")
        return int(self.values[i, j])

    def items(self) -> Iterator[tuple[str, str, int]]:
        for i, x in enumerate(self.vertices):
            for j, y in enumerate(self.vertices):
                if i != j:
                    yield x, y, int(self.values[i, j])

    def as_dict(self) -> dict[tuple[str, str], int]:
        return {(x, y): v for x, y, v in self.items()}

    def transpose(self):
        return type(self)(self.vertices, self.values.T)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PairMatrix)
            and self.vertices == other.vertices
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.vertices)!r}, {self.values.tolist()!r})"


class FlowMatrix(PairMatrix):
    """All-pairs maximum flow values."""


def max_flow_value(net: Network, s: str, t: str) -> int:
    i, j = _pair(net, s, t)
    return kernels.max_flow(net.capacity, i, j)[0]


def max_flow_witness(net: Network, s: str, t: str) -> Flow:
    i, j = _pair(net, s, t)
    _, nflow = kernels.max_flow(net.capacity, i, j)
    values = np.maximum(nflow, 0)
    values.flags.writeable = False
    return Flow(net.vertices, s, t, values)


def _residual_reach(net: Network, nflow: np.ndarray, i: int) -> list[int]:
    resid = net.capacity - nflow
    seen = [False] * net.n
    seen[i] = True
    stack = [i]
    while stack:
        u = stack.pop()
        for v in range(net.n):
            if not seen[v] and resid[u, v] > 0:
                seen[v] = True
                stack.append(v)
    return [v for v in range(net.n) if seen[v]]


def min_cut(net: Network, s: str, t: str) -> Cut:
    """Vertices reachable from ``s`` in the final residual graph."""
    i, j = _pair(net, s, t)
    _, nflow = kernels.max_flow(net.capacity, i, j)
    reach = _residual_reach(net, nflow, i)
    return Cut(net.vertices, frozenset(net.labels[v] for v in reach))


def cut_capacity(net: Network, cut: Cut | Iterable[str]) -> int:
    if not isinstance(cut, Cut):
        cut = Cut(net.vertices, frozenset(cut))
    if cut.vertices != net.vertices:
        raise InvalidCutError("cut and network use different vertex sets")
    inside = np.zeros(net.n, dtype=bool)
    inside[[net.vertices.index(x) for x in cut.side]] = True
    return int(net.capacity[np.ix_(inside, ~inside)].sum())


def flow_matrix(net: Network) -> FlowMatrix:
    return FlowMatrix(net.vertices, kernels.all_pairs_max_flow(net.capacity))


def check_gomory_hu(matrix: PairMatrix | np.ndarray) -> bool:
    """``M[x,z] >= min(M[x,y], M[y,z])`` for all distinct ``x, y, z``."""
    m = np.asarray(matrix.values if isinstance(matrix, PairMatrix) else matrix)
    n = m.shape[0]
    for y in range(n):
        bound = np.minimum(m[:, y : y + 1], m[y : y + 1, :])
        bad = m < bound
        bad[y, :] = False
        bad[:, y] = False
        np.fill_diagonal(bad, False)
        if bad.any():
            return False
    return True


# --- brute-force oracles -------------------------------------------------


def simple_paths(cap: np.ndarray, s: int, t: int) -> list[tuple[int, ...]]:
    """All simple paths ``s -> t`` using arcs of positive capacity."""
    n = cap.shape[0]
    out = []

    def extend(path: list[int]) -> None:
        u = path[-1]
        for v in range(n):
            if cap[u, v] > 0 and v not in path:
                if v == t:
                    out.append(tuple(path) + (t,))
                else:
                    path.append(v)
                    extend(path)
                    path.pop()

    extend([s])
    return out


def lambda_oracle(
    net: Network,
    s: str,
    t: str,
    *,
    max_n: int = ORACLE_MAX_N,
    max_total: int = ORACLE_MAX_TOTAL,
) -> int:
    """Largest number of ``s -> t`` paths (repeats allowed) within capacities.

    Exponential search over path multiplicities; refuses instances above the
    guard (``n > max_n`` or total capacity ``> max_total``).
    """
    i, j = _pair(net, s, t)
    if net.n > max_n or net.total_capacity > max_total:
        raise OracleTooLargeError(
            f"oracle guard exceeded: n={net.n} (max {max_n}), "
            f"total capacity={net.total_capacity} (max {max_total})"
        )
    paths = simple_paths(net.capacity, i, j)
    if not paths:
        return 0
    arcs = sorted({a for p in paths for a in zip(p, p[1:])})
    arc_id = {a: k for k, a in enumerate(arcs)}
    uses = [tuple(arc_id[a] for a in zip(p, p[1:])) for p in paths]
    start = tuple(int(net.capacity[a]) for a in arcs)

    @lru_cache(maxsize=None)
    def best(k: int, left: tuple[int, ...]) -> int:
        if k == len(uses):
            return 0
        room = min(left[a] for a in uses[k])
        result = 0
        rem = list(left)
        for count in range(room + 1):
            if count:
                for a in uses[k]:
                    rem[a] -= 1
            result = max(result, count + best(k + 1, tuple(rem)))
        return result

    return best(0, start)


def admissible_cuts(net: Network, s: str, t: str) -> Iterator[Cut]:
    """All ``2**(n-2)`` cuts separating ``s`` from ``t``."""
    _pair(net, s, t)
    rest = [x for x in net.labels if x not in (s, t)]
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            yield Cut(net.vertices, frozenset((s,) + extra))


def exhaustive_min_cut(net: Network, s: str, t: str) -> int:
    return min(cut_capacity(net, cut) for cut in admissible_cuts(net, s, t))
