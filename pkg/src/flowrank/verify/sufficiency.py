"""Per-triple sufficient conditions for flow and Borda to agree.

For distinct ``x, y, u`` let ``d = o(x) - o(y)`` and
``L = c(y,u) - c(x,u) + c(u,y) - c(u,x)``. The Borda condition asks for a
coefficient ``beta > -1/(n-2)`` with ``L >= beta * d``. Solving for ``beta``:

* ``d < 0``: any large ``beta`` works;
* ``d = 0``: feasible iff ``L >= 0``;
* ``d > 0``: feasible iff ``L / d > -1/(n-2)``, i.e. ``L*(n-2) > -d``.

The dual Borda condition is the same with ``L`` negated and
``d = i(y) - i(x)``. Equality ``L*(n-2) = -d`` is the boundary: the strict
lower bound on ``beta`` makes it infeasible, and it is reported separately.
All arithmetic is on integers or :class:`fractions.Fraction`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from flowrank.errors import NotApplicableError
from flowrank.network import Network, indegrees, outdegrees


@dataclass(frozen=True)
class TripleCheck:
    satisfied: bool
    boundary_triples: tuple[tuple[str, str, str], ...]
    failing_triples: tuple[tuple[str, str, str], ...]


def _terms(net: Network, dual: bool):
    if net.n < 3:
        raise NotApplicableError("the triple condition needs at least 3 vertices")
    cap = net.capacity
    deg = -indegrees(net) if dual else outdegrees(net)
    for x, y, u in itertools.permutations(range(net.n), 3):
        lhs = int(cap[y, u] - cap[x, u] + cap[u, y] - cap[u, x])
        if dual:
            lhs = -lhs
        yield (x, y, u), lhs, int(deg[x] - deg[y])


def triple_feasible(lhs: int, d: int, n: int) -> bool:
    if d < 0:
        return True
    if d == 0:
        return lhs >= 0
    return lhs * (n - 2) > -d


def fb_check(net: Network, *, dual: bool = False) -> TripleCheck:
    labels = net.labels
    boundary, failing = [], []
    for (x, y, u), lhs, d in _terms(net, dual):
        triple = (labels[x], labels[y], labels[u])
        if d > 0 and lhs * (net.n - 2) == -d:
            boundary.append(triple)
        if not triple_feasible(lhs, d, net.n):
            failing.append(triple)
    return TripleCheck(not failing, tuple(boundary), tuple(failing))


def fb_sufficient(net: Network) -> bool:
    return fb_check(net).satisfied


def fbhat_sufficient(net: Network) -> bool:
    return fb_check(net, dual=True).satisfied


def coefficient_witness(lhs: int, d: int, n: int) -> Fraction | None:
    """Search a finite set of rational candidates for a valid coefficient.

    Independent of :func:`triple_feasible`: it only evaluates the defining
    inequality on candidates. The candidates cover every case: the tight
    value ``lhs/d``, a large positive value, zero, and points just above the
    lower bound.
    """
    floor = Fraction(-1, n - 2)
    candidates = [Fraction(0), Fraction(abs(lhs) + 1)]
    if d:
        candidates.append(Fraction(lhs, d))
    candidates += [floor + Fraction(1, q) for q in (2, 10, 10**3, 10**6) if floor + Fraction(1, q) < 0]
    for beta in candidates:
        if beta > floor and lhs >= beta * d:
            return beta
    return None


def fb_sufficient_oracle(net: Network, *, dual: bool = False) -> bool:
    return all(coefficient_witness(lhs, d, net.n) is not None for _, lhs, d in _terms(net, dual))


def parametric_coefficients_ok(n: int, a: int, b: int) -> bool:
    return (n - 1) * a < b or (n - 1) * b < a


def degree_vectors(net: Network) -> tuple[np.ndarray, np.ndarray]:
    return outdegrees(net), indegrees(net)
