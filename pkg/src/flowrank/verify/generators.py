"""Seeded random networks and relations.

Every network generator draws from ``numpy.random.default_rng(seed)`` so a
spec determines its network exactly. Relation samplers take an already
seeded ``Generator``; membership in the requested class is enforced by the
class predicates rather than trusted to the sampler.
"""

from __future__ import annotations

import string
from dataclasses import dataclass

import numpy as np

from flowrank.errors import InvalidSpecError
from flowrank.network import Network, VertexSet
from flowrank.relation import LinearOrder, Relation, classify_relation

KINDS = (
    "arbitrary",
    "k_balanced",
    "class_O",
    "class_I",
    "constant",
    "pseudo_symmetric",
    "parametric",
)


def default_labels(n: int) -> VertexSet:
    if n <= 26:
        return VertexSet(string.ascii_lowercase[:n])
    width = len(str(n))
    return VertexSet(f"v{i:0{width}d}" for i in range(1, n + 1))


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters of one random network.

    ``k`` is the balance of ``k_balanced``; ``value`` the capacity of
    ``constant``; ``a``, ``b``, ``l`` the coefficients of ``parametric``,
    where ``c(x, y) = a*w(x) + b*w(y) + l`` for weights ``w`` drawn in
    ``[0, max_capacity]``.
    """

    kind: str
    n: int
    max_capacity: int = 4
    seed: int = 0
    k: int | None = None
    value: int | None = None
    a: int | None = None
    b: int | None = None
    l: int | None = None

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise InvalidSpecError(f"unknown network class {self.kind!r}")
        if self.n < 2:
            raise InvalidSpecError("n must be at least 2")
        if self.max_capacity < 0:
            raise InvalidSpecError("max_capacity must be nonnegative")
        if not 0 <= self.seed < 2**64:
            raise InvalidSpecError("seed must fit in 64 unsigned bits")
        if self.kind == "k_balanced" and (self.k is None or self.k < 0):
            raise InvalidSpecError("k_balanced needs a balance k >= 0")
        if self.kind == "constant":
            if self.value is None or not 0 <= self.value <= self.max_capacity:
                raise InvalidSpecError("constant needs 0 <= value <= max_capacity")
        if self.kind == "parametric":
            a, b, l = self.a, self.b, self.l
            if a is None or b is None or l is None or min(a, b, l) < 0 or a + b == 0:
                raise InvalidSpecError("parametric needs integers a, b, l >= 0 with a + b > 0")


def _cycle_sum(rng: np.random.Generator, n: int) -> np.ndarray:
    cap = np.zeros((n, n), dtype=np.int64)
    for _ in range(int(rng.integers(1, 3 * n + 1))):
        length = int(rng.integers(2, n + 1))
        cycle = rng.permutation(n)[:length]
        cap[cycle, np.roll(cycle, -1)] += 1
    return cap


def generate_capacity(spec: GeneratorSpec, rng: np.random.Generator) -> np.ndarray:
    n, top = spec.n, spec.max_capacity
    if spec.kind == "arbitrary":
        cap = rng.integers(0, top + 1, size=(n, n))
    elif spec.kind == "k_balanced":
        upper = rng.integers(0, spec.k + 1, size=(n, n))
        cap = np.triu(upper, 1)
        cap = cap + np.tril(spec.k - cap.T, -1)
    elif spec.kind in ("class_O", "class_I", "parametric"):
        w = rng.integers(0, top + 1, size=n)
        if spec.kind == "class_O":
            cap = np.repeat(w[:, None], n, axis=1)
        elif spec.kind == "class_I":
            cap = np.repeat(w[None, :], n, axis=0)
        else:
            cap = spec.a * w[:, None] + spec.b * w[None, :] + spec.l
    elif spec.kind == "constant":
        cap = np.full((n, n), spec.value)
    else:
        cap = _cycle_sum(rng, n)
    cap = np.asarray(cap, dtype=np.int64)
    np.fill_diagonal(cap, 0)
    return cap


def generate(spec: GeneratorSpec, vertices: VertexSet | None = None) -> Network:
    spec.validate()
    vertices = vertices or default_labels(spec.n)
    return Network(vertices, generate_capacity(spec, np.random.default_rng(spec.seed)))


def random_network(
    rng: np.random.Generator, n: int, max_capacity: int, *, zero_prob: float = 0.0
) -> Network:
    """Arbitrary network; each arc is independently zeroed with ``zero_prob``."""
    cap = rng.integers(0, max_capacity + 1, size=(n, n))
    if zero_prob:
        cap[rng.random((n, n)) < zero_prob] = 0
    np.fill_diagonal(cap, 0)
    return Network(default_labels(n), cap)


def random_budget_network(rng: np.random.Generator, n: int, max_total: int) -> Network:
    """Network whose total capacity is at most ``max_total``."""
    cap = np.zeros((n, n), dtype=np.int64)
    arcs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for _ in range(int(rng.integers(0, max_total + 1))):
        i, j = arcs[int(rng.integers(len(arcs)))]
        cap[i, j] += 1
    return Network(default_labels(n), cap)


def random_bijection(rng: np.random.Generator, vertices: VertexSet) -> dict[str, str]:
    images = [vertices[i] for i in rng.permutation(vertices.n)]
    return dict(zip(vertices.labels, images))


# --- relations ------------------------------------------------------------


def random_relation(rng: np.random.Generator, n: int, *, density: float | None = None,
                    reflexive: bool = False) -> Relation:
    p = rng.random() if density is None else density
    m = rng.random((n, n)) < p
    if reflexive:
        np.fill_diagonal(m, True)
    return Relation(default_labels(n), m)


def random_linear_order(rng: np.random.Generator, n: int) -> LinearOrder:
    vertices = default_labels(n)
    return LinearOrder(tuple(vertices[i] for i in rng.permutation(n)))


def _from_positions(n: int, pos: np.ndarray, strict_forward: np.ndarray) -> Relation:
    """Complete relation: strict where ``strict_forward`` marks a pair ranked
    earlier in ``pos``, ties on every other pair."""
    earlier = pos[:, None] < pos[None, :]
    s = earlier & strict_forward
    m = ~s.T
    return Relation(default_labels(n), m)


def random_quasi_acyclic(rng: np.random.Generator, n: int) -> Relation:
    """Complete relation whose strict part is acyclic.

    Every such relation arises: its strict part extends to some linear order
    and the remaining pairs are ties.
    """
    pos = rng.permutation(n)
    return _from_positions(n, pos, rng.random((n, n)) < rng.random())


def random_weak_order(rng: np.random.Generator, n: int) -> Relation:
    level = rng.integers(0, int(rng.integers(1, n + 1)), size=n)
    return Relation(default_labels(n), level[:, None] <= level[None, :])


def random_quasi_transitive(rng: np.random.Generator, n: int, *, attempts: int = 50) -> Relation:
    """Random complete quasi-transitive relation.

    Starts from a random weak order and turns randomly chosen strict pairs
    into ties whenever the result stays quasi-transitive.
    """
    m = np.array(random_weak_order(rng, n).matrix)
    strict_pairs = list(zip(*np.nonzero(m & ~m.T)))
    if strict_pairs:
        order = rng.permutation(len(strict_pairs))
        budget = int(rng.integers(0, len(strict_pairs) + 1))
        for idx in order[:attempts]:
            if budget == 0:
                break
            i, j = strict_pairs[idx]
            trial = m.copy()
            trial[j, i] = True
            if classify_relation(Relation(default_labels(n), trial)).quasi_transitive:
                m = trial
                budget -= 1
    rel = Relation(default_labels(n), m)
    assert classify_relation(rel).in_T
    return rel


def random_acyclic(rng: np.random.Generator, n: int, *, reflexive: bool | None = None) -> Relation:
    """Relation without cycles: a random subset of the pairs of a hidden linear order."""
    pos = rng.permutation(n)
    m = (pos[:, None] < pos[None, :]) & (rng.random((n, n)) < rng.random())
    if reflexive is None:
        reflexive = bool(rng.random() < 0.5)
    if reflexive:
        np.fill_diagonal(m, True)
    return Relation(default_labels(n), m)


def random_partial_order(rng: np.random.Generator, n: int) -> Relation:
    """Transitive closure of a random acyclic relation (diagonal included)."""
    m = np.array(random_acyclic(rng, n, reflexive=True).matrix)
    for k in range(n):
        m |= m[:, k : k + 1] & m[k : k + 1, :]
    return Relation(default_labels(n), m)


# --- perturbations --------------------------------------------------------


def dominate(cap: np.ndarray, winner: int, loser: int) -> None:
    """Raise capacities in place until ``winner`` dominates ``loser`` arc by arc."""
    n = cap.shape[0]
    cap[winner, loser] = max(cap[winner, loser], cap[loser, winner])
    for z in range(n):
        if z in (winner, loser):
            continue
        cap[winner, z] = max(cap[winner, z], cap[loser, z])
        cap[z, loser] = max(cap[z, loser], cap[z, winner])


def dominance_holds(cap: np.ndarray, winner: int, loser: int) -> bool:
    others = [z for z in range(cap.shape[0]) if z not in (winner, loser)]
    return bool(
        cap[winner, loser] >= cap[loser, winner]
        and all(cap[winner, z] >= cap[loser, z] and cap[z, loser] >= cap[z, winner] for z in others)
    )


STRICTNESS_CONDITIONS = "abcd"
SOUND_STRICTNESS = "ad"


def strict_dominance(
    cap: np.ndarray, winner: int, loser: int, conditions: str = STRICTNESS_CONDITIONS
) -> bool:
    """Whether any of the named strictness conditions accompanying dominance holds.

    ``a``: the direct arc is strict. ``b``: every out-arc is strict. ``c``:
    every in-arc is strict. ``d``: some third vertex is strict on both sides.
    Only ``a`` and ``d`` force a strict flow preference; ``b`` and ``c`` leave
    a tie whenever a minimum cut isolates the loser (resp. the winner).
    """
    others = [z for z in range(cap.shape[0]) if z not in (winner, loser)]
    out_better = [cap[winner, z] > cap[loser, z] for z in others]
    in_better = [cap[z, loser] > cap[z, winner] for z in others]
    holds = {
        "a": lambda: cap[winner, loser] > cap[loser, winner],
        "b": lambda: all(out_better),
        "c": lambda: all(in_better),
        "d": lambda: any(o and i for o, i in zip(out_better, in_better)),
    }
    return any(bool(holds[name]()) for name in conditions)


def improve(rng: np.random.Generator, net: Network, x: int, *, step: int = 2) -> Network:
    """Raise ``x``'s wins and lower its losses at random; other arcs stay put."""
    cap = np.array(net.capacity)
    for y in range(net.n):
        if y == x:
            continue
        cap[x, y] += int(rng.integers(0, step + 1))
        cap[y, x] -= int(rng.integers(0, cap[y, x] + 1))
    return Network(net.vertices, cap)
