"""Dense numeric kernels: augmenting-path max flow and widest paths.

Each kernel exists twice. The ``*_loops`` variants are written as explicit
loops over int64 arrays and are compiled with numba; the ``*_numpy`` variants
use vectorised numpy operations and serve as the fallback when numba is absent
or disabled through ``FLOWRANK_NUMBA=0``. Both variants of the max-flow kernel
explore the residual graph in the same breadth-first order, so they return
identical flows, not just identical values.

All kernels take a square int64 capacity matrix with a zero diagonal.
"""

from __future__ import annotations

import numpy as np

from flowrank import _accel

BACKEND = _accel.BACKEND


def _max_flow_loops(cap, s, t):
    n = cap.shape[0]
    resid = cap.copy()
    net = np.zeros((n, n), dtype=np.int64)
    parent = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    value = 0
    while True:
        for i in range(n):
            parent[i] = -1
        parent[s] = s
        head = 0
        tail = 1
        queue[0] = s
        while head < tail and parent[t] == -1:
            u = queue[head]
            head += 1
            for v in range(n):
                if parent[v] == -1 and resid[u, v] > 0:
                    parent[v] = u
                    queue[tail] = v
                    tail += 1
        if parent[t] == -1:
            break
        bottleneck = resid[parent[t], t]
        v = t
        while v != s:
            u = parent[v]
            if resid[u, v] < bottleneck:
                bottleneck = resid[u, v]
            v = u
        v = t
        while v != s:
            u = parent[v]
            resid[u, v] -= bottleneck
            resid[v, u] += bottleneck
            net[u, v] += bottleneck
            net[v, u] -= bottleneck
            v = u
        value += bottleneck
    return value, net


def _widest_paths_loops(cap):
    n = cap.shape[0]
    width = cap.copy()
    for k in range(n):
        for i in range(n):
            if i == k:
                continue
            wik = width[i, k]
            if wik == 0:
                continue
            for j in range(n):
                if j == i or j == k:
                    continue
                via = wik if wik < width[k, j] else width[k, j]
                if via > width[i, j]:
                    width[i, j] = via
    for i in range(n):
        width[i, i] = 0
    return width


def _max_flow_numpy(cap, s, t):
    n = cap.shape[0]
    resid = np.array(cap, dtype=np.int64, copy=True)
    net = np.zeros((n, n), dtype=np.int64)
    value = 0
    while True:
        parent = np.full(n, -1, dtype=np.int64)
        parent[s] = s
        frontier = np.array([s], dtype=np.int64)
        while frontier.size and parent[t] < 0:
            reach = resid[frontier] > 0
            reach[:, parent >= 0] = False
            new = np.flatnonzero(reach.any(axis=0))
            if new.size == 0:
                break
            # first frontier vertex (in queue order) adjacent to each new vertex
            first = reach[:, new].argmax(axis=0)
            parent[new] = frontier[first]
            frontier = new[np.lexsort((new, first))]
        if parent[t] < 0:
            break
        path = [int(t)]
        while path[-1] != s:
            path.append(int(parent[path[-1]]))
        heads = np.array(path[:-1])
        tails = np.array(path[1:])
        bottleneck = resid[tails, heads].min()
        resid[tails, heads] -= bottleneck
        resid[heads, tails] += bottleneck
        net[tails, heads] += bottleneck
        net[heads, tails] -= bottleneck
        value += int(bottleneck)
    return value, net


def _all_pairs_numpy(cap):
    n = cap.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for s in range(n):
        for t in range(n):
            if s != t:
                out[s, t] = _max_flow_numpy(cap, s, t)[0]
    return out


def _widest_paths_numpy(cap):
    width = np.array(cap, dtype=np.int64, copy=True)
    for k in range(width.shape[0]):
        np.maximum(width, np.minimum(width[:, k : k + 1], width[k : k + 1, :]), out=width)
    np.fill_diagonal(width, 0)
    return width


if _accel.HAVE_NUMBA:
    _max_flow_nb = _accel.njit(_max_flow_loops)
    _widest_paths_nb = _accel.njit(_widest_paths_loops)

    @_accel.njit
    def _all_pairs_nb(cap):
        n = cap.shape[0]
        out = np.zeros((n, n), dtype=np.int64)
        for s in range(n):
            for t in range(n):
                if s != t:
                    out[s, t] = _max_flow_nb(cap, s, t)[0]
        return out

else:  # pragma: no cover
    _max_flow_nb = _widest_paths_nb = _all_pairs_nb = None


NUMPY_KERNELS = {
    "max_flow": _max_flow_numpy,
    "all_pairs_max_flow": _all_pairs_numpy,
    "widest_paths": _widest_paths_numpy,
}
NUMBA_KERNELS = (
    {
        "max_flow": _max_flow_nb,
        "all_pairs_max_flow": _all_pairs_nb,
        "widest_paths": _widest_paths_nb,
    }
    if _accel.HAVE_NUMBA
    else None
)

_active = NUMBA_KERNELS if _accel.USE_NUMBA else NUMPY_KERNELS


def _writable(cap: np.ndarray) -> np.ndarray:
    # numba compiles a separate specialisation for read-only arrays
    return np.array(cap, dtype=np.int64, order="C", copy=True)


def max_flow(cap: np.ndarray, s: int, t: int) -> tuple[int, np.ndarray]:
    """Return ``(value, net)`` where ``net`` is the antisymmetric net flow."""
    value, net = _active["max_flow"](_writable(cap), s, t)
    return int(value), net


def all_pairs_max_flow(cap: np.ndarray) -> np.ndarray:
    return _active["all_pairs_max_flow"](_writable(cap))


def widest_paths(cap: np.ndarray) -> np.ndarray:
    return _active["widest_paths"](_writable(cap))


def warmup() -> None:
    """Trigger JIT compilation so later timings exclude it."""
    cap = np.array([[0, 1, 0], [0, 0, 2], [1, 0, 0]], dtype=np.int64)
    max_flow(cap, 0, 2)
    all_pairs_max_flow(cap)
    widest_paths(cap)
