import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given

from flowrank import _accel, kernels

from .conftest import networks

needs_numba = pytest.mark.skipif(kernels.NUMBA_KERNELS is None, reason="numba not installed")


@needs_numba
@given(networks(max_n=7, max_cap=6))
def test_backends_agree(net):
    cap = np.array(net.capacity)
    slow, fast = kernels.NUMPY_KERNELS, kernels.NUMBA_KERNELS
    assert np.array_equal(slow["all_pairs_max_flow"](cap.copy()), fast["all_pairs_max_flow"](cap.copy()))
    assert np.array_equal(slow["widest_paths"](cap.copy()), fast["widest_paths"](cap.copy()))
    for s in range(net.n):
        for t in range(net.n):
            if s != t:
                v1, f1 = slow["max_flow"](cap.copy(), s, t)
                v2, f2 = fast["max_flow"](cap.copy(), s, t)
                assert v1 == v2 and np.array_equal(f1, f2)


def test_read_only_input_accepted():
    cap = np.array([[0, 2], [1, 0]], dtype=np.int64)
    cap.flags.writeable = False
    assert kernels.max_flow(cap, 0, 1)[0] == 2
    assert kernels.all_pairs_max_flow(cap).tolist() == [[0, 2], [1, 0]]


def test_net_flow_antisymmetric():
    cap = np.array([[0, 3, 1], [0, 0, 2], [1, 0, 0]], dtype=np.int64)
    value, net = kernels.max_flow(cap, 0, 2)
    assert value == 3
    assert np.array_equal(net, -net.T)


@pytest.mark.parametrize("flag,expected", [("0", "numpy"), ("off", "numpy"), ("1", None)])
def test_env_flag_selects_backend(flag, expected):
    env = dict(os.environ, FLOWRANK_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, "-c", "import flowrank; print(flowrank.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    ).stdout.strip()
    assert out == (expected or ("numba" if _accel.HAVE_NUMBA else "numpy"))
