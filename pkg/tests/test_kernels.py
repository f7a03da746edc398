import random

import numpy as np
import pytest

from ccdim import _kernels_py as py
from ccdim import kernels
from ccdim.generators import grid, random_median

ext = pytest.importorskip("ccdim._kernels")


def masks_cases():
    yield grid(3, 3).masks
    yield grid(3, 3, 3).masks
    yield random_median((3, 3, 3, 3), 8, 1).masks
    rng = random.Random(0)
    for _ in range(5):
        yield [0] + [rng.getrandbits(10) for _ in range(12)]


def test_majority_witness_parity():
    for masks in masks_cases():
        a, b = py.majority_witness(list(masks)), ext.majority_witness(list(masks))
        assert (a is None) == (b is None)
        for w in (a, b):
            if w is not None:
                x, y, z = (masks[i] for i in w)
                assert (x & y | y & z | z & x) not in set(masks)


def test_majority_closure_parity():
    rng = random.Random(1)
    for _ in range(10):
        seeds = [0] + [rng.getrandbits(9) for _ in range(6)]
        assert sorted(py.majority_closure(seeds)) == sorted(ext.majority_closure(seeds))


def test_hamming_parity():
    for masks in masks_cases():
        assert np.array_equal(py.pairwise_hamming(list(masks), 1), ext.pairwise_hamming(list(masks), 2))


def test_clique_parity():
    rng = random.Random(2)
    for n in (5, 9, 14):
        for _ in range(10):
            adj = [0] * n
            for i in range(n):
                for j in range(i + 1, n):
                    if rng.random() < 0.5:
                        adj[i] |= 1 << j
                        adj[j] |= 1 << i
            full = (1 << n) - 1
            size = py.max_clique(adj, full)
            assert ext.max_clique(adj, full) == size
            for k in range(1, size + 2):
                assert py.has_clique(adj, full, k) == ext.has_clique(adj, full, k) == (k <= size)


def test_wide_masks_use_fallback():
    assert kernels.backend_for(65) is py
    assert kernels.backend_for(64) is (ext if kernels.BACKEND == "cython" else py)
    wide = [0, 1 << 70, (1 << 70) | 1, 1]
    assert kernels.majority_witness(wide, 71) is None


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("CCDIM_THREADS", "3")
    assert kernels.thread_count() == 3
    monkeypatch.setenv("CCDIM_THREADS", "junk")
    assert kernels.thread_count() >= 1


def test_pure_python_backend_end_to_end():
    import os
    import subprocess
    import sys

    code = (
        "import ccdim; from ccdim.generators import ell_grid; from ccdim import colour, flatness\n"
        "X = ell_grid(); c = colour(X)\n"
        "print(ccdim.BACKEND, X.dimension, flatness(X), c.colours, c.control)\n"
    )
    env = dict(os.environ, CCDIM_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
    assert out.stdout.split(None, 3)[:3] == ["python", "2", "2"]
    assert "(1, 0, 1, 1, 0, 1) 2" in out.stdout
