"""Backend selection for the bitmask kernels.

The compiled module is used when it imports and the caller's masks fit in 64
bits. Setting ``CCDIM_PURE_PYTHON=1`` forces the fallback everywhere.
``CCDIM_THREADS`` caps the worker count of parallel kernels.
"""
import os

from . import _kernels_py as _py

try:
    if os.environ.get("CCDIM_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python backend requested")
    from . import _kernels as _ext
except ImportError:
    _ext = None

BACKEND = "cython" if _ext is not None else "python"


def thread_count():
    """Worker cap from ``CCDIM_THREADS``, defaulting to every available CPU."""
    raw = os.environ.get("CCDIM_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def backend_for(width):
    """Kernel module able to handle masks of ``width`` bits."""
    if _ext is not None and width <= _ext.MAX_BITS:
        return _ext
    return _py


def majority_witness(masks, width):
    return backend_for(width).majority_witness(masks)


def majority_closure(masks, width):
    return backend_for(width).majority_closure(masks)


def pairwise_hamming(masks, width):
    return backend_for(width).pairwise_hamming(masks, thread_count())


def max_clique(adj, candidates):
    return backend_for(len(adj)).max_clique(adj, candidates)


def has_clique(adj, candidates, k):
    return backend_for(len(adj)).has_clique(adj, candidates, k)
