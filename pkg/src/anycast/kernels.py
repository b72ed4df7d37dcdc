"""Backend selection for the hot loops.

The compiled extension is used when it imports; set ``ANYCAST_PURE_PYTHON=1``
to force the numpy fallback (handy for profiling and for the dual-backend
tests).
"""
import os

from anycast import _pykernels

python_backend = _pykernels

try:
    from anycast import _kernels as compiled_backend
except ImportError:  # pragma: no cover - depends on the build
    compiled_backend = None

if compiled_backend is not None and not os.environ.get("ANYCAST_PURE_PYTHON"):
    backend = compiled_backend
    BACKEND = "cython"
else:
    backend = python_backend
    BACKEND = "python"


def _f64(a):
    import numpy as np

    return np.ascontiguousarray(a, dtype=np.float64)


def floyd_warshall(w):
    return backend.floyd_warshall(_f64(w))


def prim_mst(w):
    return backend.prim_mst(_f64(w))


def kmst_exact(w, k):
    return backend.kmst_exact(_f64(w), int(k))


def dreyfus_wagner(dist, base):
    return backend.dreyfus_wagner(_f64(dist), _f64(base))
