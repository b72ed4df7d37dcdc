"""The compiled and numpy kernels must agree exactly, not just approximately."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from anycast import _pykernels, kernels

pytestmark = pytest.mark.skipif(kernels.compiled_backend is None, reason="compiled kernels not built")
C = kernels.compiled_backend
P = _pykernels


@st.composite
def sym_matrix(draw, min_n=1, max_n=9, allow_inf=False):
    n = draw(st.integers(min_n, max_n))
    a = draw(arrays(np.float64, (n, n), elements=st.floats(0, 10, allow_nan=False)))
    a = np.triu(a, 1)
    a = a + a.T
    if allow_inf:
        holes = draw(arrays(np.bool_, (n, n)))
        holes = np.triu(holes, 1)
        a[holes | holes.T] = np.inf
    np.fill_diagonal(a, 0.0)
    return a


@settings(max_examples=60, deadline=None)
@given(sym_matrix(allow_inf=True))
def test_floyd_warshall_identical(w):
    a, b = C.floyd_warshall(w), P.floyd_warshall(w)
    assert np.array_equal(a[0], b[0])
    assert np.array_equal(a[1], b[1])


@settings(max_examples=60, deadline=None)
@given(sym_matrix())
def test_prim_identical(w):
    pa, ta = C.prim_mst(w)
    pb, tb = P.prim_mst(w)
    assert np.array_equal(pa, pb)
    assert ta == tb


@settings(max_examples=30, deadline=None)
@given(sym_matrix(min_n=1, max_n=8), st.data())
def test_kmst_identical(w, data):
    k = data.draw(st.integers(1, w.shape[0]))
    assert C.kmst_exact(w, k) == P.kmst_exact(w, k)


@settings(max_examples=30, deadline=None)
@given(sym_matrix(min_n=2, max_n=8), st.data())
def test_dreyfus_wagner_identical(w, data):
    dist = P.floyd_warshall(w)[0]
    g = data.draw(st.integers(1, min(5, w.shape[0])))
    base = dist[:g].copy()
    for x, y in zip(C.dreyfus_wagner(dist, base), P.dreyfus_wagner(dist, base)):
        assert np.array_equal(x, y)


def test_backend_flag_is_reported():
    assert kernels.BACKEND in ("cython", "python")
