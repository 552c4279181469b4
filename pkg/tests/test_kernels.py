from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from recollift import _fallback
from recollift import linalg as la

compiled = pytest.importorskip("recollift._kernels")


@st.composite
def matrix_and_prime(draw):
    p = draw(st.sampled_from([2, 3, 5, 7, 31, 101]))
    r, c = draw(st.integers(0, 9)), draw(st.integers(0, 9))
    return draw(arrays(np.int64, (r, c), elements=st.integers(0, p - 1))), p


@given(matrix_and_prime())
@settings(max_examples=300, deadline=None)
def test_compiled_matches_fallback(data):
    m, p = data
    a, b = np.ascontiguousarray(m.copy()), m.copy()
    pa = compiled.rref_inplace(a, p)
    pb = _fallback.rref_inplace(b, p)
    assert list(pa) == list(pb)
    assert np.array_equal(a % p, b % p)


def test_backend_switch_round_trip():
    before = la.BACKEND
    m = np.array([[2, 4, 1], [1, 2, 3]])
    try:
        la.set_backend("python")
        slow = la.rref(m, 5)
        la.set_backend("compiled")
        fast = la.rref(m, 5)
    finally:
        la.set_backend(before)
    assert slow[1] == fast[1]
    assert np.array_equal(slow[0], fast[0])


def test_unknown_backend():
    with pytest.raises(ValueError):
        la.set_backend("gpu")


def test_compiled_is_default_when_built():
    assert la.compiled_available()
