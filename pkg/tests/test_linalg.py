from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from recollift import linalg as la

PRIMES = [2, 3, 5, 7]


def sympy_rref(m: np.ndarray, p: int):
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return m.copy() % p, []
    dm = DomainMatrix([[GF(p)(int(v)) for v in row] for row in m.tolist()], (rows, cols), GF(p))
    r, piv = dm.rref()
    out = np.array([[int(v) % p for v in row] for row in r.to_Matrix().tolist()], dtype=np.int64)
    return out % p, list(piv)


@st.composite
def mod_matrix(draw, max_side=6):
    p = draw(st.sampled_from(PRIMES))
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(0, max_side))
    m = draw(arrays(np.int64, (r, c), elements=st.integers(0, p - 1)))
    return m, p


@given(mod_matrix())
@settings(max_examples=150, deadline=None)
def test_rref_matches_sympy(data):
    m, p = data
    got, piv = la.rref(m, p)
    want, wpiv = sympy_rref(m, p)
    assert piv == wpiv
    assert np.array_equal(got[: len(piv)], want[: len(piv)])
    assert not got[len(piv) :].any()


@given(mod_matrix())
@settings(max_examples=100, deadline=None)
def test_kernel_and_rank(data):
    m, p = data
    k = la.kernel_basis(m, p)
    assert k.shape == (m.shape[1], m.shape[1] - la.rank(m, p))
    assert not la.matmul(m, k, p).any()
    assert la.rank(k, p) == k.shape[1]


@given(mod_matrix())
@settings(max_examples=100, deadline=None)
def test_image_basis_spans_columns(data):
    m, p = data
    b = la.image_basis(m, p)
    assert b.shape[1] == la.rank(m, p)
    assert la.in_span(b, m, p)


@given(mod_matrix(), st.integers(0, 2**31))
@settings(max_examples=100, deadline=None)
def test_solve_consistent_systems(data, seed):
    m, p = data
    rng = np.random.default_rng(seed)
    x = rng.integers(0, p, size=(m.shape[1], 2))
    b = la.matmul(m, x, p)
    sol = la.solve(m, b, p)
    assert sol is not None
    assert np.array_equal(la.matmul(m, sol, p), b)


def test_solve_reports_inconsistency():
    assert la.solve(np.array([[1, 1], [1, 1]]), np.array([[0], [1]]), 2) is None


def test_small_frozen_values():
    r, piv = la.rref(np.array([[1, 1], [1, 1]]), 2)
    assert r.tolist() == [[1, 1], [0, 0]] and piv == [0]
    assert la.kernel_basis(np.array([[1, 1]]), 2).tolist() == [[1], [1]]
    assert la.solve(np.array([[1, 1]]), np.array([[0]]), 2).tolist() == [[0], [0]]


@given(st.sampled_from(PRIMES), st.integers(1, 5), st.integers(0, 2**31))
@settings(max_examples=60, deadline=None)
def test_inverse_round_trip(p, n, seed):
    rng = np.random.default_rng(seed)
    m = rng.integers(0, p, size=(n, n))
    inv = la.inverse(m, p)
    if la.rank(m, p) < n:
        assert inv is None
    else:
        assert np.array_equal(la.matmul(m, inv, p), la.identity(n))


def test_left_inverse_and_complement():
    p = 3
    basis = np.array([[1, 0], [2, 1], [0, 1]])
    li = la.left_inverse(basis, p)
    assert np.array_equal(la.matmul(li, basis, p), la.identity(2))
    proj, free = la.complement_coordinates(basis, p)
    assert len(free) == 1
    assert not la.matmul(proj, basis, p).any()


def test_stacking_shape_errors():
    with pytest.raises(ValueError):
        la.hstack([la.zeros(2, 1), la.zeros(3, 1)])
    with pytest.raises(ValueError):
        la.vstack([la.zeros(1, 2), la.zeros(1, 3)])
    assert la.hstack([], rows=4).shape == (4, 0)


def test_is_prime():
    assert [n for n in range(20) if la.is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
