"""Exact dense linear algebra over prime fields GF(p).

Matrices are numpy ``int64`` arrays with entries in ``[0, p)``; the modulus is
passed alongside. Every routine is pure: inputs are never mutated.

Row reduction runs through a compiled kernel when ``recollift._kernels`` has
been built, and through a numpy implementation otherwise. Setting
``RECOLLIFT_BACKEND=python`` forces the numpy path.
"""

from __future__ import annotations

import os
from typing import Callable, Optional

import numpy as np

from . import _fallback

_rref_python = _fallback.rref_inplace
try:
    from ._kernels import rref_inplace as _rref_compiled
except ImportError:  # extension not built
    _rref_compiled = None

_rref_impl: Callable[[np.ndarray, int], list]
BACKEND: str


def set_backend(name: str) -> None:
    """Select ``"compiled"`` or ``"python"`` row reduction."""
    global _rref_impl, BACKEND
    if name == "compiled":
        if _rref_compiled is None:
            raise RuntimeError("compiled kernel is not available; run `pip install -e .`")
        _rref_impl = _rref_compiled
    elif name == "python":
        _rref_impl = _rref_python
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name


def compiled_available() -> bool:
    return _rref_compiled is not None


set_backend(
    "compiled"
    if _rref_compiled is not None and os.environ.get("RECOLLIFT_BACKEND", "") != "python"
    else "python"
)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def asmat(a, p: int, rows: Optional[int] = None, cols: Optional[int] = None) -> np.ndarray:
    """Coerce ``a`` to a reduced int64 matrix, honouring an explicit empty shape."""
    m = np.asarray(a, dtype=np.int64)
    if m.size == 0 and rows is not None and cols is not None:
        return np.zeros((rows, cols), dtype=np.int64)
    if m.ndim == 1:
        m = m.reshape(1, -1) if rows is None or rows == 1 else m.reshape(-1, 1)
    return np.ascontiguousarray(m % p)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.size == 0 or b.size == 0:
        return zeros(a.shape[0], b.shape[1])
    return (a @ b) % p


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and strictly increasing pivot columns."""
    work = np.array(m, dtype=np.int64, order="C") % p
    if work.size == 0:
        return work, []
    pivots = _rref_impl(work, p)
    return work, list(pivots)


def rank(m: np.ndarray, p: int) -> int:
    return len(rref(m, p)[1])


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning the right null space of ``m``; free variables form an identity block."""
    rows, cols = m.shape
    r, piv = rref(m, p)
    free = [c for c in range(cols) if c not in set(piv)]
    k = zeros(cols, len(free))
    for j, f in enumerate(free):
        k[f, j] = 1
        for i, pc in enumerate(piv):
            k[pc, j] = (-r[i, f]) % p
    return k


def row_basis(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Nonzero rows of the rref of ``m`` together with their pivot columns."""
    r, piv = rref(m, p)
    return r[: len(piv)].copy(), piv


def image_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Columns in reduced column echelon form spanning the column space of ``m``."""
    rows = m.shape[0]
    if m.shape[1] == 0:
        return zeros(rows, 0)
    b, _ = row_basis(m.T, p)
    return np.ascontiguousarray(b.T)


def solve(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """Some ``x`` with ``a @ x == b`` (free variables zero), or ``None`` if inconsistent."""
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch: {a.shape} vs {b.shape}")
    n = a.shape[1]
    aug = np.hstack([a, b]) if a.shape[0] else zeros(0, n + b.shape[1])
    r, piv = rref(aug, p)
    if piv and piv[-1] >= n:
        return None
    x = zeros(n, b.shape[1])
    for i, c in enumerate(piv):
        x[c] = r[i, n:]
    return x


def inverse(m: np.ndarray, p: int) -> Optional[np.ndarray]:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    if n == 0:
        return zeros(0, 0)
    r, piv = rref(np.hstack([m, identity(n)]), p)
    if len(piv) < n or piv[n - 1] != n - 1:
        return None
    return np.ascontiguousarray(r[:, n:])


def left_inverse(basis: np.ndarray, p: int) -> np.ndarray:
    """Matrix ``L`` with ``L @ basis == I`` for a full column rank ``basis``.

    ``L`` only reads a set of rows where ``basis`` is invertible, so applying it
    to vectors outside the span gives meaningless coordinates; callers that
    need a membership test must check separately.
    """
    n, k = basis.shape
    if k == 0:
        return zeros(0, n)
    _, rows = row_basis(basis.T, p)
    if len(rows) < k:
        raise ValueError("basis columns are linearly dependent")
    sub_inv = inverse(basis[rows, :], p)
    out = zeros(k, n)
    out[:, rows] = sub_inv
    return out


def hstack(mats: list[np.ndarray], rows: Optional[int] = None) -> np.ndarray:
    if not mats:
        return zeros(rows or 0, 0)
    heights = {m.shape[0] for m in mats}
    if len(heights) != 1:
        raise ValueError(f"hstack of mismatched heights {sorted(heights)}")
    return np.ascontiguousarray(np.hstack(mats))


def vstack(mats: list[np.ndarray], cols: Optional[int] = None) -> np.ndarray:
    if not mats:
        return zeros(0, cols or 0)
    widths = {m.shape[1] for m in mats}
    if len(widths) != 1:
        raise ValueError(f"vstack of mismatched widths {sorted(widths)}")
    return np.ascontiguousarray(np.vstack(mats))


def kron(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np.ascontiguousarray(np.kron(a, b) % p)


def block_diag(mats: list[np.ndarray]) -> np.ndarray:
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    out = zeros(rows, cols)
    r = c = 0
    for m in mats:
        out[r : r + m.shape[0], c : c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def in_span(basis: np.ndarray, vectors: np.ndarray, p: int) -> bool:
    """Whether every column of ``vectors`` lies in the column span of ``basis``."""
    if vectors.shape[1] == 0:
        return True
    return rank(np.hstack([basis, vectors]), p) == rank(basis, p)


def complement_coordinates(basis: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduction data for the quotient of ``F_p^n`` by the column span of ``basis``.

    Returns ``(proj, free)`` where ``free`` lists the coordinates that are not
    pivots of the span's row echelon form, and ``proj`` is the ``len(free) x n``
    matrix sending a vector to the coordinates of its class in the quotient,
    using the unit vectors at ``free`` as representatives.
    """
    n = basis.shape[0]
    rows, piv = row_basis(basis.T, p) if basis.shape[1] else (zeros(0, n), [])
    free = [c for c in range(n) if c not in set(piv)]
    # v - sum_i v[piv_i] * row_i has zeros at the pivots
    reduce = (identity(n) - rows.T @ identity(n)[piv, :]) % p if piv else identity(n)
    return np.ascontiguousarray(reduce[free, :]), free
