"""Brute-force count of isomorphism classes of ``X_1 -f-> X_2`` over k[x]/(x^2), k = GF(2).

Independent of the package: every triple ``(x_1, x_2, f)`` of raw matrices with
``x_i^2 = 0`` and ``f x_1 = x_2 f`` is enumerated, and the number of orbits
under ``GL(d_1) x GL(d_2)`` is ``sum |Aut| / |G|``. Running this file with
``N = 4`` prints 47 (about 30 s).
"""

from __future__ import annotations

import itertools
import sys
from fractions import Fraction

import numpy as np


def _mats(r: int, c: int):
    for bits in itertools.product([0, 1], repeat=r * c):
        yield np.array(bits, dtype=np.int64).reshape(r, c)


def _rank2(m: np.ndarray) -> int:
    m = m.copy() % 2
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        piv = [i for i in range(r, rows) if m[i, c]]
        if not piv:
            continue
        m[[r, piv[0]]] = m[[piv[0], r]]
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        r += 1
    return r


def _gl_order(n: int) -> int:
    out = 1
    for i in range(n):
        out *= 2**n - 2**i
    return out


def _nullspace(a: np.ndarray) -> list[np.ndarray]:
    a = a.copy() % 2
    m, n = a.shape
    piv, r = [], 0
    for c in range(n):
        rows = [i for i in range(r, m) if a[i, c]]
        if not rows:
            continue
        a[[r, rows[0]]] = a[[rows[0], r]]
        for i in range(m):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        piv.append(c)
        r += 1
    basis = []
    for f in (c for c in range(n) if c not in piv):
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = a[i, f]
        basis.append(v)
    return basis


def _aut_count(x1: np.ndarray, x2: np.ndarray, f: np.ndarray) -> int:
    d1, d2 = x1.shape[0], x2.shape[0]
    n = d1 * d1 + d2 * d2
    # linear conditions on (g1, g2): g1 x1 = x1 g1, g2 x2 = x2 g2, g2 f = f g1
    rows = []
    for idx in range(n):
        v = np.zeros(n, dtype=np.int64)
        v[idx] = 1
        g1 = v[: d1 * d1].reshape(d1, d1)
        g2 = v[d1 * d1 :].reshape(d2, d2)
        parts = [(g1 @ x1 - x1 @ g1).ravel(), (g2 @ x2 - x2 @ g2).ravel(), (g2 @ f - f @ g1).ravel()]
        rows.append(np.concatenate(parts) % 2)
    system = np.array(rows, dtype=np.int64).T if rows else np.zeros((0, 0), dtype=np.int64)
    basis = _nullspace(system) if n else []
    count = 0
    for coeffs in itertools.product([0, 1], repeat=len(basis)):
        v = sum((c * b for c, b in zip(coeffs, basis)), np.zeros(n, dtype=np.int64)) % 2
        g1 = v[: d1 * d1].reshape(d1, d1)
        g2 = v[d1 * d1 :].reshape(d2, d2)
        if _rank2(g1) == d1 and _rank2(g2) == d2:
            count += 1
    return count


def orbit_count(max_total_dim: int) -> int:
    total = Fraction(0)
    for d1 in range(max_total_dim + 1):
        for d2 in range(max_total_dim + 1 - d1):
            group = _gl_order(d1) * _gl_order(d2)
            xs1 = [m for m in _mats(d1, d1) if not (m @ m % 2).any()]
            xs2 = [m for m in _mats(d2, d2) if not (m @ m % 2).any()]
            for x1 in xs1:
                for x2 in xs2:
                    for f in _mats(d2, d1):
                        if ((f @ x1 - x2 @ f) % 2).any():
                            continue
                        total += Fraction(_aut_count(x1, x2, f), group)
    assert total.denominator == 1
    return int(total)


if __name__ == "__main__":
    print(orbit_count(int(sys.argv[1]) if len(sys.argv) > 1 else 4))
