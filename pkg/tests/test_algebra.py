from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from recollift import algebra as al
from recollift import modules as md
from recollift.errors import InputError


def count_paths(n_vertices: int, arrows: list[tuple[int, int]]) -> int:
    """Paths in an acyclic quiver, trivial paths included (independent recount)."""
    from functools import lru_cache

    out = {v: [t for s, t in arrows if s == v] for v in range(n_vertices)}

    @lru_cache(None)
    def from_v(v):
        return 1 + sum(from_v(t) for t in out[v])

    return sum(from_v(v) for v in range(n_vertices))


@st.composite
def acyclic_quiver(draw):
    n = draw(st.integers(1, 4))
    pairs = [(s, t) for s in range(n) for t in range(s + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=4)) if pairs else []
    return n, chosen


@given(acyclic_quiver(), st.sampled_from([2, 3]))
@settings(max_examples=40, deadline=None)
def test_relation_free_dimension_counts_paths(q, p):
    n, arrows = q
    verts = [str(i + 1) for i in range(n)]
    arr = [(f"a{k}", str(s + 1), str(t + 1)) for k, (s, t) in enumerate(arrows)]
    a = al.from_quiver(al.quiver(p, verts, arr))
    assert a.dim == count_paths(n, arrows)
    a.check()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_an_dimension(n):
    assert al.path_algebra_an(n, 2).dim == n * (n + 1) // 2


def test_dual_numbers():
    d = al.dual_numbers(2)
    assert d.labels == ("e1", "x")
    assert d.radical.shape[1] == 1
    x = d.element("x")
    assert not d.mul(x, x).any()


def test_kA2_labels_and_corner():
    a = al.path_algebra_an(2, 2)
    assert a.labels == ("e1", "e2", "a1")
    c, inc = al.corner(a, a.element("e1"))
    assert c.dim == 1
    assert a.is_algebra_map(a, np.eye(a.dim, dtype=np.int64)) is True
    ideal = al.two_sided_ideal(a, a.element("e2"))
    assert ideal.shape[1] == 2
    q, pi = al.quotient(a, ideal)
    assert q.dim == 1


def test_relation_with_commutativity():
    # square with commutativity relation has dimension 4 + 4 + 1
    q = al.quiver(2, ["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")], ["b*a - d*c"])
    assert al.from_quiver(q).dim == 9


def test_cyclic_quiver_needs_relations():
    with pytest.raises(InputError):
        al.from_quiver(al.quiver(2, ["1"], [("x", "1", "1")]), degree_bound=6)


def test_parse_relation_errors():
    assert al.parse_relation("b*a - 2 d*c") == ((1, ("b", "a")), (-2, ("d", "c")))
    with pytest.raises(InputError):
        al.parse_relation("")
    with pytest.raises(InputError):
        al.parse_relation("a b")


def t2_dual():
    d = al.dual_numbers(2)
    return al.triangular_matrix(d, d, al.regular_bimodule(d))


@pytest.mark.parametrize(
    "make",
    [
        lambda: al.dual_numbers(2),
        lambda: al.path_algebra_an(3, 3),
        lambda: al.morn_algebra(al.dual_numbers(2), 2),
        lambda: al.morn_algebra(al.field_algebra(2), 3),
        lambda: t2_dual(),
    ],
)
def test_structure_is_associative_and_unital(make):
    a = make()
    a.check()
    op = a.opposite()
    assert op.opposite() is a
    for i, j in itertools.product(range(a.dim), repeat=2):
        x, y = a.basis_vector(i), a.basis_vector(j)
        assert np.array_equal(op.mul(x, y), a.mul(y, x))


def test_left_and_right_regular_are_actions():
    a = al.morn_algebra(al.dual_numbers(2), 2)
    p = a.p
    lr, rr = a.left_regular(), a.right_regular()
    for i, j in itertools.product(range(a.dim), repeat=2):
        prod = a.mul(a.basis_vector(i), a.basis_vector(j))
        assert np.array_equal(lr[i] @ lr[j] % p, a.left_mult(prod))
        assert np.array_equal(rr[j] @ rr[i] % p, a.right_mult(prod))


@pytest.mark.parametrize("n", [2, 3])
def test_morn_and_iterated_triangular_agree(n):
    base = al.dual_numbers(2)
    t = al.morn_algebra(base, n)
    it = al.iterated_triangular(base, n)
    assert t.dim == it.dim == base.dim * n * (n + 1) // 2
    # both have the same indecomposable projective dimensions up to order
    dims_t = sorted(m.dim for m in md.indecomposable_projectives(t))
    dims_i = sorted(m.dim for m in md.indecomposable_projectives(it))
    assert dims_t == dims_i


def test_morn_labels_and_data():
    t = al.morn_algebra(al.dual_numbers(2), 2)
    assert t.labels == ("e1|e1", "e1|e2", "e1|a1", "x|e1", "x|e2", "x|a1")
    assert t.idempotent_labels == ("e1", "e2")
    assert t.morn.n == 2
    assert al.morn_algebra(al.dual_numbers(2), 1).name == "k[x]/(x^2)"


def test_triangular_data():
    d = al.dual_numbers(2)
    t = al.triangular_matrix(d, d, al.regular_bimodule(d))
    assert t.dim == 6
    assert t.idempotent_labels == ("A:e1", "B:e1")
    assert np.array_equal((t.triangular.one_a + t.triangular.one_b) % 2, t.unit)


def test_structure_constants_validation():
    with pytest.raises(InputError):
        al.from_structure_constants(4, np.ones((1, 1, 1)), [1])
    bad = np.zeros((2, 2, 2), dtype=np.int64)
    with pytest.raises(InputError):
        al.from_structure_constants(2, bad, [1, 0])
