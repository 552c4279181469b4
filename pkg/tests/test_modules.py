from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from recollift import algebra as al
from recollift import linalg as la
from recollift import modules as md
from recollift.errors import InputError


def algebras():
    d = al.dual_numbers(2)
    return {
        "dual": d,
        "kA2": al.path_algebra_an(2, 2),
        "kA3p3": al.path_algebra_an(3, 3),
        "T2dual": al.morn_algebra(d, 2),
        "T2tri": al.triangular_matrix(d, d, al.regular_bimodule(d)),
    }


ALGS = algebras()


def brute_hom_dim(x: md.Module, y: md.Module) -> int:
    """dim Hom by solving F x(b) = y(b) F for every basis element b (no vertex reduction)."""
    p = x.p
    rows = [
        (la.kron(y.action[b], la.identity(x.dim), p) - la.kron(la.identity(y.dim), x.action[b].T, p)) % p
        for b in range(x.algebra.dim)
    ]
    n = x.dim * y.dim
    if n == 0:
        return 0
    return n - la.rank(la.vstack(rows, cols=n), p)


@given(st.sampled_from(sorted(ALGS)), st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_hom_dim_matches_brute_force(name, seed):
    a = ALGS[name]
    rng = np.random.default_rng(seed)
    x = md.random_module(a, rng, 5)
    y = md.random_module(a, rng, 5)
    hs = md.hom_space(x, y)
    assert hs.shape[0] == brute_hom_dim(x, y)
    for h in hs:
        assert md.ModuleHom(x, y, h).is_intertwining()


@given(st.sampled_from(sorted(ALGS)), st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_random_modules_are_modules(name, seed):
    x = md.random_module(ALGS[name], np.random.default_rng(seed), 6)
    x.check()
    assert 0 < x.dim <= 6


@pytest.mark.parametrize("name", sorted(ALGS))
def test_projectives_sum_to_regular(name):
    a = ALGS[name]
    projs = md.indecomposable_projectives(a)
    assert sum(m.dim for m in projs) == a.dim
    simples = md.simple_modules(a)
    # Hom(P_v, S_w) = delta_vw for a basic algebra
    mat = [[md.hom_dim(pv, sw) for sw in simples] for pv in projs]
    assert mat == np.eye(len(projs), dtype=int).tolist()
    injs = md.indecomposable_injectives(a)
    assert [md.hom_dim(s, i) for s, i in zip(simples, injs)] == [1] * len(simples)
    assert all(md.is_injective(i) for i in injs)
    assert all(md.is_projective(pv) for pv in projs)


@given(st.sampled_from(sorted(ALGS)), st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_syzygy_sequence_is_exact(name, seed):
    x = md.random_module(ALGS[name], np.random.default_rng(seed), 5)
    k, inc, cover = md.syzygy(x)
    assert md.SES(inc, cover.epi).is_exact()
    assert md.is_projective(cover.projective)
    assert k.dim == cover.projective.dim - x.dim


@given(st.sampled_from(sorted(ALGS)), st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_injective_envelope_and_duality(name, seed):
    x = md.random_module(ALGS[name], np.random.default_rng(seed), 5)
    inj, mono = md.injective_envelope(x)
    assert mono.is_mono() and mono.is_intertwining()
    assert md.is_injective(inj)
    assert md.dual(md.dual(x)) is x


@given(st.sampled_from(sorted(ALGS)), st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_kernel_cokernel_of_random_map(name, seed):
    a = ALGS[name]
    rng = np.random.default_rng(seed)
    x, y = md.random_module(a, rng, 4), md.random_module(a, rng, 4)
    hs = md.hom_space(x, y)
    mat = np.einsum("k,kab->ab", rng.integers(0, a.p, hs.shape[0]), hs) % a.p if hs.shape[0] else la.zeros(y.dim, x.dim)
    f = md.ModuleHom(x, y, mat)
    k, inc = md.kernel(f)
    c, proj = md.cokernel(f)
    assert k.dim + f.rank() == x.dim
    assert c.dim + f.rank() == y.dim
    assert not la.matmul(f.matrix, inc.matrix, a.p).any()
    assert not la.matmul(proj.matrix, f.matrix, a.p).any()


def test_isomorphism_detection():
    d = ALGS["dual"]
    k = md.simple_modules(d)[0]
    lam = md.regular_module(d)
    s1 = md.direct_sum_module([k, lam])
    s2 = md.direct_sum_module([lam, k])
    assert md.is_isomorphic(s1, s2)
    assert not md.is_isomorphic(md.direct_sum_module([k, k]), lam)


def test_tensor_and_hom_over_regular_bimodule_are_identity_functors():
    a = ALGS["kA2"]
    m = al.regular_bimodule(a)
    x = md.random_module(a, np.random.default_rng(3), 4)
    td = md.tensor_over(m, x)
    hd = md.hom_over(m, x)
    assert md.is_isomorphic(td.module, x)
    assert md.is_isomorphic(hd.module, x)


def test_morseq_round_trip():
    d = ALGS["dual"]
    t = md.morn_for(d, 2)
    k = md.simple_modules(d)[0]
    lam = md.regular_module(d)
    soc = md.hom_space(k, lam)[0]
    s = md.MorSeq((k, lam), (md.ModuleHom(k, lam, soc),)).check()
    x = md.morseq_to_module(s, t)
    back = md.module_to_morseq(x)
    assert [c.dim for c in back.components] == [1, 2]
    assert back.maps[0].rank() == 1
    f = md.hom_from_components(x, x, [la.identity(1), la.identity(2)])
    assert np.array_equal(f.matrix, la.identity(3))


def test_action_shape_is_checked():
    a = ALGS["kA2"]
    with pytest.raises(InputError):
        md.Module(a, np.zeros((2, 1, 1), dtype=np.int64)).check()
