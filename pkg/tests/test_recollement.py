from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from recollift import algebra as al
from recollift import homological as hl
from recollift import modules as md
from recollift import recollement as rc
from recollift.report import module_from_json

DUAL = al.dual_numbers(2)
KA2 = al.path_algebra_an(2, 2)


def kA2_instance(label: str = "e2") -> rc.RecollementInstance:
    return rc.idempotent_recollement(KA2, KA2.element(label), label)


def nonstrat_instance() -> rc.RecollementInstance:
    q = al.quiver(2, ["1", "2"], [("a", "1", "2"), ("b", "2", "1")], ["b*a"])
    lam = al.from_quiver(q, name="nonstrat")
    return rc.idempotent_recollement(lam, lam.element("e2"), "e2")


def all_pass(recs) -> bool:
    return all(r.passed for r in recs)


@pytest.mark.parametrize(
    "make",
    [
        lambda: kA2_instance("e1"),
        lambda: kA2_instance("e2"),
        lambda: rc.morn_recollement(DUAL, 2),
        lambda: rc.morn_recollement(al.field_algebra(2), 3),
        lambda: rc.morn_recollement(KA2, 2),
    ],
)
def test_axioms_hold(make):
    inst = make()
    ss = rc.sample_sets(inst, seed=1, random_count=2, max_dim=4, depth=1)
    assert all_pass(rc.verify_recollement_axioms(inst, ss))
    assert rc.verify_exactness(inst, ss).passed


def test_idempotent_functor_values_kA2_e2():
    inst = kA2_instance("e2")
    assert (inst.a.dim, inst.c.dim) == (1, 1)
    k = md.simple_modules(inst.c)[0]
    # Lambda e2 = span{e2}, so l(k) is one-dimensional; r(k) = Hom(e2 Lambda, k) is two-dimensional
    assert inst.l(k).dim == 1
    assert inst.r(k).dim == 2
    s1, s2 = md.simple_modules(KA2)
    p1 = md.indecomposable_projectives(KA2)[0]
    assert inst.e(s1).dim == 0 and inst.e(s2).dim == 1
    assert inst.q(p1).dim == 1 and inst.p(p1).dim == 0


def test_degenerate_idempotent_is_flagged():
    inst = rc.idempotent_recollement(DUAL, DUAL.unit, "1")
    assert inst.degenerate and inst.a.dim == 0
    ss = rc.sample_sets(inst, random_count=2)
    recs = rc.verify_recollement_axioms(inst, ss)
    assert all_pass(recs) and all(r.details.get("degenerate") for r in recs)


def test_sequence_functor_formulas():
    inst = rc.morn_recollement(DUAL, 3)
    k = md.simple_modules(DUAL)[0]
    lam = md.regular_module(DUAL)
    assert inst.r(lam).dim == 6
    assert inst.l(lam).dim == 2
    s = md.MorSeq((lam, lam, k), (lam.identity(), md.ModuleHom(lam, k, md.hom_space(lam, k)[0])))
    x = md.morseq_to_module(s.check(), md.morn_for(DUAL, 3))
    # p(X)_j = Ker(X_j -> X_3): both kernels are the socle
    px = md.module_to_morseq(inst.p(x))
    assert [c.dim for c in px.components] == [1, 1]
    assert [c.dim for c in md.module_to_morseq(inst.q(x)).components] == [2, 2]
    assert inst.e(x).dim == 1


def test_corrupt_instance_fails_with_replayable_witness():
    inst = rc.corrupt_zero_i(kA2_instance("e2"))
    ss = rc.sample_sets(inst)
    recs = rc.verify_recollement_axioms(inst, ss)
    failed = [r for r in recs if not r.passed]
    names = {r.name for r in failed}
    assert "q o i = id" in names and "i fully faithful" in names
    for r in failed:
        assert r.witnesses
        w = r.witnesses[0]
        sides = rc.sides_for(inst, w["check"], w["params"])
        mods = [module_from_json(m, inst.side(s)) for m, s in zip(w["modules"], sides)]
        ok, _ = rc.run_sample_check(inst, w["check"], mods, w["params"])
        assert not ok


def test_witness_does_not_fail_on_sound_instance():
    bad = rc.corrupt_zero_i(kA2_instance("e2"))
    good = kA2_instance("e2")
    rec = [r for r in rc.verify_recollement_axioms(bad, rc.sample_sets(bad)) if not r.passed][0]
    w = rec.witnesses[0]
    sides = rc.sides_for(good, w["check"], w["params"])
    mods = [module_from_json(m, good.side(s)) for m, s in zip(w["modules"], sides)]
    assert rc.run_sample_check(good, w["check"], mods, w["params"])[0]


@pytest.mark.parametrize("mode", ["fast", "thorough"])
def test_stratifying_examples(mode):
    good = kA2_instance("e2")
    ss = rc.sample_sets(good)
    rec = rc.homological_embedding_degree(good, [(x, y) for x in ss.a for y in ss.a], 3, mode)
    assert rec.passed
    assert rc.cps_conclusion(rec, 3).startswith("There is a recollement of derived categories")
    bad = nonstrat_instance()
    sb = rc.sample_sets(bad)
    rec = rc.homological_embedding_degree(bad, [(x, y) for x in sb.a for y in sb.a], 3, mode)
    assert not rec.passed
    assert rec.details["first_failing_degree"] == 2


def test_nonstrat_ext_oracle():
    # Ext^2(S1, S1) is one-dimensional over the algebra and zero over the quotient k
    inst = nonstrat_instance()
    s1 = md.simple_modules(inst.b)[0]
    assert hl.ext_dim(s1, s1, 2) == 1
    k = md.simple_modules(inst.a)[0]
    assert hl.ext_dim(k, k, 2) == 0


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=15, deadline=None)
def test_fast_and_thorough_embedding_agree(seed):
    inst = rc.morn_recollement(DUAL, 2)
    rng = np.random.default_rng(seed)
    from recollift.samples import Sample

    x = Sample("x", md.random_module(inst.a, rng, 4))
    y = Sample("y", md.random_module(inst.a, rng, 4))
    fast = rc.homological_embedding_degree(inst, [(x, y)], 2, "fast")
    thorough = rc.homological_embedding_degree(inst, [(x, y)], 2, "thorough")
    assert fast.passed == thorough.passed


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_structural_gp_test_on_three_term_sequences(seed):
    t3 = md.morn_for(DUAL, 3)
    x = md.random_module(t3, np.random.default_rng(seed), 6)
    assert rc.gp_structural_test_morn(md.module_to_morseq(x)) == hl.is_gp(x)


def test_lifting_checks_on_triangular_corner():
    t = al.triangular_matrix(DUAL, DUAL, al.regular_bimodule(DUAL))
    inst = rc.idempotent_recollement(t, t.triangular.one_a, "1A")
    ss = rc.sample_sets(inst, random_count=2)
    recs = rc.check_setup(inst, ss) + rc.check_derived_embedding(inst, ss, "thorough", 2)
    recs += rc.check_kernel_unit_condition(inst, ss) + rc.stable_recollement_report(inst, ss)
    assert all_pass(recs)


def test_enumeration_count_matches_orbit_oracle():
    import sys
    from pathlib import Path

    sys.path.insert(0, str(Path(__file__).parent / "oracles"))
    from morn2_orbit_count import orbit_count

    ind = [md.simple_modules(DUAL)[0], md.regular_module(DUAL)]
    assert len(rc.enumerate_morn2(DUAL, ind, 3)) == orbit_count(3) == 21
