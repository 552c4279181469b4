"""Recollements of module categories and the checks for lifting them to homotopy categories.

A recollement here has three algebras: the middle algebra ``B`` (``Lambda``),
the quotient side ``A`` reached by ``i: Mod A -> Mod B`` with adjoints
``q -| i -| p``, and the corner side ``C`` reached by ``e: Mod B -> Mod C``
with adjoints ``l -| e -| r``. Two families are built: the idempotent
recollement of ``(Lambda, e)`` and the recollement of sequences
``X_1 -> ... -> X_n``. Every functor carries explicit unit and counit maps so
the adjunction and recollement identities can be checked on samples.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np

from . import homological as hl
from . import linalg as la
from . import modules as md
from .algebra import Algebra, Bimodule, corner, quotient, two_sided_ideal
from .errors import InputError, UnsupportedAlgebra
from .modules import Module, ModuleHom, MorSeq
from .report import CheckRecord, module_to_json
from .samples import Sample


# -- functor handles ---------------------------------------------------------------


@dataclass(eq=False)
class FunctorHandle:
    """A functor between module categories given by object and morphism maps.

    ``obj(X)`` returns ``(F X, data)``; ``mor(f, (FX, dx), (FY, dy))`` returns the
    matrix of ``F f``. Object values are memoised per input module so that
    composites such as ``F(G(F X))`` reuse the same module objects.
    """

    name: str
    source: Algebra
    target: Algebra
    obj: Callable
    mor: Callable
    exactness: str = "exact"
    _memo: "weakref.WeakKeyDictionary" = field(default_factory=weakref.WeakKeyDictionary, repr=False)

    def entry(self, x: Module):
        if x.algebra is not self.source:
            raise InputError(f"functor {self.name}: module over {x.algebra.name}, expected {self.source.name}")
        got = self._memo.get(x)
        if got is None:
            got = self.obj(x)
            self._memo[x] = got
        return got

    def __call__(self, x: Module) -> Module:
        return self.entry(x)[0]

    def data(self, x: Module):
        return self.entry(x)[1]

    def map(self, f: ModuleHom) -> ModuleHom:
        src, tgt = self.entry(f.source), self.entry(f.target)
        return ModuleHom(src[0], tgt[0], self.mor(f, src, tgt) % f.p)


@dataclass(eq=False)
class Adjunction:
    """``left -| right`` with ``unit(X): X -> right(left X)`` and ``counit(Y): left(right Y) -> Y``."""

    left: FunctorHandle
    right: FunctorHandle
    unit: Callable[[Module], ModuleHom]
    counit: Callable[[Module], ModuleHom]

    @property
    def name(self) -> str:
        return f"{self.left.name}-|{self.right.name}"


@dataclass(eq=False)
class RecollementInstance:
    name: str
    b: Algebra  # middle
    a: Algebra  # image of i
    c: Algebra  # target of e
    i: FunctorHandle
    e: FunctorHandle
    q: FunctorHandle
    p: FunctorHandle
    l: FunctorHandle
    r: FunctorHandle
    adjunctions: dict  # "q-|i", "i-|p", "l-|e", "e-|r"
    provenance: dict
    degenerate: bool = False

    def side(self, key: str) -> Algebra:
        return {"A": self.a, "B": self.b, "C": self.c}[key]

    def functor(self, name: str) -> FunctorHandle:
        return getattr(self, name)

    @property
    def description(self) -> dict:
        return {
            "name": self.name,
            "provenance": self.provenance,
            "degenerate": self.degenerate,
            "dims": {"A": self.a.dim, "B": self.b.dim, "C": self.c.dim},
        }


# -- idempotent recollement ------------------------------------------------------------


def _sub_bimodule(lam: Algebra, basis: np.ndarray, left_mats, right_mats, la_alg: Algebra, ra_alg: Algebra) -> Bimodule:
    p = lam.p
    co = la.left_inverse(basis, p)
    d = basis.shape[1]
    left = np.stack([co @ la.matmul(m, basis, p) % p for m in left_mats]) if left_mats else np.zeros((0, d, d), dtype=np.int64)
    right = np.stack([co @ la.matmul(m, basis, p) % p for m in right_mats]) if right_mats else np.zeros((0, d, d), dtype=np.int64)
    return Bimodule(la_alg, ra_alg, left.reshape(la_alg.dim, d, d), right.reshape(ra_alg.dim, d, d)).check()


def idempotent_recollement(lam: Algebra, e: np.ndarray, label: str = "e") -> RecollementInstance:
    """Recollement of ``Mod Lambda/Lambda e Lambda``, ``Mod Lambda`` and ``Mod e Lambda e``."""
    p = lam.p
    e = np.asarray(e, dtype=np.int64) % p
    if not np.array_equal(lam.mul(e, e), e):
        raise InputError("idempotent recollement: element is not idempotent")
    degenerate = (not e.any()) or np.array_equal(e, lam.unit % p)
    c_alg, inc = corner(lam, e)
    a_alg, pi = quotient(lam, two_sided_ideal(lam, e), name=f"{lam.name}/<{label}>")
    if c_alg.name == f"e{lam.name}e":
        c_alg = replace_name(c_alg, f"{label}{lam.name}{label}")

    # A as an (A, Lambda)-bimodule (for q) and as a (Lambda, A)-bimodule (for p)
    a_right_by_lam = np.stack([a_alg.right_mult(pi[:, j]) for j in range(lam.dim)]) if a_alg.dim else np.zeros((lam.dim, 0, 0), dtype=np.int64)
    a_left_by_lam = np.stack([a_alg.left_mult(pi[:, j]) for j in range(lam.dim)]) if a_alg.dim else np.zeros((lam.dim, 0, 0), dtype=np.int64)
    m_q = Bimodule(a_alg, lam, a_alg.left_regular().copy(), a_right_by_lam).check()
    m_p = Bimodule(lam, a_alg, a_left_by_lam, a_alg.right_regular().copy()).check()
    # Lambda e as a (Lambda, C)-bimodule (for l) and e Lambda as a (C, Lambda)-bimodule (for r)
    le_basis = la.image_basis(lam.right_mult(e), p)
    el_basis = la.image_basis(lam.left_mult(e), p)
    m_l = _sub_bimodule(
        lam, le_basis, list(lam.left_regular()), [lam.right_mult(inc[:, k]) for k in range(c_alg.dim)], lam, c_alg
    )
    m_r = _sub_bimodule(
        lam, el_basis, [lam.left_mult(inc[:, k]) for k in range(c_alg.dim)], list(lam.right_regular()), c_alg, lam
    )
    unit_a = a_alg.unit
    e_in_le = la.left_inverse(le_basis, p) @ e % p if le_basis.shape[1] else np.zeros(0, dtype=np.int64)
    e_in_el = la.left_inverse(el_basis, p) @ e % p if el_basis.shape[1] else np.zeros(0, dtype=np.int64)

    def i_obj(y):
        return md.restrict(y, lam, pi, check=False), None

    def i_mor(f, s, t):
        return f.matrix.copy()

    def q_obj(x):
        td = md.tensor_over(m_q, x)
        return td.module, td

    def q_mor(f, s, t):
        return md.tensor_over_hom(m_q, f, s[1], t[1]).matrix

    def p_obj(x):
        hd = md.hom_over(m_p, x)
        return hd.module, hd

    def p_mor(f, s, t):
        return md.hom_over_hom(f, s[1], t[1]).matrix

    def e_obj(x):
        basis = la.image_basis(x.act(e), p)
        co = la.matmul(la.left_inverse(basis, p), x.act(e), p)
        if basis.shape[1]:
            acts = np.einsum("ki,kab->iab", inc, x.action) % p
            action = np.einsum("ab,ibc,cd->iad", co, acts, basis) % p
        else:
            action = np.zeros((c_alg.dim, 0, 0), dtype=np.int64)
        return Module(c_alg, action, f"{label}{x.name}"), (basis, co)

    def e_mor(f, s, t):
        return la.matmul(t[1][1], la.matmul(f.matrix, s[1][0], p), p)

    def l_obj(y):
        td = md.tensor_over(m_l, y)
        return td.module, td

    def l_mor(f, s, t):
        return md.tensor_over_hom(m_l, f, s[1], t[1]).matrix

    def r_obj(y):
        hd = md.hom_over(m_r, y)
        return hd.module, hd

    def r_mor(f, s, t):
        return md.hom_over_hom(f, s[1], t[1]).matrix

    i_h = FunctorHandle("i", a_alg, lam, i_obj, i_mor, "exact")
    q_h = FunctorHandle("q", lam, a_alg, q_obj, q_mor, "right-exact")
    p_h = FunctorHandle("p", lam, a_alg, p_obj, p_mor, "left-exact")
    e_h = FunctorHandle("e", lam, c_alg, e_obj, e_mor, "exact")
    l_h = FunctorHandle("l", c_alg, lam, l_obj, l_mor, "right-exact")
    r_h = FunctorHandle("r", c_alg, lam, r_obj, r_mor, "left-exact")

    # q -| i: unit x -> [1 (x) x], counit [a (x) y] -> a y
    def qi_unit(x):
        qx = q_h(x)
        iqx = i_h(qx)
        td = q_h.data(x)
        mat = td.proj @ la.kron(unit_a.reshape(-1, 1), la.identity(x.dim), p) % p if x.dim and a_alg.dim else la.zeros(qx.dim, x.dim)
        return ModuleHom(x, iqx, mat)

    def qi_counit(y):
        iy = i_h(y)
        qiy = q_h(iy)
        td = q_h.data(iy)
        if qiy.dim == 0:
            return ModuleHom(qiy, y, la.zeros(y.dim, 0))
        full = la.hstack([y.action[j] for j in range(a_alg.dim)], rows=y.dim)
        return ModuleHom(qiy, y, la.matmul(full, td.lift, p))

    # i -| p: unit y -> (a -> a y), counit F -> F(1)
    def ip_unit(y):
        iy = i_h(y)
        piy = p_h(iy)
        hd = p_h.data(iy)
        if piy.dim == 0 or y.dim == 0:
            return ModuleHom(y, piy, la.zeros(piy.dim, y.dim))
        t = np.transpose(y.action, (1, 0, 2)).reshape(y.dim * a_alg.dim, y.dim)
        return ModuleHom(y, piy, hd.coords @ t % p)

    def ip_counit(x):
        px = p_h(x)
        ipx = i_h(px)
        hd = p_h.data(x)
        if px.dim == 0:
            return ModuleHom(ipx, x, la.zeros(x.dim, 0))
        cols = np.einsum("kab,b->ak", hd.basis, unit_a) % p
        return ModuleHom(ipx, x, cols)

    # l -| e: unit y -> e (x) y, counit [m (x) x] -> m x
    def le_unit(y):
        ly = l_h(y)
        ely = e_h(ly)
        td = l_h.data(y)
        co = e_h.data(ly)[1]
        if y.dim == 0 or ely.dim == 0:
            return ModuleHom(y, ely, la.zeros(ely.dim, y.dim))
        in_l = td.proj @ la.kron(e_in_le.reshape(-1, 1), la.identity(y.dim), p) % p
        return ModuleHom(y, ely, la.matmul(co, in_l, p))

    def le_counit(x):
        ex = e_h(x)
        lex = l_h(ex)
        td = l_h.data(ex)
        basis = e_h.data(x)[0]
        if lex.dim == 0:
            return ModuleHom(lex, x, la.zeros(x.dim, 0))
        blocks = [la.matmul(x.act(le_basis[:, j]), basis, p) for j in range(le_basis.shape[1])]
        return ModuleHom(lex, x, la.matmul(la.hstack(blocks, rows=x.dim), td.lift, p))

    # e -| r: unit x -> (m -> m x), counit F -> F(e)
    def er_unit(x):
        ex = e_h(x)
        rex = r_h(ex)
        hd = r_h.data(ex)
        co = e_h.data(x)[1]
        if rex.dim == 0 or x.dim == 0:
            return ModuleHom(x, rex, la.zeros(rex.dim, x.dim))
        vals = np.stack([la.matmul(co, x.act(el_basis[:, j]), p) for j in range(el_basis.shape[1])], axis=1)
        t = vals.reshape(ex.dim * el_basis.shape[1], x.dim)
        return ModuleHom(x, rex, hd.coords @ t % p)

    def er_counit(y):
        ry = r_h(y)
        ery = e_h(ry)
        hd = r_h.data(y)
        basis = e_h.data(ry)[0]
        if ery.dim == 0:
            return ModuleHom(ery, y, la.zeros(y.dim, 0))
        cols = np.einsum("kab,b->ak", hd.basis, e_in_el) % p
        return ModuleHom(ery, y, la.matmul(cols, basis, p))

    adj = {
        "q-|i": Adjunction(q_h, i_h, qi_unit, qi_counit),
        "i-|p": Adjunction(i_h, p_h, ip_unit, ip_counit),
        "l-|e": Adjunction(l_h, e_h, le_unit, le_counit),
        "e-|r": Adjunction(e_h, r_h, er_unit, er_counit),
    }
    return RecollementInstance(
        name=f"idempotent({lam.name}, {label})",
        b=lam,
        a=a_alg,
        c=c_alg,
        i=i_h,
        e=e_h,
        q=q_h,
        p=p_h,
        l=l_h,
        r=r_h,
        adjunctions=adj,
        provenance={"kind": "idempotent", "algebra": lam.name, "idempotent": label, "coordinates": e.tolist()},
        degenerate=bool(degenerate),
    )


def replace_name(a: Algebra, name: str) -> Algebra:
    return Algebra(
        a.p, a.mult, a.unit, a.labels, a.idempotents, a.idempotent_labels, a.radical, name, a.quiver, a.morn, a.triangular
    )


# -- sequence recollement --------------------------------------------------------------


def _seq(x: Module, n: int):
    """``(components, bases, coords)`` of a module over ``T_n`` (``n = 1`` means the base)."""
    if n == 1:
        return [x], [la.identity(x.dim)], [la.identity(x.dim)], []
    fr = md.seq_frame(x)
    return list(fr.seq.components), list(fr.bases), list(fr.coords), [f.matrix for f in fr.seq.maps]


def _from_seq(comps: Sequence[Module], maps: Sequence[np.ndarray], t: Algebra) -> Module:
    if len(comps) == 1:
        return comps[0]
    s = MorSeq(tuple(comps), tuple(ModuleHom(comps[k], comps[k + 1], m) for k, m in enumerate(maps)))
    return md.morseq_to_module(s, t)


def _from_components(x: Module, y: Module, n: int, comps: Sequence[np.ndarray]) -> ModuleHom:
    _, _, cx, _ = _seq(x, n)
    _, by, _, _ = _seq(y, n)
    mat = la.zeros(y.dim, x.dim)
    for g, c, b in zip(comps, cx, by):
        mat = (mat + la.matmul(b, la.matmul(g, c, x.p), x.p)) % x.p
    return ModuleHom(x, y, mat)


def _components(f: ModuleHom, n: int) -> list[np.ndarray]:
    _, bx, _, _ = _seq(f.source, n)
    _, _, cy, _ = _seq(f.target, n)
    return [la.matmul(c, la.matmul(f.matrix, b, f.p), f.p) for b, c in zip(bx, cy)]


def morn_recollement(base: Algebra, n: int) -> RecollementInstance:
    """Recollement of ``Mor_{n-1}``, ``Mor_n`` and ``Mod base`` with the functors written on sequences."""
    if n < 2:
        raise InputError("the sequence recollement needs n >= 2")
    p = base.p
    tb = md.morn_for(base, n)
    ta = md.morn_for(base, n - 1)
    zero = md.zero_module(base)

    def zmat(r, c):
        return la.zeros(r, c)

    def e_obj(x):
        comps, _, _, _ = _seq(x, n)
        return comps[-1], None

    def e_mor(f, s, t):
        return _components(f, n)[-1]

    def l_obj(y):
        comps = [zero] * (n - 1) + [y]
        maps = [zmat(0, 0)] * (n - 2) + [zmat(y.dim, 0)]
        return _from_seq(comps, maps, tb), None

    def l_mor(f, s, t):
        return f.matrix.copy()

    def r_obj(y):
        comps = [y] * n
        maps = [la.identity(y.dim)] * (n - 1)
        return _from_seq(comps, maps, tb), None

    def r_mor(f, s, t):
        return la.block_diag([f.matrix] * n)

    def i_obj(y):
        comps, _, _, maps = _seq(y, n - 1)
        comps = comps + [zero]
        maps = maps + [zmat(0, comps[-2].dim)]
        return _from_seq(comps, maps, tb), None

    def i_mor(f, s, t):
        return la.block_diag(_components(f, n - 1) + [zmat(0, 0)])

    def q_obj(x):
        comps, _, _, maps = _seq(x, n)
        return _from_seq(comps[:-1], maps[:-1], ta), None

    def q_mor(f, s, t):
        return la.block_diag(_components(f, n)[:-1])

    def p_obj(x):
        comps, _, _, maps = _seq(x, n)
        kers = []
        for j in range(n - 1):
            comp = la.identity(comps[j].dim)
            for k in range(j, n - 1):
                comp = la.matmul(maps[k], comp, p)
            kers.append(la.kernel_basis(comp, p))
        kcoords = [la.left_inverse(kb, p) for kb in kers]
        kmods = []
        for j, (kb, kc) in enumerate(zip(kers, kcoords)):
            act = np.einsum("ab,ibc,cd->iad", kc, comps[j].action, kb) % p if kb.shape[1] else np.zeros(
                (base.dim, 0, 0), dtype=np.int64
            )
            kmods.append(Module(base, act, f"K{j + 1}"))
        kmaps = [la.matmul(kcoords[j + 1], la.matmul(maps[j], kers[j], p), p) for j in range(n - 2)]
        return _from_seq(kmods, kmaps, ta), (kers, kcoords)

    def p_mor(f, s, t):
        fc = _components(f, n)
        ks, kc = s[1][0], t[1][1]
        return la.block_diag([la.matmul(kc[j], la.matmul(fc[j], ks[j], p), p) for j in range(n - 1)])

    i_h = FunctorHandle("i", ta, tb, i_obj, i_mor, "exact")
    q_h = FunctorHandle("q", tb, ta, q_obj, q_mor, "exact")
    p_h = FunctorHandle("p", tb, ta, p_obj, p_mor, "left-exact")
    e_h = FunctorHandle("e", tb, base, e_obj, e_mor, "exact")
    l_h = FunctorHandle("l", base, tb, l_obj, l_mor, "exact")
    r_h = FunctorHandle("r", base, tb, r_obj, r_mor, "exact")

    def ident_list(x, k):
        comps, _, _, _ = _seq(x, k)
        return [la.identity(c.dim) for c in comps]

    def qi_unit(x):
        comps, _, _, _ = _seq(x, n)
        gs = [la.identity(c.dim) for c in comps[:-1]] + [zmat(0, comps[-1].dim)]
        return _from_components(x, i_h(q_h(x)), n, gs)

    def qi_counit(y):
        return _from_components(q_h(i_h(y)), y, n - 1, ident_list(y, n - 1))

    def ip_unit(y):
        piy = p_h(i_h(y))
        kc = p_h.data(i_h(y))[1]
        comps, _, _, _ = _seq(y, n - 1)
        gs = [la.matmul(kc[j], la.identity(comps[j].dim), p) for j in range(n - 1)]
        return _from_components(y, piy, n - 1, gs)

    def ip_counit(x):
        px = p_h(x)
        ipx = i_h(px)
        kers = p_h.data(x)[0]
        comps, _, _, _ = _seq(x, n)
        gs = list(kers) + [zmat(comps[-1].dim, 0)]
        return _from_components(ipx, x, n, gs)

    def le_unit(y):
        ely = e_h(l_h(y))
        return ModuleHom(y, ely, la.identity(y.dim))

    def le_counit(x):
        comps, _, _, _ = _seq(x, n)
        lex = l_h(e_h(x))
        gs = [zmat(c.dim, 0) for c in comps[:-1]] + [la.identity(comps[-1].dim)]
        return _from_components(lex, x, n, gs)

    def er_unit(x):
        comps, _, _, maps = _seq(x, n)
        gs = []
        for j in range(n):
            comp = la.identity(comps[j].dim)
            for k in range(j, n - 1):
                comp = la.matmul(maps[k], comp, p)
            gs.append(comp)
        return _from_components(x, r_h(e_h(x)), n, gs)

    def er_counit(y):
        ery = e_h(r_h(y))
        return ModuleHom(ery, y, la.identity(y.dim))

    adj = {
        "q-|i": Adjunction(q_h, i_h, qi_unit, qi_counit),
        "i-|p": Adjunction(i_h, p_h, ip_unit, ip_counit),
        "l-|e": Adjunction(l_h, e_h, le_unit, le_counit),
        "e-|r": Adjunction(e_h, r_h, er_unit, er_counit),
    }
    return RecollementInstance(
        name=f"sequences({base.name}, n={n})",
        b=tb,
        a=ta,
        c=base,
        i=i_h,
        e=e_h,
        q=q_h,
        p=p_h,
        l=l_h,
        r=r_h,
        adjunctions=adj,
        provenance={"kind": "morn", "base": base.name, "n": n},
    )


def corrupt_zero_i(inst: RecollementInstance) -> RecollementInstance:
    """Copy of ``inst`` with ``i`` replaced by the zero functor (a negative control)."""
    b = inst.b
    zero_b = md.zero_module(b)

    def i_obj(y):
        return zero_b, None

    def i_mor(f, s, t):
        return la.zeros(0, 0)

    i_h = FunctorHandle("i", inst.a, b, i_obj, i_mor, "exact")
    q_h, p_h = inst.q, inst.p

    def qi_unit(x):
        return ModuleHom(x, i_h(q_h(x)), la.zeros(0, x.dim))

    def qi_counit(y):
        qiy = q_h(i_h(y))
        return ModuleHom(qiy, y, la.zeros(y.dim, qiy.dim))

    def ip_unit(y):
        piy = p_h(i_h(y))
        return ModuleHom(y, piy, la.zeros(piy.dim, y.dim))

    def ip_counit(x):
        return ModuleHom(i_h(p_h(x)), x, la.zeros(x.dim, 0))

    adj = dict(inst.adjunctions)
    adj["q-|i"] = Adjunction(q_h, i_h, qi_unit, qi_counit)
    adj["i-|p"] = Adjunction(i_h, p_h, ip_unit, ip_counit)
    prov = dict(inst.provenance)
    prov["corrupted"] = "i replaced by the zero functor"
    return RecollementInstance(
        inst.name + " [i := 0]", inst.b, inst.a, inst.c, i_h, inst.e, q_h, p_h, inst.l, inst.r, adj, prov, inst.degenerate
    )


# -- per-sample checks -------------------------------------------------------------------
#
# Each check takes the instance, a tuple of modules and keyword parameters and
# returns (ok, info). Failures are recorded with the modules serialised so the
# same call can be replayed from a report.

SAMPLE_CHECKS: dict[str, tuple[Callable, tuple[str, ...]]] = {}


def _register(name: str, sides: tuple[str, ...]):
    def deco(fn):
        SAMPLE_CHECKS[name] = (fn, sides)
        return fn

    return deco


def _adj_sides(inst: RecollementInstance, adj_name: str) -> tuple[str, str]:
    adj = inst.adjunctions[adj_name]
    return _side_of(inst, adj.left.source), _side_of(inst, adj.left.target)


def _is_identity(f: ModuleHom) -> bool:
    return f.source.dim == f.target.dim and np.array_equal(f.matrix % f.p, la.identity(f.source.dim))


def _homs_ok(*fs: ModuleHom) -> bool:
    return all(f.is_intertwining() for f in fs)


def check_adjunction_dims(inst, mods, adj):
    a = inst.adjunctions[adj]
    x, y = mods
    lhs = md.hom_dim(a.left(x), y)
    rhs = md.hom_dim(x, a.right(y))
    return lhs == rhs, {"hom_left": lhs, "hom_right": rhs}


def check_triangle_left(inst, mods, adj):
    """``counit_{F X} o F(unit_X) = id_{F X}``."""
    a = inst.adjunctions[adj]
    (x,) = mods
    eta = a.unit(x)
    f_eta = a.left.map(eta)
    eps = a.counit(a.left(x))
    if not _homs_ok(eta, eps, f_eta):
        return False, {"reason": "unit or counit is not a module map"}
    comp = ModuleHom(f_eta.source, eps.target, la.matmul(eps.matrix, f_eta.matrix, x.p))
    return _is_identity(comp), {}


def check_triangle_right(inst, mods, adj):
    """``G(counit_Y) o unit_{G Y} = id_{G Y}``."""
    a = inst.adjunctions[adj]
    (y,) = mods
    eps = a.counit(y)
    g_eps = a.right.map(eps)
    eta = a.unit(a.right(y))
    if not _homs_ok(eta, eps, g_eps):
        return False, {"reason": "unit or counit is not a module map"}
    comp = ModuleHom(eta.source, g_eps.target, la.matmul(g_eps.matrix, eta.matrix, y.p))
    return _is_identity(comp), {}


def check_unit_naturality(inst, mods, adj, index=0):
    """``GF(f) o unit_X = unit_X' o f`` for the ``index``-th Hom basis element ``f: X -> X'``."""
    a = inst.adjunctions[adj]
    x, x2 = mods
    hs = md.hom_space(x, x2)
    if index >= hs.shape[0]:
        return True, {"vacuous": True}
    f = ModuleHom(x, x2, hs[index])
    gf = a.right.map(a.left.map(f))
    u1, u2 = a.unit(x), a.unit(x2)
    lhs = la.matmul(gf.matrix, u1.matrix, x.p)
    rhs = la.matmul(u2.matrix, f.matrix, x.p)
    return bool(np.array_equal(lhs, rhs)), {}


def check_functoriality(inst, mods, functor):
    """``F`` preserves identities and composites of Hom basis elements."""
    fh = inst.functor(functor)
    x, y = mods
    if not _is_identity(fh.map(x.identity())):
        return False, {"reason": "identity not preserved"}
    hxy = md.hom_space(x, y)
    hyy = md.hom_space(y, y)
    if hxy.shape[0] and hyy.shape[0]:
        f = ModuleHom(x, y, hxy[0])
        g = ModuleHom(y, y, hyy[-1])
        lhs = fh.map(g.compose(f)).matrix
        rhs = la.matmul(fh.map(g).matrix, fh.map(f).matrix, x.p)
        if not np.array_equal(lhs, rhs):
            return False, {"reason": "composition not preserved"}
        if not fh.map(f).is_intertwining():
            return False, {"reason": "image of a morphism is not a module map"}
    return True, {}


def check_e_i_zero(inst, mods):
    (y,) = mods
    d = inst.e(inst.i(y)).dim
    return d == 0, {"dim_e_i": d}


def check_q_i_iso(inst, mods):
    (y,) = mods
    eps = inst.adjunctions["q-|i"].counit(y)
    return eps.is_intertwining() and eps.is_iso(), {"dim_qi": eps.source.dim, "dim": y.dim}


def check_p_i_iso(inst, mods):
    (y,) = mods
    eta = inst.adjunctions["i-|p"].unit(y)
    return eta.is_intertwining() and eta.is_iso(), {"dim_pi": eta.target.dim, "dim": y.dim}


def check_e_l_iso(inst, mods):
    (y,) = mods
    eta = inst.adjunctions["l-|e"].unit(y)
    return eta.is_intertwining() and eta.is_iso(), {"dim_el": eta.target.dim, "dim": y.dim}


def check_e_r_iso(inst, mods):
    (y,) = mods
    eps = inst.adjunctions["e-|r"].counit(y)
    return eps.is_intertwining() and eps.is_iso(), {"dim_er": eps.source.dim, "dim": y.dim}


def check_i_fully_faithful(inst, mods):
    y, y2 = mods
    ha = md.hom_space(y, y2)
    iy, iy2 = inst.i(y), inst.i(y2)
    hb = md.hom_dim(iy, iy2)
    if ha.shape[0] != hb:
        return False, {"reason": "i not fully faithful", "hom_A": ha.shape[0], "hom_B": hb}
    if ha.shape[0]:
        images = np.stack([inst.i.map(ModuleHom(y, y2, h)).matrix.ravel() for h in ha], axis=1)
        if la.rank(images, y.p) != ha.shape[0]:
            return False, {"reason": "i not faithful", "hom_A": ha.shape[0]}
    return True, {"hom": hb}


def check_kernel_in_image(inst, mods):
    """If ``e X = 0`` then the unit ``X -> i q X`` is an isomorphism."""
    (x,) = mods
    if inst.e(x).dim:
        return True, {"vacuous": True}
    eta = inst.adjunctions["q-|i"].unit(x)
    return eta.is_intertwining() and eta.is_iso(), {}


_register("adjunction_dims", ("*", "*"))(check_adjunction_dims)
_register("triangle_left", ("*",))(check_triangle_left)
_register("triangle_right", ("*",))(check_triangle_right)
_register("unit_naturality", ("*", "*"))(check_unit_naturality)
_register("functoriality", ("*", "*"))(check_functoriality)
_register("e_i_zero", ("A",))(check_e_i_zero)
_register("q_i_iso", ("A",))(check_q_i_iso)
_register("p_i_iso", ("A",))(check_p_i_iso)
_register("e_l_iso", ("C",))(check_e_l_iso)
_register("e_r_iso", ("C",))(check_e_r_iso)
_register("i_fully_faithful", ("A", "A"))(check_i_fully_faithful)
_register("kernel_in_image", ("B",))(check_kernel_in_image)


def run_sample_check(inst, check: str, mods, params: dict):
    fn, _ = SAMPLE_CHECKS[check]
    return fn(inst, tuple(mods), **params)


class _Collector:
    """Accumulates per-sample outcomes into a :class:`CheckRecord`."""

    def __init__(self, name: str, scope: str = "", mode: str = "exact", max_witnesses: int = 3):
        self.rec = CheckRecord(name, True, 0, mode, scope)
        self.max_witnesses = max_witnesses
        self.failures = 0

    def run(self, inst, check: str, samples: Sequence[Sample], params: Optional[dict] = None):
        params = params or {}
        self.rec.samples += 1
        try:
            ok, info = run_sample_check(inst, check, [s.module for s in samples], params)
        except (UnsupportedAlgebra, hl.BoundExceeded) as exc:
            ok, info = False, {"reason": f"{type(exc).__name__}: {exc}"}
        if not ok:
            self.fail(check, samples, params, info)
        return ok, info

    def fail(self, check, samples, params, info):
        self.failures += 1
        self.rec.passed = False
        if len(self.rec.witnesses) < self.max_witnesses:
            self.rec.witnesses.append(
                {
                    "check": check,
                    "params": params,
                    "samples": [s.name for s in samples],
                    "info": info,
                    "modules": [module_to_json(s.module) for s in samples],
                }
            )

    def done(self, **details) -> CheckRecord:
        self.rec.details.update(details)
        self.rec.details["failures"] = self.failures
        return self.rec


# -- abelian-level verification ------------------------------------------------------------


@dataclass
class SampleSets:
    a: list
    b: list
    c: list

    def side(self, key: str) -> list:
        return {"A": self.a, "B": self.b, "C": self.c}[key]


def verify_adjunction(inst: RecollementInstance, adj_name: str, samples: SampleSets, pair_limit: int = 6) -> CheckRecord:
    """Hom-dimension equalities, triangle identities and unit naturality for one adjunction."""
    src, tgt = _adj_sides(inst, adj_name)
    xs, ys = samples.side(src), samples.side(tgt)
    col = _Collector(f"adjunction {adj_name}", f"{len(xs)} x {len(ys)} samples")
    params = {"adj": adj_name}
    for x in xs:
        for y in ys:
            col.run(inst, "adjunction_dims", [x, y], params)
    for x in xs:
        col.run(inst, "triangle_left", [x], params)
    for y in ys:
        col.run(inst, "triangle_right", [y], params)
    for x in xs[:pair_limit]:
        for x2 in xs[:pair_limit]:
            col.run(inst, "unit_naturality", [x, x2], params)
    return col.done()


def verify_recollement_axioms(inst: RecollementInstance, samples: SampleSets) -> list[CheckRecord]:
    recs = [verify_adjunction(inst, name, samples) for name in ("q-|i", "i-|p", "l-|e", "e-|r")]
    col = _Collector("functoriality", "pairs of samples per functor")
    for fname in ("i", "e", "q", "p", "l", "r"):
        fh = inst.functor(fname)
        side = _side_of(inst, fh.source)
        xs = samples.side(side)[:5]
        for x in xs:
            for y in xs:
                col.run(inst, "functoriality", [x, y], {"functor": fname})
    recs.append(col.done())
    for name, check, side in (
        ("e o i = 0", "e_i_zero", "A"),
        ("q o i = id", "q_i_iso", "A"),
        ("p o i = id", "p_i_iso", "A"),
        ("e o l = id", "e_l_iso", "C"),
        ("e o r = id", "e_r_iso", "C"),
    ):
        col = _Collector(name, f"{side}-side samples")
        for y in samples.side(side):
            col.run(inst, check, [y])
        recs.append(col.done())
    col = _Collector("i fully faithful", "pairs of A-side samples")
    for y in samples.a:
        for y2 in samples.a:
            col.run(inst, "i_fully_faithful", [y, y2])
    recs.append(col.done())
    col = _Collector("Ker e = image of i", "B-side samples with e X = 0, plus i of A-side samples")
    extra = [Sample(f"i({s.name})", inst.i(s.module)) for s in samples.a]
    for x in list(samples.b) + extra:
        col.run(inst, "kernel_in_image", [x])
    recs.append(col.done())
    if inst.degenerate:
        for r in recs:
            r.details["degenerate"] = True
    return recs


def verify_exactness(inst: RecollementInstance, samples: SampleSets) -> CheckRecord:
    """Declared exactness on short exact sequences ``0 -> Omega X -> P(X) -> X -> 0`` and
    ``0 -> X -> I(X) -> Omega^-1 X -> 0`` of samples (rank identities)."""
    col = _Collector("declared exactness", "syzygy and cosyzygy sequences of samples")
    for fname in ("i", "e", "q", "p", "l", "r"):
        fh = inst.functor(fname)
        side = _side_of(inst, fh.source)
        for s in samples.side(side)[:6]:
            col.run(inst, "exactness", [s], {"functor": fname})
    return col.done()


def check_exactness(inst, mods, functor):
    fh = inst.functor(functor)
    (x,) = mods
    k, inc, cover = md.syzygy(x)
    sess = [(inc, cover.epi)]
    _, mono = md.injective_envelope(x)
    _, proj = md.cokernel(mono)
    sess.append((mono, proj))
    for f, g in sess:
        ff, fg = fh.map(f), fh.map(g)
        p = x.p
        if la.matmul(fg.matrix, ff.matrix, p).any():
            return False, {"reason": "composite not zero"}
        mid = ff.target.dim
        middle_exact = fg.rank() == mid - ff.rank()
        right_exact = fg.is_epi()
        left_exact = ff.is_mono()
        want_left = fh.exactness in ("exact", "left-exact")
        want_right = fh.exactness in ("exact", "right-exact")
        if want_left and want_right and not (middle_exact and left_exact and right_exact):
            return False, {"reason": "not exact"}
        if want_right and not want_left and not (right_exact and middle_exact):
            return False, {"reason": "not right exact"}
        if want_left and not want_right and not (left_exact and middle_exact):
            return False, {"reason": "not left exact"}
    return True, {}


_register("exactness", ("*",))(check_exactness)


# -- model-structure conditions ---------------------------------------------------------------


def profiles(inst: RecollementInstance) -> dict:
    return {k: hl.gorenstein_profile(inst.side(k)) for k in ("A", "B", "C")}


def require_profiles(inst: RecollementInstance, sides=("A", "B", "C")) -> None:
    for k in sides:
        prof = hl.gorenstein_profile(inst.side(k))
        if not prof.verified:
            raise UnsupportedAlgebra(f"{k}-side algebra {prof.algebra_name} is not verified Iwanaga-Gorenstein")


def check_e_preserves_trivial(inst, mods):
    (x,) = mods
    if not hl.is_trivial(x):
        return True, {"vacuous": True}
    return hl.is_trivial(inst.e(x)), {}


def check_i_trivial(inst, mods):
    (y,) = mods
    return hl.is_trivial(inst.i(y)), {}


def check_derived_unit(inst, mods):
    """The unit ``Q iX -> i q (Q iX)`` is a weak equivalence."""
    (x,) = mods
    seq = hl.cofibrant_replacement(inst.i(x))
    qx = seq.replaced
    eta = inst.adjunctions["q-|i"].unit(qx)
    return hl.is_weak_equivalence(eta), {"dim_Q": qx.dim}


def check_derived_ext(inst, mods, degree=2):
    """``Ext^n_A(Q X, Y) = Ext^n_B(Q iX, iY)`` for ``1 <= n <= degree`` and the stable Hom at ``n = 0``."""
    x, y = mods
    qa = hl.cofibrant_replacement(x).replaced
    qb = hl.cofibrant_replacement(inst.i(x)).replaced
    iy = inst.i(y)
    vals = {0: (hl.stable_hom_dim(qa, y), hl.stable_hom_dim(qb, iy))}
    for n in range(1, degree + 1):
        vals[n] = (hl.ext_dim(qa, y, n), hl.ext_dim(qb, iy, n))
    bad = [n for n, (u, v) in vals.items() if u != v]
    info = {"dims": {str(n): list(v) for n, v in vals.items()}}
    if bad:
        info["degree"] = bad[0]
    return not bad, info


def check_kernel_unit(inst, mods):
    """For Gorenstein projective X with e X trivial: the unit ``X -> i q X`` is a weak equivalence,
    and ``l e X -> X -> i q X -> 0`` is the canonical sequence."""
    (x,) = mods
    if not hl.is_gp(x) or not hl.is_trivial(inst.e(x)):
        return True, {"vacuous": True}
    eta = inst.adjunctions["q-|i"].unit(x)
    eps = inst.adjunctions["l-|e"].counit(x)
    p = x.p
    composite_zero = not la.matmul(eta.matrix, eps.matrix, p).any()
    right_exact = eta.is_epi() and eps.rank() == x.dim - eta.rank()
    left_injective = eps.is_mono()
    we = hl.is_weak_equivalence(eta)
    info = {"canonical_sequence_exact": bool(composite_zero and right_exact and left_injective), "weak_equivalence": we}
    if not left_injective:
        info["kernel_of_counit"] = eps.source.dim - eps.rank()
    return we and composite_zero and right_exact and left_injective, info


def check_counit_dual(inst, mods):
    """For Gorenstein injective Y with e Y trivial: the counit ``i p Y -> Y`` is a weak equivalence."""
    (y,) = mods
    if not hl.is_gi(y) or not hl.is_trivial(inst.e(y)):
        return True, {"vacuous": True}
    eps = inst.adjunctions["i-|p"].counit(y)
    return hl.is_weak_equivalence(eps), {}


def check_trivial_identity(inst, mods):
    """``i Y`` is trivial exactly when ``Y`` is."""
    (y,) = mods
    u, v = hl.is_trivial(y), hl.is_trivial(inst.i(y))
    return u == v, {"trivial_A": u, "trivial_iY": v}


def check_kernel_vs_image(inst, mods):
    """``e(Q X)`` trivial exactly when the unit ``Q X -> i q Q X`` is a weak equivalence."""
    (x,) = mods
    qx = hl.cofibrant_replacement(x).replaced
    in_kernel = hl.is_trivial(inst.e(qx))
    in_image = hl.is_weak_equivalence(inst.adjunctions["q-|i"].unit(qx))
    return in_kernel == in_image, {"in_kernel": in_kernel, "in_image": in_image}


def check_stable_adjunction(inst, mods, pair):
    """Stable Hom dimensions on both sides of a derived adjunction agree."""
    x, y = mods
    if pair == "Lq-|Ri":  # x on B, y on A
        qx = hl.cofibrant_replacement(x).replaced
        lhs = hl.stable_hom_dim(hl.cofibrant_replacement(inst.q(qx)).replaced, y)
        rhs = hl.stable_hom_dim(qx, inst.i(y))
    elif pair == "Ri-|Rp":  # x on A, y on B
        lhs = hl.stable_hom_dim(hl.cofibrant_replacement(inst.i(x)).replaced, y)
        ry = hl.fibrant_replacement(y).replaced
        rhs = hl.stable_hom_dim(hl.cofibrant_replacement(x).replaced, inst.p(ry))
    elif pair == "Ll-|Re":  # x on C, y on B
        lq = inst.l(hl.cofibrant_replacement(x).replaced)
        lhs = hl.stable_hom_dim(hl.cofibrant_replacement(lq).replaced, y)
        rhs = hl.stable_hom_dim(hl.cofibrant_replacement(x).replaced, inst.e(y))
    elif pair == "Le-|Rr":  # x on B, y on C
        qx = hl.cofibrant_replacement(x).replaced
        lhs = hl.stable_hom_dim(hl.cofibrant_replacement(inst.e(qx)).replaced, y)
        rr = inst.r(hl.fibrant_replacement(y).replaced)
        rhs = hl.stable_hom_dim(qx, rr)
    else:
        raise InputError(f"unknown derived adjunction {pair!r}")
    return lhs == rhs, {"left": lhs, "right": rhs}


def check_homological_embedding(inst, mods, degree=3, mode="fast"):
    """``Ext^n_A(X, Y) -> Ext^n_B(iX, iY)`` is bijective for ``n <= degree``."""
    x, y = mods
    if mode == "thorough":
        res = homological_comparison(inst, x, y, degree)
    else:
        res = {n: {"A": hl.ext_dim(x, y, n), "B": hl.ext_dim(inst.i(x), inst.i(y), n)} for n in range(degree + 1)}
        for n, v in res.items():
            v["iso"] = v["A"] == v["B"]
    bad = [n for n, v in res.items() if not v["iso"]]
    info = {"degrees": {str(n): v for n, v in res.items()}}
    if bad:
        info["degree"] = bad[0]
    return not bad, info


for _name, _sides, _fn in (
    ("e_preserves_trivial", ("B",), check_e_preserves_trivial),
    ("i_trivial", ("A",), check_i_trivial),
    ("derived_unit", ("A",), check_derived_unit),
    ("derived_ext", ("A", "A"), check_derived_ext),
    ("kernel_unit", ("B",), check_kernel_unit),
    ("counit_dual", ("B",), check_counit_dual),
    ("trivial_identity", ("A",), check_trivial_identity),
    ("kernel_vs_image", ("B",), check_kernel_vs_image),
    ("homological_embedding", ("A", "A"), check_homological_embedding),
):
    _register(_name, _sides)(_fn)

_STABLE_SIDES = {"Lq-|Ri": ("B", "A"), "Ri-|Rp": ("A", "B"), "Ll-|Re": ("C", "B"), "Le-|Rr": ("B", "C")}
_register("stable_adjunction", ("*", "*"))(check_stable_adjunction)


def _side_of(inst: RecollementInstance, a: Algebra) -> str:
    return {id(inst.a): "A", id(inst.b): "B", id(inst.c): "C"}[id(a)]


def sides_for(inst: RecollementInstance, check: str, params: dict) -> tuple[str, ...]:
    """Which algebra each module argument of ``check`` lives over."""
    _, sides = SAMPLE_CHECKS[check]
    if "*" not in sides:
        return sides
    if check == "stable_adjunction":
        return _STABLE_SIDES[params["pair"]]
    if check in ("functoriality", "exactness"):
        side = _side_of(inst, inst.functor(params["functor"]).source)
        return (side,) * len(sides)
    src, tgt = _adj_sides(inst, params["adj"])
    if check == "adjunction_dims":
        return (src, tgt)
    if check in ("triangle_left", "unit_naturality"):
        return (src,) * len(sides)
    return (tgt,)


def check_setup(inst: RecollementInstance, samples: SampleSets) -> list[CheckRecord]:
    require_profiles(inst, ("B", "C"))
    col = _Collector("setup: e preserves trivial objects", "trivial B-side samples")
    for x in samples.b:
        col.run(inst, "e_preserves_trivial", [x])
    recs = [col.done()]
    a = inst.a
    projs = [Sample(f"P({lab})", m) for lab, m in zip(a.idempotent_labels or (), md.indecomposable_projectives(a))] if a.dim else []
    injs = [Sample(f"I({lab})", m) for lab, m in zip(a.idempotent_labels or (), md.indecomposable_injectives(a))] if a.dim else []
    col = _Collector("setup: right acyclicity i(Proj A) trivial", "indecomposable projectives of A")
    for y in projs:
        col.run(inst, "i_trivial", [y])
    recs.append(col.done())
    col = _Collector("setup: left acyclicity i(Inj A) trivial", "indecomposable injectives of A")
    for y in injs:
        col.run(inst, "i_trivial", [y])
    recs.append(col.done())
    return recs


def check_derived_embedding(inst: RecollementInstance, samples: SampleSets, mode: str = "fast", degree: int = 2) -> list[CheckRecord]:
    require_profiles(inst, ("B",))
    col = _Collector("condition (i): derived embedding (unit of Q iX)", "A-side samples", mode)
    for x in samples.a:
        col.run(inst, "derived_unit", [x])
    recs = [col.done()]
    if mode == "thorough":
        if hl.gorenstein_profile(inst.a).verified:
            col = _Collector("condition (i): Ext comparison", f"pairs of A-side samples, degrees 0..{degree}", mode)
            for x in samples.a:
                for y in samples.a:
                    col.run(inst, "derived_ext", [x, y], {"degree": degree})
            recs.append(col.done())
        else:
            recs.append(
                CheckRecord(
                    "condition (i): Ext comparison",
                    True,
                    0,
                    mode,
                    "skipped: A-side algebra has no verified Gorenstein profile",
                )
            )
    return recs


def check_kernel_unit_condition(inst: RecollementInstance, samples: SampleSets) -> list[CheckRecord]:
    require_profiles(inst, ("B", "C"))
    pool = _gp_pool(inst, samples)
    col = _Collector("condition (ii): unit on Gorenstein projectives in Ker Re", "Gorenstein projective B-side samples")
    applicable = 0
    for x in pool:
        ok, info = col.run(inst, "kernel_unit", [x])
        if not info.get("vacuous"):
            applicable += 1
    rec1 = col.done(applicable=applicable)
    pool_gi = _gi_pool(inst, samples)
    col = _Collector("condition (ii)': counit on Gorenstein injectives in Ker Le", "Gorenstein injective B-side samples")
    applicable = 0
    for y in pool_gi:
        ok, info = col.run(inst, "counit_dual", [y])
        if not info.get("vacuous"):
            applicable += 1
    rec2 = col.done(applicable=applicable)
    return [rec1, rec2]


def _gp_pool(inst, samples: SampleSets) -> list[Sample]:
    """B-side samples together with their cofibrant replacements and images of ``l`` and ``i``."""
    out = list(samples.b)
    for s in samples.b:
        out.append(Sample(f"Q({s.name})", hl.cofibrant_replacement(s.module).replaced))
    for s in samples.a:
        out.append(Sample(f"Q(i {s.name})", hl.cofibrant_replacement(inst.i(s.module)).replaced))
    return out


def _gi_pool(inst, samples: SampleSets) -> list[Sample]:
    out = list(samples.b)
    for s in samples.b:
        out.append(Sample(f"R({s.name})", hl.fibrant_replacement(s.module).replaced))
    for s in samples.a:
        out.append(Sample(f"R(i {s.name})", hl.fibrant_replacement(inst.i(s.module)).replaced))
    return out


def stable_recollement_report(inst: RecollementInstance, samples: SampleSets, limit: int = 6) -> list[CheckRecord]:
    require_profiles(inst, ("A", "B", "C"))
    recs = []
    for pair, (s1, s2) in _STABLE_SIDES.items():
        col = _Collector(f"stable adjunction {pair}", f"{s1} x {s2} samples (first {limit} each)")
        for x in samples.side(s1)[:limit]:
            for y in samples.side(s2)[:limit]:
                col.run(inst, "stable_adjunction", [x, y], {"pair": pair})
        recs.append(col.done())
    col = _Collector("Ker Re = essential image of Ri", "B-side samples")
    for x in samples.b:
        col.run(inst, "kernel_vs_image", [x])
    recs.append(col.done())
    col = _Collector("trivial-class identity i^-1(W_B) = W_A", "A-side samples, both directions")
    for y in samples.a:
        col.run(inst, "trivial_identity", [y])
    recs.append(col.done())
    if inst.degenerate:
        for r in recs:
            r.details["degenerate"] = True
    return recs


# -- homological embeddings ---------------------------------------------------------------


def _hom_flat(x: Module, y: Module) -> np.ndarray:
    hs = md.hom_space(x, y)
    return hs.reshape(hs.shape[0], -1).T if hs.shape[0] else la.zeros(y.dim * x.dim, 0)


def _solve_hom(source: Module, target: Module, post: np.ndarray, want: np.ndarray) -> Optional[np.ndarray]:
    """A module map ``F: source -> target`` with ``post @ F = want``."""
    p = source.p
    hs = md.hom_space(source, target)
    if hs.shape[0] == 0:
        return la.zeros(target.dim, source.dim) if not want.any() else None
    lhs = np.stack([la.matmul(post, h, p).ravel() for h in hs], axis=1)
    c = la.solve(lhs, want.reshape(-1, 1) % p, p)
    if c is None:
        return None
    return np.einsum("k,kab->ab", c[:, 0], hs) % p


def homological_comparison(inst: RecollementInstance, x: Module, y: Module, degree: int) -> dict:
    """The map ``Ext^n_A(X, Y) -> Ext^n_B(iX, iY)`` for ``n <= degree``, computed by lifting the
    identity of ``iX`` to a chain map from a projective resolution of ``iX`` into ``i`` of a
    projective resolution of ``X``."""
    p = x.p
    ra = hl.projective_resolution(x, degree + 1)
    ix, iy = inst.i(x), inst.i(y)
    rb = hl.projective_resolution(ix, degree + 1)
    pa = list(ra.terms) + [md.zero_module(inst.a)] * (degree + 2 - len(ra.terms))
    pb = list(rb.terms) + [md.zero_module(inst.b)] * (degree + 2 - len(rb.terms))

    def da(k):  # d_k: P_k -> P_{k-1}
        if 1 <= k <= len(ra.differentials):
            return ra.differentials[k - 1].matrix
        return la.zeros(pa[k - 1].dim if k >= 1 else 0, pa[k].dim)

    def db(k):
        if 1 <= k <= len(rb.differentials):
            return rb.differentials[k - 1].matrix
        return la.zeros(pb[k - 1].dim if k >= 1 else 0, pb[k].dim)

    ipa = [inst.i(m) for m in pa]
    phi = [_solve_hom(pb[0], ipa[0], ra.augmentation.matrix, rb.augmentation.matrix)]
    if phi[0] is None:
        raise RuntimeError("could not lift the augmentation")
    for k in range(1, degree + 2):
        want = la.matmul(phi[k - 1], db(k), p)
        f = _solve_hom(pb[k], ipa[k], da(k), want)
        if f is None:
            raise RuntimeError(f"could not lift the chain map in degree {k}")
        phi.append(f)
    out = {}
    for n in range(degree + 1):
        # cochains on the A side: Hom_A(P_n, Y); cocycles kill d_{n+1}; coboundaries come from Hom(P_{n-1}, Y)
        ha = md.hom_space(pa[n], y)
        hb = md.hom_space(pb[n], iy)
        za = _cocycles(ha, da(n + 1), p)
        zb = _cocycles(hb, db(n + 1), p)
        ba = _coboundaries(md.hom_space(pa[n - 1], y) if n else None, da(n) if n else None, pa[n].dim, y.dim, p)
        bb = _coboundaries(md.hom_space(pb[n - 1], iy) if n else None, db(n) if n else None, pb[n].dim, iy.dim, p)
        dim_a = za.shape[1] - la.rank(ba, p)
        dim_b = zb.shape[1] - la.rank(bb, p)
        # images of A-cocycles under precomposition with phi_n, as flattened dim iY x dim Q_n matrices
        imgs = [la.matmul(za[:, j].reshape(y.dim, pa[n].dim), phi[n], p).ravel() for j in range(za.shape[1])]
        img = np.stack(imgs, axis=1) if imgs else la.zeros(iy.dim * pb[n].dim, 0)
        rb_ = la.rank(bb, p)
        span = la.rank(la.hstack([bb, img], rows=bb.shape[0]), p) - rb_
        out[n] = {"A": int(dim_a), "B": int(dim_b), "image": int(span), "iso": bool(span == dim_a == dim_b)}
    return out


def _cocycles(hs: np.ndarray, d_next: np.ndarray, p: int) -> np.ndarray:
    """Flattened basis of ``{F in Hom(P_n, Y) : F d_{n+1} = 0}``."""
    if hs.shape[0] == 0:
        return la.zeros(hs.shape[1] * hs.shape[2], 0)
    comp = np.stack([la.matmul(h, d_next, p).ravel() for h in hs], axis=1)
    ker = la.kernel_basis(comp, p) if comp.size else la.identity(hs.shape[0])
    flat = hs.reshape(hs.shape[0], -1).T
    return la.matmul(flat, ker, p)


def _coboundaries(hprev: Optional[np.ndarray], d_n: Optional[np.ndarray], dim_pn: int, dim_y: int, p: int) -> np.ndarray:
    if hprev is None or hprev.shape[0] == 0:
        return la.zeros(dim_y * dim_pn, 0)
    cols = [la.matmul(h, d_n, p).ravel() for h in hprev]
    return np.stack(cols, axis=1)


def homological_embedding_degree(
    inst: RecollementInstance, pairs: Sequence[tuple[Sample, Sample]], degree: int, mode: str = "fast"
) -> CheckRecord:
    col = _Collector(f"homological embedding to degree {degree}", f"{len(pairs)} pairs of A-side samples", mode)
    first_bad = None
    for x, y in pairs:
        ok, info = col.run(inst, "homological_embedding", [x, y], {"degree": degree, "mode": mode})
        if not ok and "degree" in info:
            first_bad = info["degree"] if first_bad is None else min(first_bad, info["degree"])
    rec = col.done()
    if first_bad is not None:
        rec.details["first_failing_degree"] = first_bad
    return rec


def cps_conclusion(rec: CheckRecord, degree: int) -> str:
    if rec.passed:
        return (
            f"There is a recollement of derived categories (scope: the inclusion induces Ext isomorphisms "
            f"in degrees 0..{degree} on the sampled pairs; higher degrees and unsampled modules are not checked)"
        )
    return f"stratifying condition fails in degree {rec.details.get('first_failing_degree')}; no derived recollement is concluded"


# -- the structural Gorenstein projective test on sequences ----------------------------------


def gp_structural_test_morn(s: MorSeq) -> bool:
    """Every map ``X_i -> X_{i+1}`` is injective and ``X_1`` and every cokernel are Gorenstein projective."""
    for f in s.maps:
        if not f.is_mono():
            return False
    if not hl.is_gp(s.components[0]):
        return False
    for f in s.maps:
        if not hl.is_gp(md.cokernel(f)[0]):
            return False
    return True


def sample_sets(inst: RecollementInstance, seed: int = 0, random_count: int = 4, max_dim: int = 5, depth: int = 2) -> SampleSets:
    from .samples import sample_suite

    return SampleSets(
        sample_suite(inst.a, seed, random_count, max_dim, depth),
        sample_suite(inst.b, seed, random_count, max_dim, depth),
        sample_suite(inst.c, seed, random_count, max_dim, depth),
    )


# -- enumeration of small sequence modules ---------------------------------------------------


def _sums_up_to(indecs: Sequence[Module], max_dim: int) -> list[Module]:
    """All direct sums of the given modules with total dimension at most ``max_dim``."""
    out: list[Module] = []

    def rec(start: int, chosen: list[Module], dim: int):
        out.append(md.direct_sum_module(chosen) if chosen else md.zero_module(indecs[0].algebra))
        for k in range(start, len(indecs)):
            if dim + indecs[k].dim <= max_dim:
                rec(k, chosen + [indecs[k]], dim + indecs[k].dim)

    rec(0, [], 0)
    return out


def _fingerprint(x: Module, probes: Sequence[Module]) -> tuple:
    ranks = tuple(la.rank(x.act(g), x.p) for g in x.algebra.generators())
    return (x.dim, x.vertex_dims(), ranks, tuple(md.hom_dim(pr, x) for pr in probes), tuple(md.hom_dim(x, pr) for pr in probes))


def enumerate_morn2(base: Algebra, indecomposables: Sequence[Module], max_total_dim: int) -> list[MorSeq]:
    """Representatives of the isomorphism classes of ``X_1 -> X_2`` with total dimension at most
    ``max_total_dim``, assuming ``indecomposables`` lists every indecomposable base module up to
    that dimension."""
    t = md.morn_for(base, 2)
    sums = _sums_up_to(list(indecomposables), max_total_dim)
    probes = md.simple_modules(t) + md.indecomposable_projectives(t) + md.indecomposable_injectives(t)
    buckets: dict[tuple, list[tuple[MorSeq, Module]]] = {}
    p = base.p
    for x1 in sums:
        for x2 in sums:
            if x1.dim + x2.dim > max_total_dim:
                continue
            hs = md.hom_space(x1, x2)
            for coeffs in np.ndindex(*([p] * hs.shape[0])):
                mat = np.einsum("k,kab->ab", np.array(coeffs, dtype=np.int64), hs) % p if hs.shape[0] else la.zeros(x2.dim, x1.dim)
                s = MorSeq((x1, x2), (ModuleHom(x1, x2, mat),))
                m = md.morseq_to_module(s, t)
                key = _fingerprint(m, probes)
                bucket = buckets.setdefault(key, [])
                if any(md.is_isomorphic(m, other) for _, other in bucket):
                    continue
                bucket.append((s, m))
    return [s for bucket in buckets.values() for s, _ in bucket]
