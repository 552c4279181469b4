"""Resolutions, Ext, Gorenstein detection and the approximation sequences.

Over an Iwanaga-Gorenstein algebra with self-injective dimension ``d`` the
Gorenstein projective modules are those with ``Ext^i(X, A) = 0`` for
``1 <= i <= d``, and the modules of finite projective dimension are exactly
those with ``pd <= d``. These two classes together with all modules form the
data of the projective model structure; its cofibrant replacement of ``X`` is
an epimorphism ``Q(X) -> X`` from a Gorenstein projective module with kernel
of finite projective dimension. The injective side is obtained by duality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import linalg as la
from . import modules as md
from .algebra import Algebra
from .errors import BoundExceeded, ConstructionError, UnsupportedAlgebra
from .modules import SES, Module, ModuleHom

DEFAULT_BOUND = 16


@dataclass(frozen=True)
class AtLeast:
    """An indeterminate value known only to be at least ``bound``."""

    bound: int

    def __str__(self) -> str:
        return f">={self.bound}"


Dim = Union[int, AtLeast]


def is_finite(v: Dim) -> bool:
    return isinstance(v, int)


def dim_to_json(v: Dim):
    return v if isinstance(v, int) else str(v)


# -- resolutions --------------------------------------------------------------


@dataclass(eq=False)
class _ResState:
    terms: list  # P_k
    vertices: list  # vertex of each summand of P_k
    gens: list  # generator columns of P_k (dim P_k x #summands)
    diffs: list  # d_k: P_k -> P_{k-1} for k >= 1
    augmentation: ModuleHom
    syzygy: Module  # kernel of the last map, not yet covered
    inclusion: ModuleHom  # syzygy -> last term


def _cover_data(x: Module):
    cover = md.projective_cover(x)
    a = x.algebra
    projs = md.indecomposable_projectives(a)
    verts = [v for v, _ in cover.generators]
    cols, off = [], 0
    g = la.zeros(cover.projective.dim, len(verts))
    for j, v in enumerate(verts):
        gv = projs[v]._cache["generator"]
        g[off : off + projs[v].dim, j] = gv
        off += projs[v].dim
    return cover, verts, g


def _resolution_state(x: Module, length: int) -> _ResState:
    st = x._cache.get("res")
    if st is None:
        cover, verts, g = _cover_data(x)
        k, inc = md.kernel(cover.epi)
        st = _ResState([cover.projective], [verts], [g], [], cover.epi, k, inc)
        x._cache["res"] = st
    while len(st.terms) <= length and st.syzygy.dim:
        cover, verts, g = _cover_data(st.syzygy)
        d = ModuleHom(cover.projective, st.terms[-1], la.matmul(st.inclusion.matrix, cover.epi.matrix, x.p))
        k, inc = md.kernel(d)
        st.terms.append(cover.projective)
        st.vertices.append(verts)
        st.gens.append(g)
        st.diffs.append(d)
        st.syzygy, st.inclusion = k, inc
    return st


@dataclass(frozen=True, eq=False)
class Resolution:
    target: Module
    terms: tuple[Module, ...]
    differentials: tuple[ModuleHom, ...]  # differentials[k - 1] = d_k: P_k -> P_{k-1}
    augmentation: ModuleHom
    complete: bool  # True when the resolution ends with a zero syzygy

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def is_exact(self) -> bool:
        p = self.target.p
        maps = [self.augmentation] + list(self.differentials)
        if not self.augmentation.is_epi():
            return False
        for k in range(1, len(maps)):
            prev, cur = maps[k - 1], maps[k]
            if la.matmul(prev.matrix, cur.matrix, p).any():
                return False
            if cur.rank() != prev.source.dim - prev.rank():
                return False
        if self.complete and maps[-1].rank() != maps[-1].source.dim:
            return False
        return True


def projective_resolution(x: Module, maxlen: int = DEFAULT_BOUND) -> Resolution:
    """Minimal projective resolution ``P_maxlen -> ... -> P_0 -> X`` (shorter if it stops)."""
    if x.dim == 0:
        z = md.zero_module(x.algebra)
        return Resolution(x, (z,), (), ModuleHom(z, x, la.zeros(0, 0)), True)
    st = _resolution_state(x, maxlen)
    n = min(maxlen + 1, len(st.terms))
    complete = n == len(st.terms) and st.syzygy.dim == 0
    return Resolution(x, tuple(st.terms[:n]), tuple(st.diffs[: n - 1]), st.augmentation, complete)


def syzygy_n(x: Module, n: int) -> Module:
    """``Omega^n X`` (the zero module once the resolution has stopped)."""
    if n == 0:
        return x
    if x.dim == 0:
        return x
    st = _resolution_state(x, n)
    if n - 1 < len(st.diffs):
        return md.kernel(st.diffs[n - 1])[0]
    if n - 1 == len(st.diffs):
        return st.syzygy
    return md.zero_module(x.algebra)


def _hom_proj_dim(verts: list, y: Module) -> int:
    a = y.algebra
    return sum(la.rank(y.act(a.idempotents[v]), y.p) for v in verts)


def _dual_differential_rank(st: _ResState, k: int, y: Module) -> int:
    """Rank of ``Hom(P_{k-1}, Y) -> Hom(P_k, Y)``, ``F -> F d_k``."""
    a, p = y.algebra, y.p
    if k >= len(st.terms) or k < 1 or y.dim == 0:
        return 0
    projs = md.indecomposable_projectives(a)
    src_verts = st.vertices[k - 1]
    img = la.matmul(st.diffs[k - 1].matrix, st.gens[k], p)  # images of P_k generators in P_{k-1}
    offs = np.cumsum([0] + [projs[v].dim for v in src_verts])
    ebases = {v: la.image_basis(y.act(a.idempotents[v]), p) for v in set(src_verts)}
    blocks_rows = []
    for jp in range(img.shape[1]):
        row = []
        for j, v in enumerate(src_verts):
            lam = projs[v]._cache["embedding"] @ img[offs[j] : offs[j + 1], jp] % p
            row.append(la.matmul(y.act(lam), ebases[v], p))
        blocks_rows.append(la.hstack(row, rows=y.dim))
    if not blocks_rows:
        return 0
    return la.rank(la.vstack(blocks_rows), p)


def ext_dim(x: Module, y: Module, n: int, bound: int = DEFAULT_BOUND) -> int:
    """``dim Ext^n(X, Y)`` from the cohomology of ``Hom(P_*, Y)``."""
    if n < 0:
        raise ValueError("negative degree")
    if n == 0:
        return md.hom_dim(x, y)
    if x.dim == 0 or y.dim == 0:
        return 0
    st = _resolution_state(x, min(n + 1, bound))
    if len(st.terms) <= n:
        if st.syzygy.dim == 0:
            return 0
        raise BoundExceeded(f"resolution bound {bound} reached before degree {n}")
    if len(st.terms) <= n + 1 and st.syzygy.dim and n + 1 > bound:
        raise BoundExceeded(f"resolution bound {bound} reached before degree {n + 1}")
    total = _hom_proj_dim(st.vertices[n], y)
    return total - _dual_differential_rank(st, n + 1, y) - _dual_differential_rank(st, n, y)


def pd(x: Module, bound: int = DEFAULT_BOUND) -> Dim:
    """Projective dimension, or ``AtLeast(bound)`` when no syzygy below ``bound`` is projective."""
    if x.dim == 0:
        return 0
    st = _resolution_state(x, bound - 1)
    if st.syzygy.dim == 0 and len(st.terms) <= bound:
        return len(st.terms) - 1
    return AtLeast(bound)


def injective_dim(x: Module, bound: int = DEFAULT_BOUND) -> Dim:
    return pd(md.dual(x), bound)


# -- Gorenstein profile -----------------------------------------------------------


@dataclass(frozen=True)
class GorensteinProfile:
    algebra_name: str
    d_left: Dim
    d_right: Dim
    bound: int

    @property
    def verified(self) -> bool:
        return is_finite(self.d_left) and is_finite(self.d_right)

    @property
    def d(self) -> Dim:
        if self.verified:
            return max(self.d_left, self.d_right)
        return AtLeast(self.bound)

    def as_dict(self) -> dict:
        return {
            "algebra": self.algebra_name,
            "d_left": dim_to_json(self.d_left),
            "d_right": dim_to_json(self.d_right),
            "d": dim_to_json(self.d),
            "verified": self.verified,
        }


def _max_dim(vals: list[Dim], bound: int) -> Dim:
    if any(not is_finite(v) for v in vals):
        return AtLeast(bound)
    return max(vals, default=0)


def gorenstein_profile(a: Algebra, bound: int = DEFAULT_BOUND) -> GorensteinProfile:
    key = ("profile", bound)
    if key in a._cache:
        return a._cache[key]
    if a.dim == 0:
        prof = GorensteinProfile(a.name, 0, 0, bound)
    else:
        left = _max_dim([injective_dim(pv, bound) for pv in md.indecomposable_projectives(a)], bound)
        right = _max_dim([injective_dim(pv, bound) for pv in md.indecomposable_projectives(a.opposite())], bound)
        prof = GorensteinProfile(a.name, left, right, bound)
    a._cache[key] = prof
    return prof


def _require_d(a: Algebra) -> int:
    prof = gorenstein_profile(a)
    if not prof.verified:
        raise UnsupportedAlgebra(f"{a.name}: Gorenstein profile not verified within bound {prof.bound}")
    return prof.d


def gorenstein_bound(a: Algebra) -> int:
    return _require_d(a)


def is_trivial(x: Module) -> bool:
    """Finite projective dimension (equivalently ``pd <= d``)."""
    if "trivial" not in x._cache:
        d = _require_d(x.algebra)
        x._cache["trivial"] = is_finite(pd(x, d + 1))
    return x._cache["trivial"]


def is_gp(x: Module) -> bool:
    if "gp" not in x._cache:
        d = _require_d(x.algebra)
        ok = True
        if x.dim and d:
            projs = md.indecomposable_projectives(x.algebra)
            ok = all(ext_dim(x, pv, i, bound=d + 1) == 0 for i in range(1, d + 1) for pv in projs)
        x._cache["gp"] = ok
    return x._cache["gp"]


def is_gi(x: Module) -> bool:
    return is_gp(md.dual(x))


# -- approximations ---------------------------------------------------------------


def _dual_star(g: Module):
    """``Hom_A(G, A)`` as a left module over the opposite algebra, with its basis."""
    a, p = g.algebra, g.p
    reg = md.regular_module(a)
    hs = md.hom_space(g, reg)  # (k, dim A, dim G)
    k = hs.shape[0]
    op = a.opposite()
    if k == 0:
        return md.zero_module(op), hs, la.zeros(0, a.dim * g.dim)
    flat = hs.reshape(k, -1).T
    coords = la.left_inverse(flat, p)
    rr = a.right_regular()
    action = np.stack(
        [coords @ (np.einsum("ab,kbc->kac", rr[i], hs) % p).reshape(k, -1).T % p for i in range(a.dim)]
    )
    return Module(op, action, f"{g.name}*"), hs, coords


def gp_embed_step(g: Module, check: bool = True) -> tuple[ModuleHom, Module, ModuleHom]:
    """Left projective approximation ``G -> P`` of a Gorenstein projective ``G``.

    Returns ``(mono, cokernel, projection)``; the map is built from generators
    of ``Hom(G, A)`` as a right module, and the cokernel is checked to be
    Gorenstein projective.
    """
    a, p = g.algebra, g.p
    if check and not is_gp(g):
        raise ConstructionError("gp_embed_step needs a Gorenstein projective module")
    if g.dim == 0:
        z = md.zero_module(a)
        mono = ModuleHom(g, z, la.zeros(0, 0))
        return mono, z, ModuleHom(z, z, la.zeros(0, 0))
    star, hs, _ = _dual_star(g)
    cover = md.projective_cover(star)
    projs = md.indecomposable_projectives(a)
    rows, targets = [], []
    for v, fvec in cover.generators:
        f = np.einsum("k,kab->ab", fvec, hs) % p  # dim A x dim G, values in A e_v
        pv = projs[v]
        coords = la.left_inverse(pv._cache["embedding"], p)
        rows.append(la.matmul(coords, f, p))
        targets.append(pv)
    pmod = md.direct_sum_module(targets)
    mono = ModuleHom(g, pmod, la.vstack(rows))
    if not mono.is_mono():
        raise ConstructionError("module does not embed in a projective (not Gorenstein projective)")
    coker, proj = md.cokernel(mono)
    if check and not is_gp(coker):
        raise ConstructionError("cokernel of the projective approximation is not Gorenstein projective")
    return mono, coker, proj


def loop(x: Module) -> Module:
    return md.syzygy(x)[0]


def suspension(g: Module) -> Module:
    _, c, _ = gp_embed_step(g)
    return c


@dataclass(frozen=True, eq=False)
class ApproxSeq:
    """``0 -> W -> Q -> X -> 0`` (cofibrant) or ``0 -> X -> R -> C -> 0`` (fibrant)."""

    kind: str
    ses: SES
    replaced: Module
    witness: dict = field(default_factory=dict)

    @property
    def original(self) -> Module:
        return self.ses.right if self.kind == "cofibrant" else self.ses.left

    @property
    def trivial_part(self) -> Module:
        return self.ses.left if self.kind == "cofibrant" else self.ses.right


def certify(seq: ApproxSeq) -> dict:
    """Recheck exactness and class memberships; returns the individual verdicts."""
    exact = seq.ses.is_exact()
    try:
        seq.ses.mono.check()
        seq.ses.epi.check()
        homs = True
    except Exception:
        homs = False
    if seq.kind == "cofibrant":
        cls = is_gp(seq.replaced)
        triv = is_trivial(seq.ses.left)
        return {"exact": exact, "homomorphisms": homs, "replaced_gp": cls, "kernel_trivial": triv}
    cls = is_gi(seq.replaced)
    triv = is_trivial(seq.ses.right)
    return {"exact": exact, "homomorphisms": homs, "replaced_gi": cls, "cokernel_trivial": triv}


def _cofibrant(x: Module) -> tuple[ModuleHom, ModuleHom]:
    """``(mono W -> Q, epi Q -> X)`` with Q Gorenstein projective and W of finite projective dimension."""
    a, p = x.algebra, x.p
    if is_gp(x):
        z = md.zero_module(a)
        return ModuleHom(z, x, la.zeros(x.dim, 0)), x.identity()
    k, inc, cover = md.syzygy(x)
    p0 = cover.projective
    w1_mono, q1_epi = _cofibrant(k)
    emb, _, _ = gp_embed_step(q1_epi.source)
    pprime = emb.target
    # P'' = P' / W1 and the induced embedding K -> P''
    w1_in_p = la.matmul(emb.matrix, w1_mono.matrix, p)
    pdd, pi = md.quotient_module(pprime, la.image_basis(w1_in_p, p))
    section = la.solve(q1_epi.matrix, la.identity(k.dim), p)
    g = la.matmul(pi.matrix, la.matmul(emb.matrix, section, p), p)
    # pushout of P0 <- K -> P'' is the cokernel of (inc, -g)
    s, inj, _ = md.direct_sum([p0, pdd])
    diag = ModuleHom(k, s, la.vstack([inc.matrix, (-g) % p]))
    e, q = md.cokernel(diag)
    epi = ModuleHom(e, x, la.matmul(la.hstack([cover.epi.matrix, la.zeros(x.dim, pdd.dim)]), md.linear_section(q), p))
    mono = ModuleHom(pdd, e, la.matmul(q.matrix, inj[1].matrix, p))
    return mono, epi


def cofibrant_replacement(x: Module) -> ApproxSeq:
    _require_d(x.algebra)
    mono, epi = _cofibrant(x)
    seq = ApproxSeq("cofibrant", SES(mono, epi), epi.source)
    cert = certify(seq)
    if not all(cert.values()):
        raise ConstructionError(f"cofibrant replacement failed its certificate: {cert}")
    return ApproxSeq("cofibrant", seq.ses, seq.replaced, cert)


def fibrant_replacement(x: Module) -> ApproxSeq:
    _require_d(x.algebra)
    mono, epi = _cofibrant(md.dual(x))
    # dualising 0 -> W -> Q -> DX -> 0 gives 0 -> X -> DQ -> DW -> 0
    new_mono = md.dual_hom(epi)
    new_epi = md.dual_hom(mono)
    seq = ApproxSeq("fibrant", SES(new_mono, new_epi), new_mono.target)
    cert = certify(seq)
    if not all(cert.values()):
        raise ConstructionError(f"fibrant replacement failed its certificate: {cert}")
    return ApproxSeq("fibrant", seq.ses, seq.replaced, cert)


# -- weak equivalences, stable Hom, triangles ----------------------------------------


def is_weak_equivalence(f: ModuleHom) -> bool:
    """Factor ``f`` as ``X -> X + P(Y) -> Y`` (mono with projective cokernel, then epi);
    ``f`` is a weak equivalence exactly when the epi has a trivial kernel."""
    _require_d(f.source.algebra)
    cover = md.projective_cover(f.target)
    s, _, _ = md.direct_sum([f.source, cover.projective])
    fp = ModuleHom(s, f.target, la.hstack([f.matrix, cover.epi.matrix], rows=f.target.dim))
    k, _ = md.kernel(fp)
    return is_trivial(k)


@dataclass(frozen=True, eq=False)
class StableHom:
    dim: int
    representatives: tuple[ModuleHom, ...]


def stable_hom(x: Module, y: Module) -> StableHom:
    """Hom modulo maps factoring through a projective (equivalently through ``P(Y) -> Y``)."""
    p = x.p
    hs = md.hom_space(x, y)
    k = hs.shape[0]
    if k == 0:
        return StableHom(0, ())
    cover = md.projective_cover(y)
    hp = md.hom_space(x, cover.projective)
    flat_all = hs.reshape(k, -1).T
    if hp.shape[0]:
        comp = np.einsum("ab,kbc->kac", cover.epi.matrix, hp) % p
        img = la.image_basis(comp.reshape(hp.shape[0], -1).T, p)
    else:
        img = la.zeros(flat_all.shape[0], 0)
    dim = k - img.shape[1]
    reps = []
    span = img
    for h, col in zip(hs, flat_all.T):
        if len(reps) == dim:
            break
        if not la.in_span(span, col.reshape(-1, 1), p):
            reps.append(ModuleHom(x, y, h.copy()))
            span = la.hstack([span, col.reshape(-1, 1)])
    return StableHom(dim, tuple(reps))


def stable_hom_dim(x: Module, y: Module) -> int:
    return stable_hom(x, y).dim


@dataclass(frozen=True, eq=False)
class CofiberTriangle:
    cone: Module
    v: ModuleHom  # h -> cone
    w: ModuleHom  # cone -> suspension of g
    suspension: Module


def cofiber_triangle(f: ModuleHom) -> CofiberTriangle:
    """``g -> h -> Z -> Sigma g`` with ``Z = coker(g -> h + P)`` for the projective approximation ``g -> P``."""
    p = f.p
    g, h = f.source, f.target
    emb, sg, sproj = gp_embed_step(g)
    if not is_gp(h):
        raise ConstructionError("cofiber_triangle needs Gorenstein projective modules")
    s, inj, _ = md.direct_sum([h, emb.target])
    col = ModuleHom(g, s, la.vstack([f.matrix, (-emb.matrix) % p]))
    z, q = md.cokernel(col)
    v = ModuleHom(h, z, la.matmul(q.matrix, inj[0].matrix, p))
    to_sigma = la.hstack([la.zeros(sg.dim, h.dim), sproj.matrix], rows=sg.dim)
    w = ModuleHom(z, sg, la.matmul(to_sigma, md.linear_section(q), p))
    return CofiberTriangle(z, v, w, sg)
