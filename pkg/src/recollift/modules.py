"""Finite-dimensional left modules and their homomorphisms.

A :class:`Module` stores one action matrix per algebra basis element. Kernels,
cokernels, projective covers, duality, restriction, tensor and Hom over a
bimodule, and the translation between sequences ``X_1 -> ... -> X_n`` and
modules over the corresponding triangular algebra are all built from exact
linear algebra over GF(p).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import linalg as la
from .algebra import Algebra, Bimodule, morn_algebra
from .errors import InputError


@dataclass(frozen=True, eq=False)
class Module:
    algebra: Algebra
    action: np.ndarray  # (algebra.dim, dim, dim)
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def p(self) -> int:
        return self.algebra.p

    def act(self, x: np.ndarray) -> np.ndarray:
        return np.einsum("i,ijk->jk", x, self.action) % self.p

    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self) -> str:
        label = f"{self.name}, " if self.name else ""
        return f"Module({label}dim={self.dim} over {self.algebra.name})"

    def check(self) -> "Module":
        a, p, d = self.algebra, self.p, self.dim
        if self.action.shape != (a.dim, d, d):
            raise InputError(f"action shape {self.action.shape} does not fit dim {d} over {a.name}")
        if not np.array_equal(self.act(a.unit), la.identity(d)):
            raise InputError("unit does not act as the identity")
        prod = np.einsum("iab,jbc->ijac", self.action, self.action) % p
        want = np.einsum("ijk,kac->ijac", a.mult, self.action) % p
        if not np.array_equal(prod, want):
            bad = np.argwhere(prod != want)[0]
            raise InputError(f"action is not multiplicative at basis pair {tuple(bad[:2])}")
        return self

    def identity(self) -> "ModuleHom":
        return ModuleHom(self, self, la.identity(self.dim))

    def vertex_dims(self) -> Optional[tuple[int, ...]]:
        if self.algebra.idempotents is None:
            return None
        return tuple(la.rank(self.act(f), self.p) for f in self.algebra.idempotents)

    def with_name(self, name: str) -> "Module":
        return Module(self.algebra, self.action, name)


@dataclass(frozen=True, eq=False)
class ModuleHom:
    source: Module
    target: Module
    matrix: np.ndarray  # target.dim x source.dim

    @property
    def p(self) -> int:
        return self.source.p

    def check(self) -> "ModuleHom":
        if self.source.algebra is not self.target.algebra:
            raise InputError("homomorphism between modules over different algebras")
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise InputError("homomorphism matrix has the wrong shape")
        lhs = np.einsum("ab,ibc->iac", self.matrix, self.source.action) % self.p
        rhs = np.einsum("iab,bc->iac", self.target.action, self.matrix) % self.p
        if not np.array_equal(lhs, rhs):
            raise InputError("matrix does not intertwine the actions")
        return self

    def is_intertwining(self) -> bool:
        try:
            self.check()
        except InputError:
            return False
        return True

    def compose(self, g: "ModuleHom") -> "ModuleHom":
        """``self`` after ``g``."""
        if g.target is not self.source and g.target.dim != self.source.dim:
            raise InputError("maps are not composable")
        return ModuleHom(g.source, self.target, la.matmul(self.matrix, g.matrix, self.p))

    def __add__(self, other: "ModuleHom") -> "ModuleHom":
        return ModuleHom(self.source, self.target, (self.matrix + other.matrix) % self.p)

    def scale(self, c: int) -> "ModuleHom":
        return ModuleHom(self.source, self.target, (self.matrix * c) % self.p)

    def rank(self) -> int:
        return la.rank(self.matrix, self.p)

    def is_mono(self) -> bool:
        return self.rank() == self.source.dim

    def is_epi(self) -> bool:
        return self.rank() == self.target.dim

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.is_mono()

    def is_zero(self) -> bool:
        return not self.matrix.any()


@dataclass(frozen=True, eq=False)
class SES:
    mono: ModuleHom
    epi: ModuleHom

    def is_exact(self) -> bool:
        m, e = self.mono, self.epi
        if m.target.dim != e.source.dim:
            return False
        if not (m.is_mono() and e.is_epi()):
            return False
        if la.matmul(e.matrix, m.matrix, m.p).any():
            return False
        return m.source.dim + e.target.dim == m.target.dim

    @property
    def left(self) -> Module:
        return self.mono.source

    @property
    def middle(self) -> Module:
        return self.mono.target

    @property
    def right(self) -> Module:
        return self.epi.target


def zero_module(a: Algebra) -> Module:
    return Module(a, np.zeros((a.dim, 0, 0), dtype=np.int64), "0")


def regular_module(a: Algebra) -> Module:
    return Module(a, a.left_regular().copy(), "A")


def zero_hom(x: Module, y: Module) -> ModuleHom:
    return ModuleHom(x, y, la.zeros(y.dim, x.dim))


def module_from_generators(a: Algebra, gens: Sequence[np.ndarray], images: Sequence[np.ndarray], name: str = "") -> Module:
    """Module whose action is prescribed on a generating set and extended multiplicatively.

    ``gens`` are coordinate vectors (typically idempotents and arrows);
    ``images`` the corresponding matrices. The action of every basis element
    is recovered by expressing it as a linear combination of words in the
    generators.
    """
    p, n = a.p, a.dim
    if not images:
        raise InputError("no generator matrices supplied")
    d = np.asarray(images[0]).shape[0]
    words: list[tuple[np.ndarray, np.ndarray]] = [(a.unit % p, la.identity(d))]
    words += [(np.asarray(g) % p, np.asarray(m, dtype=np.int64) % p) for g, m in zip(gens, images)]
    span_vecs = [w for w, _ in words]
    span = la.image_basis(la.hstack([v.reshape(-1, 1) for v in span_vecs]), p)
    frontier = list(words)
    while span.shape[1] < n and frontier:
        nxt = []
        for v, mv in frontier:
            for g, mg in words[1:]:
                w = a.mul(g, v)
                if not la.in_span(span, w.reshape(-1, 1), p):
                    mw = la.matmul(mg, mv, p)
                    nxt.append((w, mw))
                    words.append((w, mw))
                    span = la.image_basis(la.hstack([span, w.reshape(-1, 1)]), p)
        frontier = nxt
    if span.shape[1] < n:
        raise InputError("generators do not generate the algebra")
    vecs = la.hstack([w.reshape(-1, 1) for w, _ in words])
    coeff = la.solve(vecs, la.identity(n), p)
    mats = np.stack([m for _, m in words])
    action = np.einsum("wi,wab->iab", coeff, mats) % p
    return Module(a, action, name).check()


# -- Hom spaces ---------------------------------------------------------------


def _vertex_frame(x: Module):
    """Basis adapted to the idempotent decomposition ``X = sum e_v X``.

    Returns ``(B, B_inv, slices)`` or None when the algebra has no complete
    set of orthogonal idempotents.
    """
    if "frame" in x._cache:
        return x._cache["frame"]
    a, p = x.algebra, x.p
    frame = None
    if a.idempotents and x.dim:
        blocks, slices, start = [], [], 0
        for f in a.idempotents:
            b = la.image_basis(x.act(f), p)
            blocks.append(b)
            slices.append(slice(start, start + b.shape[1]))
            start += b.shape[1]
        if start == x.dim:
            basis = la.hstack(blocks)
            inv = la.inverse(basis, p)
            frame = (basis, inv, slices)
    x._cache["frame"] = frame
    return frame


def hom_space(x: Module, y: Module) -> np.ndarray:
    """Basis of ``Hom(X, Y)`` as an array of shape ``(k, dim Y, dim X)``."""
    if x.algebra is not y.algebra:
        raise InputError("hom between modules over different algebras")
    a, p = x.algebra, x.p
    dx, dy = x.dim, y.dim
    if dx == 0 or dy == 0:
        return np.zeros((0, dy, dx), dtype=np.int64)
    fx, fy = _vertex_frame(x), _vertex_frame(y)
    gens = a.generators()
    if fx is not None and fy is not None:
        bx, bx_inv, sx = fx
        by, by_inv, sy = fy
        pairs_i, pairs_j = [], []
        for vx, vy in zip(sx, sy):
            ii, jj = np.meshgrid(np.arange(vy.start, vy.stop), np.arange(vx.start, vx.stop), indexing="ij")
            pairs_i.append(ii.ravel())
            pairs_j.append(jj.ravel())
        pi = np.concatenate(pairs_i)
        pj = np.concatenate(pairs_j)
        gens = gens[len(a.idempotents) :]
        acts_x = [la.matmul(bx_inv, la.matmul(x.act(g), bx, p), p) for g in gens]
        acts_y = [la.matmul(by_inv, la.matmul(y.act(g), by, p), p) for g in gens]
    else:
        pi, pj = (idx.ravel() for idx in np.meshgrid(np.arange(dy), np.arange(dx), indexing="ij"))
        bx = bx_inv = by = by_inv = None
        acts_x = [x.act(g) for g in gens]
        acts_y = [y.act(g) for g in gens]
    npairs = len(pi)
    if npairs == 0:
        return np.zeros((0, dy, dx), dtype=np.int64)
    rows = []
    k = np.arange(npairs)
    for ax, ay in zip(acts_x, acts_y):
        # column for unknown E_ij is  A_Y E_ij - E_ij A_X
        t = np.zeros((npairs, dy, dx), dtype=np.int64)
        t[k, :, pj] += ay[:, pi].T
        t[k, pi, :] -= ax[pj, :]
        flat = t.reshape(npairs, dy * dx).T % p
        flat = flat[flat.any(axis=1)]
        if flat.size:
            rows.append(flat)
    if rows:
        ker = la.kernel_basis(la.vstack(rows), p)
    else:
        ker = la.identity(npairs)
    out = np.zeros((ker.shape[1], dy, dx), dtype=np.int64)
    for c in range(ker.shape[1]):
        out[c, pi, pj] = ker[:, c]
    if bx is not None:
        out = np.einsum("ab,kbc,cd->kad", by, out, bx_inv) % p
    return out


def hom_basis(x: Module, y: Module) -> list[ModuleHom]:
    return [ModuleHom(x, y, m) for m in hom_space(x, y)]


def hom_dim(x: Module, y: Module) -> int:
    return hom_space(x, y).shape[0]


# -- kernels, cokernels, sums ----------------------------------------------------


def _sub_action(x: Module, basis: np.ndarray) -> np.ndarray:
    p = x.p
    if basis.shape[1] == 0:
        return np.zeros((x.algebra.dim, 0, 0), dtype=np.int64)
    coords = la.left_inverse(basis, p)
    return np.einsum("ab,ibc,cd->iad", coords, x.action, basis) % p


def submodule(x: Module, basis: np.ndarray, name: str = "") -> tuple[Module, ModuleHom]:
    """Submodule with the given basis columns (assumed invariant) and its inclusion."""
    sub = Module(x.algebra, _sub_action(x, basis), name)
    return sub, ModuleHom(sub, x, basis.copy())


def generated_submodule(x: Module, vectors: np.ndarray) -> np.ndarray:
    """Basis columns of the submodule generated by the columns of ``vectors``."""
    p = x.p
    if vectors.shape[1] == 0:
        return la.zeros(x.dim, 0)
    cols = [la.matmul(x.action[i], vectors, p) for i in range(x.algebra.dim)]
    return la.image_basis(la.hstack(cols, rows=x.dim), p)


def kernel(f: ModuleHom) -> tuple[Module, ModuleHom]:
    basis = la.kernel_basis(f.matrix, f.p)
    return submodule(f.source, basis, "ker")


def image(f: ModuleHom) -> tuple[Module, ModuleHom]:
    basis = la.image_basis(f.matrix, f.p)
    return submodule(f.target, basis, "im")


def quotient_module(y: Module, sub_basis: np.ndarray, name: str = "") -> tuple[Module, ModuleHom]:
    """``Y / U`` for an invariant subspace ``U`` (columns) and the projection."""
    p = y.p
    proj, free = la.complement_coordinates(sub_basis, p)
    action = np.einsum("ab,ibc->iac", proj, y.action[:, :, free]) % p if free else np.zeros(
        (y.algebra.dim, 0, 0), dtype=np.int64
    )
    q = Module(y.algebra, action, name)
    return q, ModuleHom(y, q, proj)


def linear_section(epi: ModuleHom) -> np.ndarray:
    """A linear (not module) right inverse of a surjective map."""
    s = la.solve(epi.matrix, la.identity(epi.target.dim), epi.p)
    if s is None:
        raise InputError("map is not surjective")
    return s


def cokernel(f: ModuleHom) -> tuple[Module, ModuleHom]:
    return quotient_module(f.target, la.image_basis(f.matrix, f.p), "coker")


def direct_sum(mods: Sequence[Module]) -> tuple[Module, list[ModuleHom], list[ModuleHom]]:
    """Direct sum with its injections and projections."""
    if not mods:
        raise InputError("direct sum of an empty list needs an algebra; use zero_module")
    a = mods[0].algebra
    for m in mods:
        if m.algebra is not a:
            raise InputError("direct sum of modules over different algebras")
    total = sum(m.dim for m in mods)
    action = np.zeros((a.dim, total, total), dtype=np.int64)
    offs = np.cumsum([0] + [m.dim for m in mods])
    for m, o in zip(mods, offs):
        action[:, o : o + m.dim, o : o + m.dim] = m.action
    s = Module(a, action, "+".join(m.name or "?" for m in mods) if len(mods) > 1 else mods[0].name)
    inj, proj = [], []
    for m, o in zip(mods, offs):
        e = la.zeros(total, m.dim)
        e[o : o + m.dim] = la.identity(m.dim)
        inj.append(ModuleHom(m, s, e))
        proj.append(ModuleHom(s, m, np.ascontiguousarray(e.T)))
    return s, inj, proj


def direct_sum_module(mods: Sequence[Module]) -> Module:
    return direct_sum(mods)[0]


def hom_sum(maps: Sequence[ModuleHom], source: Module, target: Module) -> ModuleHom:
    """Block map between direct sums; ``maps`` laid out as a block diagonal."""
    return ModuleHom(source, target, la.block_diag([m.matrix for m in maps]))


def column_map(maps: Sequence[ModuleHom], target: Module) -> ModuleHom:
    """``(f_1, ..., f_k): X -> Y_1 + ... + Y_k`` into a direct sum target."""
    return ModuleHom(maps[0].source, target, la.vstack([m.matrix for m in maps], cols=maps[0].source.dim))


def row_map(maps: Sequence[ModuleHom], source: Module) -> ModuleHom:
    """``[f_1 ... f_k]: X_1 + ... + X_k -> Y`` out of a direct sum source."""
    return ModuleHom(source, maps[0].target, la.hstack([m.matrix for m in maps], rows=maps[0].target.dim))


# -- radical, top, projectives ------------------------------------------------


def radical_of(x: Module) -> np.ndarray:
    """Basis columns of ``rad(A) X``."""
    a, p = x.algebra, x.p
    a.require_basic()
    if x.dim == 0 or a.radical.shape[1] == 0:
        return la.zeros(x.dim, 0)
    cols = [x.act(a.radical[:, j]) for j in range(a.radical.shape[1])]
    return la.image_basis(la.hstack(cols), p)


def top(x: Module) -> tuple[int, ...]:
    """Multiplicity of each simple module in ``X / rad X``, indexed like the idempotents."""
    a, p = x.algebra, x.p
    rad = radical_of(x)
    proj, _ = la.complement_coordinates(rad, p)
    return tuple(la.rank(la.matmul(proj, x.act(f), p), p) for f in a.idempotents)


def indecomposable_projectives(a: Algebra) -> list[Module]:
    """``A e_v`` for each primitive idempotent, each with basis in reduced column echelon form."""
    if "proj" not in a._cache:
        a.require_basic()
        out = []
        for f, lab in zip(a.idempotents, a.idempotent_labels):
            basis = la.image_basis(a.right_mult(f), a.p)
            m = Module(a, _sub_action(regular_module(a), basis), f"P({lab})")
            m._cache["embedding"] = basis
            m._cache["generator"] = la.left_inverse(basis, a.p) @ f % a.p
            out.append(m)
        a._cache["proj"] = out
    return a._cache["proj"]


def simple_modules(a: Algebra) -> list[Module]:
    if "simple" not in a._cache:
        out = []
        for lab, pv in zip(a.idempotent_labels, indecomposable_projectives(a)):
            s, _ = quotient_module(pv, radical_of(pv), f"S({lab})")
            out.append(s)
        a._cache["simple"] = out
    return a._cache["simple"]


def indecomposable_injectives(a: Algebra) -> list[Module]:
    if "inj" not in a._cache:
        op = a.opposite()
        out = []
        for lab, pv in zip(a.idempotent_labels, indecomposable_projectives(op)):
            out.append(dual(pv).with_name(f"I({lab})"))
        a._cache["inj"] = out
    return a._cache["inj"]


@dataclass(frozen=True, eq=False)
class ProjectiveCover:
    projective: Module
    epi: ModuleHom
    generators: tuple[tuple[int, np.ndarray], ...]  # (vertex, element of e_v X)


def _map_from_projective(pv: Module, x: Module, elem: np.ndarray) -> np.ndarray:
    """Matrix of ``A e_v -> X``, ``lambda e_v -> lambda * elem``."""
    basis = pv._cache["embedding"]
    return np.einsum("ij,iab,b->aj", basis, x.action, elem) % x.p


def projective_cover(x: Module) -> ProjectiveCover:
    if "cover" in x._cache:
        return x._cache["cover"]
    a, p = x.algebra, x.p
    rad = radical_of(x)
    proj, _ = la.complement_coordinates(rad, p)
    projs = indecomposable_projectives(a)
    gens: list[tuple[int, np.ndarray]] = []
    for v, f in enumerate(a.idempotents):
        ef = x.act(f)
        # pivot columns of the projected e_v-part pick independent top elements
        _, piv = la.rref(la.matmul(proj, ef, p), p)
        for c in piv:
            gens.append((v, ef[:, c].copy()))
    if gens:
        pmod, _, _ = direct_sum([projs[v] for v, _ in gens])
        mat = la.hstack([_map_from_projective(projs[v], x, g) for v, g in gens], rows=x.dim)
    else:
        pmod, mat = zero_module(a), la.zeros(x.dim, 0)
    cover = ProjectiveCover(pmod, ModuleHom(pmod, x, mat), tuple(gens))
    x._cache["cover"] = cover
    return cover


def is_projective(x: Module) -> bool:
    return projective_cover(x).projective.dim == x.dim


def syzygy(x: Module) -> tuple[Module, ModuleHom, ProjectiveCover]:
    """``Omega X`` with its inclusion into the projective cover."""
    cover = projective_cover(x)
    k, inc = kernel(cover.epi)
    return k, inc, cover


# -- duality ------------------------------------------------------------------


def dual(x: Module) -> Module:
    """``Hom_k(X, k)`` as a module over the opposite algebra."""
    if "dual" not in x._cache:
        d = Module(x.algebra.opposite(), np.ascontiguousarray(np.transpose(x.action, (0, 2, 1))), f"D({x.name})")
        d._cache["dual"] = x
        x._cache["dual"] = d
    return x._cache["dual"]


def dual_hom(f: ModuleHom) -> ModuleHom:
    return ModuleHom(dual(f.target), dual(f.source), np.ascontiguousarray(f.matrix.T))


def injective_envelope(x: Module) -> tuple[Module, ModuleHom]:
    cover = projective_cover(dual(x))
    mono = dual_hom(cover.epi)
    return mono.target, mono


def is_injective(x: Module) -> bool:
    return is_projective(dual(x))


# -- change of rings ------------------------------------------------------------


def restrict(y: Module, source: Algebra, phi: np.ndarray, check: bool = True) -> Module:
    """Restriction of ``Y`` along an algebra map ``phi: source -> Y.algebra``."""
    if check and not source.is_algebra_map(y.algebra, phi):
        raise InputError("restrict: map is not a unital algebra homomorphism")
    action = np.einsum("ki,kab->iab", phi, y.action) % y.p
    return Module(source, action, y.name)


def restrict_hom(f: ModuleHom, source_mod: Module, target_mod: Module) -> ModuleHom:
    return ModuleHom(source_mod, target_mod, f.matrix.copy())


@dataclass(frozen=True, eq=False)
class TensorData:
    """``M (x)_B Y`` together with the projection from ``M (x)_k Y`` (index ``m * dim Y + y``)."""

    module: Module
    proj: np.ndarray
    lift: np.ndarray  # representatives: columns of M (x)_k Y


def tensor_over(m: Bimodule, y: Module) -> TensorData:
    if m.right_algebra is not y.algebra:
        raise InputError("tensor_over: bimodule right algebra differs from the module's algebra")
    a, b, p = m.left_algebra, m.right_algebra, y.p
    dm, dy = m.dim, y.dim
    n = dm * dy
    eye_m, eye_y = la.identity(dm), la.identity(dy)
    rels = [
        (la.kron(m.act_right(g), eye_y, p) - la.kron(eye_m, y.act(g), p)) % p for g in b.generators()
    ]
    span = la.image_basis(la.hstack(rels, rows=n), p) if n else la.zeros(0, 0)
    proj, free = la.complement_coordinates(span, p)
    lift = la.identity(n)[:, free] if n else la.zeros(0, 0)
    if free:
        action = np.stack([proj @ la.kron(m.left[i], eye_y, p)[:, free] % p for i in range(a.dim)])
    else:
        action = np.zeros((a.dim, 0, 0), dtype=np.int64)
    return TensorData(Module(a, action, f"M(x){y.name}"), proj, lift)


def tensor_over_hom(m: Bimodule, f: ModuleHom, src: TensorData, tgt: TensorData) -> ModuleHom:
    p = f.p
    mat = tgt.proj @ (la.kron(la.identity(m.dim), f.matrix, p) @ src.lift % p) % p
    return ModuleHom(src.module, tgt.module, mat)


@dataclass(frozen=True, eq=False)
class HomData:
    """``Hom_B(M, Y)`` as a module over the right algebra of ``M``; ``basis[k]`` is a ``dim Y x dim M`` matrix."""

    module: Module
    basis: np.ndarray
    coords: np.ndarray  # left inverse of the flattened basis


def hom_over(m: Bimodule, y: Module) -> HomData:
    """``Hom_B(M, Y)`` for a ``(B, A)``-bimodule ``M``; ``A`` acts by ``(a F)(m) = F(m a)``."""
    if m.left_algebra is not y.algebra:
        raise InputError("hom_over: bimodule left algebra differs from the module's algebra")
    b, a, p = m.left_algebra, m.right_algebra, y.p
    mm = Module(b, m.left)
    basis = hom_space(mm, y)
    k = basis.shape[0]
    flat = basis.reshape(k, -1).T if k else la.zeros(y.dim * m.dim, 0)
    coords = la.left_inverse(flat, p)
    if k:
        action = np.stack(
            [coords @ (np.einsum("kab,bc->kac", basis, m.right[i]) % p).reshape(k, -1).T % p for i in range(a.dim)]
        )
    else:
        action = np.zeros((a.dim, 0, 0), dtype=np.int64)
    return HomData(Module(a, action, f"Hom(M,{y.name})"), basis, coords)


def hom_over_hom(f: ModuleHom, src: HomData, tgt: HomData) -> ModuleHom:
    p = f.p
    k = src.basis.shape[0]
    if k == 0 or tgt.basis.shape[0] == 0:
        return ModuleHom(src.module, tgt.module, la.zeros(tgt.module.dim, k))
    images = np.einsum("ab,kbc->kac", f.matrix, src.basis) % p
    return ModuleHom(src.module, tgt.module, tgt.coords @ images.reshape(k, -1).T % p)


def bimodule_as_left(m: Bimodule) -> Module:
    return Module(m.left_algebra, m.left)


# -- isomorphism -------------------------------------------------------------------

EXHAUSTIVE_LIMIT = 4096


def find_isomorphism(x: Module, y: Module, tries: int = 64, seed: int = 0) -> Optional[ModuleHom]:
    """An isomorphism ``X -> Y`` or None.

    Random combinations of a Hom basis are tried first; when the Hom space is
    small enough (at most ``EXHAUSTIVE_LIMIT`` elements) it is searched
    completely, so None is then a proof of non-isomorphism.
    """
    if x.algebra is not y.algebra or x.dim != y.dim:
        return None
    if x.dim == 0:
        return ModuleHom(x, y, la.zeros(0, 0))
    vx, vy = x.vertex_dims(), y.vertex_dims()
    if vx is not None and vx != vy:
        return None
    hs = hom_space(x, y)
    k, p = hs.shape[0], x.p
    if k == 0:
        return None
    for h in hs:
        if la.rank(h, p) == x.dim:
            return ModuleHom(x, y, h)
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        c = rng.integers(0, p, size=k)
        h = np.einsum("k,kab->ab", c, hs) % p
        if la.rank(h, p) == x.dim:
            return ModuleHom(x, y, h)
    if p**k <= EXHAUSTIVE_LIMIT:
        for c in itertools.product(range(p), repeat=k):
            h = np.einsum("k,kab->ab", np.array(c), hs) % p
            if la.rank(h, p) == x.dim:
                return ModuleHom(x, y, h)
    return None


def is_isomorphic(x: Module, y: Module) -> bool:
    return find_isomorphism(x, y) is not None


# -- sequences X_1 -> ... -> X_n ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MorSeq:
    components: tuple[Module, ...]
    maps: tuple[ModuleHom, ...]  # maps[i]: components[i] -> components[i + 1]

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def base(self) -> Algebra:
        return self.components[0].algebra

    @property
    def dim(self) -> int:
        return sum(c.dim for c in self.components)

    def check(self) -> "MorSeq":
        if len(self.maps) != self.n - 1:
            raise InputError("sequence needs n - 1 maps")
        for i, f in enumerate(self.maps):
            if f.source.dim != self.components[i].dim or f.target.dim != self.components[i + 1].dim:
                raise InputError(f"map {i + 1} is not composable with the components")
            ModuleHom(self.components[i], self.components[i + 1], f.matrix).check()
        return self


def _an_endpoints(t: Algebra) -> list[tuple[int, int]]:
    """For each basis element ``a (x) w`` of ``t``: (source vertex, target vertex) of the path ``w``."""
    md = t.morn
    if "an_ends" not in t._cache:
        p = t.p
        ends = []
        for i in range(t.dim):
            v = t.basis_vector(i)
            found = None
            for s, es in enumerate(md.vertex):
                for r, er in enumerate(md.vertex):
                    if np.array_equal(t.mul(t.mul(er, v), es), v):
                        found = (s, r)
            if found is None:
                raise InputError("basis element is not homogeneous with respect to the vertices")
            ends.append(found)
        t._cache["an_ends"] = ends
    return t._cache["an_ends"]


def morn_for(base: Algebra, n: int) -> Algebra:
    key = ("morn", n)
    if key not in base._cache:
        base._cache[key] = morn_algebra(base, n)
    return base._cache[key]


def morseq_to_module(s: MorSeq, t: Optional[Algebra] = None) -> Module:
    """Module over ``base (x) k A_n`` whose vertex-``i`` part is ``X_i``."""
    base, n, p = s.base, s.n, s.base.p
    if n == 1:
        return s.components[0]
    t = t if t is not None else morn_for(base, n)
    if t.morn is None or t.morn.n != n or t.morn.base is not base:
        raise InputError("sequence length or base algebra does not match the triangular algebra")
    offs = np.cumsum([0] + [c.dim for c in s.components])
    total = int(offs[-1])
    nb = base.dim
    n_an = t.dim // nb if nb else 0
    ends = _an_endpoints(t)
    action = np.zeros((t.dim, total, total), dtype=np.int64)
    for idx in range(t.dim):
        j = idx // n_an
        src, tgt = ends[idx]
        comp = la.identity(s.components[src].dim)
        for k in range(src, tgt):
            comp = la.matmul(s.maps[k].matrix, comp, p)
        block = la.matmul(s.components[tgt].action[j], comp, p)
        action[idx, offs[tgt] : offs[tgt + 1], offs[src] : offs[src + 1]] = block
    return Module(t, action, "seq")


@dataclass(frozen=True, eq=False)
class SeqFrame:
    """Vertex decomposition of a module over a sequence algebra."""

    seq: MorSeq
    bases: tuple[np.ndarray, ...]  # columns of X_i inside X
    coords: tuple[np.ndarray, ...]  # projections onto the components, in their bases


def seq_frame(x: Module) -> SeqFrame:
    if "seqframe" in x._cache:
        return x._cache["seqframe"]
    t, p = x.algebra, x.p
    md = t.morn
    if md is None:
        raise InputError("module is not over a sequence algebra")
    bases = [la.image_basis(x.act(e), p) for e in md.vertex]
    # coordinates of the e_i-component, zero on the other components
    coords = [la.matmul(la.left_inverse(b, p), x.act(e), p) for b, e in zip(bases, md.vertex)]
    comps = []
    for i, (b, c) in enumerate(zip(bases, coords)):
        base_action = np.einsum("ki,kab->iab", md.embed[i], x.action) % p
        act = np.einsum("ab,kbc,cd->kad", c, base_action, b) % p
        comps.append(Module(md.base, act, f"X{i + 1}"))
    maps = []
    for i, arr in enumerate(md.arrow):
        mat = la.matmul(coords[i + 1], la.matmul(x.act(arr), bases[i], p), p)
        maps.append(ModuleHom(comps[i], comps[i + 1], mat))
    frame = SeqFrame(MorSeq(tuple(comps), tuple(maps)), tuple(bases), tuple(coords))
    x._cache["seqframe"] = frame
    return frame


def module_to_morseq(x: Module) -> MorSeq:
    return seq_frame(x).seq


def hom_from_components(x: Module, y: Module, comps: Sequence[np.ndarray]) -> ModuleHom:
    """Module map ``X -> Y`` over a sequence algebra from its vertex components."""
    fx, fy = seq_frame(x), seq_frame(y)
    mat = la.zeros(y.dim, x.dim)
    for g, bx, cy in zip(comps, fx.coords, fy.bases):
        mat = (mat + la.matmul(cy, la.matmul(g, bx, x.p), x.p)) % x.p
    return ModuleHom(x, y, mat)


def hom_components(f: ModuleHom) -> list[np.ndarray]:
    fx, fy = seq_frame(f.source), seq_frame(f.target)
    return [la.matmul(c, la.matmul(f.matrix, b, f.p), f.p) for b, c in zip(fx.bases, fy.coords)]


def morseq_hom_to_module_hom(fs: Sequence[ModuleHom], src: Module, tgt: Module) -> ModuleHom:
    return ModuleHom(src, tgt, la.block_diag([f.matrix for f in fs]))


# -- sampling --------------------------------------------------------------------------


def random_module(a: Algebra, rng: np.random.Generator, max_dim: int = 6, name: str = "") -> Module:
    """A random nonzero quotient of a sum of one or two indecomposable projectives with ``dim <= max_dim``."""
    p = a.p
    projs = indecomposable_projectives(a)
    for _ in range(100):
        k = int(rng.integers(1, 3))
        picks = [projs[int(rng.integers(0, len(projs)))] for _ in range(k)]
        pm = direct_sum_module(picks)
        sub = la.zeros(pm.dim, 0)
        while pm.dim - sub.shape[1] > max_dim or (sub.shape[1] == 0 and rng.random() < 0.5):
            v = rng.integers(0, p, size=(pm.dim, 1))
            sub = generated_submodule(pm, la.hstack([sub, v]))
        if sub.shape[1] == pm.dim:
            continue
        q, _ = quotient_module(pm, sub, name)
        return q
    raise RuntimeError("could not sample a nonzero module")
