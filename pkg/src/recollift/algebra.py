"""Finite-dimensional algebras over GF(p) given by structure constants.

An :class:`Algebra` stores a basis ``b_0, ..., b_{n-1}`` and the tensor
``mult[i, j, k]`` with ``b_i b_j = sum_k mult[i, j, k] b_k``. Elements are
coordinate vectors. Quiver presentations, opposite algebras, corner algebras,
quotients by idempotent ideals, triangular matrix algebras and tensor products
with ``k A_n`` are all produced here.

Path convention: ``p*q`` means "first q, then p". A left module over a path
algebra is then a representation in which an arrow ``a: u -> v`` acts as a map
``V_u -> V_v``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import linalg as la
from .errors import InputError, NotFiniteDimensional, UnsupportedAlgebra

DEFAULT_DEGREE_BOUND = 64


@dataclass(frozen=True, eq=False)
class MornData:
    """How an algebra ``base (x) k A_n`` realises sequences ``X_1 -> ... -> X_n``."""

    base: "Algebra"
    n: int
    vertex: tuple[np.ndarray, ...]  # coordinates of 1 (x) e_i
    arrow: tuple[np.ndarray, ...]  # coordinates of 1 (x) a_i, a_i: i -> i+1
    embed: tuple[np.ndarray, ...]  # (dim, dim base) matrices a -> a (x) e_i


@dataclass(frozen=True, eq=False)
class TriangularData:
    """Block layout of a triangular matrix algebra ``(A M; 0 B)``."""

    a: "Algebra"
    b: "Algebra"
    bimodule: "Bimodule"
    one_a: np.ndarray
    one_b: np.ndarray


@dataclass(frozen=True, eq=False)
class Algebra:
    p: int
    mult: np.ndarray
    unit: np.ndarray
    labels: tuple[str, ...]
    idempotents: Optional[tuple[np.ndarray, ...]] = None
    idempotent_labels: Optional[tuple[str, ...]] = None
    radical: Optional[np.ndarray] = None  # columns spanning rad
    name: str = "algebra"
    quiver: Optional["QuiverPresentation"] = None
    morn: Optional[MornData] = None
    triangular: Optional[TriangularData] = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # -- basic accessors -------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def element(self, label: str) -> np.ndarray:
        if label in self.labels:
            return self.basis_vector(self.labels.index(label))
        if self.idempotent_labels and label in self.idempotent_labels:
            return self.idempotents[self.idempotent_labels.index(label)].copy()
        raise InputError(f"{self.name}: no basis element or idempotent named {label!r}")

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.mult) % self.p

    def left_mult(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``y -> x y``."""
        return np.einsum("i,ijk->kj", x, self.mult) % self.p

    def right_mult(self, y: np.ndarray) -> np.ndarray:
        """Matrix of ``x -> x y``."""
        return np.einsum("j,ijk->ki", y, self.mult) % self.p

    def left_regular(self) -> np.ndarray:
        """Stack of ``left_mult(b_i)``, shape ``(n, n, n)``."""
        if "lreg" not in self._cache:
            self._cache["lreg"] = np.ascontiguousarray(np.transpose(self.mult, (0, 2, 1)))
        return self._cache["lreg"]

    def right_regular(self) -> np.ndarray:
        """Stack of ``right_mult(b_j)``, shape ``(n, n, n)``."""
        if "rreg" not in self._cache:
            self._cache["rreg"] = np.ascontiguousarray(np.transpose(self.mult, (1, 2, 0)))
        return self._cache["rreg"]

    @property
    def has_idempotent_data(self) -> bool:
        return self.idempotents is not None and self.radical is not None

    @property
    def is_split_basic(self) -> bool:
        """Whether ``A/rad`` is a product of copies of the field, one per listed idempotent."""
        if "basic" not in self._cache:
            ok = False
            if self.has_idempotent_data:
                span = la.hstack([self.radical] + [f.reshape(-1, 1) for f in self.idempotents], rows=self.dim)
                ok = self.dim - self.radical.shape[1] == len(self.idempotents) and la.rank(span, self.p) == self.dim
            self._cache["basic"] = ok
        return self._cache["basic"]

    def require_basic(self) -> None:
        if not self.is_split_basic:
            raise UnsupportedAlgebra(
                f"{self.name}: needs primitive idempotents and a radical with A/rad split semisimple basic"
            )

    def __repr__(self) -> str:
        return f"Algebra({self.name!r}, dim={self.dim}, p={self.p})"

    # -- validation ------------------------------------------------------

    def check(self) -> "Algebra":
        """Verify associativity, unit laws and the idempotent/radical data; return self."""
        n, p = self.dim, self.p
        if not la.is_prime(p):
            raise InputError(f"characteristic {p} is not prime")
        if self.mult.shape != (n, n, n) or self.unit.shape != (n,):
            raise InputError("structure constant shape does not match the basis")
        m = self.mult
        lhs = np.einsum("ijm,mkl->ijkl", m, m) % p
        rhs = np.einsum("jkm,iml->ijkl", m, m) % p
        if not np.array_equal(lhs, rhs):
            bad = np.argwhere(lhs != rhs)[0]
            raise InputError(f"{self.name}: multiplication is not associative at basis triple {tuple(bad[:3])}")
        eye = la.identity(n)
        if not (np.array_equal(self.left_mult(self.unit), eye) and np.array_equal(self.right_mult(self.unit), eye)):
            raise InputError(f"{self.name}: unit laws fail")
        if self.idempotents is not None:
            total = np.zeros(n, dtype=np.int64)
            for a, f in enumerate(self.idempotents):
                for b, g in enumerate(self.idempotents):
                    want = f if a == b else np.zeros(n, dtype=np.int64)
                    if not np.array_equal(self.mul(f, g), want % p):
                        raise InputError(f"{self.name}: idempotents {a},{b} are not orthogonal idempotents")
                total = (total + f) % p
            if n and not np.array_equal(total, self.unit % p):
                raise InputError(f"{self.name}: idempotents do not sum to the unit")
        if self.radical is not None:
            self._check_radical()
        return self

    def _check_radical(self) -> None:
        p, rad = self.p, self.radical
        if rad.shape[1] == 0:
            return
        for i in range(self.dim):
            for mat in (self.left_regular()[i], self.right_regular()[i]):
                if not la.in_span(rad, la.matmul(mat, rad, p), p):
                    raise InputError(f"{self.name}: radical is not a two-sided ideal")
        power = rad
        for _ in range(self.dim + 1):
            if power.shape[1] == 0:
                return
            prods = [la.matmul(self.left_mult(rad[:, j]), power, p) for j in range(rad.shape[1])]
            power = la.image_basis(la.hstack(prods), p)
        raise InputError(f"{self.name}: radical is not nilpotent")

    # -- derived structure -----------------------------------------------

    def generators(self) -> list[np.ndarray]:
        """A small generating set: the idempotents, then basis vectors outside the generated subalgebra."""
        if "gens" in self._cache:
            return self._cache["gens"]
        p, n = self.p, self.dim
        gens: list[np.ndarray] = []
        if self.idempotents is not None:
            gens = [f.copy() for f in self.idempotents]
        elif n:
            gens = [self.unit.copy()]
        span = self._generated(gens)
        for i in range(n):
            if span.shape[1] == n:
                break
            v = self.basis_vector(i)
            if not la.in_span(span, v.reshape(-1, 1), p):
                gens.append(v)
                span = self._generated(gens)
        self._cache["gens"] = gens
        return gens

    def _generated(self, gens: list[np.ndarray]) -> np.ndarray:
        p, n = self.p, self.dim
        cols = [self.unit.reshape(-1, 1)] + [g.reshape(-1, 1) for g in gens]
        span = la.image_basis(la.hstack(cols, rows=n), p)
        while True:
            more = [span] + [la.matmul(self.right_mult(g), span, p) for g in gens]
            new = la.image_basis(la.hstack(more), p)
            if new.shape[1] == span.shape[1]:
                return span
            span = new

    def opposite(self) -> "Algebra":
        if "op" not in self._cache:
            op = Algebra(
                p=self.p,
                mult=np.ascontiguousarray(np.transpose(self.mult, (1, 0, 2))),
                unit=self.unit.copy(),
                labels=self.labels,
                idempotents=self.idempotents,
                idempotent_labels=self.idempotent_labels,
                radical=self.radical,
                name=self.name[:-3] if self.name.endswith("^op") else self.name + "^op",
            )
            op._cache["op"] = self
            self._cache["op"] = op
        return self._cache["op"]

    def is_algebra_map(self, target: "Algebra", phi: np.ndarray) -> bool:
        """Whether ``phi`` (``target.dim x self.dim``) is a unital multiplicative linear map."""
        p = self.p
        if phi.shape != (target.dim, self.dim):
            return False
        if not np.array_equal(phi @ self.unit % p, target.unit % p):
            return False
        lhs = np.einsum("ijk,lk->ijl", self.mult, phi) % p
        rhs = np.einsum("ai,bj,abl->ijl", phi, phi, target.mult) % p
        return bool(np.array_equal(lhs, rhs))


def zero_algebra(p: int) -> Algebra:
    z = np.zeros((0, 0, 0), dtype=np.int64)
    return Algebra(p, z, np.zeros(0, dtype=np.int64), (), (), (), la.zeros(0, 0), name="0")


def field_algebra(p: int) -> Algebra:
    one = np.ones((1, 1, 1), dtype=np.int64)
    u = np.ones(1, dtype=np.int64)
    return Algebra(p, one, u, ("1",), (u.copy(),), ("1",), la.zeros(1, 0), name=f"GF({p})").check()


def from_structure_constants(
    p: int,
    mult,
    unit,
    labels: Optional[Sequence[str]] = None,
    idempotents: Optional[Sequence] = None,
    idempotent_labels: Optional[Sequence[str]] = None,
    radical: Optional[Sequence] = None,
    name: str = "algebra",
) -> Algebra:
    """Build and validate an algebra from raw tables; ``radical`` is a list of coordinate vectors."""
    if not la.is_prime(p):
        raise InputError(f"characteristic {p} is not prime")
    mult = np.asarray(mult, dtype=np.int64) % p
    n = mult.shape[0] if mult.ndim == 3 else 0
    unit = np.asarray(unit, dtype=np.int64).reshape(n) % p
    labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(n))
    idem = None if idempotents is None else tuple(np.asarray(f, dtype=np.int64).reshape(n) % p for f in idempotents)
    ilab = None
    if idem is not None:
        ilab = tuple(idempotent_labels) if idempotent_labels is not None else tuple(f"f{i}" for i in range(len(idem)))
    rad = None
    if radical is not None:
        vecs = [np.asarray(v, dtype=np.int64).reshape(-1, 1) for v in radical]
        rad = la.image_basis(la.hstack(vecs, rows=n), p)
    return Algebra(p, mult, unit, labels, idem, ilab, rad, name=name).check()


# -- quiver presentations --------------------------------------------------

Path = tuple  # (source vertex index, target vertex index, arrow indices in application order)


@dataclass(frozen=True)
class QuiverPresentation:
    """Quiver with relations; each relation is a tuple of ``(coeff, written path)`` terms.

    A written path is a tuple of arrow labels read left to right in function
    order, so ``("b", "a")`` is the path ``b*a``: first ``a``, then ``b``.
    """

    p: int
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]  # (label, source, target)
    relations: tuple[tuple[tuple[int, tuple[str, ...]], ...], ...] = ()

    def arrow_index(self, label: str) -> int:
        for i, (lab, _, _) in enumerate(self.arrows):
            if lab == label:
                return i
        raise InputError(f"unknown arrow {label!r}")


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*([A-Za-z_][\w]*(?:\s*\*\s*[A-Za-z_][\w]*)*)\s*")


def parse_relation(text: str) -> tuple[tuple[int, tuple[str, ...]], ...]:
    """Parse ``"b*a - 2 d*c"`` into coefficient/path terms."""
    pos, terms = 0, []
    text = text.strip()
    if not text:
        raise InputError("empty relation")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise InputError(f"cannot parse relation {text!r} at column {pos}")
        sign, coeff, path = m.groups()
        if sign is None and terms:
            raise InputError(f"missing operator in relation {text!r} at column {pos}")
        c = int(coeff) if coeff else 1
        if sign == "-":
            c = -c
        terms.append((c, tuple(s.strip() for s in path.split("*"))))
        pos = m.end()
    return tuple(terms)


def quiver(
    p: int,
    vertices: Sequence[str],
    arrows: Sequence[tuple[str, str, str]],
    relations: Sequence = (),
) -> QuiverPresentation:
    """Convenience constructor; relations may be strings like ``"x*x"`` or parsed term tuples."""
    rels = tuple(parse_relation(r) if isinstance(r, str) else tuple(r) for r in relations)
    return QuiverPresentation(p, tuple(str(v) for v in vertices), tuple(tuple(a) for a in arrows), rels)


def _relation_paths(q: QuiverPresentation) -> list[list[tuple[int, Path]]]:
    vindex = {v: i for i, v in enumerate(q.vertices)}
    if len(vindex) != len(q.vertices):
        raise InputError("duplicate vertex labels")
    for lab, s, t in q.arrows:
        if s not in vindex or t not in vindex:
            raise InputError(f"arrow {lab!r} has an unknown endpoint")
    out = []
    for rel in q.relations:
        terms: list[tuple[int, Path]] = []
        ends = set()
        for coeff, written in rel:
            idx = [q.arrow_index(lab) for lab in written]
            app = tuple(reversed(idx))
            for a, b in zip(app, app[1:]):
                if q.arrows[a][2] != q.arrows[b][1]:
                    raise InputError(f"path {'*'.join(written)} is not composable")
            if len(app) < 2:
                raise InputError(f"relation term {'*'.join(written)} has length < 2")
            src, tgt = vindex[q.arrows[app[0]][1]], vindex[q.arrows[app[-1]][2]]
            ends.add((src, tgt))
            terms.append((coeff % q.p, (src, tgt, app)))
        if len(ends) > 1:
            raise InputError("relation mixes non-parallel paths")
        out.append(terms)
    return out


def _paths_up_to(q: QuiverPresentation, length: int) -> list[Path]:
    nv = len(q.vertices)
    vindex = {v: i for i, v in enumerate(q.vertices)}
    layer: list[Path] = [(v, v, ()) for v in range(nv)]
    paths = list(layer)
    for _ in range(length):
        nxt = []
        for s, t, app in layer:
            for ai, (_, src, tgt) in enumerate(q.arrows):
                if vindex[src] == t:
                    nxt.append((s, vindex[tgt], app + (ai,)))
        paths += nxt
        layer = nxt
    return paths


def _concat(a: Path, b: Path) -> Optional[Path]:
    """Path ``a*b`` (first b, then a) or None when not composable."""
    if b[1] != a[0]:
        return None
    return (b[0], a[1], b[2] + a[2])


def path_label(q: QuiverPresentation, path: Path) -> str:
    if not path[2]:
        return f"e{q.vertices[path[0]]}"
    return "*".join(q.arrows[a][0] for a in reversed(path[2]))


def from_quiver(q: QuiverPresentation, degree_bound: int = DEFAULT_DEGREE_BOUND, name: Optional[str] = None) -> Algebra:
    """Path algebra modulo the ideal generated by the relations.

    The truncation degree ``N`` is the first one where every path of length
    ``N`` lies in the relation ideal modulo longer paths. The result is
    ``kQ / (I + R^N)``, which equals ``kQ / I`` for admissible ``I``.
    """
    p = q.p
    if not la.is_prime(p):
        raise InputError(f"characteristic {p} is not prime")
    rels = _relation_paths(q)
    for n_deg in range(1, degree_bound + 1):
        paths = _paths_up_to(q, n_deg)
        top = [x for x in paths if len(x[2]) == n_deg]
        ideal = _ideal_rows(paths, rels, n_deg, p)
        if not top:
            break
        index = {x: i for i, x in enumerate(paths)}
        tops = la.zeros(len(paths), len(top))
        for j, x in enumerate(top):
            tops[index[x], j] = 1
        if la.in_span(ideal, tops, p):
            break
    else:
        raise NotFiniteDimensional(f"path algebra did not truncate by degree {degree_bound}")
    # algebra = kQ / (I + R^n_deg); work with paths shorter than n_deg
    short = [x for x in paths if len(x[2]) < n_deg]
    ideal = _ideal_rows(short, rels, n_deg - 1, p)
    order = sorted(range(len(short)), key=lambda i: (-len(short[i][2]), i))  # long paths pivot first
    proj, free = la.complement_coordinates(ideal[order, :], p)
    basis_paths = [short[order[f]] for f in free]
    perm_proj = la.zeros(len(free), len(short))
    perm_proj[:, order] = proj
    basis_paths_sorted = sorted(range(len(basis_paths)), key=lambda i: (len(basis_paths[i][2]), short.index(basis_paths[i])))
    perm_proj = perm_proj[basis_paths_sorted]
    basis_paths = [basis_paths[i] for i in basis_paths_sorted]
    sindex = {x: i for i, x in enumerate(short)}
    n = len(basis_paths)
    mult = np.zeros((n, n, n), dtype=np.int64)
    for i, a in enumerate(basis_paths):
        for j, b in enumerate(basis_paths):
            c = _concat(a, b)
            if c is not None and len(c[2]) < n_deg:
                mult[i, j] = perm_proj[:, sindex[c]]
    unit = np.zeros(n, dtype=np.int64)
    idem = []
    for v in range(len(q.vertices)):
        f = perm_proj[:, sindex[(v, v, ())]].copy()
        idem.append(f)
        unit = (unit + f) % p
    rad_cols = [la.identity(n)[:, i : i + 1] for i, x in enumerate(basis_paths) if x[2]]
    labels = tuple(path_label(q, x) for x in basis_paths)
    return Algebra(
        p,
        mult % p,
        unit,
        labels,
        tuple(idem),
        tuple(f"e{v}" for v in q.vertices),
        la.hstack(rad_cols, rows=n),
        name=name or "kQ/I",
        quiver=q,
    ).check()


def _ideal_rows(paths: list[Path], rels, max_len: int, p: int) -> np.ndarray:
    """Columns spanning ``span{u rho v}`` truncated to paths of length ``<= max_len``."""
    index = {x: i for i, x in enumerate(paths)}
    cols = []
    for rel in rels:
        if not rel:
            continue
        src, tgt = rel[0][1][0], rel[0][1][1]
        for v in paths:
            if v[1] != src:
                continue
            for u in paths:
                if u[0] != tgt:
                    continue
                col = np.zeros(len(paths), dtype=np.int64)
                for coeff, path in rel:
                    full = (v[0], u[1], v[2] + path[2] + u[2])
                    if len(full[2]) <= max_len:
                        col[index[full]] = (col[index[full]] + coeff) % p
                if col.any():
                    cols.append(col.reshape(-1, 1))
    if not cols:
        return la.zeros(len(paths), 0)
    return la.image_basis(la.hstack(cols), p)


def path_algebra_an(n: int, p: int) -> Algebra:
    """``k A_n`` for the quiver ``1 -> 2 -> ... -> n`` with arrows ``a1, ..., a{n-1}``."""
    if n < 1:
        raise InputError("A_n needs n >= 1")
    verts = [str(i) for i in range(1, n + 1)]
    arrows = [(f"a{i}", str(i), str(i + 1)) for i in range(1, n)]
    return from_quiver(quiver(p, verts, arrows), name=f"kA{n}")


def dual_numbers(p: int) -> Algebra:
    return from_quiver(quiver(p, ["1"], [("x", "1", "1")], ["x*x"]), name="k[x]/(x^2)")


# -- corner, ideal, quotient -------------------------------------------------


def _is_idempotent(a: Algebra, e: np.ndarray) -> bool:
    return bool(np.array_equal(a.mul(e, e), e % a.p))


def corner(a: Algebra, e: np.ndarray) -> tuple[Algebra, np.ndarray]:
    """``eAe`` together with the inclusion matrix (``a.dim x corner.dim``)."""
    p = a.p
    e = np.asarray(e, dtype=np.int64) % p
    if not _is_idempotent(a, e):
        raise InputError("corner: element is not idempotent")
    sandwich = la.matmul(a.left_mult(e), a.right_mult(e), p)
    basis = la.image_basis(sandwich, p)
    m = basis.shape[1]
    if m == 0:
        z = zero_algebra(p)
        return Algebra(p, z.mult, z.unit, (), (), (), la.zeros(0, 0), name=f"e{a.name}e"), la.zeros(a.dim, 0)
    coords = la.left_inverse(basis, p)
    mult = np.zeros((m, m, m), dtype=np.int64)
    for i in range(m):
        li = a.left_mult(basis[:, i])
        mult[i] = (coords @ (li @ basis % p) % p).T
    unit = coords @ e % p
    idem = ilab = rad = None
    if a.idempotents is not None:
        pairs = [
            (coords @ f % p, lab)
            for f, lab in zip(a.idempotents, a.idempotent_labels)
            if np.array_equal(a.mul(e, f), f) and np.array_equal(a.mul(f, e), f)
        ]
        idem = tuple(f for f, _ in pairs)
        ilab = tuple(lab for _, lab in pairs)
        total = sum(idem, np.zeros(m, dtype=np.int64)) % p
        if not np.array_equal(total, unit):
            idem = ilab = None  # e is not a sum of the listed idempotents
    if a.radical is not None and idem is not None:
        rad = coords @ la.image_basis(la.matmul(sandwich, a.radical, p), p) % p
    labels = tuple(f"e({a.labels[int(np.flatnonzero(basis[:, i])[0])]})" for i in range(m))
    c = Algebra(p, mult, unit, labels, idem, ilab, rad, name=f"e{a.name}e").check()
    return c, basis


def two_sided_ideal(a: Algebra, e: np.ndarray) -> np.ndarray:
    """Columns spanning ``A e A``."""
    p = a.p
    ae = la.matmul(a.right_mult(np.asarray(e) % p), la.identity(a.dim), p)
    cols = [la.matmul(a.right_regular()[j], ae, p) for j in range(a.dim)]
    return la.image_basis(la.hstack(cols, rows=a.dim), p)


def is_two_sided(a: Algebra, ideal: np.ndarray) -> bool:
    p = a.p
    for i in range(a.dim):
        for mat in (a.left_regular()[i], a.right_regular()[i]):
            if not la.in_span(ideal, la.matmul(mat, ideal, p), p):
                return False
    return True


def quotient(a: Algebra, ideal: np.ndarray, name: Optional[str] = None) -> tuple[Algebra, np.ndarray]:
    """``A / J`` on a complement basis together with the projection matrix (an algebra map)."""
    p = a.p
    if not is_two_sided(a, ideal):
        raise InputError("quotient: subspace is not a two-sided ideal")
    proj, free = la.complement_coordinates(ideal, p)
    m = len(free)
    mult = np.einsum("ijk,lk->ijl", a.mult[np.ix_(free, free)], proj) % p if m else np.zeros((0, 0, 0), dtype=np.int64)
    unit = proj @ a.unit % p
    idem = ilab = rad = None
    if a.idempotents is not None:
        pairs = [(proj @ f % p, lab) for f, lab in zip(a.idempotents, a.idempotent_labels)]
        pairs = [(f, lab) for f, lab in pairs if f.any()]
        idem = tuple(f for f, _ in pairs)
        ilab = tuple(lab for _, lab in pairs)
    if a.radical is not None:
        rad = la.image_basis(la.matmul(proj, a.radical, p), p) if m else la.zeros(0, 0)
    labels = tuple(a.labels[f] for f in free)
    q = Algebra(p, mult, unit, labels, idem, ilab, rad, name=name or f"{a.name}/J").check()
    return q, proj


# -- bimodules and triangular algebras ----------------------------------------


@dataclass(frozen=True, eq=False)
class Bimodule:
    """An ``(A, B)``-bimodule: ``left[i]`` is the action of ``A``'s basis element ``i``,
    ``right[j]`` the action of ``B``'s basis element ``j`` written ``m -> right[j] @ m``
    (so ``right`` is an anti-homomorphism)."""

    left_algebra: Algebra
    right_algebra: Algebra
    left: np.ndarray  # (dim A, d, d)
    right: np.ndarray  # (dim B, d, d)

    @property
    def dim(self) -> int:
        return self.left.shape[1] if self.left.ndim == 3 else 0

    def act_left(self, x: np.ndarray) -> np.ndarray:
        return np.einsum("i,ijk->jk", x, self.left) % self.left_algebra.p

    def act_right(self, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,ijk->jk", y, self.right) % self.left_algebra.p

    def check(self) -> "Bimodule":
        a, b, p, d = self.left_algebra, self.right_algebra, self.left_algebra.p, self.dim
        if self.left.shape != (a.dim, d, d) or self.right.shape != (b.dim, d, d):
            raise InputError("bimodule action shapes are inconsistent")
        eye = la.identity(d)
        if not np.array_equal(self.act_left(a.unit), eye) or not np.array_equal(self.act_right(b.unit), eye):
            raise InputError("bimodule: units do not act as identity")
        prod = np.einsum("iab,jbc->ijac", self.left, self.left) % p
        want = np.einsum("ijk,kac->ijac", a.mult, self.left) % p
        if not np.array_equal(prod, want):
            raise InputError("bimodule: left action is not multiplicative")
        prod = np.einsum("jab,ibc->ijac", self.right, self.right) % p
        want = np.einsum("ijk,kac->ijac", b.mult, self.right) % p
        if not np.array_equal(prod, want):
            raise InputError("bimodule: right action is not multiplicative")
        lr = np.einsum("iab,jbc->ijac", self.left, self.right) % p
        rl = np.einsum("jab,ibc->ijac", self.right, self.left) % p
        if not np.array_equal(lr, rl):
            raise InputError("bimodule: left and right actions do not commute")
        return self


def regular_bimodule(a: Algebra) -> Bimodule:
    return Bimodule(a, a, a.left_regular().copy(), a.right_regular().copy())


def zero_bimodule(a: Algebra, b: Algebra) -> Bimodule:
    return Bimodule(a, b, np.zeros((a.dim, 0, 0), dtype=np.int64), np.zeros((b.dim, 0, 0), dtype=np.int64))


def triangular_matrix(a: Algebra, b: Algebra, m: Bimodule, name: Optional[str] = None) -> Algebra:
    """``(A M; 0 B)`` on the basis ``A + M + B``.

    Left modules are triples ``(X, Y, M (x)_B Y -> X)`` with ``X`` an
    ``A``-module and ``Y`` a ``B``-module.
    """
    if a.p != b.p:
        raise InputError("triangular_matrix: characteristics differ")
    if m.left_algebra is not a or m.right_algebra is not b:
        raise InputError("triangular_matrix: bimodule is over different algebras")
    m.check()
    p, na, nm, nb = a.p, a.dim, m.dim, b.dim
    n = na + nm + nb
    mult = np.zeros((n, n, n), dtype=np.int64)
    sa, sm, sb = slice(0, na), slice(na, na + nm), slice(na + nm, n)
    mult[sa, sa, sa] = a.mult
    mult[sb, sb, sb] = b.mult
    # a * m = left(a) m ; m * b = right(b) m
    mult[sa, sm, sm] = np.transpose(m.left, (0, 2, 1))
    mult[sm, sb, sm] = np.transpose(m.right, (2, 0, 1))
    unit = np.concatenate([a.unit, np.zeros(nm, dtype=np.int64), b.unit])

    def lift_a(v):
        return np.concatenate([v, np.zeros(nm + nb, dtype=np.int64)])

    def lift_b(v):
        return np.concatenate([np.zeros(na + nm, dtype=np.int64), v])

    idem = ilab = rad = None
    if a.idempotents is not None and b.idempotents is not None:
        idem = tuple(lift_a(f) for f in a.idempotents) + tuple(lift_b(f) for f in b.idempotents)
        ilab = tuple(f"A:{x}" for x in a.idempotent_labels) + tuple(f"B:{x}" for x in b.idempotent_labels)
    if a.radical is not None and b.radical is not None:
        rad = la.block_diag([a.radical, la.identity(nm), b.radical])
    labels = tuple(f"A:{x}" for x in a.labels) + tuple(f"M:{i}" for i in range(nm)) + tuple(f"B:{x}" for x in b.labels)
    data = TriangularData(a, b, m, lift_a(a.unit), lift_b(b.unit))
    return Algebra(
        p, mult, unit, labels, idem, ilab, rad, name=name or f"T({a.name},{b.name})", triangular=data
    ).check()


def tensor_algebra(a: Algebra, b: Algebra, name: Optional[str] = None) -> Algebra:
    """``A (x) B`` with basis ``a_i (x) b_j`` at index ``i * dim B + j``."""
    p = a.p
    na, nb = a.dim, b.dim
    mult = np.einsum("ikm,jln->ijklmn", a.mult, b.mult).reshape(na * nb, na * nb, na * nb) % p
    unit = np.kron(a.unit, b.unit) % p
    idem = ilab = rad = None
    if a.idempotents is not None and b.idempotents is not None:
        idem = tuple(np.kron(f, g) % p for f in a.idempotents for g in b.idempotents)
        if len(a.idempotents) == 1:
            ilab = tuple(b.idempotent_labels)
        elif len(b.idempotents) == 1:
            ilab = tuple(a.idempotent_labels)
        else:
            ilab = tuple(f"{x}.{y}" for x in a.idempotent_labels for y in b.idempotent_labels)
    if a.radical is not None and b.radical is not None:
        cols = [la.kron(a.radical, la.identity(nb), p), la.kron(la.identity(na), b.radical, p)]
        rad = la.image_basis(la.hstack(cols), p)
    labels = tuple(f"{x}|{y}" for x in a.labels for y in b.labels)
    return Algebra(p, mult, unit, labels, idem, ilab, rad, name=name or f"{a.name}(x){b.name}").check()


def morn_algebra(a: Algebra, n: int) -> Algebra:
    """Algebra whose modules are sequences ``X_1 -> X_2 -> ... -> X_n`` of ``a``-modules.

    Realised as ``a (x) k A_n`` (isomorphic to the ``n x n`` triangular matrix
    algebra over ``a``); vertex ``i`` of ``A_n`` carries ``X_i``.
    """
    if n < 1:
        raise InputError("morn_algebra needs n >= 1")
    if n == 1:
        return a
    an = path_algebra_an(n, a.p)
    t = tensor_algebra(a, an, name=f"T{n}({a.name})")
    vertex = tuple(np.kron(a.unit, an.element(f"e{i}")) % a.p for i in range(1, n + 1))
    arrow = tuple(np.kron(a.unit, an.element(f"a{i}")) % a.p for i in range(1, n))
    embed = tuple(
        np.stack([np.kron(a.basis_vector(j), an.element(f"e{i}")) for j in range(a.dim)], axis=1) % a.p
        if a.dim
        else la.zeros(t.dim, 0)
        for i in range(1, n + 1)
    )
    return Algebra(
        t.p,
        t.mult,
        t.unit,
        t.labels,
        t.idempotents,
        t.idempotent_labels,
        t.radical,
        name=t.name,
        morn=MornData(a, n, vertex, arrow, embed),
    )


def iterated_triangular(a: Algebra, n: int) -> Algebra:
    """``T_n(a)`` built by repeated triangular extension; used to cross-check :func:`morn_algebra`."""
    if n < 1:
        raise InputError("iterated_triangular needs n >= 1")
    t = a
    for _ in range(1, n):
        # T_{k+1}(a) = (a  a^k; 0  T_k(a)) with a^k the row module
        m = _row_bimodule(a, t)
        t = triangular_matrix(a, t, m)
    return t


def _row_bimodule(a: Algebra, t: Algebra) -> Bimodule:
    """The first block row ``1_a t`` of ``t``, an ``(a, t)``-bimodule (``a`` itself when ``t = a``)."""
    p = a.p
    one_a = t.triangular.one_a if t.triangular is not None else t.unit
    row = la.image_basis(t.left_mult(one_a), p)
    coords = la.left_inverse(row, p)
    right = np.stack([coords @ la.matmul(t.right_regular()[j], row, p) % p for j in range(t.dim)])
    # a sits in t as the first basis block
    left = np.stack([coords @ la.matmul(t.left_regular()[i], row, p) % p for i in range(a.dim)])
    return Bimodule(a, t, left, right)
