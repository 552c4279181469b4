"""Line-oriented instance specification files.

A file is a sequence of ``[section]`` headers followed by ``key = value``
lines; ``#`` starts a comment. Sections:

``[algebra]`` (or ``[algebra.a]`` / ``[algebra.b]`` for triangular instances)
    ``characteristic``, then either a quiver (``vertices``, ``arrows``,
    ``relations``) or structure constants (``basis``, ``unit``, ``products``,
    ``idempotents``, ``radical``), plus an optional ``name``.
``[instance]``
    ``kind = none | idempotent | morn | triangular`` with ``idempotent``,
    ``n``, or ``bimodule`` / ``corner``.
``[run]``
    ``seed``, ``depth``, ``random``, ``dim_bound``, ``degree``, ``mode``.

Parsing collects every error with its line and column before raising.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import algebra as al
from .errors import InputError

ALGEBRA_KEYS = {
    "characteristic",
    "name",
    "vertices",
    "arrows",
    "relations",
    "basis",
    "unit",
    "products",
    "idempotents",
    "radical",
    "degree_bound",
}
INSTANCE_KEYS = {"kind", "idempotent", "n", "bimodule", "corner"}
RUN_KEYS = {"seed", "depth", "random", "dim_bound", "degree", "mode"}
SECTIONS = {"algebra": ALGEBRA_KEYS, "algebra.a": ALGEBRA_KEYS, "algebra.b": ALGEBRA_KEYS, "instance": INSTANCE_KEYS, "run": RUN_KEYS}
KINDS = ("none", "idempotent", "morn", "triangular")

_ARROW = re.compile(r"^\s*([A-Za-z_]\w*)\s*:\s*([\w]+)\s*->\s*([\w]+)\s*$")


@dataclass(frozen=True)
class ParseIssue:
    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}: {self.message}"


class SpecError(InputError):
    def __init__(self, issues: list[ParseIssue]):
        self.issues = sorted(dict.fromkeys(issues), key=lambda i: (i.line, i.column))
        super().__init__("; ".join(str(i) for i in self.issues))


@dataclass
class Entry:
    value: str
    line: int
    column: int


@dataclass
class RunSettings:
    seed: int = 0
    depth: int = 2
    random: int = 4
    dim_bound: int = 5
    degree: int = 3
    mode: str = "fast"


@dataclass
class InstanceSpec:
    """Validated contents of a specification file."""

    p: int
    algebras: dict  # section name -> {key: Entry}
    kind: str = "none"
    idempotent: Optional[Entry] = None
    n: int = 0
    bimodule: str = "regular"
    corner: str = "a"
    run: RunSettings = field(default_factory=RunSettings)
    text: str = ""


def _split_list(value: str) -> list[str]:
    return [t.strip() for t in value.split(",") if t.strip()]


def parse_spec(text: str) -> InstanceSpec:
    issues: list[ParseIssue] = []
    sections: dict[str, dict[str, Entry]] = {}
    current: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        stripped = line.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                issues.append(ParseIssue(lineno, col, "unterminated section header"))
                continue
            name = stripped[1:-1].strip().lower()
            if name not in SECTIONS:
                issues.append(ParseIssue(lineno, col, f"unknown section [{name}]"))
                current = None
                continue
            if name in sections:
                issues.append(ParseIssue(lineno, col, f"duplicate section [{name}]"))
            current = name
            sections.setdefault(name, {})
            continue
        if "=" not in line:
            issues.append(ParseIssue(lineno, col, "expected 'key = value'"))
            continue
        key, value = line.split("=", 1)
        key = key.strip().lower()
        vcol = line.index("=") + 2 + (len(value) - len(value.lstrip()))
        if current is None:
            issues.append(ParseIssue(lineno, col, f"key {key!r} outside of a known section"))
            continue
        if key not in SECTIONS[current]:
            issues.append(ParseIssue(lineno, col, f"unknown key {key!r} in [{current}]"))
            continue
        if key in sections[current]:
            issues.append(ParseIssue(lineno, col, f"duplicate key {key!r}"))
            continue
        sections[current][key] = Entry(value.strip(), lineno, vcol)

    alg_sections = {k: v for k, v in sections.items() if k.startswith("algebra")}
    if not alg_sections:
        issues.append(ParseIssue(1, 1, "missing [algebra] section"))
    p = 0
    for name, entries in alg_sections.items():
        ch = entries.get("characteristic")
        if ch is None:
            issues.append(ParseIssue(1, 1, f"[{name}] needs 'characteristic'"))
            continue
        try:
            val = int(ch.value)
        except ValueError:
            issues.append(ParseIssue(ch.line, ch.column, f"characteristic {ch.value!r} is not an integer"))
            continue
        if not _is_prime(val):
            issues.append(ParseIssue(ch.line, ch.column, f"characteristic {val} is non-prime"))
            continue
        if p and val != p:
            issues.append(ParseIssue(ch.line, ch.column, "all algebras must share one characteristic"))
        p = p or val
        has_quiver = "vertices" in entries
        has_struct = "basis" in entries
        if has_quiver == has_struct:
            issues.append(ParseIssue(1, 1, f"[{name}] needs exactly one of 'vertices' (quiver) or 'basis' (structure constants)"))

    inst = sections.get("instance", {})
    spec = InstanceSpec(p=p, algebras=alg_sections, text=text)
    if "kind" in inst:
        spec.kind = inst["kind"].value.lower()
        if spec.kind not in KINDS:
            e = inst["kind"]
            issues.append(ParseIssue(e.line, e.column, f"unknown instance kind {e.value!r}"))
    if spec.kind == "idempotent":
        spec.idempotent = inst.get("idempotent")
        if spec.idempotent is None:
            issues.append(ParseIssue(1, 1, "idempotent instance needs 'idempotent'"))
    if spec.kind == "morn":
        e = inst.get("n")
        if e is None:
            issues.append(ParseIssue(1, 1, "morn instance needs 'n'"))
        else:
            try:
                spec.n = int(e.value)
            except ValueError:
                spec.n = -1
            if spec.n < 2:
                issues.append(ParseIssue(e.line, e.column, f"morn length must be an integer >= 2, got {e.value!r}"))
    if spec.kind == "triangular":
        if "bimodule" in inst:
            spec.bimodule = inst["bimodule"].value.lower()
            if spec.bimodule not in ("regular", "zero"):
                e = inst["bimodule"]
                issues.append(ParseIssue(e.line, e.column, "bimodule must be 'regular' or 'zero'"))
        if "corner" in inst:
            spec.corner = inst["corner"].value.lower()
            if spec.corner not in ("a", "b"):
                e = inst["corner"]
                issues.append(ParseIssue(e.line, e.column, "corner must be 'a' or 'b'"))
    for k in ("idempotent", "n", "bimodule", "corner"):
        if k in inst and not _key_applies(spec.kind, k):
            e = inst[k]
            issues.append(ParseIssue(e.line, e.column, f"key {k!r} does not apply to kind {spec.kind!r}"))

    run = sections.get("run", {})
    for k in ("seed", "depth", "random", "dim_bound", "degree"):
        if k in run:
            try:
                v = int(run[k].value)
                if v < 0:
                    raise ValueError
                setattr(spec.run, k, v)
            except ValueError:
                issues.append(ParseIssue(run[k].line, run[k].column, f"{k} must be a non-negative integer"))
    if "mode" in run:
        spec.run.mode = run["mode"].value.lower()
        if spec.run.mode not in ("fast", "thorough"):
            issues.append(ParseIssue(run["mode"].line, run["mode"].column, "mode must be 'fast' or 'thorough'"))

    issues.extend(_check_labels(spec))
    if issues:
        raise SpecError(issues)
    return spec


def _key_applies(kind: str, key: str) -> bool:
    return {"idempotent": "idempotent", "n": "morn", "bimodule": "triangular", "corner": "triangular"}[key] == kind


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def _check_labels(spec: InstanceSpec) -> list[ParseIssue]:
    """Resolve arrow endpoints, relation paths and element labels without building anything."""
    issues = []
    for name, entries in spec.algebras.items():
        if "vertices" in entries:
            verts = _split_list(entries["vertices"].value)
            arrows = set()
            if "arrows" in entries:
                e = entries["arrows"]
                for tok in _split_list(e.value):
                    m = _ARROW.match(tok)
                    if not m:
                        issues.append(ParseIssue(e.line, e.column, f"arrow {tok!r} must look like 'a: 1 -> 2'"))
                        continue
                    lab, s, t = m.groups()
                    for v in (s, t):
                        if v not in verts:
                            issues.append(ParseIssue(e.line, e.column, f"arrow {lab!r} uses unknown vertex {v!r}"))
                    arrows.add(lab)
            if "relations" in entries:
                e = entries["relations"]
                for tok in _split_list(e.value):
                    try:
                        terms = al.parse_relation(tok)
                    except InputError as exc:
                        issues.append(ParseIssue(e.line, e.column, str(exc)))
                        continue
                    for _, path in terms:
                        for lab in path:
                            if lab not in arrows:
                                issues.append(ParseIssue(e.line, e.column, f"relation uses unknown arrow {lab!r}"))
        elif "basis" in entries:
            labels = entries["basis"].value.split()
            for key in ("unit", "idempotents", "radical"):
                e = entries.get(key)
                if e is None:
                    continue
                for tok in _split_list(e.value):
                    try:
                        _combination(tok, labels, spec.p or 2)
                    except InputError as exc:
                        issues.append(ParseIssue(e.line, e.column, str(exc)))
    return issues


def _combination(text: str, labels: list[str], p: int) -> np.ndarray:
    """Parse ``"x + 2 e1"`` (or ``"0"``) over the given basis labels."""
    v = np.zeros(len(labels), dtype=np.int64)
    if text.strip() == "0":
        return v
    for c, path in al.parse_relation(text):
        if len(path) != 1 or path[0] not in labels:
            raise InputError(f"unresolved label {'*'.join(path)!r}")
        v[labels.index(path[0])] += c
    return v % p


def build_algebra(entries: dict, p: int) -> al.Algebra:
    name = entries["name"].value if "name" in entries else None
    if "vertices" in entries:
        verts = _split_list(entries["vertices"].value)
        arrows = []
        for tok in _split_list(entries["arrows"].value) if "arrows" in entries else []:
            arrows.append(_ARROW.match(tok).groups())
        rels = _split_list(entries["relations"].value) if "relations" in entries else []
        bound = int(entries["degree_bound"].value) if "degree_bound" in entries else al.DEFAULT_DEGREE_BOUND
        return al.from_quiver(al.quiver(p, verts, arrows, rels), bound, name=name)
    labels = entries["basis"].value.split()
    d = len(labels)
    mult = np.zeros((d, d, d), dtype=np.int64)
    if "products" in entries:
        for tok in _split_list(entries["products"].value):
            if "=" not in tok:
                raise InputError(f"product {tok!r} must look like 'x*y = z'")
            lhs, rhs = tok.split("=", 1)
            factors = [f.strip() for f in lhs.split("*")]
            if len(factors) != 2 or any(f not in labels for f in factors):
                raise InputError(f"product {tok!r}: left side must be 'u*v' with basis labels")
            mult[labels.index(factors[0]), labels.index(factors[1])] = _combination(rhs, labels, p)
    unit = _combination(entries["unit"].value, labels, p) if "unit" in entries else None
    if unit is None:
        raise InputError("structure-constant algebra needs 'unit'")
    idem = [_combination(t, labels, p) for t in _split_list(entries["idempotents"].value)] if "idempotents" in entries else None
    idem_labels = _split_list(entries["idempotents"].value) if idem is not None else None
    rad = None
    if "radical" in entries:
        rad = [_combination(t, labels, p) for t in _split_list(entries["radical"].value)]
    return al.from_structure_constants(p, mult, unit, labels, idem, idem_labels, rad, name=name or "A")


@dataclass(eq=False)
class BuiltSpec:
    spec: InstanceSpec
    algebra: al.Algebra  # the middle algebra (what 'analyze' and module commands act on)
    instance: object = None  # RecollementInstance or None


def build(spec: InstanceSpec) -> BuiltSpec:
    from . import recollement as rc

    if spec.kind == "triangular":
        a = build_algebra(spec.algebras.get("algebra.a") or spec.algebras["algebra"], spec.p)
        b_entries = spec.algebras.get("algebra.b")
        b = build_algebra(b_entries, spec.p) if b_entries else a
        if spec.bimodule == "regular":
            if b is not a:
                raise InputError("the regular bimodule needs the same algebra on both sides")
            m = al.regular_bimodule(a)
        else:
            m = al.zero_bimodule(a, b)
        t = al.triangular_matrix(a, b, m)
        idem = t.triangular.one_a if spec.corner == "a" else t.triangular.one_b
        inst = rc.idempotent_recollement(t, idem, f"1{spec.corner.upper()}")
        return BuiltSpec(spec, t, inst)
    base = build_algebra(spec.algebras["algebra"], spec.p)
    if spec.kind == "morn":
        inst = rc.morn_recollement(base, spec.n)
        return BuiltSpec(spec, inst.b, inst)
    if spec.kind == "idempotent":
        e = spec.idempotent
        try:
            vec = resolve_element(base, e.value)
        except InputError as exc:
            raise SpecError([ParseIssue(e.line, e.column, str(exc))]) from None
        return BuiltSpec(spec, base, rc.idempotent_recollement(base, vec, e.value))
    return BuiltSpec(spec, base, None)


def resolve_element(a: al.Algebra, text: str) -> np.ndarray:
    """A label (basis or idempotent), a sum of labels, or a coordinate list ``[1 0 1]``."""
    text = text.strip()
    if text.startswith("["):
        vals = text.strip("[]").replace(",", " ").split()
        if len(vals) != a.dim:
            raise InputError(f"coordinate vector has {len(vals)} entries, algebra has dimension {a.dim}")
        return np.array([int(v) for v in vals], dtype=np.int64) % a.p
    try:
        return a.element(text)
    except InputError:
        pass
    out = np.zeros(a.dim, dtype=np.int64)
    try:
        terms = al.parse_relation(text)
    except InputError:
        raise InputError(f"unresolved label {text!r}") from None
    for c, path in terms:
        out = (out + c * a.element("*".join(path))) % a.p
    return out
