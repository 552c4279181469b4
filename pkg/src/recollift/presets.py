"""Named instances shipped with the tool, stored as specification text."""

from __future__ import annotations

from typing import Optional

from .errors import InputError

_BASES = {
    "dualnumbers": """[algebra]
characteristic = 2
name = k[x]/(x^2)
vertices = 1
arrows = x: 1 -> 1
relations = x*x
""",
    "kA2": """[algebra]
characteristic = 2
name = kA2
vertices = 1, 2
arrows = a1: 1 -> 2
""",
    "gf2": """[algebra]
characteristic = 2
name = GF(2)
vertices = 1
""",
    "nonstrat": """[algebra]
characteristic = 2
name = nonstrat
vertices = 1, 2
arrows = a: 1 -> 2, b: 2 -> 1
relations = b*a
""",
}

# default idempotent per idempotent preset
_DEFAULT_IDEMPOTENT = {"dualnumbers": "e1", "kA2": "e2", "nonstrat": "e2"}


def names() -> list[str]:
    return ["dualnumbers", "kA2", "t2-dualnumbers", "nonstrat", "morn:<n>:<base>"]


def preset_text(name: str, idempotent: Optional[str] = None) -> str:
    """Specification text for a preset; ``idempotent`` overrides the default one."""
    if name in _DEFAULT_IDEMPOTENT:
        e = idempotent or _DEFAULT_IDEMPOTENT[name]
        return _BASES[name] + f"\n[instance]\nkind = idempotent\nidempotent = {e}\n"
    if name == "t2-dualnumbers":
        if idempotent not in (None, "A:e1", "B:e1"):
            raise InputError("t2-dualnumbers supports the corner idempotents A:e1 and B:e1")
        corner = "b" if idempotent == "B:e1" else "a"
        return _BASES["dualnumbers"] + f"\n[instance]\nkind = triangular\nbimodule = regular\ncorner = {corner}\n"
    if name.startswith("morn:"):
        parts = name.split(":")
        if len(parts) != 3 or parts[2] not in _BASES or parts[2] == "nonstrat":
            raise InputError(f"morn presets look like morn:<n>:<base> with base in dualnumbers, kA2, gf2; got {name!r}")
        if idempotent is not None:
            raise InputError("morn presets do not take an idempotent")
        return _BASES[parts[2]] + f"\n[instance]\nkind = morn\nn = {parts[1]}\n"
    raise InputError(f"unknown preset {name!r}; available: {', '.join(names())}")
