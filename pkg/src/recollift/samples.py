"""Deterministic sample families used by the verifiers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import modules as md
from .algebra import Algebra
from .modules import Module


@dataclass(frozen=True, eq=False)
class Sample:
    name: str
    module: Module


def sample_suite(a: Algebra, seed: int = 0, random_count: int = 4, max_dim: int = 5, depth: int = 2) -> list[Sample]:
    """Indecomposable projectives, simples, injectives, syzygies and cosyzygies of the
    simples up to ``depth``, and ``random_count`` seeded random modules of dimension at most ``max_dim``."""
    if a.dim == 0:
        return []
    out: list[Sample] = []
    labels = a.idempotent_labels
    for lab, m in zip(labels, md.indecomposable_projectives(a)):
        out.append(Sample(f"P({lab})", m))
    simples = md.simple_modules(a)
    for lab, m in zip(labels, simples):
        out.append(Sample(f"S({lab})", m))
    for lab, m in zip(labels, md.indecomposable_injectives(a)):
        out.append(Sample(f"I({lab})", m))
    for lab, s in zip(labels, simples):
        cur = s
        for k in range(1, depth + 1):
            cur = md.syzygy(cur)[0]
            if cur.dim == 0:
                break
            out.append(Sample(f"Omega^{k} S({lab})", cur))
        cur = s
        for k in range(1, depth + 1):
            _, mono = md.injective_envelope(cur)
            cur = md.cokernel(mono)[0]
            if cur.dim == 0:
                break
            out.append(Sample(f"Omega^-{k} S({lab})", cur))
    rng = np.random.default_rng(seed)
    for k in range(random_count):
        out.append(Sample(f"random[{seed}:{k}]", md.random_module(a, rng, max_dim)))
    return out
