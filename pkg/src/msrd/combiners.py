"""Stacking component codes into taller blocks, and glueing two bases."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from msrd.codes import ORACLE_GUARD, FqLinearCode, is_msrd, min_sumrank_distance
from msrd.errors import FieldMismatch
from msrd.sumrank import BlockProfile, MatrixTuple, singleton_bound


@dataclass(frozen=True)
class Verdict:
    """Outcome of a construction check; ``reason`` names the first failed premise."""

    ok: bool
    reason: str = ""
    d: int | None = None
    dim: int | None = None
    bound: int | None = None

    def __bool__(self):
        return self.ok


@dataclass
class StackSpec:
    components: Sequence[FqLinearCode]

    def __post_init__(self):
        if not self.components:
            raise ValueError("need at least one component code")
        first = self.components[0]
        for c in self.components:
            if c.tower != first.tower:
                raise FieldMismatch("component codes live over different fields")
            if c.profile != first.profile:
                raise ValueError("component codes must share one profile")
        if any(m != n for m, n in first.profile):
            raise ValueError("stacking needs square blocks")

    @property
    def t(self) -> int:
        return len(self.components)


def stack_product(spec: StackSpec) -> FqLinearCode:
    """Component ``k`` fills row band ``k`` of every ``(t m_i) x m_i`` block."""
    t = spec.t
    base = spec.components[0]
    profile = BlockProfile(tuple((t * m, n) for m, n in base.profile))
    basis = []
    for k, comp in enumerate(spec.components):
        for b in comp.basis:
            blocks = []
            for blk, (m, n) in zip(b.blocks, base.profile):
                big = np.zeros((t * m, n), dtype=np.int32)
                big[k * m : (k + 1) * m] = blk
                blocks.append(big)
            basis.append(MatrixTuple(base.field, blocks))
    return FqLinearCode(base.tower, profile, basis)


def check_stack_msrd(spec: StackSpec, guard: int = ORACLE_GUARD) -> Verdict:
    certs = []
    for i, comp in enumerate(spec.components, start=1):
        cert = is_msrd(comp, guard)
        if not cert:
            return Verdict(False, f"component not MSRD (component {i})")
        certs.append(cert)
    if len({c.d for c in certs}) != 1:
        return Verdict(False, "distance mismatch")
    if len({c.dim for c in certs}) != 1:
        return Verdict(False, "size mismatch")
    stacked = stack_product(spec)
    cert = is_msrd(stacked, guard)
    expected = spec.t * certs[0].bound
    if cert.dim != expected or cert.d != certs[0].d:
        return Verdict(False, "stacked code parameters disagree with theory", cert.d, cert.dim, cert.bound)
    return Verdict(cert.msrd, "" if cert.msrd else "stacked code not MSRD", cert.d, cert.dim, cert.bound)


@dataclass
class GlueSpec:
    """Two codes on consecutive block ranges, glued pairwise by basis position.

    ``order1``/``order2`` pick which basis tuples get paired; by default the
    stored basis order of each input.
    """

    c1: FqLinearCode
    c2: FqLinearCode
    order1: Sequence[int] | None = field(default=None)
    order2: Sequence[int] | None = field(default=None)

    def __post_init__(self):
        if self.c1.tower != self.c2.tower:
            raise FieldMismatch("glued codes must live over the same field")
        ms = [m for m, _ in self.profile]
        if any(a < b for a, b in zip(ms, ms[1:])):
            raise ValueError("concatenated profile must have non-increasing row counts")
        for order, code in ((self.order1, self.c1), (self.order2, self.c2)):
            if order is not None and sorted(order) != list(range(code.dim)):
                raise ValueError("basis order must be a permutation of the basis indices")

    @property
    def profile(self) -> BlockProfile:
        return self.c1.profile + self.c2.profile

    def paired(self):
        b1 = [self.c1.basis[i] for i in (self.order1 or range(self.c1.dim))]
        b2 = [self.c2.basis[i] for i in (self.order2 or range(self.c2.dim))]
        return list(zip(b1, b2))


def glue_bases(spec: GlueSpec) -> FqLinearCode:
    """Basis ``(B_{1,i}, B_{2,i})`` for ``i < min(k1, k2)``.

    The distance is at least ``d1 + d2``; equality is not guaranteed for an
    arbitrary pairing.
    """
    basis = [MatrixTuple(spec.c1.field, a.blocks + b.blocks) for a, b in spec.paired()]
    return FqLinearCode(spec.c1.tower, spec.profile, basis)


def check_glue_msrd(spec: GlueSpec, guard: int = ORACLE_GUARD) -> Verdict:
    c1, c2 = spec.c1, spec.c2
    if not is_msrd(c1, guard):
        return Verdict(False, "c1 not MSRD")
    if not is_msrd(c2, guard):
        return Verdict(False, "c2 not MSRD")
    d1 = min_sumrank_distance(c1, guard)
    d2 = min_sumrank_distance(c2, guard)
    m_last = c1.profile.blocks[-1][0]
    if d1 != c1.profile.total_n:
        return Verdict(False, "c1 not full-distance")
    if c1.dim != m_last:
        return Verdict(False, "c1 dimension differs from m_l")
    if c2.dim > m_last:
        return Verdict(False, "dimension exceeds m_l")
    glued = glue_bases(spec)
    cert = is_msrd(glued, guard)
    if cert.d != d1 + d2:
        return Verdict(False, "glued distance differs from d1 + d2", cert.d, cert.dim, cert.bound)
    expected_bound = singleton_bound(spec.profile.canonical(), d1 + d2)
    ok = cert.msrd and cert.dim == expected_bound
    return Verdict(ok, "" if ok else "glued code not MSRD", cert.d, cert.dim, cert.bound)
