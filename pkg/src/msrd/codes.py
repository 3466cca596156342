"""Linear sum-rank codes and the exhaustive distance oracles.

Every distance reported anywhere in the package comes from
:func:`min_sumrank_distance`, which enumerates all codewords.  Nothing is
taken from theory.
"""

from __future__ import annotations

import itertools
from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from msrd import kernels, linalg
from msrd.errors import GuardExceeded
from msrd.gf import FieldTower
from msrd.sumrank import BlockProfile, LengthPartition, MatrixTuple, matrix_repr, singleton_bound, sumrank_weight

ORACLE_GUARD = 10**6


class FqLinearCode:
    """An F_q-linear code given by a basis of matrix tuples."""

    def __init__(self, tower: FieldTower, profile: BlockProfile, basis: Sequence[MatrixTuple]):
        self.tower = tower
        self.profile = profile
        self.basis = tuple(basis)
        for b in self.basis:
            if b.shapes != profile.blocks:
                raise ValueError(f"basis tuple shapes {b.shapes} do not match profile {profile}")
        if self.basis and kernels.rank(self.basis_matrix(), self.field.tables()) != len(self.basis):
            raise ValueError("basis tuples are not GF(q)-linearly independent")

    @property
    def field(self):
        return self.tower.sub

    @property
    def q(self) -> int:
        return self.tower.q

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> np.ndarray:
        if not self.basis:
            return np.zeros((0, self.profile.size), dtype=np.int32)
        return np.stack([b.flat() for b in self.basis]).astype(np.int32)

    def size(self) -> int:
        return self.q**self.dim

    def __repr__(self):
        return f"FqLinearCode(q={self.q}, dim={self.dim}, profile={self.profile})"


class FqmLinearCode:
    """An F_{q^m}-linear code: generator matrix plus length partition."""

    def __init__(self, tower: FieldTower, partition: LengthPartition, genmat: Sequence[Sequence[int]]):
        if partition.m != tower.m:
            raise ValueError("partition and tower disagree on m")
        self.tower = tower
        self.partition = partition
        self.genmat = tuple(tuple(int(x) for x in row) for row in genmat)
        for row in self.genmat:
            if len(row) != partition.length:
                raise ValueError(f"row of length {len(row)} does not match partition length {partition.length}")
            if any(not 0 <= x < tower.order for x in row):
                raise ValueError("generator entries outside the field")
        if linalg.rank(self.genmat, tower.ext) != len(self.genmat):
            raise ValueError("generator matrix does not have full row rank")

    @property
    def dim(self) -> int:
        return len(self.genmat)

    @property
    def length(self) -> int:
        return self.partition.length

    def encode(self, msg: Sequence[int]) -> list[int]:
        t = self.tower
        out = [0] * self.length
        for x, row in zip(msg, self.genmat):
            if x:
                out = [t.add(o, t.mul(x, g)) for o, g in zip(out, row)]
        return out

    def __repr__(self):
        return f"FqmLinearCode(q^m={self.tower.order}, k={self.dim}, partition={self.partition.n})"


@dataclass(frozen=True)
class MsrdCertificate:
    msrd: bool
    d: int
    dim: int
    bound: int

    def __bool__(self):
        return self.msrd


def to_fq_linear(code: FqmLinearCode) -> FqLinearCode:
    """Expand over GF(q): basis ``M(gamma_j * g_i)`` for every row and basis element."""
    t = code.tower
    basis = [
        matrix_repr([t.mul(g, x) for x in row], code.partition, t)
        for row in code.genmat
        for g in t.gamma
    ]
    return FqLinearCode(t, code.partition.profile(), basis)


def _check_guard(code: FqLinearCode, guard: int) -> None:
    if code.size() > guard:
        raise GuardExceeded(f"{code.q}^{code.dim} codewords exceed guard {guard}")


def enumerate_codewords(code: FqLinearCode, guard: int = ORACLE_GUARD) -> Iterator[MatrixTuple]:
    """All codewords; the coefficient of the first basis tuple varies fastest."""
    _check_guard(code, guard)
    tabs = code.field.tables()
    B = code.basis_matrix().astype(np.int64)
    for coeffs in itertools.product(range(code.q), repeat=code.dim):
        word = np.zeros(code.profile.size, dtype=np.int64)
        for c, row in zip(reversed(coeffs), B):
            if c:
                word = tabs.add[word, tabs.mul[c, row]]
        yield MatrixTuple.from_flat(code.field, code.profile, word)


def codeword_weights(code: FqLinearCode, guard: int = ORACLE_GUARD, impl=None) -> np.ndarray:
    """Weight of every codeword, same order as :func:`enumerate_codewords`."""
    _check_guard(code, guard)
    return kernels.codeword_weights(code.basis_matrix(), code.profile.layout(), code.field.tables(), impl=impl)


def weight_distribution(code: FqLinearCode, guard: int = ORACLE_GUARD) -> dict[int, int]:
    counts = np.bincount(codeword_weights(code, guard))
    return {w: int(c) for w, c in enumerate(counts) if c}


def min_sumrank_distance(code: FqLinearCode, guard: int = ORACLE_GUARD) -> int:
    """Minimum nonzero weight by exhaustive enumeration."""
    if code.dim == 0:
        raise ValueError("the zero code has no minimum distance")
    w = codeword_weights(code, guard)
    return int(w[1:].min())


def is_msrd(code: FqLinearCode, guard: int = ORACLE_GUARD) -> MsrdCertificate:
    d = min_sumrank_distance(code, guard)
    bound = singleton_bound(code.profile.canonical(), d)
    if code.dim > bound:
        raise AssertionError(f"Singleton bound violated: dim {code.dim} > {bound} at d={d}")
    return MsrdCertificate(code.dim == bound, d, code.dim, bound)


def is_one_weight(code: FqLinearCode, guard: int = ORACLE_GUARD) -> bool:
    if code.dim == 0:
        raise ValueError("the zero code has no nonzero codewords")
    return len(weight_distribution(code, guard)) == 2


def min_distance_by_messages(code: FqmLinearCode, guard: int = ORACLE_GUARD) -> int:
    """Second oracle path: enumerate GF(q^m) messages and weigh each encoding."""
    t = code.tower
    if code.dim == 0:
        raise ValueError("the zero code has no minimum distance")
    if t.order**code.dim > guard:
        raise GuardExceeded(f"{t.order}^{code.dim} messages exceed guard {guard}")
    best = None
    for msg in itertools.product(range(t.order), repeat=code.dim):
        if not any(msg):
            continue
        w = sumrank_weight(matrix_repr(code.encode(msg), code.partition, t))
        best = w if best is None else min(best, w)
    return best


def dual_code(code: FqmLinearCode) -> FqmLinearCode:
    """Dual under the coordinatewise bilinear form ``sum(x_i * y_i)``."""
    t = code.tower
    n = code.length
    if code.dim == 0:
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    else:
        rows = linalg.nullspace(code.genmat, n, t.ext)
    return FqmLinearCode(t, code.partition, rows)


def same_code(a: FqLinearCode, b: FqLinearCode) -> bool:
    """Equality as row spaces over GF(q)."""
    if a.profile != b.profile or a.tower != b.tower:
        return False
    tabs = a.field.tables()
    ra = kernels.rank(a.basis_matrix(), tabs) if a.dim else 0
    rb = kernels.rank(b.basis_matrix(), tabs) if b.dim else 0
    both = np.concatenate([a.basis_matrix(), b.basis_matrix()])
    rab = kernels.rank(both, tabs) if len(both) else 0
    return ra == rb == rab


def distribution_counter(code: FqLinearCode, guard: int = ORACLE_GUARD) -> Counter:
    """Weight distribution computed codeword by codeword (slow reference path)."""
    return Counter(sumrank_weight(c) for c in enumerate_codewords(code, guard))
