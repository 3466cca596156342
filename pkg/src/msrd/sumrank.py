"""The sum-rank ambient space: block profiles, matrix tuples, weights, bounds."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from msrd import kernels
from msrd.gf import FieldTower, GaloisField


@dataclass(frozen=True)
class BlockProfile:
    """Ordered block shapes ``(m_i, n_i)`` with ``m_i >= n_i >= 1``."""

    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        blocks = tuple((int(m), int(n)) for m, n in self.blocks)
        for m, n in blocks:
            if not m >= n >= 1:
                raise ValueError(f"block {m}x{n} violates m >= n >= 1")
        object.__setattr__(self, "blocks", blocks)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    @property
    def total_n(self) -> int:
        return sum(n for _, n in self.blocks)

    @property
    def ambient_dim(self) -> int:
        return sum(m * n for m, n in self.blocks)

    @property
    def size(self) -> int:
        """Number of GF(q) entries in a tuple (same as ``ambient_dim``)."""
        return self.ambient_dim

    def canonical(self) -> BlockProfile:
        return BlockProfile(tuple(sorted(self.blocks, key=lambda b: (-b[0], -b[1]))))

    def is_canonical(self) -> bool:
        return self.blocks == self.canonical().blocks

    def layout(self) -> np.ndarray:
        """``(offset, rows, cols)`` per block in the flattened representation."""
        rows, off = [], 0
        for m, n in self.blocks:
            rows.append((off, m, n))
            off += m * n
        return np.array(rows, dtype=np.int32).reshape(-1, 3)

    def __add__(self, other: BlockProfile) -> BlockProfile:
        return BlockProfile(self.blocks + other.blocks)

    def __str__(self):
        return " ".join(f"({m},{n})" for m, n in self.blocks)


@dataclass(frozen=True)
class LengthPartition:
    """Split ``(n_1, ..., n_l)`` of a length-``n`` vector over GF(q^m)."""

    n: tuple[int, ...]
    m: int

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(x) for x in self.n))
        if any(x < 1 for x in self.n):
            raise ValueError("partition entries must be positive")
        if any(x > self.m for x in self.n):
            raise ValueError(f"partition entries must not exceed m={self.m}")

    @property
    def length(self) -> int:
        return sum(self.n)

    def profile(self) -> BlockProfile:
        return BlockProfile(tuple((self.m, x) for x in self.n))


@dataclass(frozen=True)
class BoundExpansion:
    """``d = sum(n_i for i < j) + delta + 1``; ``j`` is 1-based."""

    j: int
    delta: int


class MatrixTuple:
    """One element of a product of matrix spaces over GF(q).

    Blocks are read-only int32 arrays of GF(q) codes.
    """

    __slots__ = ("field", "blocks")

    def __init__(self, field: GaloisField, blocks: Sequence):
        arrs = []
        for b in blocks:
            a = np.array(b, dtype=np.int32)
            if a.ndim != 2:
                raise ValueError("each block must be a 2-D matrix")
            if a.size and (a.min() < 0 or a.max() >= field.order):
                raise ValueError(f"entries must be GF({field.order}) codes")
            a.flags.writeable = False
            arrs.append(a)
        self.field = field
        self.blocks = tuple(arrs)

    @classmethod
    def zeros(cls, field: GaloisField, profile: BlockProfile) -> MatrixTuple:
        return cls(field, [np.zeros((m, n), dtype=np.int32) for m, n in profile])

    @classmethod
    def from_flat(cls, field: GaloisField, profile: BlockProfile, flat) -> MatrixTuple:
        flat = np.asarray(flat)
        blocks, off = [], 0
        for m, n in profile:
            blocks.append(flat[off : off + m * n].reshape(m, n))
            off += m * n
        return cls(field, blocks)

    @property
    def shapes(self) -> tuple[tuple[int, int], ...]:
        return tuple(b.shape for b in self.blocks)

    @property
    def profile(self) -> BlockProfile:
        return BlockProfile(self.shapes)

    def flat(self) -> np.ndarray:
        if not self.blocks:
            return np.zeros(0, dtype=np.int32)
        return np.concatenate([b.ravel() for b in self.blocks])

    def _check(self, other: MatrixTuple):
        if self.shapes != other.shapes:
            raise ValueError("matrix tuples have different profiles")
        if self.field is not other.field and self.field.order != other.field.order:
            raise ValueError("matrix tuples live over different fields")

    def __add__(self, other: MatrixTuple) -> MatrixTuple:
        self._check(other)
        t = self.field.tables()
        return MatrixTuple(self.field, [t.add[a, b] for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self) -> MatrixTuple:
        t = self.field.tables()
        return MatrixTuple(self.field, [t.neg[a] for a in self.blocks])

    def __sub__(self, other: MatrixTuple) -> MatrixTuple:
        return self + (-other)

    def scale(self, c: int) -> MatrixTuple:
        t = self.field.tables()
        return MatrixTuple(self.field, [t.mul[c, a] for a in self.blocks])

    def right_mul(self, mats) -> MatrixTuple:
        """Blockwise ``C_i @ A_i`` over GF(q)."""
        return MatrixTuple(self.field, [_matmul(c, a, self.field) for c, a in zip(self.blocks, mats)])

    def left_mul(self, mats) -> MatrixTuple:
        """Blockwise ``A_i @ C_i`` over GF(q)."""
        return MatrixTuple(self.field, [_matmul(a, c, self.field) for c, a in zip(self.blocks, mats)])

    def is_zero(self) -> bool:
        return all(not b.any() for b in self.blocks)

    def __eq__(self, other):
        if not isinstance(other, MatrixTuple):
            return NotImplemented
        return self.shapes == other.shapes and all(np.array_equal(a, b) for a, b in zip(self.blocks, other.blocks))

    def __hash__(self):
        return hash((self.shapes, self.flat().tobytes()))

    def __repr__(self):
        return f"MatrixTuple({[b.tolist() for b in self.blocks]})"


def _matmul(a, b, field: GaloisField) -> np.ndarray:
    t = field.tables()
    a = np.asarray(a)
    b = np.asarray(b)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int32)
    for k in range(a.shape[1]):
        out = t.add[out, t.mul[a[:, k][:, None], b[k][None, :]]]
    return out


def matrix_repr(c: Sequence[int], partition: LengthPartition, tower: FieldTower) -> MatrixTuple:
    """Blockwise coordinate matrices of ``c`` in the tower's basis gamma.

    Column ``j`` of block ``i`` holds the coordinates of the ``j``-th entry
    of the ``i``-th segment of ``c``.
    """
    c = list(c)
    if len(c) != partition.length:
        raise ValueError(f"vector of length {len(c)} does not match partition {partition.n}")
    if partition.m != tower.m:
        raise ValueError("partition and tower disagree on m")
    blocks, pos = [], 0
    for ni in partition.n:
        cols = [tower.coords(x) for x in c[pos : pos + ni]]
        blocks.append(np.array(cols, dtype=np.int32).reshape(ni, tower.m).T)
        pos += ni
    return MatrixTuple(tower.sub, blocks)


def block_rank(block, field: GaloisField) -> int:
    return kernels.rank(block, field.tables())


def sumrank_weight(C: MatrixTuple) -> int:
    tabs = C.field.tables()
    return sum(kernels.rank(b, tabs) for b in C.blocks)


def sumrank_distance(C: MatrixTuple, D: MatrixTuple) -> int:
    return sumrank_weight(C - D)


def expand_distance(profile: BlockProfile, d: int) -> BoundExpansion:
    if not profile.is_canonical():
        raise ValueError("profile must be canonical (sorted by non-increasing m, then n)")
    return _expand(profile.blocks, d)


def _expand(blocks, d: int) -> BoundExpansion:
    total = sum(n for _, n in blocks)
    if not 1 <= d <= total:
        raise ValueError(f"distance {d} outside [1, {total}]")
    prefix = 0
    for j, (_, n) in enumerate(blocks, start=1):
        if d <= prefix + n:
            return BoundExpansion(j, d - prefix - 1)
        prefix += n
    raise AssertionError("unreachable")  # pragma: no cover


def singleton_bound(profile: BlockProfile, d: int) -> int:
    """Largest GF(q)-dimension of a code with minimum sum-rank distance ``d``."""
    if not profile.is_canonical():
        raise ValueError("profile must be canonical (sorted by non-increasing m, then n)")
    return bound_in_order(profile.blocks, d)


def bound_in_order(blocks, d: int) -> int:
    """Evaluate the bound on ``blocks`` as given (``m`` must be non-increasing).

    Used to check that the value does not depend on how blocks of equal
    ``m`` are ordered among themselves.
    """
    ms = [m for m, _ in blocks]
    if any(a < b for a, b in zip(ms, ms[1:])):
        raise ValueError("row counts must be non-increasing")
    exp = _expand(blocks, d)
    j = exp.j - 1
    return sum(m * n for m, n in blocks[j:]) - blocks[j][0] * exp.delta
