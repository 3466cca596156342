"""Extending MSRD codes with extra rank blocks.

Two routes:

* lattice extension: a base code ``C_0`` plus ``t`` groups of tuples
  ``B_{i,1..m}`` such that each ``C_I = C_0 + <B_{i,*} : i in I>`` loses
  exactly ``|I|`` in distance; new blocks are fed through isomorphisms from
  subspaces ``V_j`` of GF(q)^m.
* systematic extension: a code over GF(q^m) whose last ``t`` coordinates
  carry an identity, with the identity part re-encoded through a partition
  of the ``m x t`` coordinate matrix into disjoint submatrices.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from msrd import kernels, linalg
from msrd.codes import (
    ORACLE_GUARD,
    FqLinearCode,
    FqmLinearCode,
    is_msrd,
    min_sumrank_distance,
    to_fq_linear,
    weight_distribution,
)
from msrd.errors import ConstructionError
from msrd.gf import FieldTower
from msrd.msrd_gen import BetaVector, NormClassReps, generator_rows, select_beta, select_norm_reps
from msrd.sumrank import BlockProfile, LengthPartition, MatrixTuple, matrix_repr

# ---------------------------------------------------------------------------
# lattice extension


@dataclass
class LatticeSpec:
    """Inputs of the lattice extension.

    ``b_tuples[i][j]`` is ``B_{i+1,j+1}``.  ``breakpoints`` lists
    ``l_1 < ... < l_t`` (``l_0 = 0`` implicit) splitting ``ext_blocks`` into
    ``t`` consecutive groups.  ``v_bases[j]`` is a basis of ``V_j`` as
    vectors in GF(q)^m; ``None`` picks consecutive coordinate subspaces
    inside each group.
    """

    base: FqLinearCode
    d: int
    b_tuples: Sequence[Sequence[MatrixTuple]]
    breakpoints: Sequence[int]
    ext_blocks: Sequence[tuple[int, int]]
    v_bases: Sequence[Sequence[Sequence[int]]] | None = None
    beta: BetaVector | None = None

    def __post_init__(self):
        self.breakpoints = tuple(int(b) for b in self.breakpoints)
        self.ext_blocks = tuple((int(m), int(n)) for m, n in self.ext_blocks)
        if self.v_bases is None:
            self.v_bases = default_v_bases(self.m, self.ext_blocks, self.breakpoints)
        self.v_bases = [[tuple(int(x) for x in v) for v in vb] for vb in self.v_bases]

    @property
    def t(self) -> int:
        return len(self.b_tuples)

    @property
    def m(self) -> int:
        return self.base.profile.blocks[-1][0]

    @property
    def tower(self) -> FieldTower:
        return self.base.tower

    @property
    def s(self) -> int:
        """1-based index of the first block of the trailing run with ``m`` rows."""
        blocks = self.base.profile.blocks
        s = len(blocks)
        while s > 1 and blocks[s - 2][0] == self.m:
            s -= 1
        return s

    def groups(self) -> list[range]:
        """0-based ext-block indices of each group."""
        bounds = (0,) + self.breakpoints
        return [range(bounds[i], bounds[i + 1]) for i in range(len(self.breakpoints))]

    def ext_profile(self) -> BlockProfile:
        return BlockProfile(self.ext_blocks)

    def lattice_code(self, I: Sequence[int]) -> FqLinearCode:
        """``C_I`` for a set of 1-based group indices."""
        extra = [b for i in sorted(I) for b in self.b_tuples[i - 1]]
        return FqLinearCode(self.tower, self.base.profile, list(self.base.basis) + extra)


def default_v_bases(m: int, ext_blocks, breakpoints) -> list[list[tuple[int, ...]]]:
    bounds = (0,) + tuple(breakpoints)
    out: list[list[tuple[int, ...]]] = []
    for gi in range(len(breakpoints)):
        offset = 0
        for j in range(bounds[gi], bounds[gi + 1]):
            mj, nj = ext_blocks[j]
            vecs = []
            for k in range(mj * nj):
                v = [0] * m
                if offset + k < m:
                    v[offset + k] = 1
                vecs.append(tuple(v))
            offset += mj * nj
            out.append(vecs)
    return out


def validate_lattice(spec: LatticeSpec, verify: bool = True, guard: int = ORACLE_GUARD) -> dict:
    """Raise :class:`ConstructionError` on the first failed premise.

    With ``verify`` the lattice distances are measured by the oracle; the
    measured distances are returned keyed by subset.
    """
    base, m, t = spec.base, spec.m, spec.t
    profile = base.profile
    if t < 1:
        raise ConstructionError("need at least one group of B tuples")
    bps = spec.breakpoints
    if len(bps) != t or any(b <= a for a, b in zip((0,) + bps, bps)):
        raise ConstructionError(f"breakpoints must be {t} strictly increasing positive integers")
    if bps[-1] != len(spec.ext_blocks):
        raise ConstructionError(f"last breakpoint {bps[-1]} must equal the number of ext blocks {len(spec.ext_blocks)}")
    spec.ext_profile()  # shape validation
    s = spec.s
    head = sum(n for _, n in profile.blocks[: s - 1])
    if spec.d - t < head + 1:
        raise ConstructionError(f"distance condition violated: d - t = {spec.d - t} < {head + 1}")
    for i, group in enumerate(spec.b_tuples, start=1):
        if len(group) != m:
            raise ConstructionError(f"group {i} needs exactly m={m} B tuples")
        for b in group:
            if b.shapes != profile.blocks:
                raise ConstructionError("B tuples must live on the base profile")
    if t * m + base.dim > profile.ambient_dim:
        raise ConstructionError(f"t*m + dim(C_0) = {t * m + base.dim} exceeds ambient dimension {profile.ambient_dim}")
    allb = [b.flat() for g in spec.b_tuples for b in g]
    stacked = np.stack([*(x.flat() for x in base.basis), *allb]).astype(np.int32)
    if kernels.rank(stacked, base.field.tables()) != base.dim + t * m:
        raise ConstructionError("B tuples are dependent or meet the base code")
    for gi, group in enumerate(spec.groups(), start=1):
        size = sum(spec.ext_blocks[j][0] * spec.ext_blocks[j][1] for j in group)
        if size > m:
            raise ConstructionError(f"group size condition violated: ext blocks of group {gi} hold {size} > m={m} entries")
    F = base.field
    for gi, group in enumerate(spec.groups(), start=1):
        vecs = []
        for j in group:
            vb = spec.v_bases[j]
            mj, nj = spec.ext_blocks[j]
            if len(vb) != mj * nj or any(len(v) != m for v in vb):
                raise ConstructionError(f"V_{j + 1} must have {mj * nj} basis vectors of length m={m}")
            if linalg.rank(vb, F) != len(vb):
                raise ConstructionError(f"V_{j + 1} basis is dependent")
            vecs.extend(vb)
        if linalg.rank(vecs, F) != len(vecs):
            raise ConstructionError(f"V subspaces of group {gi} do not form a direct sum")
    found = {}
    if verify:
        n_total = profile.total_n
        for size in range(t + 1):
            for I in itertools.combinations(range(1, t + 1), size):
                code = spec.lattice_code(I)
                d_I = min_sumrank_distance(code, guard) if code.dim else n_total + 1
                found[I] = d_I
                if d_I != spec.d - size:
                    raise ConstructionError(f"lattice property violated: d(C_{set(I) or '{}'}) = {d_I}, expected {spec.d - size}")
    return found


def _unit(shape, k: int) -> np.ndarray:
    mj, nj = shape
    out = np.zeros((mj, nj), dtype=np.int32)
    out[k // nj, k % nj] = 1
    return out


def extend_lattice(spec: LatticeSpec, verify: bool = True, guard: int = ORACLE_GUARD) -> FqLinearCode:
    """Append the ext blocks; ``V_j``'s stored basis maps to row-major matrix units."""
    validate_lattice(spec, verify, guard)
    F = spec.base.field
    tabs = F.tables()
    ext = spec.ext_blocks
    zeros_ext = [np.zeros(s, dtype=np.int32) for s in ext]
    basis = [MatrixTuple(F, b.blocks + tuple(zeros_ext)) for b in spec.base.basis]
    for gi, group in enumerate(spec.groups()):
        B = np.stack([b.flat() for b in spec.b_tuples[gi]]).astype(np.int64)
        for j in group:
            for k, alpha in enumerate(spec.v_bases[j]):
                head = np.zeros(B.shape[1], dtype=np.int64)
                for a, row in zip(alpha, B):
                    if a:
                        head = tabs.add[head, tabs.mul[a, row]]
                head_t = MatrixTuple.from_flat(F, spec.base.profile, head)
                tail = list(zeros_ext)
                tail[j] = _unit(ext[j], k)
                basis.append(MatrixTuple(F, head_t.blocks + tuple(tail)))
    return FqLinearCode(spec.tower, spec.base.profile + spec.ext_profile(), basis)


@dataclass
class LatticeIngredients:
    """Rows ``g_1..g_{t+k}`` of a lattice family and the derived code data."""

    tower: FieldTower
    partition: LengthPartition
    g_rows: list[list[int]]
    t: int
    k: int
    d: int
    reps: NormClassReps
    beta: BetaVector
    base: FqLinearCode = field(repr=False)
    b_tuples: list[list[MatrixTuple]] = field(repr=False)

    def spec(self, ext_blocks, breakpoints, v_bases=None) -> LatticeSpec:
        return LatticeSpec(self.base, self.d, self.b_tuples, breakpoints, ext_blocks, v_bases, self.beta)

    def fqm_code(self, I: Sequence[int]) -> FqmLinearCode:
        rows = [self.g_rows[i - 1] for i in sorted(I)] + self.g_rows[self.t :]
        return FqmLinearCode(self.tower, self.partition, rows)


def _ingredients(tower, reps, beta, g_rows, t, k) -> LatticeIngredients:
    partition = LengthPartition((beta.r,) * (beta.mu * (tower.q - 1)), tower.m)
    n = partition.length
    free = g_rows[t:]
    base = to_fq_linear(FqmLinearCode(tower, partition, free)) if free else FqLinearCode(tower, partition.profile(), [])
    b_tuples = [[matrix_repr([tower.mul(gm, x) for x in g_rows[i]], partition, tower) for gm in tower.gamma] for i in range(t)]
    return LatticeIngredients(tower, partition, g_rows, t, k, n - k + 1, reps, beta, base, b_tuples)


def build_lattice_t2(tower: FieldTower, mu: int, r: int, k: int) -> LatticeIngredients:
    """Two-group family: ``g_1`` first row, ``g_2`` last row, middle rows free."""
    n = mu * (tower.q - 1) * r
    if k < 0:
        raise ConstructionError("k must be non-negative")
    if k + 2 > n:
        raise ConstructionError(f"k+2 = {k + 2} rows exceed length n = {n}")
    reps = select_norm_reps(tower)
    beta = select_beta(tower, mu, r, k + 2)
    M = generator_rows(tower, reps, beta, range(k + 2))
    g_rows = [M[0], M[k + 1]] + M[1 : k + 1]
    return _ingredients(tower, reps, beta, g_rows, 2, k)


def build_lattice_t3(tower: FieldTower, mu: int, r: int) -> LatticeIngredients:
    """Three-group family with ``k = 0``; needs ``q`` even and ``m`` odd."""
    if tower.q % 2:
        raise ConstructionError("q must be even")
    if tower.m % 2 == 0:
        raise ConstructionError("m must be odd")
    n = mu * (tower.q - 1) * r
    if n < 3:
        raise ConstructionError(f"length n = {n} must be at least 3")
    reps = select_norm_reps(tower)
    beta = select_beta(tower, mu, r, 3)
    g_rows = generator_rows(tower, reps, beta, range(3))
    return _ingredients(tower, reps, beta, g_rows, 3, 0)


@dataclass(frozen=True)
class OneWeightReport:
    criterion: bool
    one_weight: bool
    distribution: dict

    @property
    def agree(self) -> bool:
        return self.criterion == self.one_weight


def subspace_elements(vectors, tower: FieldTower) -> set[int]:
    """All GF(q)-combinations of the given GF(q^m) elements."""
    out = set()
    for coeffs in itertools.product(range(tower.q), repeat=len(vectors)):
        acc = 0
        for c, v in zip(coeffs, vectors):
            if c:
                acc = tower.add(acc, tower.mul(c, v))
        out.add(acc)
    return out


def check_one_weight(code: FqLinearCode, context: LatticeSpec, guard: int = ORACLE_GUARD) -> OneWeightReport:
    """Compare the structural one-weight criterion with the oracle's verdict."""
    tower = context.tower
    if code.dim != 2 * tower.m:
        raise ConstructionError(f"criterion applies only to dimension 2m = {2 * tower.m}, got {code.dim}")
    if context.t != 2:
        raise ConstructionError("criterion applies to two-group extensions")
    if context.beta is None:
        raise ConstructionError("context lacks the beta vector")
    covered = set()
    for seg in context.beta.segments():
        covered |= subspace_elements(seg, tower)
    criterion = tuple(context.breakpoints) == (1, 2) and len(covered) == tower.order
    dist = weight_distribution(code, guard)
    return OneWeightReport(criterion, len(dist) == 2, dist)


# ---------------------------------------------------------------------------
# systematic extension


@dataclass
class SystematicForm:
    """``g`` rows (first ``n`` coordinates) of a generator in systematic shape.

    Rows ``0..t-1`` carry the identity on the last ``t`` coordinates, the
    remaining ``k`` rows carry zeros there.
    """

    g_rows: list[list[int]]
    t: int
    k: int

    def reassemble(self) -> list[list[int]]:
        out = []
        for i, g in enumerate(self.g_rows):
            tail = [1 if i == j else 0 for j in range(self.t)]
            out.append(list(g) + tail)
        return out


def systematic_form(code: FqmLinearCode, t: int) -> SystematicForm:
    F = code.tower.ext
    k_total, n_all = code.dim, code.length
    if not 1 <= t <= k_total:
        raise ConstructionError(f"t={t} must lie in [1, dim={k_total}]")
    if code.partition.n[-1] != t:
        raise ConstructionError(f"last partition block must have length t={t}")
    n = n_all - t
    R = [list(r) for r in code.genmat]
    for j in range(t):
        c = n + j
        piv = next((i for i in range(j, k_total) if R[i][c] != 0), None)
        if piv is None:
            raise ConstructionError("last t columns are singular; input is not MSRD")
        R[j], R[piv] = R[piv], R[j]
        s = F.inv(R[j][c])
        R[j] = [F.mul(s, x) for x in R[j]]
        for i in range(k_total):
            if i != j and R[i][c] != 0:
                f = R[i][c]
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], R[j])]
    return SystematicForm([r[:n] for r in R], t, k_total - t)


@dataclass(frozen=True)
class MatrixPartition:
    """Disjoint submatrix index sets ``(X_s, Y_s)``, 1-based."""

    m_rows: int
    t_cols: int
    pieces: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def __post_init__(self):
        pieces = tuple((tuple(sorted(set(X))), tuple(sorted(set(Y)))) for X, Y in self.pieces)
        object.__setattr__(self, "pieces", pieces)
        for X, Y in pieces:
            if not X or not Y:
                raise ConstructionError("pieces must have nonempty row and column sets")

    def validate(self) -> None:
        """Range and disjointness checks (size is checked by the caller first)."""
        for X, Y in self.pieces:
            if X[0] < 1 or X[-1] > self.m_rows or Y[0] < 1 or Y[-1] > self.t_cols:
                raise ConstructionError("piece indices outside the m x t matrix")
        for (a, (X1, Y1)), (b, (X2, Y2)) in itertools.combinations(enumerate(self.pieces, 1), 2):
            if set(X1) & set(X2) and set(Y1) & set(Y2):
                raise ConstructionError(f"pieces {a} and {b} overlap")

    @classmethod
    def trivial(cls, m: int, t: int) -> MatrixPartition:
        return cls(m, t, ((tuple(range(1, m + 1)), tuple(range(1, t + 1))),))

    def total_size(self) -> int:
        return sum(len(X) * len(Y) for X, Y in self.pieces)

    def shapes(self) -> list[tuple[int, int]]:
        """Output block shapes; wide pieces are transposed so rows >= cols."""
        return [(max(len(X), len(Y)), min(len(X), len(Y))) for X, Y in self.pieces]

    def cells(self) -> list[tuple[int, int]]:
        return [(i, j) for X, Y in self.pieces for i in X for j in Y]

    def project(self, C: np.ndarray) -> list[np.ndarray]:
        """Submatrices of an ``m x t`` matrix, one per piece (transposed if wide)."""
        out = []
        for X, Y in self.pieces:
            sub = C[np.ix_([x - 1 for x in X], [y - 1 for y in Y])]
            out.append(sub.T if len(Y) > len(X) else sub)
        return out


@dataclass
class PhiMap:
    """``phi(lambda) = pi(M(lambda))`` on ``V = M^{-1}(matrices supported on the pieces)``."""

    tower: FieldTower
    partition: MatrixPartition
    v_basis: list[tuple[int, ...]]

    @property
    def t(self) -> int:
        return self.partition.t_cols

    @property
    def dim(self) -> int:
        return len(self.v_basis)

    def profile(self) -> BlockProfile:
        return BlockProfile(tuple(self.partition.shapes()))

    def coordinate_matrix(self, lam: Sequence[int]) -> np.ndarray:
        return np.array([self.tower.coords(x) for x in lam], dtype=np.int32).reshape(self.t, self.tower.m).T

    def contains(self, lam: Sequence[int]) -> bool:
        C = self.coordinate_matrix(lam)
        mask = np.zeros_like(C, dtype=bool)
        for i, j in self.partition.cells():
            mask[i - 1, j - 1] = True
        return not C[~mask].any()

    def __call__(self, lam: Sequence[int]) -> MatrixTuple:
        if not self.contains(lam):
            raise ValueError("vector lies outside V")
        return MatrixTuple(self.tower.sub, self.partition.project(self.coordinate_matrix(lam)))


def phi_build(tower: FieldTower, partition: MatrixPartition) -> PhiMap:
    if partition.m_rows != tower.m:
        raise ConstructionError(f"partition has {partition.m_rows} rows but m = {tower.m}")
    partition.validate()
    v_basis = []
    for i, j in partition.cells():
        lam = [0] * partition.t_cols
        lam[j - 1] = tower.gamma[i - 1]
        v_basis.append(tuple(lam))
    return PhiMap(tower, partition, v_basis)


def phi_code(phi: PhiMap) -> tuple[FqLinearCode, FqLinearCode]:
    """``V`` twice over GF(q): as ``M(lambda)`` (one m x t block) and as ``phi(lambda)``.

    Both share one basis order, so their oracle weights line up codeword by
    codeword.  The first code may have a wide block, so it skips the
    ``m >= n`` profile check.
    """
    tw = phi.tower
    src_blocks = [np.array(phi.coordinate_matrix(lam)) for lam in phi.v_basis]
    src = _RawCode(tw, [(tw.m, phi.t)], [b.ravel() for b in src_blocks])
    img = FqLinearCode(tw, phi.profile(), [phi(lam) for lam in phi.v_basis])
    return src, img


class _RawCode:
    """Minimal stand-in for a code whose single block may be wider than tall."""

    def __init__(self, tower, shapes, rows):
        self.tower = tower
        self.shapes = shapes
        self._rows = np.stack(rows).astype(np.int32) if rows else np.zeros((0, sum(a * b for a, b in shapes)), np.int32)

    def weights(self, guard: int = ORACLE_GUARD) -> np.ndarray:
        q = self.tower.q
        if q ** len(self._rows) > guard:
            from msrd.errors import GuardExceeded

            raise GuardExceeded("V too large to enumerate")
        layout, off = [], 0
        for a, b in self.shapes:
            layout.append((off, a, b))
            off += a * b
        return kernels.codeword_weights(self._rows, np.array(layout, dtype=np.int32), self.tower.sub.tables())


def phi_weight_gap(phi: PhiMap, guard: int = ORACLE_GUARD) -> int:
    """Minimum of ``wt(phi(lambda)) - wt(lambda)`` over all of ``V``."""
    from msrd.codes import codeword_weights

    src, img = phi_code(phi)
    w_src = src.weights(guard).astype(np.int64)
    w_img = codeword_weights(img, guard).astype(np.int64)
    return int((w_img - w_src).min())


def extend_systematic(
    d0_code: FqmLinearCode,
    t: int,
    partition: MatrixPartition,
    verify: bool = True,
    guard: int = ORACLE_GUARD,
) -> FqLinearCode:
    """Codewords ``(M(sum lambda_i g_i), phi(lambda_1..lambda_t))``.

    ``lambda_1..lambda_t`` range over ``V``; the remaining ``k = dim - t``
    coefficients are free.  The resulting distance equals the oracle
    distance of ``d0_code``.
    """
    tower = d0_code.tower
    m = tower.m
    if not 1 <= t <= m:
        raise ConstructionError(f"t={t} must lie in [1, m={m}]")
    if d0_code.partition.n[-1] != t:
        raise ConstructionError(f"last partition block must have length t={t}")
    if partition.total_size() > t * m:
        raise ConstructionError(f"necessary condition violated: pieces hold {partition.total_size()} > t*m = {t * m} entries")
    if partition.t_cols != t:
        raise ConstructionError(f"partition has {partition.t_cols} columns, expected t={t}")
    phi = phi_build(tower, partition)
    if verify:
        cert = is_msrd(to_fq_linear(d0_code), guard)
        if not cert:
            raise ConstructionError(f"input code is not MSRD (d={cert.d}, dim={cert.dim}, bound={cert.bound})")
    sf = systematic_form(d0_code, t)
    head = LengthPartition(d0_code.partition.n[:-1], m)
    F = tower.sub
    ext_zero = [np.zeros(s, dtype=np.int32) for s in partition.shapes()]
    basis = []
    for g in sf.g_rows[t:]:
        for gm in tower.gamma:
            word = matrix_repr([tower.mul(gm, x) for x in g], head, tower)
            basis.append(MatrixTuple(F, word.blocks + tuple(ext_zero)))
    for lam in phi.v_basis:
        acc = [0] * head.length
        for li, g in zip(lam, sf.g_rows[:t]):
            if li:
                acc = [tower.add(a, tower.mul(li, x)) for a, x in zip(acc, g)]
        word = matrix_repr(acc, head, tower)
        basis.append(MatrixTuple(F, word.blocks + phi(lam).blocks))
    return FqLinearCode(tower, head.profile() + phi.profile(), basis)
