"""Generator matrices ``M_k(a, beta)`` of the general F_{q^m}-linear MSRD family.

Row ``i`` (0-based), norm class ``u`` and column ``j`` hold
``beta_j^(q^i) * a_u^((q^i - 1)/(q - 1))``.  Linearized Reed-Solomon codes
are the ``mu = 1`` case.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from msrd import linalg
from msrd.codes import FqmLinearCode
from msrd.errors import ConstructionError
from msrd.gf import ENUMERATION_GUARD, FieldTower
from msrd.sumrank import LengthPartition


@dataclass(frozen=True)
class NormClassReps:
    a: tuple[int, ...]


@dataclass(frozen=True)
class BetaVector:
    beta: tuple[int, ...]
    mu: int
    r: int
    k_context: int

    def segments(self) -> list[tuple[int, ...]]:
        r = self.r
        return [self.beta[i * r : (i + 1) * r] for i in range(self.mu)]


def select_norm_reps(tower: FieldTower, guard: int = ENUMERATION_GUARD) -> NormClassReps:
    """First element of each norm class in canonical order, ``q - 1`` of them."""
    seen: set[int] = set()
    reps = []
    for a in tower.elements(guard):
        if a == 0:
            continue
        n = tower.norm(a)
        if n not in seen:
            seen.add(n)
            reps.append(a)
            if len(reps) == tower.q - 1:
                break
    return NormClassReps(tuple(reps))


def _span_rank(vectors, tower: FieldTower) -> int:
    return linalg.rank([tower.coords(v) for v in vectors], tower.sub)


def beta_violation(tower: FieldTower, beta, mu: int, r: int, k: int) -> str | None:
    """Describe the first failed subspace condition, or None if all hold."""
    if len(beta) != mu * r:
        return f"beta must have mu*r = {mu * r} entries"
    if any(b == 0 for b in beta):
        return "beta entries must be nonzero"
    segs = [beta[i * r : (i + 1) * r] for i in range(mu)]
    for i, seg in enumerate(segs):
        if _span_rank(seg, tower) != r:
            return f"H_{i + 1} has dimension below r={r}"
    max_gamma = min(k, mu) - 1
    for i in range(mu):
        others = [j for j in range(mu) if j != i]
        for size in range(1, max_gamma + 1):
            for gamma in itertools.combinations(others, size):
                rest = [b for j in gamma for b in segs[j]]
                # H_i meets the sum trivially iff dimensions add up
                if _span_rank(list(segs[i]) + rest, tower) != r + _span_rank(rest, tower):
                    return f"H_{i + 1} meets the sum of H_j for j in {[g + 1 for g in gamma]}"
    return None


def validate_beta(tower: FieldTower, beta: BetaVector) -> None:
    err = beta_violation(tower, beta.beta, beta.mu, beta.r, beta.k_context)
    if err:
        raise ConstructionError(err)


def select_beta(tower: FieldTower, mu: int, r: int, k: int, guard: int = ENUMERATION_GUARD) -> BetaVector:
    """Deterministic choice of beta.

    ``mu = 1`` takes the polynomial basis prefix; otherwise a depth-first
    search over canonical element order returns the first valid vector.
    """
    if mu < 1 or r < 1 or k < 1:
        raise ConstructionError("mu, r and k must be positive")
    if r > tower.m:
        raise ConstructionError(f"r={r} exceeds m={tower.m}: H_i cannot have dimension r")
    if mu == 1:
        return BetaVector(tuple(tower.q**i for i in range(r)), 1, r, k)
    if r * min(k, mu) > tower.m:
        raise ConstructionError(
            f"no valid beta: {min(k, mu)} subspaces of dimension {r} cannot form a direct sum in dimension m={tower.m}"
        )
    elements = [x for x in tower.elements(guard) if x != 0]
    max_gamma = min(k, mu) - 1
    segs: list[list[int]] = []

    def segment_ok(seg) -> bool:
        if _span_rank(seg, tower) != len(seg):
            return False
        if len(seg) < r:
            return True
        i = len(segs)
        for size in range(1, min(max_gamma, i) + 1):
            for gamma in itertools.combinations(range(i), size):
                rest = [b for j in gamma for b in segs[j]]
                if _span_rank(seg + rest, tower) != r + _span_rank(rest, tower):
                    return False
        return True

    def extend(seg: list[int]) -> bool:
        if len(seg) == r:
            segs.append(seg)
            if len(segs) == mu or extend([]):
                return True
            segs.pop()
            return False
        for x in elements:
            cand = seg + [x]
            if segment_ok(cand) and extend(cand):
                return True
        return False

    if not extend([]):
        raise ConstructionError(f"no valid beta found in GF({tower.order}) for mu={mu}, r={r}, k={k}")
    beta = BetaVector(tuple(b for s in segs for b in s), mu, r, k)
    validate_beta(tower, beta)
    return beta


def generator_rows(tower: FieldTower, reps: NormClassReps, beta: BetaVector, exponents) -> list[list[int]]:
    """Rows of the ``M`` pattern for the given Frobenius exponents ``i``."""
    q = tower.q
    rows = []
    for i in exponents:
        num = q**i - 1
        assert num % (q - 1) == 0
        e = num // (q - 1)
        row = []
        for a in reps.a:
            scale = tower.pow(a, e)
            row.extend(tower.mul(tower.frobenius(b, i), scale) for b in beta.beta)
        rows.append(row)
    return rows


def build_generator(tower: FieldTower, reps: NormClassReps, beta: BetaVector, k: int) -> FqmLinearCode:
    n = beta.mu * (tower.q - 1) * beta.r
    if len(reps.a) != tower.q - 1:
        raise ConstructionError(f"need q-1 = {tower.q - 1} norm class representatives")
    norms = [tower.norm(a) for a in reps.a]
    if len(set(norms)) != len(norms) or 0 in reps.a:
        raise ConstructionError("representatives must be nonzero with pairwise distinct norms")
    if not 1 <= k <= n:
        raise ConstructionError(f"k={k} outside [1, n={n}]")
    if beta.k_context != k:
        beta = BetaVector(beta.beta, beta.mu, beta.r, k)
    validate_beta(tower, beta)
    rows = generator_rows(tower, reps, beta, range(k))
    partition = LengthPartition((beta.r,) * (beta.mu * (tower.q - 1)), tower.m)
    return FqmLinearCode(tower, partition, rows)


def build_msrd(tower: FieldTower, mu: int, r: int, k: int) -> FqmLinearCode:
    """``build_generator`` with the default deterministic selections."""
    reps = select_norm_reps(tower)
    beta = select_beta(tower, mu, r, k)
    return build_generator(tower, reps, beta, k)


def build_lrs(tower: FieldTower, r: int, k: int) -> FqmLinearCode:
    """Linearized Reed-Solomon code: length ``(q-1) r``, blocks of ``r`` columns."""
    if r > tower.m:
        raise ConstructionError(f"r={r} exceeds m={tower.m}")
    if not 1 <= k <= (tower.q - 1) * r:
        raise ConstructionError(f"k={k} outside [1, (q-1) r = {(tower.q - 1) * r}]")
    return build_msrd(tower, 1, r, k)
