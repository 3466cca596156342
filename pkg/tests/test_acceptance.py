"""Acceptance criteria 1-10, each reported as one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the summary)
or ``python tests/test_acceptance.py`` (lines printed directly).
"""

import itertools
import time

import numpy as np
import pytest

from msrd import codefile
from msrd.codes import (
    FqLinearCode,
    FqmLinearCode,
    dual_code,
    is_msrd,
    min_sumrank_distance,
    to_fq_linear,
    weight_distribution,
)
from msrd.combiners import GlueSpec, StackSpec, check_glue_msrd, check_stack_msrd, glue_bases, stack_product
from msrd.extenders import (
    MatrixPartition,
    build_lattice_t2,
    build_lattice_t3,
    check_one_weight,
    extend_lattice,
    extend_systematic,
    phi_build,
    phi_weight_gap,
    validate_lattice,
)
from msrd.gf import FieldTower
from msrd.kernels import rank
from msrd.msrd_gen import beta_violation, build_lrs, build_msrd, select_beta
from msrd.sumrank import BlockProfile, LengthPartition, MatrixTuple, bound_in_order, singleton_bound, sumrank_weight

SEED = 20240601
T9 = FieldTower.from_q(3, 2)


def _cert(code):
    c = is_msrd(code)
    return (c.d, c.dim, c.bound, c.msrd)


def crit1():
    code = to_fq_linear(build_lrs(T9, 2, 2))
    got = _cert(code)
    return got == (3, 4, 4, True) and code.size() == 81, f"d,dim,bound,msrd={got}", 1.0


def crit2():
    beta = select_beta(T9, 2, 1, 2)
    # the direct-sum checks are exhaustive over all subsets of size < min(k, mu)
    ok_beta = beta_violation(T9, beta.beta, 2, 1, 2) is None
    code = to_fq_linear(build_msrd(T9, 2, 1, 2))
    got = _cert(code)
    return ok_beta and got == (3, 4, 4, True), f"beta={beta.beta} d,dim,bound,msrd={got}", 1.0


def crit3():
    lrs = to_fq_linear(build_lrs(T9, 2, 2))
    spec = StackSpec([lrs, lrs])
    code = stack_product(spec)
    v = check_stack_msrd(spec)
    ok = code.profile.blocks == ((4, 2), (4, 2)) and code.size() == 6561 and v.ok and (v.d, v.dim, v.bound) == (3, 8, 8)
    return ok, f"profile={code.profile} d={v.d} dim={v.dim} bound={v.bound}", 5.0


def _random_code(rng, tw, profile, dim):
    F = tw.sub
    while True:
        rows = rng.integers(0, F.order, size=(dim, profile.size)).astype(np.int32)
        if rank(rows, F.tables()) == dim:
            return FqLinearCode(tw, profile, [MatrixTuple.from_flat(F, profile, r) for r in rows])


def crit4():
    c = to_fq_linear(FqmLinearCode(T9, LengthPartition((2,), 2), [[1, 3]]))
    spec = GlueSpec(c, c)
    glued = glue_bases(spec)
    v = check_glue_msrd(spec)
    ok = glued.size() == 9 and v.ok and (v.d, v.dim, v.bound) == (4, 2, 2)
    rng = np.random.default_rng(SEED)
    tw = FieldTower.from_q(2, 3)
    shapes = [(3, 3), (3, 2), (3, 1), (2, 2), (2, 1), (1, 1)]
    worst = None
    for _ in range(120):
        b1 = [shapes[i] for i in sorted(rng.choice(6, size=rng.integers(1, 3), replace=False))]
        low = min(m for m, _ in b1)
        cand = [s for s in shapes if s[0] <= low]
        b2 = [cand[i] for i in sorted(rng.choice(len(cand), size=1))]
        p1, p2 = BlockProfile(tuple(b1)), BlockProfile(tuple(b2))
        k = int(rng.integers(1, min(3, p1.ambient_dim, p2.ambient_dim) + 1))
        c1, c2 = _random_code(rng, tw, p1, k), _random_code(rng, tw, p2, k)
        slack = min_sumrank_distance(glue_bases(GlueSpec(c1, c2))) - min_sumrank_distance(c1) - min_sumrank_distance(c2)
        worst = slack if worst is None else min(worst, slack)
    ok = ok and worst >= 0
    return ok, f"d={v.d} dim={v.dim} bound={v.bound}; 120 random glues, min(d - d1 - d2)={worst}", 1.0


def crit5():
    ing = build_lattice_t2(T9, 1, 2, 1)
    spec = ing.spec([(2, 1), (2, 1)], [1, 2])
    found = validate_lattice(spec)
    lattice_ok = all(d == 4 - len(I) for I, d in found.items()) and len(found) == 4
    code = extend_lattice(spec, verify=False)
    got = _cert(code)
    ok = lattice_ok and code.size() == 729 and got == (4, 6, 6, True)
    return ok, f"lattice={found} d,dim,bound,msrd={got}", 2.0


def crit6():
    ing = build_lattice_t3(FieldTower.from_q(2, 3), 1, 3)
    spec = ing.spec([(3, 1), (2, 1), (1, 1), (1, 1)], [1, 3, 4])
    found = validate_lattice(spec)
    lattice_ok = len(found) == 8 and all(d == 4 - len(I) for I, d in found.items())
    code = extend_lattice(spec, verify=False)
    got = _cert(code)
    ok = lattice_ok and code.size() == 128 and got == (4, 7, 7, True)
    return ok, f"8 lattice codes ok={lattice_ok} d,dim,bound,msrd={got}", 1.0


def crit7():
    ing = build_lattice_t2(FieldTower.from_q(2, 2), 1, 2, 0)
    spec = ing.spec([(2, 1), (2, 1)], [1, 2])
    rep = check_one_weight(extend_lattice(spec), spec)
    ok = rep.distribution == {0: 1, 3: 15} and rep.agree and rep.criterion
    return ok, f"distribution={rep.distribution} criterion={rep.criterion} one_weight={rep.one_weight}", 1.0


def crit8():
    d0 = build_lrs(T9, 2, 2)
    part = MatrixPartition(2, 2, (((1, 2), (1,)), ((1,), (2,)), ((2,), (2,))))
    code = extend_systematic(d0, 2, part)
    got = _cert(code)
    control = extend_systematic(d0, 2, MatrixPartition.trivial(2, 2))
    same = weight_distribution(control) == weight_distribution(to_fq_linear(d0))
    ok = code.size() == 81 and got == (3, 4, 4, True) and same
    return ok, f"profile={code.profile} d,dim,bound,msrd={got} trivial control matches={same}", 1.0


def _axioms(T):
    t = T.ext.tables()
    a = np.arange(T.order)
    A, B, C = a[:, None, None], a[None, :, None], a[None, None, :]
    return (
        (t.add == t.add.T).all()
        and (t.mul == t.mul.T).all()
        and (t.add[a, t.neg] == 0).all()
        and (t.mul[a[1:], t.inv[1:]] == 1).all()
        and (t.add[t.add[A, B], C] == t.add[A, t.add[B, C]]).all()
        and (t.mul[t.mul[A, B], C] == t.mul[A, t.mul[B, C]]).all()
        and (t.mul[A, t.add[B, C]] == t.add[t.mul[A, B], t.mul[A, C]]).all()
    )


def _norm_ok(T):
    t = T.ext.tables()
    norms = np.array([T.norm(x) for x in range(T.order)])
    counts = np.bincount(norms[1:], minlength=T.q)
    fibers = counts[0] == 0 and (counts[1:] == (T.order - 1) // (T.q - 1)).all()
    mult = (norms[t.mul[1:, 1:]] == t.mul[norms[1:, None], norms[None, 1:]]).all()
    return fibers and mult


def crit9():
    rng = np.random.default_rng(SEED)
    results = {}
    towers = [FieldTower.from_q(q, m) for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16) for m in range(1, 9) if q**m <= 256]
    results["field axioms"] = all(_axioms(T) for T in towers)
    results["norm"] = all(_norm_ok(T) for T in towers if T.m > 1)
    F3 = T9.sub
    prof = BlockProfile(((3, 2), (2, 2), (2, 1)))
    ok = True
    for _ in range(300):
        X = MatrixTuple(F3, [rng.integers(0, 3, size=s) for s in prof])
        Y = MatrixTuple(F3, [rng.integers(0, 3, size=s) for s in prof])
        w = sumrank_weight(X)
        ok &= (w == 0) == X.is_zero() and sumrank_weight(X + Y) <= w + sumrank_weight(Y) and sumrank_weight(-X) == w
    T_alt = T9.with_gamma((4, 5))
    lrs = build_lrs(T9, 2, 2)
    ok &= weight_distribution(to_fq_linear(FqmLinearCode(T_alt, lrs.partition, lrs.genmat))) == weight_distribution(to_fq_linear(lrs))
    results["weight axioms and basis independence"] = bool(ok)
    samples, ok = 0, True
    tabs = F3.tables()
    while samples < 1000:
        m, t = (int(x) for x in rng.integers(1, 6, size=2))
        taken = np.zeros((m, t), dtype=bool)
        pieces = []
        for _ in range(4):
            X = sorted(set(rng.integers(1, m + 1, size=rng.integers(1, m + 1)).tolist()))
            Y = sorted(set(rng.integers(1, t + 1, size=rng.integers(1, t + 1)).tolist()))
            cells = np.ix_([x - 1 for x in X], [y - 1 for y in Y])
            if not taken[cells].any():
                taken[cells] = True
                pieces.append((tuple(X), tuple(Y)))
        P = MatrixPartition(m, t, tuple(pieces))
        Cm = np.where(taken, rng.integers(0, 3, size=(m, t)), 0)
        ok &= rank(Cm, tabs) <= sum(rank(p, tabs) for p in P.project(Cm))
        samples += 1
    results["rank subadditivity (1000 samples)"] = bool(ok)
    built = [
        (T9, MatrixPartition(2, 2, (((1, 2), (1,)), ((1,), (2,)), ((2,), (2,))))),
        (T9, MatrixPartition.trivial(2, 2)),
        (
            FieldTower.from_q(2, 4),
            MatrixPartition(4, 5, (((1, 2, 3), (1, 2, 3)), ((4,), (1, 2)), ((1,), (4, 5)), ((2, 3), (4, 5)), ((4,), (3, 4, 5)))),
        ),
    ]
    results["phi weight gap >= 0"] = all(phi_weight_gap(phi_build(T, P), guard=2**21) >= 0 for T, P in built)
    blocks = [(3, 3), (3, 1), (3, 2), (2, 1), (2, 2)]
    base = BlockProfile(tuple(blocks)).canonical().blocks
    groups = [list(g) for _, g in itertools.groupby(base, key=lambda b: b[0])]
    inv = True
    for d in range(1, 10):
        ref = singleton_bound(BlockProfile(base), d)
        for perms in itertools.product(*(itertools.permutations(g) for g in groups)):
            inv &= bound_in_order(tuple(b for g in perms for b in g), d) == ref
    results["bound permutation invariance"] = inv
    rt = True
    for code in [to_fq_linear(lrs), stack_product(StackSpec([to_fq_linear(lrs)] * 2))]:
        cf = codefile.CodeFile.from_code(code)
        rt &= codefile.parse(codefile.serialize(cf)) == cf
    cf = codefile.CodeFile.from_code(lrs)
    rt &= codefile.parse(codefile.serialize(cf)) == cf
    results["round-trips"] = rt
    failed = [k for k, v in results.items() if not v]
    return not failed, "all properties hold" if not failed else f"failed: {failed}", 20.0


def crit10():
    dual = dual_code(build_lrs(T9, 2, 2))
    got = _cert(to_fq_linear(dual))
    return dual.dim == 2 and got == (3, 4, 4, True), f"dim_F9={dual.dim} d,dim,bound,msrd={got}", 1.0


CRITERIA = [crit1, crit2, crit3, crit4, crit5, crit6, crit7, crit8, crit9, crit10]


def evaluate(i):
    t0 = time.perf_counter()
    ok, detail, limit = CRITERIA[i - 1]()
    dt = time.perf_counter() - t0
    passed = bool(ok) and dt < limit
    line = f"criterion {i}: {'PASS' if passed else 'FAIL'} {detail} time={dt:.3f}s limit={limit:g}s"
    return passed, line


@pytest.mark.parametrize("i", range(1, 11))
def test_criterion(i):
    from conftest import ACCEPTANCE_LINES

    passed, line = evaluate(i)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert passed, line


if __name__ == "__main__":
    for i in range(1, 11):
        print(evaluate(i)[1])
