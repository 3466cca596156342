import itertools

import pytest

from msrd.codes import is_msrd, min_distance_by_messages, to_fq_linear
from msrd.errors import ConstructionError
from msrd.gf import FieldTower
from msrd.msrd_gen import (
    BetaVector,
    beta_violation,
    build_generator,
    build_lrs,
    build_msrd,
    generator_rows,
    select_beta,
    select_norm_reps,
    validate_beta,
)

T9 = FieldTower.from_q(3, 2)


@pytest.mark.parametrize("q,m", [(2, 2), (3, 2), (4, 2), (2, 3), (5, 2), (3, 3)])
def test_norm_reps_distinct(q, m):
    T = FieldTower.from_q(q, m)
    reps = select_norm_reps(T)
    assert len(reps.a) == q - 1
    assert sorted(T.norm(a) for a in reps.a) == list(range(1, q))


def test_gf9_selection():
    assert select_norm_reps(T9).a == (1, 4)
    assert select_beta(T9, 2, 1, 2).beta == (1, 3)
    assert select_beta(T9, 1, 2, 2).beta == (1, 3)


def test_lrs_matches_fixture():
    code = build_lrs(T9, 2, 2)
    assert code.genmat == ((1, 3, 1, 3), (1, 6, 4, 7))
    assert code.partition.n == (2, 2)


@pytest.mark.parametrize(
    "q,m,r,k",
    [(3, 2, 2, 1), (3, 2, 2, 2), (3, 2, 2, 3), (2, 3, 3, 1), (2, 3, 3, 2), (4, 2, 2, 1), (4, 2, 2, 2), (3, 2, 1, 1), (2, 2, 2, 1)],
)
def test_lrs_is_msrd(q, m, r, k):
    T = FieldTower.from_q(q, m)
    code = build_lrs(T, r, k)
    cert = is_msrd(to_fq_linear(code))
    assert cert, cert
    assert cert.d == (q - 1) * r - k + 1


@pytest.mark.parametrize("q,m,mu,r,k", [(3, 2, 2, 1, 1), (3, 2, 2, 1, 2), (3, 2, 2, 1, 3), (2, 2, 2, 1, 1), (2, 2, 2, 1, 2), (2, 4, 2, 2, 2)])
def test_general_is_msrd(q, m, mu, r, k):
    T = FieldTower.from_q(q, m)
    code = build_msrd(T, mu, r, k)
    cert = is_msrd(to_fq_linear(code), guard=10**7)
    assert cert, cert
    assert code.length == mu * (q - 1) * r


def test_message_oracle_agrees():
    code = build_msrd(T9, 2, 1, 2)
    assert min_distance_by_messages(code) == is_msrd(to_fq_linear(code)).d == 3


def test_beta_conditions_exhaustive_gf9():
    # every mu=2, r=1 pair: direct sum fails iff the entries are GF(3)-proportional
    for b1, b2 in itertools.product(range(1, 9), repeat=2):
        err = beta_violation(T9, (b1, b2), 2, 1, 2)
        proportional = b2 in (b1, T9.mul(2, b1))
        assert (err is not None) == proportional
        # k=1 imposes no direct-sum condition
        assert beta_violation(T9, (b1, b2), 2, 1, 1) is None


def test_bad_beta_breaks_msrd():
    reps = select_norm_reps(T9)
    beta = BetaVector((1, 2), 2, 1, 2)
    with pytest.raises(ConstructionError):
        validate_beta(T9, beta)
    with pytest.raises(ConstructionError):
        build_generator(T9, reps, beta, 2)
    # bypassing validation really loses the MSRD property
    from msrd.codes import FqmLinearCode
    from msrd.sumrank import LengthPartition

    rows = generator_rows(T9, reps, beta, range(2))
    code = FqmLinearCode(T9, LengthPartition((1,) * 4, 2), rows)
    assert not is_msrd(to_fq_linear(code))


def test_construction_errors():
    with pytest.raises(ConstructionError, match="exceeds m"):
        build_lrs(T9, 3, 1)
    with pytest.raises(ConstructionError):
        build_lrs(T9, 2, 5)
    with pytest.raises(ConstructionError, match="direct sum"):
        select_beta(T9, 2, 2, 2)
    with pytest.raises(ConstructionError):
        build_generator(T9, select_norm_reps(T9).__class__((1, 2)), select_beta(T9, 1, 2, 1), 1)
