import random

import pytest

from matspace import (
    Matrix,
    MatSpace,
    PrimeField,
    RationalField,
    VecSpace,
    Vector,
    char_poly,
    is_diagonalizable,
    all_diagonalizable,
    irreducible,
    non_isotropic,
    projective_points,
    spin,
    trivial_spectrum,
)
from matspace.errors import BudgetExceeded, ZeroVector
from matspace.predicates import FAILS, HOLDS, UNKNOWN

from oracles import irreducible_lines_oracle, random_invertible, random_space

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)
F7 = PrimeField(7)
Q = RationalField()


def upper_tri_span(field):
    return MatSpace.span(
        [
            Matrix.unit(field, 2, 0, 0),
            Matrix.unit(field, 2, 0, 1),
            Matrix.unit(field, 2, 1, 1),
        ]
    )


def test_projective_points():
    pts = list(projective_points(F3, 2))
    assert [p.entries for p in pts] == [(1, 0), (1, 1), (1, 2), (0, 1)]
    assert len(list(projective_points(F2, 3))) == 7
    assert len(list(projective_points(F5, 3))) == 31  # (5^3 - 1) / 4


def test_spin_examples():
    alt = MatSpace.standard("alt", 2, F3)
    e1 = Vector.basis(F3, 2, 0)
    assert spin(alt, e1).is_full

    upper = upper_tri_span(F3)
    sub = spin(upper, e1)
    assert sub == VecSpace.from_vectors(F3, 2, [e1])

    zero_space = MatSpace.zero(F3, 2)
    assert spin(zero_space, e1) == VecSpace.from_vectors(F3, 2, [e1])

    with pytest.raises(ZeroVector):
        spin(alt, Vector.zero(F3, 2))


def test_spin_minimality_last_generator_needed():
    # dropping the most recently added basis vector of a proper spin breaks
    # either closure or membership of the start vector
    rng = random.Random(26)
    found = 0
    for _ in range(200):
        V = random_space(F3, 3, rng, k=1)
        v = Vector(F3, [1, rng.randrange(3), rng.randrange(3)])
        sub = spin(V, v)
        if not 1 < sub.dim < 3:
            continue
        found += 1
        trimmed = VecSpace.from_vectors(F3, 3, sub.vectors()[:-1])
        closed = all(
            trimmed.contains(M * b) for M in V.basis() for b in trimmed.vectors()
        )
        assert not (closed and trimmed.contains(v))
    assert found > 5


def test_spin_result_is_stable_and_contains_start():
    rng = random.Random(20)
    for field in (F2, F3, F7):
        for _ in range(10):
            V = random_space(field, 3, rng)
            v = Vector(field, [1, rng.randrange(field.cardinality), 0])
            sub = spin(V, v)
            assert sub.contains(v)
            for M in V.basis():
                for b in sub.vectors():
                    assert sub.contains(M * b)


def test_irreducible_examples():
    assert irreducible(MatSpace.standard("alt", 2, F3)).status == HOLDS
    verdict = irreducible(upper_tri_span(F3))
    assert verdict.status == FAILS
    assert verdict.witness == VecSpace.from_vectors(F3, 2, [Vector.basis(F3, 2, 0)])
    for n in (2, 3):
        assert irreducible(MatSpace.standard("full", n, F3)).status == HOLDS


def test_irreducible_witness_is_invariant():
    rng = random.Random(21)
    for field in (F2, F3):
        for _ in range(20):
            V = random_space(field, 2, rng)
            verdict = irreducible(V)
            assert verdict.status in (HOLDS, FAILS)
            if verdict.status == FAILS:
                W = verdict.witness
                assert 0 < W.dim < 2
                for M in V.basis():
                    for b in W.vectors():
                        assert W.contains(M * b)


def test_irreducible_matches_lines_oracle():
    rng = random.Random(22)
    for field in (F2, F3):
        for _ in range(50):
            V = random_space(field, 2, rng)
            assert (irreducible(V).status == HOLDS) == irreducible_lines_oracle(V)


def test_irreducible_over_q():
    alt = MatSpace.standard("alt", 2, Q)
    v = irreducible(alt)
    assert v.status == UNKNOWN and "not decided" in v.reason
    upper = upper_tri_span(Q)
    v = upper and irreducible(upper)
    assert v.status == FAILS


def test_all_diagonalizable_examples():
    diag = MatSpace.standard("diagonal", 3, F5)
    assert all_diagonalizable(diag).status == HOLDS

    v = all_diagonalizable(MatSpace.standard("sym", 2, F2))
    assert v.status == FAILS
    assert not is_diagonalizable(v.witness)
    # the nonzero nilpotent symmetric matrix over GF(2) falsifies by hand
    hand = Matrix(F2, [[1, 1], [1, 1]])
    assert MatSpace.standard("sym", 2, F2).contains(hand)
    assert not is_diagonalizable(hand)

    v3 = all_diagonalizable(MatSpace.standard("sym", 2, F3))
    assert v3.status == FAILS
    assert v3.witness == Matrix(F3, [[1, 1], [1, 0]])  # first in enumeration order


def test_all_diagonalizable_budget_and_q():
    big = MatSpace.standard("full", 3, F3)
    with pytest.raises(BudgetExceeded):
        all_diagonalizable(big, budget=100)
    v = all_diagonalizable(MatSpace.standard("diagonal", 2, Q))
    assert v.status == UNKNOWN
    v2 = all_diagonalizable(MatSpace.standard("strict_upper", 2, Q))
    assert v2.status == FAILS  # E12 is nilpotent and nonzero


def test_trivial_spectrum_examples():
    for n in (2, 3, 4):
        assert trivial_spectrum(MatSpace.standard("strict_upper", n, F7)).status == HOLDS
    assert trivial_spectrum(MatSpace.standard("alt", 2, F3)).status == HOLDS

    v = trivial_spectrum(MatSpace.standard("scalar", 2, F3))
    assert v.status == FAILS
    M, lam = v.witness
    assert M == Matrix.identity(F3, 2) and lam == 1


def test_trivial_spectrum_witness_reverifies():
    rng = random.Random(23)
    for field in (F2, F3):
        for _ in range(20):
            V = random_space(field, 2, rng)
            v = trivial_spectrum(V)
            if v.status == FAILS:
                M, lam = v.witness
                assert lam != 0
                assert char_poly(M).eval(lam) == 0
                assert V.contains(M)


def test_trivial_spectrum_over_q():
    v = trivial_spectrum(MatSpace.standard("strict_upper", 3, Q))
    assert v.status == UNKNOWN and "sampled" in v.reason
    v2 = trivial_spectrum(MatSpace.standard("scalar", 2, Q))
    assert v2.status == FAILS


def test_non_isotropic_examples():
    assert non_isotropic(Matrix.identity(F3, 2)).status == HOLDS

    v = non_isotropic(Matrix.identity(F5, 2))
    assert v.status == FAILS
    assert v.witness == Vector(F5, [1, 2])  # 1 + 4 = 0 mod 5

    for n in (2, 3, 4):
        assert non_isotropic(Matrix.identity(Q, n)).status == HOLDS
    assert non_isotropic(Matrix.identity(Q, 2) * -1).status == HOLDS  # negative definite


def test_non_isotropic_indefinite_over_q():
    P = Matrix(Q, [[0, 1], [1, 0]])
    v = non_isotropic(P)
    assert v.status == FAILS
    x = v.witness
    assert x.dot(P * x) == 0 and not x.is_zero
    hyper = Matrix(Q, [[1, 0], [0, -2]])  # x^2 = 2y^2 has no small (or any) solution
    assert non_isotropic(hyper).status == UNKNOWN


def test_non_isotropic_finite_witness_reverifies():
    rng = random.Random(24)
    for field in (F3, F5, F7):
        for _ in range(10):
            P = random_invertible(field, 3, rng)
            v = non_isotropic(P)
            if v.status == FAILS:
                x = v.witness
                assert not x.is_zero
                assert x.dot(P * x) == 0


def test_verdicts_conjugation_invariant():
    rng = random.Random(25)
    for field in (F2, F3):
        for _ in range(10):
            V = random_space(field, 2, rng)
            P = random_invertible(field, 2, rng)
            W = V.conjugate(P)
            assert irreducible(V).status == irreducible(W).status
            assert all_diagonalizable(V).status == all_diagonalizable(W).status
            assert trivial_spectrum(V).status == trivial_spectrum(W).status
