import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from matspace import (
    Matrix,
    Poly,
    PrimeField,
    RationalField,
    Vector,
    char_poly,
    det,
    eigenvalues_in_field,
    invert,
    is_diagonalizable,
    kernel_basis,
    min_poly,
    rref,
)
from matspace.errors import FieldMismatch, ShapeMismatch, Singular

from oracles import (
    det_oracle,
    diagonalizable_oracle,
    eigenvalues_oracle,
    random_invertible,
    random_matrix,
)

F2 = PrimeField(2)
F3 = PrimeField(3)
F7 = PrimeField(7)
Q = RationalField()


def test_rref_examples():
    M = Matrix(F2, [[1, 1], [1, 1]])
    R, rank, pivots = rref(M)
    assert R == Matrix(F2, [[1, 1], [0, 0]])
    assert rank == 1 and pivots == [0]

    R, rank, pivots = rref(Matrix.identity(Q, 3))
    assert R == Matrix.identity(Q, 3)
    assert rank == 3 and pivots == [0, 1, 2]

    R, rank, pivots = rref(Matrix.zero(Q, 2))
    assert R == Matrix.zero(Q, 2)
    assert rank == 0 and pivots == []


def test_rref_is_idempotent_random():
    rng = random.Random(1)
    for field in (F2, F3, F7, Q):
        for _ in range(20):
            M = random_matrix(field, 3, rng)
            R, _, _ = rref(M)
            R2, _, _ = rref(R)
            assert R == R2


def test_kernel_examples():
    e12 = Matrix.unit(F7, 2, 0, 1)
    assert kernel_basis(e12) == [Vector.basis(F7, 2, 0)]
    assert kernel_basis(Matrix(Q, [[1, 2], [3, 4]])) == []
    assert kernel_basis(Matrix.zero(Q, 2)) == [
        Vector.basis(Q, 2, 0),
        Vector.basis(Q, 2, 1),
    ]


def test_kernel_really_annihilates():
    rng = random.Random(2)
    for field in (F2, F3, Q):
        for _ in range(20):
            M = random_matrix(field, 3, rng)
            for v in kernel_basis(M):
                assert (M * v).is_zero
            R, rank, _ = rref(M)
            assert len(kernel_basis(M)) == 3 - rank


def test_invert_examples():
    M = Matrix(Q, [[3, 4], [-4, 3]])
    expected = Matrix(
        Q,
        [
            [Fraction(3, 25), Fraction(-4, 25)],
            [Fraction(4, 25), Fraction(3, 25)],
        ],
    )
    assert invert(M) == expected
    assert invert(Matrix.diagonal(F3, [1, 2])) == Matrix.diagonal(F3, [1, 2])
    with pytest.raises(Singular):
        invert(Matrix(F2, [[1, 1], [1, 1]]))
    with pytest.raises(ShapeMismatch):
        invert(Matrix.zero(F2, 2, 3))


def test_matrix_ops_field_mismatch():
    with pytest.raises(FieldMismatch):
        Matrix.identity(F2, 2) + Matrix.identity(F3, 2)


def test_char_poly_examples():
    # (E12 + E21) * diag(1,2)^-1 over GF(7): ratio 2^-1 = 4, chi = t^2 - 4
    J = Matrix.unit(F7, 2, 0, 1) + Matrix.unit(F7, 2, 1, 0)
    M = J * invert(Matrix.diagonal(F7, [1, 2]))
    assert char_poly(M) == Poly(F7, [3, 0, 1])  # t^2 - 4 = t^2 + 3

    assert char_poly(Matrix.unit(F3, 2, 0, 1)) == Poly(F3, [0, 0, 1])  # t^2
    assert char_poly(Matrix.identity(Q, 2)) == Poly(Q, [1, -2, 1])  # (t-1)^2


def test_cayley_hamilton_random():
    rng = random.Random(3)
    for field in (F7, Q):
        for n in range(1, 6):
            for _ in range(4):
                M = random_matrix(field, n, rng)
                chi = char_poly(M)
                acc = Matrix.zero(field, n)
                for i, c in enumerate(chi.coeffs):
                    acc = acc + (M**i) * c
                assert acc.is_zero


@given(st.lists(st.integers(min_value=0, max_value=6), min_size=9, max_size=9))
def test_cayley_hamilton_hypothesis(entries):
    M = Matrix(F7, [entries[0:3], entries[3:6], entries[6:9]])
    chi = char_poly(M)
    acc = Matrix.zero(F7, 3)
    for i, c in enumerate(chi.coeffs):
        acc = acc + (M**i) * c
    assert acc.is_zero


def test_det_matches_oracle():
    rng = random.Random(4)
    for field in (F2, F3, F7, Q):
        for n in (1, 2, 3, 4):
            for _ in range(5):
                M = random_matrix(field, n, rng)
                assert det(M) == det_oracle(M)


def test_min_poly_examples():
    assert min_poly(Matrix.identity(F7, 3)) == Poly(F7, [-1, 1])  # t - 1
    assert min_poly(Matrix.diagonal(F7, [1, 2])) == Poly(F7, [2, 4, 1])  # t^2+4t+2
    assert min_poly(Matrix(F2, [[1, 1], [1, 1]])) == Poly(F2, [0, 0, 1])  # t^2
    assert min_poly(Matrix.zero(F7, 2)) == Poly(F7, [0, 1])  # t


def test_min_poly_divides_char_poly_and_conjugation_invariance():
    rng = random.Random(5)
    for field in (F3, F7, Q):
        for _ in range(10):
            M = random_matrix(field, 3, rng)
            m, chi = min_poly(M), char_poly(M)
            assert (chi % m).is_zero
            P = random_invertible(field, 3, rng)
            conj = P * M * invert(P)
            assert char_poly(conj) == chi
            assert min_poly(conj) == m


def test_eigenvalues_examples():
    assert eigenvalues_in_field(Matrix.diagonal(F3, [1, 2])) == [1, 2]
    assert eigenvalues_in_field(Matrix(F3, [[0, 1], [2, 0]])) == []
    assert eigenvalues_in_field(Matrix(Q, [[0, 1], [1, 1]])) == []
    assert eigenvalues_in_field(Matrix(Q, [[2, 0], [0, Fraction(1, 2)]])) == [
        Fraction(1, 2),
        Fraction(2),
    ]


def test_eigenvalues_against_scan_oracle():
    rng = random.Random(6)
    for field in (F2, F3, PrimeField(5), F7, PrimeField(11)):
        for _ in range(15):
            M = random_matrix(field, 3, rng)
            assert eigenvalues_in_field(M) == eigenvalues_oracle(M)


def test_eigenvalues_large_field_uses_splitting():
    p = 10007  # above the exhaustive-scan threshold
    F = PrimeField(p)
    M = Matrix.diagonal(F, [5, 1234, 9876])
    assert eigenvalues_in_field(M) == [5, 1234, 9876]
    # companion matrix of an irreducible quadratic: no roots
    M2 = Matrix(F, [[0, -1], [1, 0]])  # chi = t^2 + 1; p = 3 mod 4 so no roots
    assert p % 4 == 3
    assert eigenvalues_in_field(M2) == []


def test_is_diagonalizable_examples():
    assert not is_diagonalizable(Matrix(F2, [[1, 1], [1, 1]]))  # nonzero nilpotent
    assert not is_diagonalizable(Matrix(F3, [[1, 1], [1, 0]]))  # chi irreducible mod 3
    assert is_diagonalizable(Matrix.identity(F7, 4))
    assert is_diagonalizable(Matrix.zero(Q, 3))
    assert not is_diagonalizable(Matrix(Q, [[0, 1], [1, 1]]))  # irrational eigenvalues
    assert is_diagonalizable(Matrix(Q, [[0, 1], [1, 0]]))  # eigenvalues +-1


def test_is_diagonalizable_oracle_random():
    rng = random.Random(7)
    for field in (F2, F3, PrimeField(5)):
        for n in (2, 3):
            for _ in range(20):
                M = random_matrix(field, n, rng)
                assert is_diagonalizable(M) == diagonalizable_oracle(M)


def test_matrix_constructors():
    E = Matrix.unit(F3, 2, 0, 1)
    assert E.rows == ((0, 1), (0, 0))
    assert Matrix.identity(F3, 2).rows == ((1, 0), (0, 1))
    D = Matrix.diagonal(Q, [Fraction(1, 2), 3])
    assert D.rows == ((Fraction(1, 2), Fraction(0)), (Fraction(0), Fraction(3)))
    assert D.transpose() == D
    assert (E + E.transpose()).is_symmetric
    assert Matrix.identity(F3, 3).trace() == 0  # 3 = 0 mod 3


def test_vector_ops():
    v = Vector(F7, [1, 2])
    w = Vector(F7, [3, 4])
    assert (v + w).entries == (4, 6)
    assert v.dot(w) == (3 + 8) % 7
    assert Vector.basis(F7, 3, 1).entries == (0, 1, 0)
    M = Matrix(F7, [[1, 2], [3, 4]])
    assert (M * v).entries == (5, 4)  # (1+4, 3+8) mod 7
