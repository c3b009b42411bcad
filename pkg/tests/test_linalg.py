"""
Unit tests for linear algebra over finite fields.
"""

import galois
import numpy as np
import pytest

from interleaved_decoder.core.linalg import (
    mat_mul,
    null_space,
    rank,
    rank_ext,
    rank_q,
    row_reduce,
    solve,
)


def _naive_rank_gf2(matrix: np.ndarray) -> int:
    rows = [int("".join(str(int(b)) for b in row), 2) for row in matrix]
    basis = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


class TestRowReduce:
    """Test reduction to reduced row echelon form."""

    def test_pivots_and_identity_block(self, gf5):
        reduced, pivots = row_reduce(gf5, [[2, 4, 1], [1, 2, 4]])
        assert pivots == [0, 2]
        assert list(reduced[0]) == [1, 2, 0]
        assert list(reduced[1]) == [0, 0, 1]

    def test_input_not_modified(self, gf5):
        a = np.array([[2, 1], [1, 1]])
        row_reduce(gf5, a)
        assert a.tolist() == [[2, 1], [1, 1]]


class TestRank:
    """Test rank computations."""

    def test_zero_matrix(self, gf16):
        assert rank(gf16, np.zeros((3, 4), dtype=np.int64)) == 0

    def test_identity(self, gf256):
        assert rank(gf256, np.eye(6, dtype=np.int64)) == 6

    def test_equal_rows(self, gf16):
        assert rank(gf16, [[3, 7, 1], [3, 7, 1], [5, 0, 2]]) <= 2

    def test_rank_ext_example(self, gf8):
        # det [[a, 1], [a^2, a]] = a*a - a^2 = 0
        assert rank_ext([[2, 1], [4, 2]], gf8) == 1

    def test_against_galois(self, gf256, rng):
        GF = galois.GF(2**8, irreducible_poly=0x11D)
        for _ in range(10):
            m = rng.integers(0, 256, (5, 7))
            m[4] = gf256.add_array(m[0], gf256.mul_array(3, m[1]))
            assert rank(gf256, m) == np.linalg.matrix_rank(GF(m))


class TestRankQ:
    """Test rank over the base field."""

    def test_column_example(self, tower8):
        assert rank_q([[2], [4]], tower8) == 2

    def test_zero(self, tower8):
        assert rank_q(np.zeros((2, 2), dtype=np.int64), tower8) == 0

    def test_dimension_bound(self, tower16, rng):
        m = rng.integers(0, 16, (6, 1))
        assert rank_q(m, tower16) <= min(6, 1 * 4)

    def test_against_naive_expansion(self, tower16, rng):
        for _ in range(20):
            m = rng.integers(0, 16, (4, 2))
            expanded = tower16.expand_array(m).reshape(4, 8)
            assert rank_q(m, tower16) == _naive_rank_gf2(expanded)


class TestSolve:
    """Test linear solves and null spaces."""

    def test_unique_solution(self, gf5):
        a = [[1, 1], [1, 2]]
        x = solve(gf5, a, [[1, 1], [1, 2]])
        assert x.tolist() == [[1, 0], [0, 1]]

    def test_vector_rhs(self, gf16, rng):
        a = np.array([[1, 2], [3, 4]])
        x = np.array([7, 9])
        assert solve(gf16, a, mat_mul(gf16, a, x)).tolist() == [7, 9]

    def test_overdetermined_consistent(self, gf16):
        a = np.array([[1, 2], [3, 4], [5, 6]])
        x = np.array([7, 9])
        assert solve(gf16, a, mat_mul(gf16, a, x)).tolist() == [7, 9]

    def test_square_matches_galois(self, gf256, rng):
        GF = galois.GF(2**8, irreducible_poly=0x11D)
        a = np.array([[1, 2, 3], [0, 1, 4], [5, 6, 0]])
        b = rng.integers(0, 256, 3)
        expected = np.array(np.linalg.solve(GF(a), GF(b)), dtype=np.int64)
        assert solve(gf256, a, b).tolist() == expected.tolist()

    def test_inconsistent(self, gf5):
        assert solve(gf5, [[1, 1], [2, 2]], [1, 3]) is None

    def test_underdetermined(self, gf5):
        assert solve(gf5, [[1, 1]], [1]) is None

    def test_row_mismatch(self, gf5):
        with pytest.raises(ValueError):
            solve(gf5, [[1, 1]], [1, 2])

    def test_null_space(self, gf16, rng):
        m = rng.integers(0, 16, (2, 5))
        basis = null_space(gf16, m)
        assert basis.shape == (5 - rank(gf16, m), 5)
        for v in basis:
            assert not np.any(mat_mul(gf16, m, v))

    def test_mat_mul_shape_error(self, gf5):
        with pytest.raises(ValueError):
            mat_mul(gf5, np.ones((2, 3)), np.ones((2, 3)))
