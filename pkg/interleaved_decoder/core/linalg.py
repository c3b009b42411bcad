"""
Linear algebra over finite fields.

Row reduction to reduced row echelon form, rank, null space and linear
solves for matrices held as numpy int64 arrays of field elements. The
elimination itself runs on galois FieldArrays.
"""

from typing import Any, List, Optional, Tuple

import numpy as np

from .finite_field import FieldSpec, TowerSpec, as_ints


def as_matrix(matrix: Any) -> np.ndarray:
    a = np.array(matrix, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValueError(f"Expected a 2-D matrix, got shape {a.shape}")
    return a


def _pivot_columns(reduced: np.ndarray) -> List[int]:
    pivots = []
    for row in reduced:
        nonzero = np.flatnonzero(row)
        if nonzero.size == 0:
            break
        pivots.append(int(nonzero[0]))
    return pivots


def row_reduce(field: FieldSpec, matrix: Any) -> Tuple[np.ndarray, List[int]]:
    """
    Reduce a matrix to reduced row echelon form.

    Args:
        field: Field of the entries
        matrix: Matrix to reduce (not modified)

    Returns:
        Tuple of the reduced matrix and the list of pivot columns
    """
    a = as_matrix(matrix)
    if a.size == 0:
        return a, []
    reduced = as_ints(field.lift(a).row_reduce())
    return reduced, _pivot_columns(reduced)


def rank(field: FieldSpec, matrix: Any) -> int:
    a = as_matrix(matrix)
    if a.size == 0:
        return 0
    return int(np.linalg.matrix_rank(field.lift(a)))


def null_space(field: FieldSpec, matrix: Any) -> np.ndarray:
    """
    Basis of the right null space {x : M x = 0}.

    Returns:
        Array of shape (dimension, columns), one basis vector per row
    """
    a = as_matrix(matrix)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    basis = as_ints(field.lift(a).null_space())
    return basis.reshape(-1, cols)


def solve(field: FieldSpec, a: Any, b: Any) -> Optional[np.ndarray]:
    """
    Solve A X = B for the unique X.

    Square systems go through ``np.linalg.solve``; rectangular ones are
    reduced together with the right-hand side.

    Args:
        field: Field of the entries
        a: Coefficient matrix (rows x unknowns)
        b: Right-hand side vector or matrix with matching row count

    Returns:
        The solution, shaped like B with the unknowns as first axis, or
        None when the system is inconsistent or underdetermined
    """
    a = as_matrix(a)
    rhs = np.asarray(b, dtype=np.int64)
    vector = rhs.ndim == 1
    if vector:
        rhs = rhs.reshape(-1, 1)
    if rhs.shape[0] != a.shape[0]:
        raise ValueError(
            f"Right-hand side has {rhs.shape[0]} rows, matrix has {a.shape[0]}"
        )
    unknowns = a.shape[1]
    if a.shape[0] == unknowns and rank(field, a) == unknowns:
        x = as_ints(np.linalg.solve(field.lift(a), field.lift(rhs)))
    else:
        reduced, pivots = row_reduce(field, np.hstack([a, rhs]))
        if any(p >= unknowns for p in pivots) or len(pivots) < unknowns:
            return None
        x = reduced[:unknowns, unknowns:]
    return x[:, 0] if vector else x


def mat_mul(field: FieldSpec, a: Any, b: Any) -> np.ndarray:
    a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
    if a.shape[-1] != b.shape[0]:
        raise ValueError(f"Cannot multiply shapes {a.shape} and {b.shape}")
    if a.size == 0 or b.size == 0:
        return np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    return as_ints(field.lift(a) @ field.lift(b))


def rank_ext(matrix: Any, field: FieldSpec) -> int:
    """Rank with arithmetic in the matrix's own field."""
    return rank(field, matrix)


def rank_q(matrix: Any, tower: TowerSpec) -> int:
    """
    Rank over the base field GF(q) of a matrix over GF(q^m).

    Each entry is expanded to its m base-field coordinates, so an n x k
    matrix becomes n x km over GF(q). A vector's GF(q)-rank is the rank
    of its column form.
    """
    a = as_matrix(matrix)
    if a.size == 0:
        return 0
    expanded = tower.expand_array(a).reshape(a.shape[0], a.shape[1] * tower.m)
    return rank(tower.base, expanded)
