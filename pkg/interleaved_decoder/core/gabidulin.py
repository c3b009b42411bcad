"""
Interleaved Gabidulin codes and their collaborative decoder.

Codewords are n x l matrices over GF(q^m) whose columns are Gabidulin
codewords. Decoding streams syndrome rows through the same incremental
elimination as the Reed-Solomon decoder after undoing the Frobenius twist
of each row, then recovers the error span from a linearized polynomial
and solves for the rank error.
"""

from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Optional, Sequence, Tuple

import numpy as np
import structlog

from .finite_field import FieldError, TowerSpec
from .irs_collab import (
    DecodeOutcome,
    DecodeStatus,
    Dependency,
    OpCounters,
    ReconstructionError,
    SyndromeMatrix,
    check_received,
    f_max,
    find_dependency,
    weighted_row_sum,
)
from .linalg import mat_mul, null_space, rank_q, row_reduce, solve
from .rs_codes import CodeParameterError, ShapeMismatchError

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class GabidulinCode:
    """
    Gabidulin code of length n and dimension k over GF(q^m).

    The generator matrix is the Moore matrix of g; the parity vector h
    satisfies sum_j h_j g_j^[i] = 0 for i = 0..n-2, so that every
    syndrome row S_i = sum_j h_j Y_j^[i-1] vanishes on codewords.
    """

    tower: TowerSpec
    n: int
    k: int
    g: Tuple[int, ...]
    h: Tuple[int, ...]

    @property
    def d(self) -> int:
        return self.n - self.k + 1

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    def generator_matrix(self) -> np.ndarray:
        """k x n Moore matrix with entries g_j^[i]."""
        g = np.array(self.g, dtype=np.int64)
        return np.stack([self.tower.frobenius_array(g, i) for i in range(self.k)])

    def to_dict(self) -> dict:
        return {
            "q": self.tower.q,
            "m": self.tower.m,
            "n": self.n,
            "k": self.k,
            "g": list(self.g),
        }


def _moore_rows(tower: TowerSpec, g: Sequence[int], count: int) -> np.ndarray:
    vec = np.array(g, dtype=np.int64)
    return np.stack([tower.frobenius_array(vec, i) for i in range(count)])


def gab_make(tower: TowerSpec, n: int, k: int, g: Sequence[int]) -> GabidulinCode:
    """
    Construct a Gabidulin code from n GF(q)-independent elements g.

    Args:
        tower: GF(q^m) over GF(q)
        n: Length, n <= m
        k: Dimension, 1 <= k < n
        g: Evaluation vector

    Returns:
        Code with the parity vector h computed from the Moore system

    Raises:
        CodeParameterError: If the parameters are invalid, g is dependent
            over GF(q), or no suitable parity vector exists
    """
    if not 1 <= n <= tower.m:
        raise CodeParameterError(f"Length must satisfy 1 <= n <= m={tower.m}, got {n}")
    if not 1 <= k < n:
        raise CodeParameterError(f"Dimension must satisfy 1 <= k < n, got {k}")
    if len(g) != n:
        raise CodeParameterError(f"Need {n} evaluation elements, got {len(g)}")
    g = tuple(tower.extension.check(int(x)) for x in g)
    if rank_q(np.array(g, dtype=np.int64)[:, None], tower) != n:
        raise CodeParameterError("Evaluation elements are linearly dependent over GF(q)")

    ext = tower.extension
    moore = _moore_rows(tower, g, n - 1)
    solutions = null_space(ext, moore)
    if solutions.shape[0] == 0:
        raise CodeParameterError("Parity system has no nonzero solution")
    h = solutions[0]
    if np.any(mat_mul(ext, moore, h)):
        raise CodeParameterError("Parity vector violates the orthogonality conditions")
    if rank_q(h[:, None], tower) != n:
        raise CodeParameterError("Parity vector is linearly dependent over GF(q)")

    logger.debug("Gabidulin code constructed", q=tower.q, m=tower.m, n=n, k=k)
    return GabidulinCode(tower, n, k, g, tuple(int(x) for x in h))


def gab_encode(code: GabidulinCode, messages: Any) -> np.ndarray:
    """
    Encode a k x l message matrix: c_j = sum_i U_i g_j^[i] per column.

    Raises:
        ShapeMismatchError: If the message matrix does not have k rows
    """
    u = np.asarray(messages, dtype=np.int64)
    if u.ndim != 2 or u.shape[0] != code.k:
        raise ShapeMismatchError(f"Messages must have {code.k} rows, got shape {u.shape}")
    if u.size and (u.min() < 0 or u.max() >= code.tower.extension.order):
        raise FieldError("Message symbols outside the extension field")
    return mat_mul(code.tower.extension, code.generator_matrix().T, u)


def gab_syndrome_row(
    code: GabidulinCode, y: Any, i: int, counters: Optional[OpCounters] = None
) -> np.ndarray:
    """Row i (1-based): S_i = sum_j h_j Y_j^[i-1]."""
    if not 1 <= i <= code.redundancy:
        raise CodeParameterError(f"Syndrome row {i} outside 1..{code.redundancy}")
    twisted = code.tower.frobenius_array(np.asarray(y, dtype=np.int64), i - 1)
    return weighted_row_sum(
        code.tower.extension, np.array(code.h, dtype=np.int64), twisted, counters
    )


def gab_syndromes(code: GabidulinCode, y: Any, rows: Optional[int] = None) -> np.ndarray:
    """
    The first ``rows`` (default d-1) syndrome rows of Y.

    Raises:
        ShapeMismatchError: If Y does not have n rows
    """
    received = np.asarray(y, dtype=np.int64)
    if received.ndim != 2 or received.shape[0] != code.n:
        raise ShapeMismatchError(f"Received matrix must have {code.n} rows")
    count = code.redundancy if rows is None else rows
    return np.array(
        [gab_syndrome_row(code, received, i) for i in range(1, count + 1)],
        dtype=np.int64,
    ).reshape(count, received.shape[1])


def psi_map(rows: Any, tower: TowerSpec) -> np.ndarray:
    """
    Twist syndrome row i (1-based) by [-(i-1)].

    The dependency step for rank-f errors succeeds exactly when the
    first f twisted rows have full rank over GF(q^m).
    """
    s = np.asarray(rows, dtype=np.int64)
    if s.shape[0] == 0:
        return s.copy()
    return np.stack([tower.frobenius_array(s[i], -i) for i in range(s.shape[0])])


def _untwisted(rows: Iterable[np.ndarray], tower: TowerSpec) -> Iterator[np.ndarray]:
    for j, row in enumerate(rows, start=1):
        yield tower.frobenius_array(row, -j)


def gab_find_dependency(
    rows: Iterable[np.ndarray],
    limit: int,
    tower: TowerSpec,
    counters: Optional[OpCounters] = None,
) -> Optional[Dependency]:
    """
    Find f and lambda with S_{f+1} = sum_j lambda_j S_{f+1-j}^[j].

    Each row S_j is replaced by U_j = S_j^[-j] and the ordinary dependency
    search runs on the U rows. A dependency U_{f+1} = sum_i mu_i U_i maps
    back to lambda_j = mu_{f+1-j}^[f+1].
    """
    found = find_dependency(_untwisted(rows, tower), limit, tower.extension, counters)
    if found is None or found.f_star == 0:
        return found
    f, mu = found.f_star, found.coefficients
    coefficients = tuple(tower.frobenius(mu[f - j], f + 1) for j in range(1, f + 1))
    return Dependency(f, coefficients)


@dataclass(frozen=True)
class LinearizedPoly:
    """L(x) = sum_i coefficients[i] x^[i] over GF(q^m)."""

    tower: TowerSpec
    coefficients: Tuple[int, ...]

    @property
    def f(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def monic(cls, tower: TowerSpec, lam: Sequence[int]) -> "LinearizedPoly":
        """x^[f] - sum_j lambda_j x^[j-1]."""
        ext = tower.extension
        return cls(tower, tuple(ext.neg(int(c)) for c in lam) + (1,))

    @classmethod
    def from_key_equation(cls, tower: TowerSpec, lam: Sequence[int]) -> "LinearizedPoly":
        """x - sum_j lambda_j x^[j], whose roots span the error columns."""
        ext = tower.extension
        return cls(tower, (1,) + tuple(ext.neg(int(c)) for c in lam))

    def evaluate(self, x: Any) -> np.ndarray:
        ext = self.tower.extension
        points = np.asarray(x, dtype=np.int64)
        result = np.zeros(points.shape, dtype=np.int64)
        for i, c in enumerate(self.coefficients):
            if c:
                term = ext.mul_array(c, self.tower.frobenius_array(points, i))
                result = ext.add_array(result, term)
        return result


@dataclass(frozen=True)
class RootSpace:
    """Basis of the GF(q)-root space of a linearized polynomial."""

    basis: Tuple[int, ...]
    expected: int

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def consistent(self) -> bool:
        return self.dimension == self.expected


def error_span_roots(
    tower: TowerSpec, poly: LinearizedPoly, expected: Optional[int] = None
) -> RootSpace:
    """
    Kernel of the GF(q)-linear map x -> L(x).

    The map is evaluated on the polynomial basis of GF(q^m), giving an
    m x m matrix over GF(q); the kernel basis is returned in reduced
    echelon form. A dimension different from ``expected`` (default: the
    q-degree) is reported through ``consistent``.
    """
    images = poly.evaluate(np.array(tower.embedding, dtype=np.int64))
    matrix = tower.expand_array(images)
    kernel = null_space(tower.base, matrix.T)
    if kernel.shape[0]:
        reduced, pivots = row_reduce(tower.base, kernel)
        kernel = reduced[: len(pivots)]
    basis = tuple(int(x) for x in tower.fold_array(kernel)) if kernel.shape[0] else ()
    space = RootSpace(basis, poly.f if expected is None else expected)
    if not space.consistent:
        logger.debug(
            "Root space dimension mismatch", expected=space.expected, found=space.dimension
        )
    return space


def gab_reconstruct(
    code: GabidulinCode,
    syndromes: Any,
    basis: Sequence[int],
    counters: Optional[OpCounters] = None,
) -> np.ndarray:
    """
    Recover the error matrix from syndrome rows and the error span basis.

    Each basis element y_r is expanded over the parity vector,
    y_r = sum_j beta_rj h_j with beta over GF(q). The twisted Moore system
    S_i^[-(i-1)] = sum_r z_r y_r^[-(i-1)], i = 1..f, gives z, and the
    error is E = beta^T z. The result must reproduce every supplied
    syndrome row.

    Args:
        code: Gabidulin code
        syndromes: At least f syndrome rows (more rows tighten the check)
        basis: GF(q)-basis y_1..y_f of the error span

    Returns:
        n x l error matrix

    Raises:
        ReconstructionError: If the systems are inconsistent or the
            residual check fails
    """
    tower, ext = code.tower, code.tower.extension
    s = np.asarray(syndromes, dtype=np.int64)
    f = len(basis)
    width = s.shape[1]
    if f == 0:
        if np.any(s):
            raise ReconstructionError("Nonzero syndromes with an empty error span")
        return np.zeros((code.n, width), dtype=np.int64)
    if s.shape[0] < f:
        raise ReconstructionError(f"Need at least {f} syndrome rows, got {s.shape[0]}")

    h_coordinates = tower.expand_array(np.array(code.h, dtype=np.int64))
    beta = []
    for y in basis:
        coordinates = solve(tower.base, h_coordinates.T, tower.expand(int(y)))
        if coordinates is None:
            raise ReconstructionError("Error span leaves the span of the parity vector")
        beta.append(coordinates)
    beta_matrix = np.array(beta, dtype=np.int64)

    ys = np.array(basis, dtype=np.int64)
    system = np.stack([tower.frobenius_array(ys, -i) for i in range(f)])
    rhs = np.stack([tower.frobenius_array(s[i], -i) for i in range(f)])
    z = solve(ext, system, rhs)
    if z is None:
        raise ReconstructionError("Twisted Moore system is singular")
    if counters is not None:
        counters.charge("reconstruct", mul=f * f * (f + width) + code.n * f * width)

    errors = mat_mul(ext, beta_matrix.T, z)
    if not np.array_equal(gab_syndromes(code, errors, s.shape[0]), s):
        raise ReconstructionError("Recomputed syndromes do not match")
    return errors


def _failure(f: int, counters: OpCounters, reason: str) -> DecodeOutcome:
    logger.debug("Gabidulin decoding failure detected", reason=reason, f=f)
    return DecodeOutcome(DecodeStatus.DETECTED_FAILURE, f, counters, reason=reason)


def gab_decode(code: GabidulinCode, l: int, y: Any, verify: bool = False) -> DecodeOutcome:
    """
    Collaboratively decode an interleaved Gabidulin received matrix.

    Args:
        code: Gabidulin code
        l: Interleaving degree
        y: Received n x l matrix over GF(q^m)
        verify: Check all d-1 syndrome rows of the result

    Returns:
        DecodeOutcome with f_star equal to the recovered error rank

    Raises:
        ShapeMismatchError: If Y is not n x l
    """
    tower = code.tower
    received = check_received(tower.extension, code.n, l, y)
    counters = OpCounters()
    syndromes = SyndromeMatrix(
        lambda i: gab_syndrome_row(code, received, i, counters), code.redundancy, counters
    )

    limit = f_max(l, code.d) + 1
    dependency = gab_find_dependency(syndromes.stream(), limit, tower, counters)
    if dependency is None:
        return _failure(-1, counters, "no_dependency")

    f = dependency.f_star
    if f == 0:
        if verify and np.any(syndromes.full()):
            return _failure(0, counters, "verification_failed")
        return DecodeOutcome(
            DecodeStatus.SUCCESS,
            0,
            counters,
            codeword=received.copy(),
            error_matrix=np.zeros_like(received),
        )

    poly = LinearizedPoly.from_key_equation(tower, dependency.coefficients)
    roots = error_span_roots(tower, poly, f)
    if not roots.consistent:
        return _failure(f, counters, "dimension_mismatch")

    available = syndromes.full() if verify else syndromes.head(syndromes.computed)
    try:
        errors = gab_reconstruct(code, available, roots.basis, counters)
    except ReconstructionError as e:
        logger.debug("Rank error reconstruction failed", error=str(e))
        return _failure(f, counters, "reconstruction_failed")
    if rank_q(errors, tower) != f:
        return _failure(f, counters, "reconstruction_failed")

    corrected = tower.extension.sub_array(received, errors)
    if verify and np.any(gab_syndromes(code, corrected)):
        return _failure(f, counters, "verification_failed")

    return DecodeOutcome(
        DecodeStatus.SUCCESS, f, counters, codeword=corrected, error_matrix=errors
    )
