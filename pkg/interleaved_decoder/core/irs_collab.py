"""
Collaborative decoding of interleaved Reed-Solomon codes.

Syndrome rows are computed one at a time and absorbed into an incremental
Gauss-Jordan elimination. The first row that depends on its predecessors
fixes the number of erroneous rows f and the error locator coefficients;
the error values then follow from a square Vandermonde system built from
the first f syndrome rows only.
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import islice
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np
import structlog

from .finite_field import FieldError, FieldSpec
from .linalg import solve
from .rs_codes import (
    CodeParameterError,
    GRSCode,
    IRSCode,
    ShapeMismatchError,
    syndrome,
)

logger = structlog.get_logger(__name__)


class ReconstructionError(ValueError):
    """Error values could not be recovered from the syndromes."""


@dataclass
class OpCounters:
    """Field operation counts, in total and per decoding stage."""

    mul: int = 0
    add: int = 0
    syndrome_rows: int = 0
    stages: Dict[str, Dict[str, int]] = field(default_factory=dict)

    def charge(self, stage: str, mul: int = 0, add: int = 0) -> None:
        self.mul += mul
        self.add += add
        bucket = self.stages.setdefault(stage, {"mul": 0, "add": 0})
        bucket["mul"] += mul
        bucket["add"] += add

    def stage(self, name: str) -> Dict[str, int]:
        return dict(self.stages.get(name, {"mul": 0, "add": 0}))

    def to_dict(self) -> Dict[str, int]:
        return {"mul": self.mul, "add": self.add, "syndrome_rows": self.syndrome_rows}


def _charge(counters: Optional[OpCounters], stage: str, mul: int = 0, add: int = 0) -> None:
    if counters is not None:
        counters.charge(stage, mul, add)


def check_received(code_field: FieldSpec, n: int, l: int, y: Any) -> np.ndarray:
    received = np.asarray(y, dtype=np.int64)
    if received.shape != (n, l):
        raise ShapeMismatchError(f"Received matrix must be {n} x {l}, got {received.shape}")
    if received.size and (received.min() < 0 or received.max() >= code_field.order):
        raise FieldError(f"Received symbols must lie in [0, {code_field.order})")
    return received


def weighted_row_sum(
    field_spec: FieldSpec,
    weights: np.ndarray,
    y: np.ndarray,
    counters: Optional[OpCounters] = None,
    stage: str = "syndrome",
) -> np.ndarray:
    """
    Compute sum_j weights_j * Y_j over the rows of Y.

    Weights equal to 0 or 1 cost no multiplication.
    """
    scaled = weights > 1
    ones = weights == 1
    parts = []
    if np.any(ones):
        parts.append(y[ones])
    if np.any(scaled):
        parts.append(field_spec.mul_array(weights[scaled][:, None], y[scaled]))
    width = y.shape[1]
    if not parts:
        return np.zeros(width, dtype=np.int64)
    terms = np.vstack(parts)
    _charge(
        counters,
        stage,
        mul=int(scaled.sum()) * width,
        add=max(terms.shape[0] - 1, 0) * width,
    )
    return field_spec.sum_array(terms, axis=0)


def syndrome_row(
    code: GRSCode, y: Any, i: int, counters: Optional[OpCounters] = None
) -> np.ndarray:
    """
    Row i (1-based) of S = H Y.

    For RS* codes row 1 is the column sum of Y and needs additions only.

    Raises:
        CodeParameterError: If i is outside 1..n-k
    """
    received = np.asarray(y, dtype=np.int64)
    return weighted_row_sum(code.field, code.parity_row(i), received, counters)


class SyndromeMatrix:
    """
    Lazily computed syndrome rows S_1, S_2, ... of a received matrix.

    Rows are produced on demand and cached; at most ``max_rows`` rows
    ever exist.
    """

    def __init__(
        self,
        row_fn: Callable[[int], np.ndarray],
        max_rows: int,
        counters: Optional[OpCounters] = None,
    ):
        self._row_fn = row_fn
        self.max_rows = max_rows
        self.counters = counters
        self.rows: List[np.ndarray] = []

    @classmethod
    def for_code(
        cls, code: GRSCode, y: np.ndarray, counters: Optional[OpCounters] = None
    ) -> "SyndromeMatrix":
        return cls(lambda i: syndrome_row(code, y, i, counters), code.redundancy, counters)

    @property
    def computed(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> np.ndarray:
        if not 1 <= i <= self.max_rows:
            raise IndexError(f"Syndrome row {i} outside 1..{self.max_rows}")
        while len(self.rows) < i:
            self.rows.append(self._row_fn(len(self.rows) + 1))
            if self.counters is not None:
                self.counters.syndrome_rows += 1
        return self.rows[i - 1]

    def stream(self) -> Iterator[np.ndarray]:
        for i in range(1, self.max_rows + 1):
            yield self.row(i)

    def head(self, f: int) -> np.ndarray:
        return np.array([self.row(i) for i in range(1, f + 1)], dtype=np.int64)

    def full(self) -> np.ndarray:
        return self.head(self.max_rows)


class EliminationState:
    """
    Incremental Gauss-Jordan elimination over the syndrome rows.

    The reduced rows are kept with unit pivots and zeros in every other
    pivot column. ``coefficient_tracker[b]`` expresses reduced row b as a
    combination of the original rows absorbed so far.
    """

    def __init__(self, field_spec: FieldSpec, counters: Optional[OpCounters] = None):
        self.field = field_spec
        self.counters = counters
        self.processed = 0
        self.basis: List[np.ndarray] = []
        self.pivot_columns: List[int] = []
        self.coefficient_tracker: List[np.ndarray] = []
        self.originals: List[np.ndarray] = []
        self.mul_count = 0
        self.add_count = 0

    def _count(self, mul: int, add: int) -> None:
        self.mul_count += mul
        self.add_count += add
        _charge(self.counters, "elimination", mul, add)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def absorb(self, row: Any) -> Optional[np.ndarray]:
        """
        Reduce the next syndrome row against the current basis.

        Returns:
            The coefficients (lambda_1, ..., lambda_t) with
            row = sum_j lambda_j S_j when the row depends on the t rows
            absorbed before it, otherwise None
        """
        gf = self.field
        t = self.processed
        r = np.array(row, dtype=np.int64)
        self.originals.append(r.copy())
        track = np.zeros(t + 1, dtype=np.int64)
        track[t] = 1

        for b, pc in enumerate(self.pivot_columns):
            c = int(r[pc])
            if c == 0:
                continue
            tr = self.coefficient_tracker[b]
            r = gf.sub_array(r, gf.mul_array(c, self.basis[b]))
            track[: tr.size] = gf.sub_array(track[: tr.size], gf.mul_array(c, tr))
            self._count(r.size + tr.size, r.size + tr.size)
        self.processed += 1

        nonzero = np.nonzero(r)[0]
        if nonzero.size == 0:
            return gf.neg_array(track[:t])

        pc = int(nonzero[0])
        inv = gf.inv(int(r[pc]))
        r = gf.mul_array(r, inv)
        track = gf.mul_array(track, inv)
        self._count(r.size + track.size, 0)

        for b in range(len(self.basis)):
            c = int(self.basis[b][pc])
            if c == 0:
                continue
            tr = np.zeros(t + 1, dtype=np.int64)
            tr[: self.coefficient_tracker[b].size] = self.coefficient_tracker[b]
            self.basis[b] = gf.sub_array(self.basis[b], gf.mul_array(c, r))
            self.coefficient_tracker[b] = gf.sub_array(tr, gf.mul_array(c, track))
            self._count(r.size + track.size, r.size + track.size)

        self.basis.append(r)
        self.pivot_columns.append(pc)
        self.coefficient_tracker.append(track)
        return None

    def rcef(self) -> np.ndarray:
        """Reduced basis ordered by pivot column (the transposed rcef of S)."""
        if not self.basis:
            return np.zeros((0, 0), dtype=np.int64)
        order = np.argsort(self.pivot_columns, kind="stable")
        return np.array([self.basis[i] for i in order], dtype=np.int64)


@dataclass(frozen=True)
class Dependency:
    """First linear dependency among the syndrome rows."""

    f_star: int
    coefficients: Tuple[int, ...]


def find_dependency(
    rows: Iterable[np.ndarray],
    limit: int,
    field_spec: FieldSpec,
    counters: Optional[OpCounters] = None,
    state: Optional[EliminationState] = None,
) -> Optional[Dependency]:
    """
    Find the smallest t such that row t is a combination of rows 1..t-1.

    Rows are pulled lazily, at most ``limit`` of them.

    Args:
        rows: Iterable of syndrome rows
        limit: Maximum number of rows to request
        field_spec: Field of the row entries
        counters: Optional operation counters
        state: Optional elimination state to run on (for inspection)

    Returns:
        Dependency with f_star = t-1 and S_t = sum_j lambda_j S_j, or None
        when no dependency appears within the limit
    """
    elimination = state if state is not None else EliminationState(field_spec, counters)
    for t, row in enumerate(islice(rows, limit), start=1):
        coefficients = elimination.absorb(row)
        if coefficients is not None:
            logger.debug("Syndrome dependency found", f_star=t - 1)
            return Dependency(t - 1, tuple(int(c) for c in coefficients))
    return None


@dataclass(frozen=True)
class ErrorLocator:
    """Lambda(x) = x^f - sum_j lambda_j x^(j-1)."""

    field: FieldSpec
    coefficients: Tuple[int, ...]

    @property
    def f(self) -> int:
        return len(self.coefficients)

    def polynomial(self) -> np.ndarray:
        """Coefficients of Lambda, low order first."""
        return np.array(
            [self.field.neg(c) for c in self.coefficients] + [1], dtype=np.int64
        )

    def evaluate(self, points: Any) -> np.ndarray:
        pts = np.asarray(points, dtype=np.int64)
        result = np.zeros(pts.shape, dtype=np.int64)
        for c in self.polynomial()[::-1]:
            result = self.field.add_array(self.field.mul_array(result, pts), int(c))
        return result


@dataclass(frozen=True)
class RootSearch:
    """Outcome of the root search over the evaluation points."""

    positions: Tuple[int, ...]
    expected: int

    @property
    def consistent(self) -> bool:
        return len(self.positions) == self.expected


def locate_errors(
    code: GRSCode, locator: ErrorLocator, counters: Optional[OpCounters] = None
) -> RootSearch:
    """
    Evaluate Lambda at every v_i and collect the roots as 1-based positions.

    A root count different from f is reported through ``consistent``.
    """
    values = locator.evaluate(code.v)
    _charge(counters, "locate", mul=code.n * locator.f, add=code.n * locator.f)
    positions = tuple(int(i) + 1 for i in np.nonzero(values == 0)[0])
    search = RootSearch(positions, locator.f)
    if not search.consistent:
        logger.debug("Root count mismatch", expected=locator.f, found=len(positions))
    return search


def reconstruct_errors(
    code: GRSCode,
    s_head: Any,
    positions: Tuple[int, ...],
    counters: Optional[OpCounters] = None,
) -> np.ndarray:
    """
    Solve H_[f]^F E_F = S_[f] for the error rows at the given positions.

    Args:
        code: Inner code
        s_head: The first f syndrome rows (f x l)
        positions: 1-based error positions F, |F| = f

    Returns:
        f x l matrix of error values, row u for position positions[u]
    """
    head = np.asarray(s_head, dtype=np.int64)
    f = len(positions)
    if head.shape[0] != f:
        raise ShapeMismatchError(f"Need {f} syndrome rows, got {head.shape[0]}")
    nodes = np.array([code.v[p - 1] for p in positions], dtype=np.int64)
    offset = code.parity_offset
    system = np.stack([code.field.pow_array(nodes, i + offset) for i in range(f)])
    values = solve(code.field, system, head)
    if values is None:
        raise ReconstructionError("Vandermonde system is singular")
    width = head.shape[1] if head.ndim == 2 else 0
    _charge(counters, "reconstruct", mul=f * f * (f + width), add=f * f * (f + width))
    return values


class DecodeStatus(Enum):
    """Decoder verdict."""

    SUCCESS = "success"
    DETECTED_FAILURE = "detected_failure"


@dataclass
class DecodeOutcome:
    """Result of one collaborative decoding run."""

    status: DecodeStatus
    f_star: int
    counters: OpCounters
    codeword: Optional[np.ndarray] = None
    error_matrix: Optional[np.ndarray] = None
    error_positions: Tuple[int, ...] = ()
    reason: Optional[str] = None

    @property
    def success(self) -> bool:
        return self.status is DecodeStatus.SUCCESS

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the JSON decode report."""
        data: Dict[str, Any] = {
            "status": self.status.value,
            "f_star": self.f_star,
            "positions": list(self.error_positions),
            "counters": self.counters.to_dict(),
        }
        if self.reason is not None:
            data["reason"] = self.reason
        return data


def f_max(l: int, d: int) -> int:
    """Collaborative decoding radius min(l, d-2)."""
    if l < 1 or d < 2:
        raise CodeParameterError(f"Need l >= 1 and d >= 2, got l={l}, d={d}")
    return min(l, d - 2)


def _failure(f_star: int, counters: OpCounters, reason: str) -> DecodeOutcome:
    logger.debug("Decoding failure detected", reason=reason, f_star=f_star)
    return DecodeOutcome(DecodeStatus.DETECTED_FAILURE, f_star, counters, reason=reason)


def decode(code: IRSCode, y: Any, verify: bool = False) -> DecodeOutcome:
    """
    Collaboratively decode a received n x l matrix.

    Args:
        code: Interleaved code
        y: Received matrix
        verify: Recompute the full syndrome of the corrected word

    Returns:
        DecodeOutcome; failures are reported as DETECTED_FAILURE with a reason

    Raises:
        ShapeMismatchError: If Y is not n x l
        FieldError: If Y holds values outside the field
    """
    inner = code.inner
    gf = inner.field
    received = check_received(gf, code.n, code.l, y)
    counters = OpCounters()
    syndromes = SyndromeMatrix.for_code(inner, received, counters)

    dependency = find_dependency(syndromes.stream(), code.f_max + 1, gf, counters)
    if dependency is None:
        return _failure(-1, counters, "no_dependency")

    f = dependency.f_star
    errors = np.zeros_like(received)
    if f == 0:
        if verify:
            residual = syndrome(inner, received)
            _charge(counters, "verify", mul=inner.redundancy * code.n * code.l)
            if np.any(residual):
                return _failure(0, counters, "verification_failed")
        return DecodeOutcome(
            DecodeStatus.SUCCESS, 0, counters, codeword=received.copy(), error_matrix=errors
        )

    roots = locate_errors(inner, ErrorLocator(gf, dependency.coefficients), counters)
    if not roots.consistent:
        return _failure(f, counters, "root_count_mismatch")

    try:
        values = reconstruct_errors(inner, syndromes.head(f), roots.positions, counters)
    except ReconstructionError:
        return _failure(f, counters, "reconstruction_failed")
    errors[[p - 1 for p in roots.positions]] = values
    corrected = gf.sub_array(received, errors)

    if verify:
        residual = syndrome(inner, corrected)
        _charge(counters, "verify", mul=inner.redundancy * code.n * code.l)
        if np.any(residual):
            return _failure(f, counters, "verification_failed")

    return DecodeOutcome(
        DecodeStatus.SUCCESS,
        f,
        counters,
        codeword=corrected,
        error_matrix=errors,
        error_positions=roots.positions,
    )
