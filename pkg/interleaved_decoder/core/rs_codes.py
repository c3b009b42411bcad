"""
Reed-Solomon code construction for the interleaved decoder.

Covers generalized RS codes given by an evaluation vector, the classical
RS(q-1, k) and extended RS*(q, k) families, their shortened versions, and
interleaved codes whose codewords are n x l matrices with one inner
codeword per column.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, Sequence, Tuple

import numpy as np
import structlog

from .finite_field import FieldError, FieldSpec
from .linalg import mat_mul, solve

logger = structlog.get_logger(__name__)

# Codewords and received words are numpy int64 vectors of field elements.
Codeword = np.ndarray


class CodeParameterError(ValueError):
    """Invalid code parameters or unsupported code flavor."""


class ShapeMismatchError(ValueError):
    """Message or received matrix does not have the shape the code expects."""


class CodeFlavor(Enum):
    """Code families the decoder knows parity-check matrices for."""

    GENERIC = "generic"
    RS = "rs"
    RS_STAR = "rs_star"
    SHORTENED_RS_STAR = "shortened_rs_star"
    SHORTENED_RS = "shortened_rs"


_SHORTENED = {
    CodeFlavor.RS_STAR: CodeFlavor.SHORTENED_RS_STAR,
    CodeFlavor.RS: CodeFlavor.SHORTENED_RS,
}


@dataclass(frozen=True)
class GRSCode:
    """
    Generalized Reed-Solomon code GRS(q; n, k, v).

    ``removed`` holds the evaluation points dropped by shortening; the
    code is then the subcode of the parent that vanishes on them.
    """

    field: FieldSpec
    n: int
    k: int
    v: Tuple[int, ...]
    flavor: CodeFlavor = CodeFlavor.GENERIC
    removed: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if len(self.v) != self.n:
            raise CodeParameterError(
                f"Evaluation vector has {len(self.v)} entries, expected n={self.n}"
            )
        if not 1 <= self.k < self.n:
            raise CodeParameterError(f"Dimension must satisfy 1 <= k < n, got k={self.k}")
        if self.n + len(self.removed) > self.field.order:
            raise CodeParameterError(f"Length {self.n} exceeds field size {self.field.order}")
        points = self.v + self.removed
        if len(set(points)) != len(points):
            raise CodeParameterError("Evaluation points must be pairwise distinct")
        for x in points:
            self.field.check(x)
        if self.flavor is CodeFlavor.RS_STAR and self.v != _rs_star_points(self.field):
            raise CodeParameterError("RS* codes use v = (0, 1, alpha, ..., alpha^(q-2))")

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def d(self) -> int:
        return self.n - self.k + 1

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    @property
    def parent_k(self) -> int:
        return self.k + len(self.removed)

    @property
    def parity_offset(self) -> int:
        """First exponent used by the parity-check rows (H_ij = v_j^(i-1+offset))."""
        if self.flavor in (CodeFlavor.RS, CodeFlavor.SHORTENED_RS):
            return 1
        if self.flavor is CodeFlavor.GENERIC:
            raise CodeParameterError("No parity-check matrix for generic GRS codes")
        return 0

    def parity_row(self, i: int) -> np.ndarray:
        """Row i (1-based) of the parity-check matrix."""
        if not 1 <= i <= self.redundancy:
            raise CodeParameterError(f"Parity row {i} outside 1..{self.redundancy}")
        return _parity_rows(self)[i - 1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "field": self.field.to_dict(),
            "n": self.n,
            "k": self.k,
            "flavor": self.flavor.value,
            "shorten": len(self.removed),
        }


@lru_cache(maxsize=64)
def _parity_rows(code: GRSCode) -> np.ndarray:
    v = np.array(code.v, dtype=np.int64)
    offset = code.parity_offset
    rows = np.stack(
        [code.field.pow_array(v, i + offset) for i in range(code.redundancy)]
    )
    rows.setflags(write=False)
    return rows


def _rs_star_points(field: FieldSpec) -> Tuple[int, ...]:
    return (0,) + tuple(field.alpha_pow(i) for i in range(field.order - 1))


def _vandermonde(field: FieldSpec, points: Sequence[int], exponents: Sequence[int]) -> np.ndarray:
    pts = np.array(points, dtype=np.int64)
    if len(exponents) == 0:
        return np.zeros((len(pts), 0), dtype=np.int64)
    return np.stack([field.pow_array(pts, e) for e in exponents], axis=1)


def make_rs_star(field: FieldSpec, k: int) -> GRSCode:
    """
    Build the extended code RS*(q, k) of length q.

    Args:
        field: Field with q elements
        k: Dimension, 1 <= k < q

    Returns:
        Code with v = (0, alpha^0, ..., alpha^(q-2)), zero locator first

    Raises:
        CodeParameterError: If k is out of range
    """
    if not 1 <= k < field.order:
        raise CodeParameterError(f"RS* dimension must satisfy 1 <= k < {field.order}")
    return GRSCode(field, field.order, k, _rs_star_points(field), CodeFlavor.RS_STAR)


def make_rs(field: FieldSpec, k: int) -> GRSCode:
    """Build the classical code RS(q-1, k) with v = (alpha^0, ..., alpha^(q-2))."""
    n = field.order - 1
    if not 1 <= k < n:
        raise CodeParameterError(f"RS dimension must satisfy 1 <= k < {n}")
    v = tuple(field.alpha_pow(i) for i in range(n))
    return GRSCode(field, n, k, v, CodeFlavor.RS)


def shorten(code: GRSCode, s: int) -> GRSCode:
    """
    Shorten a code by dropping its last s evaluation points.

    The result is the (n-s, k-s) subcode vanishing on the dropped points;
    its parity-check matrix is the parent one restricted to the kept
    columns, so d is unchanged.

    Raises:
        CodeParameterError: If s is negative or s >= k
    """
    if not 0 <= s < code.k:
        raise CodeParameterError(f"Shortening must satisfy 0 <= s < k={code.k}, got {s}")
    if s == 0:
        return code
    flavor = _SHORTENED.get(code.flavor, code.flavor)
    return GRSCode(
        code.field,
        code.n - s,
        code.k - s,
        code.v[: code.n - s],
        flavor,
        code.v[code.n - s :] + code.removed,
    )


def _full_coefficients(code: GRSCode, messages: np.ndarray) -> np.ndarray:
    """Extend k x l message coefficients so the polynomials vanish on removed points."""
    s = len(code.removed)
    if s == 0:
        return messages
    field = code.field
    low = _vandermonde(field, code.removed, range(code.k))
    high = _vandermonde(field, code.removed, range(code.k, code.parent_k))
    rhs = field.neg_array(mat_mul(field, low, messages))
    tail = solve(field, high, rhs)
    if tail is None:
        raise CodeParameterError("Shortened positions do not admit a unique completion")
    return np.vstack([messages, tail])


def _check_symbols(field: FieldSpec, a: np.ndarray) -> None:
    if a.size and (a.min() < 0 or a.max() >= field.order):
        raise FieldError(f"Symbols must lie in [0, {field.order})")


def generator_matrix(code: GRSCode) -> np.ndarray:
    """k x n matrix whose rows encode the unit messages."""
    return irs_encode(IRSCode(code, code.k), np.eye(code.k, dtype=np.int64)).T


def encode(code: GRSCode, message: Sequence[int]) -> Codeword:
    """
    Encode k polynomial coefficients (low order first) by evaluation at v.

    Raises:
        ShapeMismatchError: If the message does not have k entries
    """
    msg = np.asarray(message, dtype=np.int64)
    if msg.shape != (code.k,):
        raise ShapeMismatchError(f"Message must have {code.k} symbols, got shape {msg.shape}")
    return irs_encode(IRSCode(code, 1), msg.reshape(-1, 1))[:, 0]


def parity_check_matrix(code: GRSCode) -> np.ndarray:
    """
    (n-k) x n Vandermonde parity-check matrix.

    Row i, column j holds v_j^(i-1) for RS* codes (first column
    (1, 0, ..., 0) for the zero locator) and v_j^i for classical RS codes.

    Raises:
        CodeParameterError: For generic GRS codes
    """
    return np.array(_parity_rows(code))


def syndrome(code: GRSCode, word: Any) -> np.ndarray:
    return mat_mul(code.field, _parity_rows(code), np.asarray(word, dtype=np.int64))


def is_codeword(code: GRSCode, word: Sequence[int]) -> bool:
    w = np.asarray(word, dtype=np.int64)
    if w.shape[0] != code.n:
        raise ShapeMismatchError(f"Word must have {code.n} symbols, got {w.shape[0]}")
    return not np.any(syndrome(code, w))


@dataclass(frozen=True)
class IRSCode:
    """Interleaved code IRS(q; l, n, k, v): l inner codewords as columns."""

    inner: GRSCode
    l: int

    def __post_init__(self) -> None:
        if self.l < 1:
            raise CodeParameterError(f"Interleaving degree must be >= 1, got {self.l}")

    @property
    def field(self) -> FieldSpec:
        return self.inner.field

    @property
    def n(self) -> int:
        return self.inner.n

    @property
    def k(self) -> int:
        return self.inner.k

    @property
    def d(self) -> int:
        return self.inner.d

    @property
    def f_max(self) -> int:
        return min(self.l, self.d - 2)

    def to_dict(self) -> Dict[str, Any]:
        data = self.inner.to_dict()
        data["l"] = self.l
        return data


def irs_encode(code: IRSCode, messages: Any) -> np.ndarray:
    """
    Encode a k x l message matrix column by column.

    Raises:
        ShapeMismatchError: If the message matrix is not k x l
    """
    inner = code.inner
    msgs = np.asarray(messages, dtype=np.int64)
    if msgs.shape != (inner.k, code.l):
        raise ShapeMismatchError(
            f"Messages must be {inner.k} x {code.l}, got shape {msgs.shape}"
        )
    _check_symbols(inner.field, msgs)
    coefficients = _full_coefficients(inner, msgs)
    evaluation = _vandermonde(inner.field, inner.v, range(inner.parent_k))
    return mat_mul(inner.field, evaluation, coefficients)
