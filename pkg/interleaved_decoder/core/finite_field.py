"""
Finite field arithmetic for the interleaved decoder.

Provides prime fields GF(p), extension fields GF(p^e) and tower
extensions GF(q^m) over a prime base field, backed by ``galois`` field
classes. Elements are plain integers whose base-p digits are the
polynomial coefficients, constant term in the lowest digit (the galois
integer representation). Scalar helpers work on Python ints, the
``*_array`` helpers work element-wise on numpy int64 arrays.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import galois
import numpy as np
import structlog

logger = structlog.get_logger(__name__)

# Log/antilog tables are built for fields up to this order.
TABLE_LIMIT = 1 << 16

DEFAULT_MODULI: Dict[Tuple[int, int], Tuple[int, ...]] = {
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),  # x^8+x^4+x^3+x^2+1
    (2, 4): (1, 1, 0, 0, 1),  # x^4+x+1
    (2, 3): (1, 1, 0, 1),  # x^3+x+1
}


def as_ints(x: Any) -> np.ndarray:
    """Plain int64 copy of a galois FieldArray."""
    return np.asarray(x.view(np.ndarray), dtype=np.int64)


class FieldError(ValueError):
    """Invalid field construction or mixing of elements from different fields."""


class FieldDivisionError(FieldError, ZeroDivisionError):
    """Division by (or inversion of) the zero element."""


def _to_poly(coefficients: Sequence[int], p: int) -> galois.Poly:
    # galois lists coefficients highest degree first
    return galois.Poly(list(reversed([int(c) % p for c in coefficients])), field=galois.GF(p))


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over GF(p), coefficients low order first."""
    e = len(modulus) - 1
    if e < 1 or int(modulus[-1]) % p != 1:
        return False
    return bool(_to_poly(modulus, p).is_irreducible())


class FieldSpec:
    """
    Descriptor of the finite field GF(p^e).

    The modulus is a monic irreducible polynomial over GF(p), stored low
    order first. The primitive element alpha generates the multiplicative
    group; log/antilog tables with respect to alpha are built eagerly for
    fields of at most 2^16 elements, larger fields compute through the
    galois field class directly.
    """

    def __init__(
        self,
        characteristic: int,
        degree: int = 1,
        modulus: Optional[Sequence[int]] = None,
        primitive_element: Optional[int] = None,
    ):
        """
        Initialize the field.

        Args:
            characteristic: Prime p
            degree: Extension degree e >= 1
            modulus: Monic irreducible polynomial of degree e, low order first
            primitive_element: Generator of the multiplicative group

        Raises:
            FieldError: If any of the parameters does not describe a field
        """
        p, e = int(characteristic), int(degree)
        if not galois.is_prime(p):
            raise FieldError(f"Characteristic must be prime, got {p}")
        if e < 1:
            raise FieldError(f"Extension degree must be at least 1, got {e}")

        self.characteristic = p
        self.degree = e
        self.order = p**e
        self.group_order = self.order - 1

        if modulus is None:
            modulus = self._default_modulus(p, e)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1:
            raise FieldError(f"Modulus must have degree {e}, got {len(modulus) - 1}")
        if not is_irreducible(modulus, p):
            raise FieldError(f"Modulus {list(modulus)} is not irreducible over GF({p})")
        self.modulus = modulus

        if primitive_element is not None and not 0 < int(primitive_element) < self.order:
            raise FieldError(f"Element {primitive_element} is not primitive in GF({p}^{e})")
        try:
            if e == 1:
                self.gf = galois.GF(p, primitive_element=primitive_element)
            else:
                self.gf = galois.GF(
                    p**e,
                    irreducible_poly=_to_poly(modulus, p),
                    primitive_element=primitive_element,
                )
        except ValueError as exc:
            raise FieldError(
                f"Element {primitive_element} is not primitive in GF({p}^{e})"
            ) from exc
        self.primitive_element = int(self.gf.primitive_element)

        self._exp: Optional[np.ndarray] = None
        self._log: Optional[np.ndarray] = None
        if self.order <= TABLE_LIMIT:
            self._build_tables()

    @staticmethod
    def _default_modulus(p: int, e: int) -> Tuple[int, ...]:
        if e == 1:
            return (0, 1)
        if (p, e) in DEFAULT_MODULI:
            return DEFAULT_MODULI[(p, e)]
        # Smallest primitive polynomial, so that x generates the group.
        poly = galois.primitive_poly(p, e)
        return tuple(int(c) for c in reversed(poly.coeffs))

    def _build_tables(self) -> None:
        n = self.group_order
        powers = self.gf(self.primitive_element) ** np.arange(n)
        exp = np.zeros(2 * n + 1, dtype=np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        exp[:n] = as_ints(powers)
        log[exp[:n]] = np.arange(n)
        exp[n : 2 * n] = exp[:n]
        exp[2 * n] = exp[0]
        self._exp, self._log = exp, log
        logger.debug(
            "Built field tables",
            p=self.characteristic,
            e=self.degree,
            order=self.order,
        )

    # -- galois conversion ------------------------------------------------

    def lift(self, a: Any) -> galois.FieldArray:
        """View integer elements as a galois FieldArray of this field."""
        return self.gf(np.asarray(a, dtype=np.int64))

    def __reduce__(self):
        return (FieldSpec, self.key)

    # -- identity --------------------------------------------------------

    @property
    def key(self) -> Tuple[int, int, Tuple[int, ...], int]:
        return (self.characteristic, self.degree, self.modulus, self.primitive_element)

    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.characteristic}, e={self.degree})"

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the JSON field descriptor."""
        return {
            "p": self.characteristic,
            "e": self.degree,
            "modulus": list(self.modulus),
            "alpha": self.primitive_element,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FieldSpec":
        """Create a field from its JSON descriptor."""
        return cls(
            data["p"],
            data.get("e", 1),
            data.get("modulus"),
            data.get("alpha"),
        )

    def element(self, value: int) -> "FieldElement":
        return FieldElement(int(value), self)

    def check(self, value: int) -> int:
        if not 0 <= value < self.order:
            raise FieldError(f"Value {value} is not an element of GF({self.order})")
        return value

    # -- scalar arithmetic ----------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.characteristic
        if p == 2:
            return a ^ b
        if self.degree == 1:
            return (a + b) % p
        return int(self.gf(a) + self.gf(b))

    def neg(self, a: int) -> int:
        p = self.characteristic
        if p == 2:
            return a
        if self.degree == 1:
            return (-a) % p
        return int(-self.gf(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is None:
            return int(self.gf(a) * self.gf(b))
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldDivisionError("Zero has no multiplicative inverse")
        if self._exp is None:
            return int(np.reciprocal(self.gf(a)))
        return int(self._exp[(self.group_order - self._log[a]) % self.group_order])

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise FieldDivisionError("Division by zero")
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise FieldDivisionError("Zero raised to a negative power")
            return 1 if k == 0 else 0
        if self._exp is None:
            return int(self.gf(a) ** k)
        return int(self._exp[(int(self._log[a]) * k) % self.group_order])

    def log(self, a: int) -> int:
        if a == 0:
            raise FieldError("Logarithm of zero is undefined")
        if self._log is None:
            return int(self.gf(a).log())
        return int(self._log[a])

    def alpha_pow(self, k: int) -> int:
        return self.pow(self.primitive_element, k)

    # -- array arithmetic -----------------------------------------------

    def add_array(self, a: Any, b: Any) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.characteristic == 2:
            return np.bitwise_xor(a, b)
        if self.degree == 1:
            return (a + b) % self.characteristic
        return as_ints(self.lift(a) + self.lift(b))

    def neg_array(self, a: Any) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.characteristic == 2:
            return a.copy()
        if self.degree == 1:
            return (-a) % self.characteristic
        return as_ints(-self.lift(a))

    def sub_array(self, a: Any, b: Any) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.characteristic == 2:
            return np.bitwise_xor(a, b)
        if self.degree == 1:
            return (a - b) % self.characteristic
        return as_ints(self.lift(a) - self.lift(b))

    def mul_array(self, a: Any, b: Any) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.degree == 1:
            return (a * b) % self.characteristic
        if self._exp is None:
            return as_ints(self.lift(a) * self.lift(b))
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv_array(self, a: Any) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise FieldDivisionError("Zero has no multiplicative inverse")
        if self._exp is None:
            return as_ints(np.reciprocal(self.lift(a)))
        return self._exp[(self.group_order - self._log[a]) % self.group_order]

    def pow_array(self, a: Any, k: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if k < 0 and np.any(a == 0):
            raise FieldDivisionError("Zero raised to a negative power")
        if self._exp is None:
            return as_ints(self.lift(a) ** k)
        out = self._exp[(self._log[a] * k) % self.group_order]
        return np.where(a == 0, 1 if k == 0 else 0, out)

    def sum_array(self, a: Any, axis: int = 0) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.characteristic == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        if self.degree == 1:
            return a.sum(axis=axis) % self.characteristic
        return as_ints(np.add.reduce(self.lift(a), axis=axis))


class ArithOp(Enum):
    """Binary field operations."""

    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"


@dataclass(frozen=True)
class FieldElement:
    """Element of a FieldSpec with operator support."""

    value: int
    spec: FieldSpec

    def __post_init__(self) -> None:
        self.spec.check(self.value)

    def _other(self, other: Any) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldError("Arithmetic between elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.spec.check(other)
        raise TypeError(f"Unsupported operand type: {type(other).__name__}")

    def __add__(self, other: Any) -> "FieldElement":
        return FieldElement(self.spec.add(self.value, self._other(other)), self.spec)

    def __sub__(self, other: Any) -> "FieldElement":
        return FieldElement(self.spec.sub(self.value, self._other(other)), self.spec)

    def __mul__(self, other: Any) -> "FieldElement":
        return FieldElement(self.spec.mul(self.value, self._other(other)), self.spec)

    def __truediv__(self, other: Any) -> "FieldElement":
        return FieldElement(self.spec.div(self.value, self._other(other)), self.spec)

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.spec.neg(self.value), self.spec)

    def __pow__(self, k: int) -> "FieldElement":
        return FieldElement(self.spec.pow(self.value, k), self.spec)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec.inv(self.value), self.spec)


def arith(a: FieldElement, b: FieldElement, op: ArithOp) -> FieldElement:
    """
    Apply a binary field operation.

    Args:
        a: Left operand
        b: Right operand, nonzero for division
        op: Operation to apply

    Returns:
        The field result

    Raises:
        FieldError: If the operands belong to different fields
        FieldDivisionError: On division by zero
    """
    if a.spec != b.spec:
        raise FieldError("Arithmetic between elements of different fields")
    op = ArithOp(op)
    if op is ArithOp.ADD:
        return a + b
    if op is ArithOp.SUB:
        return a - b
    if op is ArithOp.MUL:
        return a * b
    return a / b


class TowerSpec:
    """
    GF(q^m) viewed as an m-dimensional vector space over a prime field GF(q).

    The embedding is the polynomial basis {1, x, ..., x^(m-1)}, so the
    base-field coordinates of an element are its base-q digits.
    """

    def __init__(self, base: FieldSpec, m: int, modulus: Optional[Sequence[int]] = None):
        if base.degree != 1:
            raise FieldError("Tower base field must be a prime field")
        if m < 1:
            raise FieldError(f"Extension degree must be at least 1, got {m}")
        self.base = base
        self.extension_degree = m
        self.extension = FieldSpec(base.characteristic, m, modulus)
        self.embedding = tuple(base.characteristic**i for i in range(m))

    @classmethod
    def over_prime(cls, q: int, m: int, modulus: Optional[Sequence[int]] = None) -> "TowerSpec":
        return cls(FieldSpec(q), m, modulus)

    @property
    def q(self) -> int:
        return self.base.characteristic

    @property
    def m(self) -> int:
        return self.extension_degree

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TowerSpec)
            and self.base == other.base
            and self.extension == other.extension
        )

    def __hash__(self) -> int:
        return hash((self.base.key, self.extension.key))

    def __repr__(self) -> str:
        return f"TowerSpec(q={self.q}, m={self.m})"

    def expand(self, x: int) -> List[int]:
        return [int(c) for c in self.expand_array(int(x))]

    def fold(self, coordinates: Sequence[int]) -> int:
        if len(coordinates) != self.m:
            raise FieldError(f"Expected {self.m} coordinates, got {len(coordinates)}")
        return int(self.fold_array(list(coordinates)))

    def expand_array(self, a: Any) -> np.ndarray:
        """Append a trailing axis of m base-field coordinates, constant term first."""
        vectors = self.extension.lift(a).vector()
        return as_ints(vectors)[..., ::-1].copy()

    def fold_array(self, digits: Any) -> np.ndarray:
        digits = np.asarray(digits, dtype=np.int64)
        if digits.shape[-1] != self.m:
            raise FieldError(f"Expected {self.m} coordinates, got {digits.shape[-1]}")
        return as_ints(self.extension.gf.Vector(digits[..., ::-1] % self.q))

    def _frobenius_exponent(self, j: int) -> int:
        return pow(self.q, j % self.m, self.extension.group_order or 1)

    def frobenius(self, x: int, j: int) -> int:
        """Return x^(q^(j mod m)); negative j gives the inverse automorphism."""
        return int(self.frobenius_array(int(x), j))

    def frobenius_array(self, a: Any, j: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if j % self.m == 0:
            return a.copy()
        ext = self.extension
        if not ext.has_tables:
            return as_ints(ext.lift(a) ** (self.q ** (j % self.m)))
        out = ext._exp[(ext._log[a] * self._frobenius_exponent(j)) % ext.group_order]
        return np.where(a == 0, 0, out)

    def is_base_element(self, x: int) -> bool:
        return 0 <= x < self.q


def frobenius(x: FieldElement, j: int, tower: TowerSpec) -> FieldElement:
    """
    Frobenius power x^[j] = x^(q^j) in the tower's extension field.

    Args:
        x: Element of GF(q^m)
        j: Any integer; negative values apply the inverse automorphism
        tower: Tower the element lives in

    Returns:
        The image of x
    """
    if x.spec != tower.extension:
        raise FieldError("Element does not belong to the tower's extension field")
    return FieldElement(tower.frobenius(x.value, j), x.spec)
