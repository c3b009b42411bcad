"""
Failure-probability bounds for collaborative decoding.

All quantities are exact rationals; decimal rendering happens only at
output time. Binomial terms for N = 204 and powers such as 256^-15 are far
outside what double precision represents faithfully.
"""

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import structlog

from ..core.irs_collab import f_max

logger = structlog.get_logger(__name__)

Probability = Union[Fraction, float, int, str]


def as_probability(p: Probability) -> Fraction:
    """
    Convert p to an exact rational in [0, 1].

    Floats are converted through their shortest decimal representation,
    so 0.02 becomes exactly 1/50.

    Raises:
        ValueError: If p lies outside [0, 1]
    """
    value = Fraction(str(p)) if isinstance(p, float) else Fraction(p)
    if not 0 <= value <= 1:
        raise ValueError(f"Probability must lie in [0, 1], got {p}")
    return value


def _check(l: int, q: int) -> None:
    if l < 1:
        raise ValueError(f"Interleaving degree must be >= 1, got {l}")
    if q < 2:
        raise ValueError(f"Field size must be >= 2, got {q}")


def _radius(l: int, d: Optional[int]) -> int:
    return l if d is None else f_max(l, d)


def p_fail_bound_irs(f: int, l: int, q: int, d: Optional[int] = None) -> Fraction:
    """
    Bound on the failure probability for f erroneous rows.

    Returns 0 for f < 2, q^-(l+1-f) for 2 <= f <= f_max(l, d) and 1
    otherwise. Without d the radius is l.
    """
    _check(l, q)
    if f < 2:
        return Fraction(0)
    if f <= _radius(l, d):
        return Fraction(1, q ** (l + 1 - f))
    return Fraction(1)


def p_fail_bound_irs_sharp(f: int, l: int, q: int, d: Optional[int] = None) -> Fraction:
    """
    Un-approximated dependence bound q^-(l+1-f) (1 - q^-f) / (1 - q^-1).

    Unlike p_fail_bound_irs this dominates p_dep_exact for every f.
    """
    _check(l, q)
    if f < 2:
        return Fraction(0)
    if f <= _radius(l, d):
        value = Fraction(1, q ** (l + 1 - f)) * (1 - Fraction(1, q**f)) / (1 - Fraction(1, q))
        return min(value, Fraction(1))
    return Fraction(1)


def p_dep_exact(f: int, l: int, q: int) -> Fraction:
    """Probability that f uniform nonzero vectors of GF(q)^l are linearly dependent."""
    _check(l, q)
    if f <= 1:
        return Fraction(0)
    if f > l:
        return Fraction(1)
    total = q**l - 1
    independent = Fraction(1)
    for i in range(1, f):
        independent *= Fraction(q**l - q**i, total)
    return 1 - independent


def p_fail_bound_gab(f: int, l: int, q: int, m: int, d: int) -> Fraction:
    """Rank-error failure bound: 4 (q^m)^-(l+1-f) inside the radius, capped at 1."""
    _check(l, q)
    if f < 2:
        return Fraction(0)
    if f <= f_max(l, d):
        return min(Fraction(4, (q**m) ** (l + 1 - f)), Fraction(1))
    return Fraction(1)


@lru_cache(maxsize=256)
def binomial_terms(p: Fraction, n: int) -> Tuple[Fraction, ...]:
    """C(n, t) p^t (1-p)^(n-t) for t = 0..n."""
    q = 1 - p
    return tuple(comb(n, t) * p**t * q ** (n - t) for t in range(n + 1))


def _frame_sum(p: Probability, n: int, weight: Callable[[int], Fraction]) -> Fraction:
    if n < 2:
        raise ValueError(f"Number of rows must be >= 2, got {n}")
    terms = binomial_terms(as_probability(p), n)
    return sum((terms[t] * weight(t) for t in range(2, n + 1)), Fraction(0))


def fer_bound(
    p: Probability, N: int, l: int, q: int, d: int, sharp: bool = False
) -> Fraction:
    """
    Frame error rate bound sum_t C(N,t) P_f(t,l) p^t (1-p)^(N-t).

    Args:
        p: Inner frame error rate in [0, 1]
        N: Number of rows of the interleaved matrix
        l: Interleaving degree
        q: Field size
        d: Minimum distance of the outer code
        sharp: Use p_fail_bound_irs_sharp instead of the simple bound

    Raises:
        ValueError: If p lies outside [0, 1]
    """
    bound = p_fail_bound_irs_sharp if sharp else p_fail_bound_irs
    return _frame_sum(p, N, lambda t: bound(t, l, q, d))


def p_dep_clipped(t: int, l: int, q: int, d: int) -> Fraction:
    return p_dep_exact(t, l, q) if t <= f_max(l, d) else Fraction(1)


def fer_exact(p: Probability, N: int, l: int, q: int, d: int) -> Fraction:
    """Frame error rate with the exact dependence probability inside the radius."""
    return _frame_sum(p, N, lambda t: p_dep_clipped(t, l, q, d))


def fer_independent(p: Probability, N: int, d: int) -> Fraction:
    """Frame error rate when every column is decoded alone up to (d-1)/2 errors."""
    radius = (d - 1) // 2
    return _frame_sum(p, N, lambda t: Fraction(1 if t > radius else 0))


@dataclass
class BoundCurve:
    """FER bound evaluated over a grid of inner frame error rates."""

    points: List[Tuple[Fraction, Fraction]]
    params: Dict[str, int] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        grid: Sequence[Probability],
        N: int,
        l: int,
        q: int,
        d: int,
        kind: str = "bound",
    ) -> "BoundCurve":
        evaluators = {
            "bound": lambda p: fer_bound(p, N, l, q, d),
            "sharp": lambda p: fer_bound(p, N, l, q, d, sharp=True),
            "exact": lambda p: fer_exact(p, N, l, q, d),
            "independent": lambda p: fer_independent(p, N, d),
        }
        if kind not in evaluators:
            raise ValueError(f"Unknown curve kind: {kind}")
        evaluate = evaluators[kind]
        points = [(as_probability(p), evaluate(p)) for p in grid]
        logger.debug("Bound curve evaluated", kind=kind, l=l, points=len(points))
        return cls(points, {"N": N, "l": l, "q": q, "d": d})

    def values(self) -> List[Fraction]:
        return [v for _, v in self.points]

    def is_monotone(self) -> bool:
        vals = self.values()
        return all(a <= b for a, b in zip(vals, vals[1:]))


def format_decimal(value: Any, digits: int = 12) -> str:
    """Render a rational with the given number of significant digits."""
    frac = Fraction(value)
    if frac == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(frac.numerator) / Decimal(frac.denominator))


def format_power(base: int, exponent: int, factor: int = 1) -> str:
    """Render factor * base^exponent, e.g. "256^-15" or "4*16^-3"."""
    text = f"{base}^{exponent}"
    return text if factor == 1 else f"{factor}*{text}"
