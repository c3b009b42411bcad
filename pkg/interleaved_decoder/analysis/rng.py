"""
SplitMix64 pseudo random generator.

Every Monte Carlo trial draws from its own generator seeded from
(master_seed, trial_index), so results do not depend on how trials are
scheduled across workers.
"""

from fractions import Fraction
from typing import List, Union

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 output finalizer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """64-bit generator with a Weyl-sequence state."""

    def __init__(self, seed: int):
        self.state = int(seed) & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection sampling."""
        if not 0 < bound <= 1 << 64:
            raise ValueError(f"Bound must lie in (0, 2^64], got {bound}")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def bernoulli(self, p: Union[Fraction, float, int]) -> bool:
        """True with probability p, resolved to 53 bits."""
        threshold = int(Fraction(str(p) if isinstance(p, float) else p) * (1 << 53))
        return (self.next_u64() >> 11) < threshold

    def sample_distinct(self, n: int, count: int) -> List[int]:
        """Sorted sample of ``count`` distinct indices from range(n)."""
        if not 0 <= count <= n:
            raise ValueError(f"Cannot draw {count} distinct values from {n}")
        pool = list(range(n))
        for i in range(count):
            j = i + self.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return sorted(pool[:count])

    def vector(self, length: int, q: int) -> np.ndarray:
        return np.array([self.below(q) for _ in range(length)], dtype=np.int64)

    def nonzero_vector(self, length: int, q: int) -> np.ndarray:
        """Uniform vector of GF(q)^length minus the zero vector."""
        while True:
            v = self.vector(length, q)
            if np.any(v):
                return v

    def matrix(self, rows: int, cols: int, q: int) -> np.ndarray:
        return self.vector(rows * cols, q).reshape(rows, cols)


def trial_seed(master_seed: int, trial_index: int) -> int:
    return mix64(mix64(master_seed) + GOLDEN_GAMMA * (trial_index + 1))


def for_trial(master_seed: int, trial_index: int) -> SplitMix64:
    """Generator for one trial of a seeded run."""
    return SplitMix64(trial_seed(master_seed, trial_index))
