"""
Monte Carlo validation of the failure bounds.

Each driver runs independent seeded trials, classifies every decoding as
exact success, detected failure or miscorrection, and aggregates counts
into a FailureEstimate. Trials may be spread over worker processes; the
result is identical for any worker count.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, List, Sequence, Tuple

import numpy as np
import structlog

from ..core.finite_field import FieldSpec, TowerSpec
from ..core.gabidulin import GabidulinCode, gab_decode, gab_syndromes, psi_map
from ..core.irs_collab import DecodeOutcome, decode
from ..core.linalg import rank, rank_ext, rank_q
from ..core.rs_codes import IRSCode
from ..utils.logger import log_performance
from .bounds import Probability, as_probability
from .rng import SplitMix64, for_trial

logger = structlog.get_logger(__name__)

Z_95 = 1.959963984540054


class TrialOutcome(Enum):
    """Classification of a single trial."""

    SUCCESS = "success"
    DETECTED_FAILURE = "detected_failure"
    MISCORRECTION = "miscorrection"


@dataclass(frozen=True)
class FailureEstimate:
    """Aggregated Monte Carlo counts for one parameter cell."""

    trials: int
    failures: int
    miscorrections: int
    seed: int
    criterion_disagreements: int = 0

    def __post_init__(self) -> None:
        if min(self.trials, self.failures, self.miscorrections) < 0:
            raise ValueError("Counts must be non-negative")
        if self.failures + self.miscorrections > self.trials:
            raise ValueError("Failures and miscorrections exceed the trial count")

    @property
    def estimate(self) -> Fraction:
        """Detected failures per trial."""
        return Fraction(self.failures, self.trials) if self.trials else Fraction(0)

    @property
    def estimate_float(self) -> float:
        return float(self.estimate)

    @property
    def error_rate(self) -> Fraction:
        """Detected failures plus miscorrections per trial."""
        events = self.failures + self.miscorrections
        return Fraction(events, self.trials) if self.trials else Fraction(0)

    def wilson_interval(self, z: float = Z_95) -> Tuple[float, float]:
        """Wilson score interval for error_rate."""
        n = self.trials
        if n == 0:
            return (0.0, 1.0)
        phat = float(self.error_rate)
        denom = 1 + z * z / n
        center = (phat + z * z / (2 * n)) / denom
        half = z * math.sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / denom
        return (max(0.0, center - half), min(1.0, center + half))

    @property
    def wilson_ci(self) -> Tuple[float, float]:
        return self.wilson_interval(Z_95)

    def contains(self, value: Any, z: float = Z_95) -> bool:
        low, high = self.wilson_interval(z)
        return low <= float(value) <= high

    def to_dict(self) -> Dict[str, Any]:
        low, high = self.wilson_ci
        return {
            "trials": self.trials,
            "failures": self.failures,
            "miscorrections": self.miscorrections,
            "estimate": self.estimate_float,
            "error_rate": float(self.error_rate),
            "ci_low": low,
            "ci_high": high,
            "seed": self.seed,
            "criterion_disagreements": self.criterion_disagreements,
        }


TrialFn = Callable[[Any, SplitMix64], Tuple[TrialOutcome, bool]]


def classify(outcome: DecodeOutcome, injected: np.ndarray) -> TrialOutcome:
    if not outcome.success:
        return TrialOutcome.DETECTED_FAILURE
    if np.array_equal(outcome.error_matrix, injected):
        return TrialOutcome.SUCCESS
    return TrialOutcome.MISCORRECTION


def _run_chunk(task: Tuple[TrialFn, Any, int, int, int]) -> Tuple[int, int, int]:
    trial_fn, params, seed, start, stop = task
    failures = miscorrections = disagreements = 0
    for index in range(start, stop):
        outcome, disagrees = trial_fn(params, for_trial(seed, index))
        if outcome is TrialOutcome.DETECTED_FAILURE:
            failures += 1
        elif outcome is TrialOutcome.MISCORRECTION:
            miscorrections += 1
        disagreements += int(disagrees)
    return failures, miscorrections, disagreements


def _chunks(trials: int, workers: int) -> List[Tuple[int, int]]:
    size = -(-trials // workers)
    return [(s, min(s + size, trials)) for s in range(0, trials, size)]


def run_trials(
    trial_fn: TrialFn, params: Any, trials: int, seed: int, workers: int = 1
) -> FailureEstimate:
    """
    Run seeded trials, optionally in worker processes, and aggregate counts.

    Args:
        trial_fn: Module-level function (params, rng) -> (outcome, disagreement)
        params: Picklable trial parameters
        trials: Number of trials
        seed: Master seed
        workers: Number of worker processes
    """
    if trials < 0:
        raise ValueError(f"Trial count must be non-negative, got {trials}")
    if trials == 0:
        return FailureEstimate(0, 0, 0, seed)
    tasks = [(trial_fn, params, seed, s, e) for s, e in _chunks(trials, max(1, workers))]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_run_chunk, tasks))
    else:
        results = [_run_chunk(task) for task in tasks]
    failures, miscorrections, disagreements = (sum(col) for col in zip(*results))
    return FailureEstimate(trials, failures, miscorrections, seed, disagreements)


def _irs_trial(params: Tuple[IRSCode, int], rng: SplitMix64) -> Tuple[TrialOutcome, bool]:
    code, f = params
    errors = np.zeros((code.n, code.l), dtype=np.int64)
    for row in rng.sample_distinct(code.n, f):
        errors[row] = rng.nonzero_vector(code.l, code.field.order)
    return classify(decode(code, errors), errors), False


@log_performance("mc_irs_failure")
def mc_irs_failure(
    code: IRSCode, f: int, trials: int, seed: int = 0, workers: int = 1
) -> FailureEstimate:
    """
    Decode pure-error matrices with f uniformly placed nonzero rows.

    The transmitted codeword is zero without loss of generality.
    """
    if not 1 <= f <= code.n:
        raise ValueError(f"Error count must satisfy 1 <= f <= n={code.n}, got {f}")
    estimate = run_trials(_irs_trial, (code, f), trials, seed, workers)
    logger.info("IRS failure simulation finished", f=f, l=code.l, **estimate.to_dict())
    return estimate


def field_of_order(q: int) -> FieldSpec:
    """FieldSpec for a prime power q."""
    for p in range(2, q + 1):
        if q % p == 0:
            e, rest = 0, q
            while rest % p == 0:
                rest //= p
                e += 1
            if rest != 1:
                raise ValueError(f"Field size must be a prime power, got {q}")
            return FieldSpec(p, e)
    raise ValueError(f"Field size must be a prime power, got {q}")


def _dependence_trial(
    params: Tuple[FieldSpec, int, int], rng: SplitMix64
) -> Tuple[TrialOutcome, bool]:
    gf, f, l = params
    vectors = np.array([rng.nonzero_vector(l, gf.order) for _ in range(f)])
    dependent = rank(gf, vectors) < f
    return (TrialOutcome.DETECTED_FAILURE if dependent else TrialOutcome.SUCCESS), False


@log_performance("mc_dependence")
def mc_dependence(
    f: int, l: int, q: int, trials: int, seed: int = 0, workers: int = 1
) -> FailureEstimate:
    """Estimate the probability that f uniform nonzero vectors of GF(q)^l are dependent."""
    if f < 1 or l < 1:
        raise ValueError(f"Need f >= 1 and l >= 1, got f={f}, l={l}")
    return run_trials(_dependence_trial, (field_of_order(q), f, l), trials, seed, workers)


def sample_rank_f(n: int, l: int, f: int, tower: TowerSpec, rng: SplitMix64) -> np.ndarray:
    """
    Uniform n x l matrix over GF(q^m) of GF(q)-rank exactly f.

    X (n x f) and Z (f x lm) over GF(q) are drawn uniformly among full
    rank matrices; every rank-f matrix has the same number |GL_f(q)| of
    such factorizations, so the folded product X Z is uniform.
    """
    if not 0 <= f <= min(n, l * tower.m):
        raise ValueError(f"Rank must satisfy 0 <= f <= {min(n, l * tower.m)}, got {f}")
    if f == 0:
        return np.zeros((n, l), dtype=np.int64)
    q, base = tower.q, tower.base
    while True:
        x = rng.matrix(n, f, q)
        if rank(base, x) == f:
            break
    while True:
        z = rng.matrix(f, l * tower.m, q)
        if rank(base, z) == f:
            break
    product = (x @ z) % q
    errors = tower.fold_array(product.reshape(n, l, tower.m))
    assert rank_q(errors, tower) == f
    return errors


def dependency_fails(code: GabidulinCode, errors: np.ndarray, f: int) -> bool:
    """Whether the first f twisted syndrome rows of a rank-f error are rank deficient."""
    if f == 0:
        return False
    if f > code.redundancy:
        return True
    head = gab_syndromes(code, errors, f)
    return rank_ext(psi_map(head, code.tower), code.tower.extension) < f


def _gab_trial(
    params: Tuple[GabidulinCode, int, int], rng: SplitMix64
) -> Tuple[TrialOutcome, bool]:
    code, l, f = params
    errors = sample_rank_f(code.n, l, f, code.tower, rng)
    outcome = classify(gab_decode(code, l, errors), errors)
    predicted = dependency_fails(code, errors, f)
    return outcome, predicted != (outcome is not TrialOutcome.SUCCESS)


@log_performance("mc_gab_failure")
def mc_gab_failure(
    code: GabidulinCode, l: int, f: int, trials: int, seed: int = 0, workers: int = 1
) -> FailureEstimate:
    """
    Decode uniform rank-f errors and cross-check each trial against the
    twisted-rank failure criterion.
    """
    estimate = run_trials(_gab_trial, (code, l, f), trials, seed, workers)
    if estimate.criterion_disagreements:
        logger.warning(
            "Rank criterion disagreed with decoder",
            disagreements=estimate.criterion_disagreements,
        )
    logger.info("Gabidulin failure simulation finished", f=f, l=l, **estimate.to_dict())
    return estimate


def _concat_trial(
    params: Tuple[IRSCode, Fraction], rng: SplitMix64
) -> Tuple[TrialOutcome, bool]:
    code, p = params
    errors = np.zeros((code.n, code.l), dtype=np.int64)
    for row in range(code.n):
        if rng.bernoulli(p):
            errors[row] = rng.nonzero_vector(code.l, code.field.order)
    return classify(decode(code, errors), errors), False


@log_performance("concat_channel_sim")
def concat_channel_sim(
    code: IRSCode, p: Probability, trials: int, seed: int = 0, workers: int = 1
) -> FailureEstimate:
    """
    Idealized concatenated channel: each row is erroneous with probability p.

    Raises:
        ValueError: If p lies outside [0, 1]
    """
    estimate = run_trials(_concat_trial, (code, as_probability(p)), trials, seed, workers)
    logger.info("Concatenated channel simulation finished", p=str(p), **estimate.to_dict())
    return estimate


def chi_square(counts: Sequence[int]) -> float:
    """Chi-square statistic of counts against the uniform distribution."""
    total = sum(counts)
    expected = total / len(counts)
    return sum((c - expected) ** 2 / expected for c in counts)
