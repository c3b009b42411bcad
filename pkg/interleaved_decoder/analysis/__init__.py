"""
Failure analysis.

Closed-form bounds, exact dependence probabilities and the seeded Monte
Carlo drivers that validate them.
"""

from .bounds import BoundCurve, fer_bound, p_fail_bound_gab, p_fail_bound_irs
from .monte_carlo import FailureEstimate, concat_channel_sim, mc_gab_failure, mc_irs_failure
from .rng import SplitMix64

__all__ = [
    "BoundCurve",
    "fer_bound",
    "p_fail_bound_gab",
    "p_fail_bound_irs",
    "FailureEstimate",
    "concat_channel_sim",
    "mc_gab_failure",
    "mc_irs_failure",
    "SplitMix64",
]
