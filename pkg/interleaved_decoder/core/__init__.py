"""
Core coding components.

This package contains the algebra and the decoders:
- Finite fields and Frobenius towers
- Linear algebra over finite fields
- Reed-Solomon family codes and the collaborative IRS decoder
- Gabidulin codes and their collaborative decoder
"""

from .finite_field import FieldElement, FieldSpec, TowerSpec
from .gabidulin import GabidulinCode, LinearizedPoly
from .irs_collab import DecodeOutcome, EliminationState, OpCounters, SyndromeMatrix
from .rs_codes import GRSCode, IRSCode

__all__ = [
    "FieldElement",
    "FieldSpec",
    "TowerSpec",
    "GabidulinCode",
    "LinearizedPoly",
    "DecodeOutcome",
    "EliminationState",
    "OpCounters",
    "SyndromeMatrix",
    "GRSCode",
    "IRSCode",
]
