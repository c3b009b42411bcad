"""
Interleaved Decoder

Collaborative decoding of interleaved Reed-Solomon and Gabidulin codes by
Gaussian elimination on the syndrome matrix, with failure-probability
bounds and Monte Carlo validation.

Key Features:
- Finite fields GF(p^e) with log/antilog tables and Frobenius towers
- RS, RS* and shortened codes with incremental collaborative decoding
- Interleaved Gabidulin codes in the rank metric
- Exact-rational failure bounds and frame error rate curves
- Seeded, worker-count independent Monte Carlo drivers
"""

__version__ = "1.0.0"

from .core.finite_field import FieldSpec, TowerSpec
from .core.gabidulin import GabidulinCode, gab_decode, gab_encode, gab_make
from .core.irs_collab import DecodeOutcome, DecodeStatus, decode, f_max
from .core.rs_codes import IRSCode, irs_encode, make_rs, make_rs_star, shorten

__all__ = [
    "FieldSpec",
    "TowerSpec",
    "GabidulinCode",
    "gab_make",
    "gab_encode",
    "gab_decode",
    "DecodeOutcome",
    "DecodeStatus",
    "decode",
    "f_max",
    "IRSCode",
    "irs_encode",
    "make_rs",
    "make_rs_star",
    "shorten",
]
