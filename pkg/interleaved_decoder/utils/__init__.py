"""
Utility modules for the interleaved decoder.

This package contains configuration management and logging setup.
"""

from .config import DecoderConfig, load_config
from .logger import setup_logging

__all__ = [
    "DecoderConfig",
    "load_config",
    "setup_logging",
]
