"""
Shared fixtures for the interleaved decoder tests.
"""

import json
from pathlib import Path

import numpy as np
import pytest

from interleaved_decoder.core.finite_field import FieldSpec, TowerSpec
from interleaved_decoder.core.gabidulin import gab_make
from interleaved_decoder.core.rs_codes import IRSCode, make_rs_star, shorten


@pytest.fixture(scope="session")
def gf5():
    return FieldSpec(5)


@pytest.fixture(scope="session")
def gf4():
    return FieldSpec(2, 2)


@pytest.fixture(scope="session")
def gf8():
    return FieldSpec(2, 3)


@pytest.fixture(scope="session")
def gf16():
    return FieldSpec(2, 4)


@pytest.fixture(scope="session")
def gf256():
    return FieldSpec(2, 8)


@pytest.fixture(scope="session")
def rs5(gf5):
    """RS*(5,2) with v = (0, 1, 2, 4, 3)."""
    return make_rs_star(gf5, 2)


@pytest.fixture(scope="session")
def irs5(rs5):
    return IRSCode(rs5, 2)


@pytest.fixture(scope="session")
def dvb_code(gf256):
    """Shortened (204,188) code over GF(256) interleaved to degree 16."""
    return IRSCode(shorten(make_rs_star(gf256, 240), 52), 16)


@pytest.fixture(scope="session")
def tower8():
    return TowerSpec.over_prime(2, 3)


@pytest.fixture(scope="session")
def tower16():
    return TowerSpec.over_prime(2, 4)


@pytest.fixture(scope="session")
def tower256():
    return TowerSpec.over_prime(2, 8)


@pytest.fixture(scope="session")
def gab16(tower16):
    """Gabidulin code q=2, m=n=4, k=1, g = (1, a, a^2, a^3)."""
    return gab_make(tower16, 4, 1, [1, 2, 4, 8])


@pytest.fixture(scope="session")
def gab256(tower256):
    """Gabidulin code q=2, m=n=8, k=4 on the polynomial basis."""
    return gab_make(tower256, 8, 4, [1 << i for i in range(8)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def irs5_spec_file(tmp_path: Path) -> Path:
    path = tmp_path / "rs5.json"
    path.write_text(
        json.dumps({"field": {"p": 5}, "n": 5, "k": 2, "flavor": "rs_star", "shorten": 0, "l": 2})
    )
    return path


@pytest.fixture
def gab_spec_file(tmp_path: Path) -> Path:
    path = tmp_path / "gab.json"
    path.write_text(json.dumps({"q": 2, "m": 4, "n": 4, "k": 1, "g": [1, 2, 4, 8], "l": 2}))
    return path
