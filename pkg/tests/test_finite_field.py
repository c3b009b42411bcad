"""
Unit tests for finite field arithmetic and Frobenius towers.
"""

import pickle

import galois
import numpy as np
import pytest

from interleaved_decoder.core.finite_field import (
    ArithOp,
    FieldDivisionError,
    FieldError,
    FieldSpec,
    TowerSpec,
    arith,
    frobenius,
    is_irreducible,
)


class TestFieldSpec:
    """Test field construction and validation."""

    def test_default_moduli(self, gf256, gf16, gf8):
        assert gf256.modulus == (1, 0, 1, 1, 1, 0, 0, 0, 1)
        assert gf16.modulus == (1, 1, 0, 0, 1)
        assert gf8.modulus == (1, 1, 0, 1)

    def test_tables_built_eagerly(self, gf256):
        assert gf256.has_tables
        assert gf256.alpha_pow(0) == 1
        assert gf256.log(gf256.primitive_element) == 1

    def test_rejects_composite_characteristic(self):
        with pytest.raises(FieldError):
            FieldSpec(6)

    def test_rejects_reducible_modulus(self):
        with pytest.raises(FieldError):
            FieldSpec(2, 2, [1, 0, 1])  # x^2+1 = (x+1)^2

    def test_rejects_non_primitive_element(self, gf16):
        # 1 has order 1
        with pytest.raises(FieldError):
            FieldSpec(2, 4, gf16.modulus, 1)

    def test_irreducibility(self):
        assert is_irreducible([1, 1, 0, 0, 1], 2)
        assert not is_irreducible([1, 0, 0, 0, 1], 2)
        assert is_irreducible([1, 0, 1], 3)  # x^2+1 over GF(3)
        assert not is_irreducible([2, 0, 1], 3)  # x^2-1

    def test_dict_round_trip(self, gf16):
        assert FieldSpec.from_dict(gf16.to_dict()) == gf16

    def test_equality_uses_modulus(self):
        other = FieldSpec(2, 4, [1, 0, 0, 1, 1])
        assert other != FieldSpec(2, 4)


class TestScalarArithmetic:
    """Test scalar arithmetic against worked values."""

    def test_prime_field(self, gf5):
        assert gf5.mul(2, 3) == 1
        assert gf5.add(4, 3) == 2
        assert gf5.sub(1, 3) == 3
        assert gf5.inv(2) == 3

    def test_gf16_examples(self, gf16):
        assert gf16.mul(8, 4) == 6
        assert gf16.div(1, 2) == 9

    def test_division_by_zero(self, gf16):
        with pytest.raises(FieldDivisionError):
            gf16.div(3, 0)
        with pytest.raises(ZeroDivisionError):
            gf16.inv(0)

    def test_pow_negative(self, gf16):
        assert gf16.mul(gf16.pow(7, -1), 7) == 1

    def test_extension_of_odd_prime(self):
        gf9 = FieldSpec(3, 2)
        for a in range(1, 9):
            assert gf9.mul(a, gf9.inv(a)) == 1
            assert gf9.add(a, gf9.neg(a)) == 0


class TestAgainstGalois:
    """Compare table arithmetic with an independent implementation."""

    @pytest.mark.parametrize("degree,poly", [(3, 0xB), (4, 0x13), (8, 0x11D)])
    def test_full_tables(self, degree, poly):
        spec = FieldSpec(2, degree)
        GF = galois.GF(2**degree, irreducible_poly=poly)
        a, b = np.meshgrid(np.arange(2**degree), np.arange(2**degree))
        a, b = a.ravel(), b.ravel()
        expected = np.array(GF(a) * GF(b), dtype=np.int64)
        assert np.array_equal(spec.mul_array(a, b), expected)
        assert np.array_equal(spec.add_array(a, b), np.array(GF(a) + GF(b), dtype=np.int64))

    def test_inverse(self, gf256):
        GF = galois.GF(2**8, irreducible_poly=0x11D)
        x = np.arange(1, 256)
        assert np.array_equal(gf256.inv_array(x), np.array(GF(x) ** -1, dtype=np.int64))

    def test_odd_characteristic(self):
        spec = FieldSpec(3, 2, [2, 2, 1])  # x^2+2x+2
        GF = galois.GF(3**2, irreducible_poly=galois.Poly([1, 2, 2], field=galois.GF(3)))
        a, b = np.meshgrid(np.arange(9), np.arange(9))
        a, b = a.ravel(), b.ravel()
        assert np.array_equal(spec.mul_array(a, b), np.array(GF(a) * GF(b), dtype=np.int64))
        assert np.array_equal(spec.sub_array(a, b), np.array(GF(a) - GF(b), dtype=np.int64))


class TestGaloisBacking:
    """Test the galois field class behind a FieldSpec."""

    def test_field_class_matches_descriptor(self, gf256):
        assert gf256.gf.order == 256
        assert int(gf256.gf.irreducible_poly) == 0x11D
        assert int(gf256.gf.primitive_element) == gf256.primitive_element

    def test_large_field_without_tables(self, rng):
        spec = FieldSpec(2, 17)
        assert not spec.has_tables
        GF = galois.GF(2**17, irreducible_poly=galois.primitive_poly(2, 17))
        a, b = rng.integers(1, 2**17, 50), rng.integers(1, 2**17, 50)
        assert np.array_equal(spec.mul_array(a, b), np.array(GF(a) * GF(b), dtype=np.int64))
        assert spec.mul(int(a[0]), spec.inv(int(a[0]))) == 1
        assert spec.pow(int(b[0]), spec.group_order) == 1
        assert spec.alpha_pow(spec.log(int(a[1]))) == int(a[1])

    def test_large_tower_frobenius(self):
        tower = TowerSpec.over_prime(2, 17)
        x = np.array([2, 3, 12345])
        images = tower.frobenius_array(x, 1)
        assert np.array_equal(images, tower.extension.mul_array(x, x))
        assert np.array_equal(tower.frobenius_array(images, -1), x)

    def test_pickles_by_descriptor(self, gf16):
        restored = pickle.loads(pickle.dumps(gf16))
        assert restored == gf16
        assert restored.mul(8, 4) == 6

    def test_tower_coordinates_match_vector(self, tower256):
        x = np.arange(256)
        expected = np.array(tower256.extension.gf(x).vector(), dtype=np.int64)[:, ::-1]
        assert np.array_equal(tower256.expand_array(x), expected)


class TestFieldAxioms:
    """Randomized algebraic property tests."""

    @pytest.mark.parametrize("p,e", [(2, 4), (2, 8), (3, 2), (7, 1)])
    def test_axioms(self, p, e, rng):
        spec = FieldSpec(p, e)
        a, b, c = (rng.integers(0, spec.order, 200) for _ in range(3))
        mul, add = spec.mul_array, spec.add_array
        assert np.array_equal(mul(a, mul(b, c)), mul(mul(a, b), c))
        assert np.array_equal(add(a, add(b, c)), add(add(a, b), c))
        assert np.array_equal(mul(a, add(b, c)), add(mul(a, b), mul(a, c)))
        nz = a[a != 0]
        assert np.all(mul(nz, spec.inv_array(nz)) == 1)
        assert np.all(add(a, spec.neg_array(a)) == 0)

    def test_sum_array(self, gf5):
        assert list(gf5.sum_array([[1, 4], [2, 4], [3, 4]], axis=0)) == [1, 2]


class TestFieldElement:
    """Test element wrappers."""

    def test_operators(self, gf16):
        a, b = gf16.element(8), gf16.element(4)
        assert (a * b).value == 6
        assert (a / a).value == 1
        assert (a + a).value == 0
        assert (-a).value == 8
        assert (a**2).value == gf16.mul(8, 8)
        assert a.inverse().value == gf16.inv(8)

    def test_rejects_out_of_range(self, gf5):
        with pytest.raises(FieldError):
            gf5.element(5)

    def test_mismatched_fields(self, gf5, gf16):
        with pytest.raises(FieldError):
            gf5.element(1) + gf16.element(1)
        with pytest.raises(FieldError):
            arith(gf5.element(1), gf16.element(1), ArithOp.ADD)

    def test_arith(self, gf16):
        assert arith(gf16.element(8), gf16.element(4), ArithOp.MUL).value == 6
        assert arith(gf16.element(1), gf16.element(2), ArithOp.DIV).value == 9
        with pytest.raises(FieldDivisionError):
            arith(gf16.element(1), gf16.element(0), ArithOp.DIV)


class TestTower:
    """Test tower extensions and the Frobenius map."""

    def test_requires_prime_base(self, gf4):
        with pytest.raises(FieldError):
            TowerSpec(gf4, 2)

    def test_frobenius_examples(self, tower8):
        assert tower8.frobenius(2, 1) == 4
        assert tower8.frobenius(3, 1) == 5
        x = tower8.extension.element(2)
        assert frobenius(x, 1, tower8).value == 4

    def test_frobenius_identity(self, tower16):
        for x in range(16):
            assert tower16.frobenius(x, 0) == x
            assert tower16.frobenius(x, tower16.m) == x

    def test_frobenius_inverse(self, tower256):
        x = np.arange(256)
        for j in range(8):
            forward = tower256.frobenius_array(x, j)
            assert np.array_equal(tower256.frobenius_array(forward, 8 - j), x)
            assert np.array_equal(tower256.frobenius_array(forward, -j), x)

    def test_frobenius_is_automorphism(self, tower256, rng):
        ext = tower256.extension
        a, b = rng.integers(0, 256, 100), rng.integers(0, 256, 100)
        for j in range(8):
            fa, fb = tower256.frobenius_array(a, j), tower256.frobenius_array(b, j)
            assert np.array_equal(tower256.frobenius_array(ext.add_array(a, b), j), ext.add_array(fa, fb))
            assert np.array_equal(tower256.frobenius_array(ext.mul_array(a, b), j), ext.mul_array(fa, fb))

    def test_base_field_is_fixed(self, tower16):
        for x in range(tower16.q):
            assert tower16.is_base_element(x)
            assert tower16.frobenius(x, 1) == x

    def test_expand_fold(self, tower16):
        assert tower16.expand(11) == [1, 1, 0, 1]
        assert tower16.fold([1, 1, 0, 1]) == 11
        x = np.arange(16).reshape(4, 4)
        assert np.array_equal(tower16.fold_array(tower16.expand_array(x)), x)

    def test_fold_wrong_length(self, tower16):
        with pytest.raises(FieldError):
            tower16.fold([1, 0])

    def test_frobenius_element_from_other_field(self, tower8, gf16):
        with pytest.raises(FieldError):
            frobenius(gf16.element(2), 1, tower8)
