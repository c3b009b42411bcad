"""
Unit tests for Reed-Solomon code construction and encoding.
"""

import itertools

import numpy as np
import pytest

from interleaved_decoder.core.finite_field import FieldError, FieldSpec
from interleaved_decoder.core.linalg import mat_mul
from interleaved_decoder.core.rs_codes import (
    CodeFlavor,
    CodeParameterError,
    GRSCode,
    IRSCode,
    ShapeMismatchError,
    encode,
    generator_matrix,
    irs_encode,
    is_codeword,
    make_rs,
    make_rs_star,
    parity_check_matrix,
    shorten,
    syndrome,
)


class TestConstruction:
    """Test code builders and parameter checks."""

    def test_rs_star_points(self, rs5):
        assert rs5.v == (0, 1, 2, 4, 3)
        assert (rs5.n, rs5.k, rs5.d) == (5, 2, 4)
        assert rs5.flavor is CodeFlavor.RS_STAR

    def test_rs_points(self, gf5):
        code = make_rs(gf5, 2)
        assert code.v == (1, 2, 4, 3)
        assert code.parity_offset == 1

    def test_dimension_range(self, gf5):
        with pytest.raises(CodeParameterError):
            make_rs_star(gf5, 5)
        with pytest.raises(CodeParameterError):
            make_rs(gf5, 0)

    def test_distinct_points(self, gf5):
        with pytest.raises(CodeParameterError):
            GRSCode(gf5, 3, 1, (1, 1, 2))

    def test_rs_star_requires_canonical_points(self, gf5):
        with pytest.raises(CodeParameterError):
            GRSCode(gf5, 5, 2, (1, 0, 2, 4, 3), CodeFlavor.RS_STAR)

    def test_generic_has_no_parity_matrix(self, gf5):
        code = GRSCode(gf5, 3, 1, (1, 2, 3))
        with pytest.raises(CodeParameterError):
            parity_check_matrix(code)

    def test_dvb_parameters(self, dvb_code):
        assert (dvb_code.n, dvb_code.k, dvb_code.d) == (204, 188, 17)
        assert dvb_code.inner.flavor is CodeFlavor.SHORTENED_RS_STAR
        assert dvb_code.f_max == 15

    def test_to_dict(self, irs5):
        assert irs5.to_dict() == {
            "field": irs5.field.to_dict(),
            "n": 5,
            "k": 2,
            "flavor": "rs_star",
            "shorten": 0,
            "l": 2,
        }


class TestEncoding:
    """Test encoding and parity checks."""

    def test_encode_example(self, rs5):
        assert encode(rs5, [1, 1]).tolist() == [1, 2, 3, 0, 4]

    def test_irs_encode_columns(self, irs5):
        c = irs_encode(irs5, [[1, 2], [1, 0]])
        assert c[:, 0].tolist() == [1, 2, 3, 0, 4]
        assert c[:, 1].tolist() == [2, 2, 2, 2, 2]

    def test_parity_check_matrix(self, rs5):
        h = parity_check_matrix(rs5)
        assert h.tolist() == [[1, 1, 1, 1, 1], [0, 1, 2, 4, 3], [0, 1, 4, 1, 4]]

    def test_codewords_in_kernel(self, rs5):
        for a in range(5):
            for b in range(5):
                assert is_codeword(rs5, encode(rs5, [a, b]))
        assert not is_codeword(rs5, [1, 0, 0, 0, 0])

    def test_generator_times_parity_is_zero(self, gf16):
        code = make_rs_star(gf16, 10)
        g, h = generator_matrix(code), parity_check_matrix(code)
        assert g.shape == (10, 16)
        for row in g:
            assert not np.any(syndrome(code, row))
        assert h.shape == (6, 16)

    def test_classical_rs(self, gf16, rng):
        code = make_rs(gf16, 7)
        for _ in range(5):
            assert is_codeword(code, encode(code, rng.integers(0, 16, 7)))

    def test_wrong_message_length(self, rs5):
        with pytest.raises(ShapeMismatchError):
            encode(rs5, [1, 2, 3])

    def test_irs_wrong_shape(self, irs5):
        with pytest.raises(ShapeMismatchError):
            irs_encode(irs5, np.zeros((3, 2), dtype=np.int64))

    def test_symbols_out_of_range(self, irs5):
        with pytest.raises(FieldError):
            irs_encode(irs5, [[5, 0], [0, 0]])

    def test_interleaving_degree(self, rs5):
        with pytest.raises(CodeParameterError):
            IRSCode(rs5, 0)


class TestMinimumDistance:
    """Exhaustive weight enumeration on small codes."""

    @pytest.mark.parametrize("p,e,k", [(5, 1, 2), (2, 3, 3)])
    def test_rs_star_is_mds(self, p, e, k):
        field = FieldSpec(p, e)
        code = make_rs_star(field, k)
        messages = np.array(list(itertools.product(range(field.order), repeat=k)))
        codewords = mat_mul(field, messages, generator_matrix(code))
        weights = np.count_nonzero(codewords, axis=1)
        assert weights[0] == 0
        assert weights[1:].min() == code.n - code.k + 1 == code.d
        assert len({tuple(c) for c in codewords}) == field.order**k
        assert not np.any(syndrome(code, codewords.T))


class TestShortening:
    """Test shortened codes."""

    def test_parameters(self, gf5):
        code = shorten(make_rs_star(gf5, 3), 1)
        assert (code.n, code.k, code.d) == (4, 2, 3)
        assert code.removed == (3,)
        assert code.flavor is CodeFlavor.SHORTENED_RS_STAR

    def test_zero_is_identity(self, rs5):
        assert shorten(rs5, 0) is rs5

    def test_range(self, rs5):
        with pytest.raises(CodeParameterError):
            shorten(rs5, 2)

    def test_extends_to_parent_codeword(self, gf16, rng):
        parent = make_rs_star(gf16, 10)
        code = shorten(parent, 4)
        for _ in range(5):
            word = encode(code, rng.integers(0, 16, code.k))
            assert is_codeword(code, word)
            padded = np.concatenate([word, np.zeros(4, dtype=np.int64)])
            assert is_codeword(parent, padded)

    def test_dvb_codeword(self, dvb_code, rng):
        msgs = rng.integers(0, 256, (dvb_code.k, dvb_code.l))
        c = irs_encode(dvb_code, msgs)
        assert c.shape == (204, 16)
        for col in c.T:
            assert is_codeword(dvb_code.inner, col)
