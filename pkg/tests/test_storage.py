"""
Tests for matrix, CSV and JSON storage.
"""

import json
from fractions import Fraction

import numpy as np
import pytest

from interleaved_decoder.analysis.monte_carlo import FailureEstimate
from interleaved_decoder.storage.csv_storage import (
    CURVE_FIELDS,
    FAILURE_FIELDS,
    FIG1_FIELDS,
    CSVStorage,
    curve_row,
    failure_row,
    fig1_row,
    render_csv,
)
from interleaved_decoder.storage.json_storage import JSONStorage, render_report
from interleaved_decoder.storage.matrix_io import (
    MatrixFormatError,
    format_matrix,
    parse_matrix,
    read_matrix,
    write_matrix,
)
from interleaved_decoder.utils.config import CodeSpecModel, GabidulinSpecModel


class TestMatrixText:
    """Test the hex matrix format."""

    def test_format(self):
        assert format_matrix([[0, 15], [255, 1]]) == "0 f\nff 1\n"

    def test_parse_ignores_blank_lines(self):
        m = parse_matrix("1 2\n\n  \nA b\n")
        assert m.tolist() == [[1, 2], [10, 11]]

    def test_ragged_rows(self):
        with pytest.raises(MatrixFormatError) as exc:
            parse_matrix("1 2\n3\n")
        assert exc.value.line == 2

    def test_bad_symbol(self):
        with pytest.raises(MatrixFormatError) as exc:
            parse_matrix("1 2\n3 zz\n")
        assert exc.value.line == 2
        assert str(exc.value).startswith("line 2:")

    def test_symbol_outside_field(self):
        with pytest.raises(MatrixFormatError):
            parse_matrix("1 5\n", order=5)

    def test_column_count(self):
        with pytest.raises(MatrixFormatError):
            parse_matrix("1 2 3\n", columns=2)

    def test_empty(self):
        assert parse_matrix("", columns=3).shape == (0, 3)

    @pytest.mark.asyncio
    async def test_file_round_trip(self, tmp_path):
        path = tmp_path / "nested" / "y.txt"
        matrix = np.array([[1, 200], [0, 7]])
        await write_matrix(path, matrix)
        assert path.read_text() == "1 c8\n0 7\n"
        loaded = await read_matrix(path, order=256, columns=2)
        assert np.array_equal(loaded, matrix)

    @pytest.mark.asyncio
    async def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            await read_matrix(tmp_path / "absent.txt")

    @pytest.mark.asyncio
    async def test_invalid_utf8(self, tmp_path):
        path = tmp_path / "y.txt"
        path.write_bytes(b"1 2\n3 \xff\n")
        with pytest.raises(MatrixFormatError) as exc:
            await read_matrix(path)
        assert exc.value.line == 2


class TestCSVStorage:
    """Test CSV rendering and files."""

    def test_render_header_only(self):
        assert render_csv(FIG1_FIELDS, []) == "l,p,fer_bound,fer_exact,fer_independent\n"

    def test_curve_row_without_simulation(self):
        row = curve_row(Fraction(1, 50), Fraction(1, 4), Fraction(1, 8))
        assert row == {
            "p": "0.02",
            "fer_bound": "0.25",
            "fer_exact": "0.125",
            "fer_sim": "",
            "ci_low": "",
            "ci_high": "",
            "trials": 0,
        }
        assert list(row) == CURVE_FIELDS

    def test_failure_row(self):
        est = FailureEstimate(100, 20, 0, seed=0)
        row = failure_row(2, 2, Fraction(1, 2), None, est)
        assert list(row) == FAILURE_FIELDS
        assert row["exact"] == ""
        assert row["estimate"] == "0.2"
        assert row["trials"] == 100

    def test_fig1_row(self):
        row = fig1_row(9, Fraction(1, 100), Fraction(1, 3), Fraction(1, 4), Fraction(1, 2))
        assert list(row) == FIG1_FIELDS
        assert row["fer_bound"] == "0.333333333333"

    @pytest.mark.asyncio
    async def test_round_trip(self, tmp_path):
        storage = CSVStorage(str(tmp_path / "out" / "fig1.csv"), FIG1_FIELDS)
        rows = [fig1_row(l, Fraction(1, 20), Fraction(1, l), Fraction(0), Fraction(1)) for l in (9, 10)]
        await storage.save_rows(rows)
        loaded = await storage.load_rows()
        assert [r["l"] for r in loaded] == ["9", "10"]
        assert loaded[1]["fer_bound"] == "0.1"

    @pytest.mark.asyncio
    async def test_header_mismatch(self, tmp_path):
        path = tmp_path / "curve.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(ValueError):
            await CSVStorage(str(path), CURVE_FIELDS).load_rows()

    @pytest.mark.asyncio
    async def test_repeated_writes_identical(self, tmp_path):
        path = tmp_path / "c.csv"
        rows = [curve_row(Fraction(1, 10), Fraction(1, 3), Fraction(1, 7))]
        await CSVStorage(str(path), CURVE_FIELDS).save_rows(rows)
        first = path.read_bytes()
        await CSVStorage(str(path), CURVE_FIELDS).save_rows(rows)
        assert path.read_bytes() == first


class TestJSONStorage:
    """Test code specs and decode reports."""

    def test_render_report(self):
        assert render_report({"status": "success", "f_star": 0}) == (
            '{\n  "status": "success",\n  "f_star": 0\n}\n'
        )

    @pytest.mark.asyncio
    async def test_load_rs_spec(self, irs5_spec_file):
        spec = await JSONStorage(irs5_spec_file).load_code_spec()
        assert isinstance(spec, CodeSpecModel)
        code = spec.build()
        assert (code.n, code.k, code.l) == (5, 2, 2)

    @pytest.mark.asyncio
    async def test_load_gabidulin_spec(self, gab_spec_file):
        spec = await JSONStorage(gab_spec_file).load_code_spec()
        assert isinstance(spec, GabidulinSpecModel)
        assert spec.build().d == 4

    @pytest.mark.asyncio
    async def test_not_an_object(self, tmp_path):
        path = tmp_path / "list.json"
        path.write_text("[1, 2]")
        with pytest.raises(ValueError):
            await JSONStorage(path).load()

    @pytest.mark.asyncio
    async def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{")
        with pytest.raises(json.JSONDecodeError):
            await JSONStorage(path).load()

    @pytest.mark.asyncio
    async def test_save(self, tmp_path):
        path = tmp_path / "reports" / "r.json"
        await JSONStorage(path).save({"status": "detected_failure", "f_star": -1})
        assert json.loads(path.read_text()) == {"status": "detected_failure", "f_star": -1}
