import json

import numpy as np
import pytest

from conftest import random_barcode, random_contour, random_density, random_step_function
from stablerank import (
    INF,
    Bar,
    Barcode,
    Density,
    contour_lines,
    standard_contour,
    truncate,
)
from stablerank.serialize import (
    barcode_from_json,
    barcode_to_json,
    canonical_json,
    contour_from_json,
    contour_to_json,
    density_from_json,
    density_to_json,
    emit_stem_plot,
    format_extended,
    grid2d_from_json,
    grid2d_to_json,
    parse_barcode_file,
    parse_extended,
    parse_ripser_text,
    read_point_cloud_csv,
    step_function_from_json,
    step_function_to_json,
    write_barcode_csv,
    write_barcode_json,
    write_contour_lines_csv,
    write_point_cloud_csv,
)
from stablerank.barcodes import stable_rank_2d


class TestExtendedTokens:
    def test_round_trip(self):
        assert parse_extended(format_extended(INF)) == INF
        assert parse_extended(format_extended(2.5)) == 2.5
        assert parse_extended("inf") == INF
        assert parse_extended(" INF ") == INF

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_extended("infinity+1")
        with pytest.raises(ValueError):
            parse_extended(float("nan"))


class TestJsonRoundTrips:
    def test_step_function(self, rng):
        for _ in range(20):
            f = random_step_function(rng)
            assert step_function_from_json(step_function_to_json(f)) == f

    def test_grid2d(self, rng):
        g = stable_rank_2d(standard_contour(), random_barcode(rng, max_bars=6))
        assert grid2d_from_json(grid2d_to_json(g)) == g

    def test_density(self, rng):
        for _ in range(20):
            d = random_density(rng)
            assert density_from_json(density_to_json(d)) == d

    def test_contour(self, rng):
        for _ in range(20):
            c = random_contour(rng, ("standard", "superlinear", "distance", "shift", "exponential"))
            if rng.random() < 0.5:
                c = truncate(c, float(rng.uniform(0, 5)))
            assert contour_from_json(contour_to_json(c)) == c

    def test_contour_missing_kind(self):
        with pytest.raises(ValueError):
            contour_from_json({"param": 2.0})

    def test_barcode(self, rng):
        for _ in range(20):
            b = random_barcode(rng, degree=int(rng.integers(0, 2)))
            assert barcode_from_json(barcode_to_json(b)) == b

    def test_canonical_json_stable(self):
        a = canonical_json({"b": 1.5, "a": [2.0]})
        b = canonical_json({"a": [2.0], "b": 1.5})
        assert a == b


class TestBarcodeFiles:
    def test_json_file(self, tmp_path, rng):
        b = random_barcode(rng, degree=1)
        path = tmp_path / "b.json"
        write_barcode_json(b, path)
        assert parse_barcode_file(path, "json") == b

    def test_csv_file(self, tmp_path, rng):
        b = random_barcode(rng)
        path = tmp_path / "b.csv"
        write_barcode_csv(b, path)
        assert parse_barcode_file(path, "csv") == b

    def test_csv_degree_override(self, tmp_path):
        path = tmp_path / "b.csv"
        write_barcode_csv(Barcode(0, [(0, 1)]), path)
        assert parse_barcode_file(path, "csv", degree=1).degree == 1

    def test_csv_malformed_line_reports_number(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("birth,death\n0,1\no_no\n")
        with pytest.raises(ValueError, match="line 3"):
            parse_barcode_file(path, "csv")

    def test_csv_rejects_negative_birth(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("birth,death\n-1,2\n")
        with pytest.raises(ValueError, match="line 2"):
            parse_barcode_file(path, "csv")

    def test_csv_rejects_birth_at_death(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("birth,death\n2,2\n")
        with pytest.raises(ValueError, match="line 2"):
            parse_barcode_file(path, "csv")


RIPSER_SAMPLE = """\
value range: [0.1,1.5]
persistence intervals in dim 0:
 [0,0.4)
 [0, )
persistence intervals in dim 1:
 [0,1.5)
 [2, )
"""


class TestRipserText:
    def test_sections(self):
        out = parse_ripser_text(RIPSER_SAMPLE)
        assert out[0] == Barcode(0, [(0, 0.4), (0, INF)])
        assert out[1] == Barcode(1, [(0, 1.5), (2, INF)])

    def test_file_with_degree(self, tmp_path):
        path = tmp_path / "r.txt"
        path.write_text(RIPSER_SAMPLE)
        assert parse_barcode_file(path, "ripser-text", degree=1) == Barcode(1, [(0, 1.5), (2, INF)])
        with pytest.raises(ValueError, match="pass degree"):
            parse_barcode_file(path, "ripser-text")
        with pytest.raises(ValueError, match="dim 2"):
            parse_barcode_file(path, "ripser-text", degree=2)

    def test_single_section_needs_no_degree(self, tmp_path):
        path = tmp_path / "r.txt"
        path.write_text("persistence intervals in dim 1:\n [0,1.5)\n")
        assert parse_barcode_file(path, "ripser-text") == Barcode(1, [(0, 1.5)])

    def test_empty_section(self, tmp_path):
        path = tmp_path / "r.txt"
        path.write_text("persistence intervals in dim 1:\n")
        assert parse_barcode_file(path, "ripser-text") == Barcode(1, [])

    def test_interval_before_header(self):
        with pytest.raises(ValueError, match="line 1"):
            parse_ripser_text("[0,1)")


class TestStemPlot:
    def test_multiplicity_index(self, tmp_path):
        path = tmp_path / "stems.csv"
        emit_stem_plot(Barcode(0, [(0, 2), (0, 3)]), path)
        assert path.read_text() == "s,length,multiplicity_index\n0.0,2.0,0\n0.0,3.0,1\n"

    def test_infinite_token(self, tmp_path):
        path = tmp_path / "stems.csv"
        emit_stem_plot(Barcode(0, [(1, INF)]), path)
        assert path.read_text() == "s,length,multiplicity_index\n1.0,inf,0\n"

    def test_empty_barcode_header_only(self, tmp_path):
        path = tmp_path / "stems.csv"
        emit_stem_plot(Barcode(0), path)
        assert path.read_text() == "s,length,multiplicity_index\n"


class TestPointCloudCsv:
    def test_round_trip(self, tmp_path, rng):
        pts = rng.random((13, 3))
        path = tmp_path / "pts.csv"
        write_point_cloud_csv(pts, path)
        assert np.array_equal(read_point_cloud_csv(path), pts)

    def test_dimension_check(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,2\n3\n")
        with pytest.raises(ValueError):
            read_point_cloud_csv(path)


class TestContourLinesCsv:
    def test_layout_and_inf(self, tmp_path):
        lines = contour_lines(truncate(standard_contour(), 1.5), [1.0], (0.0, 1.0), 3)
        path = tmp_path / "lines.csv"
        write_contour_lines_csv(lines, path)
        rows = path.read_text().splitlines()
        assert rows[0] == "t,s,height"
        assert rows[1] == "1.0,0.0,1.0"
        assert rows[3].endswith(",inf")
