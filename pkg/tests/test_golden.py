import shutil

from petersen_census import golden
from petersen_census.algebra import Poly
from petersen_census.verification import check_pipeline, check_scc_table


def test_reference_products():
    assert golden.product_poly("P") == golden.load_poly("P")
    assert golden.product_poly("Q") == golden.load_poly("Q")
    assert golden.load_poly("P").degree == 38
    assert golden.load_poly("Q").degree == 162
    assert golden.product_poly("minimal4").degree == 171


def test_minimal_k4_factorization():
    Q, Q1, Q6 = golden.load_poly("Q"), golden.factor("Q", 1), golden.factor("Q", 6)
    assert golden.product_poly("minimal4") == Q * Q1 * Q6**2
    assert Q1 * Q6 == Poly.x(5) - Poly.const(1)


def test_reference_columns():
    h3, h4 = golden.h_values(3), golden.h_values(4)
    assert (min(h3), max(h3), min(h4), max(h4)) == (1, 38, 1, 162)
    assert h4[162] == 2991220108882081740


def test_data_dir_override(tmp_path, monkeypatch, ctx3):
    dst = tmp_path / "data"
    shutil.copytree(golden.data_dir(), dst)
    monkeypatch.setenv("CENSUS_DATA_DIR", str(dst))
    assert check_pipeline(ctx3, 38).passed
    text = (dst / "reference_counts.csv").read_text().replace("20,436,", "20,437,")
    (dst / "reference_counts.csv").write_text(text)
    res = check_pipeline(ctx3, 38)
    assert not res.passed and "20" in res.detail
    (dst / "polys" / "P7.txt").write_text("1,1\n")
    assert not check_scc_table(ctx3).passed
