import json
import shutil

import pytest

from petersen_census import golden
from petersen_census.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_catalog(capsys):
    assert run(capsys, "catalog", "--k", "3") == (0, "sides=33 signatures=1705\n")
    assert run(capsys, "catalog", "--k", "4")[1] == "sides=85 signatures=25675\n"
    assert run(capsys, "catalog", "--k", "1")[1].startswith("sides=5 ")
    doc = json.loads(run(capsys, "catalog", "--k", "2", "--format", "json", "--dump")[1])
    assert doc["sides"] == 13 and len(doc["sideIntersections"]) == 13


def test_catalog_rejects_k(capsys):
    with pytest.raises(SystemExit):
        main(["catalog", "--k", "6"])


def test_oracle(capsys):
    assert run(capsys, "oracle", "--n", "7", "--k", "3")[1] == "7\n"
    assert run(capsys, "oracle", "--n", "12", "--k", "4")[1] == "6\n"
    assert run(capsys, "oracle", "--n", "5", "--k", "2")[1] == "0\n"
    with pytest.raises(SystemExit):
        main(["oracle", "--n", "6", "--k", "3"])


def test_count_matches_reference(capsys):
    _, out = run(capsys, "count", "--k", "3", "--n-max", "38", "--format", "csv")
    rows = [line.split(",") for line in out.splitlines()[1:]]
    ref = golden.h_values(3)
    assert all(int(h) == ref[int(n)] for n, h in rows)
    assert len(rows) == 30


def test_count_parity_columns(capsys):
    _, out = run(capsys, "count", "--k", "3", "--n-max", "20", "--parity", "--format", "csv")
    for line in out.splitlines()[1:]:
        n, h, e, o = map(int, line.split(","))
        assert h == e + o


def test_count_is_deterministic(capsys, tmp_path):
    a = run(capsys, "count", "--k", "4", "--n-max", "60", "--format", "json")[1]
    b = run(capsys, "count", "--k", "4", "--n-max", "60", "--format", "json")[1]
    assert a == b
    out = tmp_path / "c.json"
    main(["count", "--k", "4", "--n-max", "60", "--format", "json", "--out", str(out)])
    assert out.read_text() == a
    assert "e+" not in a and "E+" not in a


def test_count_rejects_small_n(capsys):
    with pytest.raises(SystemExit):
        main(["count", "--k", "3", "--n-max", "5"])


def test_mine_k3(capsys):
    code, out = run(capsys, "mine", "--k", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["hAnnihilator"] == golden.load_poly("P").int_coeffs()
    assert doc["startIndex"] == 39
    assert len(doc["sccClasses"]) == 7
    assert all(c["pass"] for c in doc["checks"])
    assert run(capsys, "mine", "--k", "3", "--format", "json", "--seed", "0")[1] == out


def test_verify_k3(capsys):
    code, out = run(capsys, "verify", "--k", "3")
    assert code == 0
    assert out.rstrip().endswith("24/24")


def test_verify_k5_partial(capsys):
    code, out = run(capsys, "verify", "--k", "5", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["partial"] is True and len(doc["checks"]) == 1


def test_verify_names_corrupted_file(capsys, tmp_path, monkeypatch):
    dst = tmp_path / "data"
    shutil.copytree(golden.data_dir(), dst)
    (dst / "polys" / "P.txt").write_text("1,2,3\n")
    monkeypatch.setenv("CENSUS_DATA_DIR", str(dst))
    code, out = run(capsys, "verify", "--k", "3")
    assert code == 1
    failing = [line for line in out.splitlines() if line.startswith("FAIL")]
    assert any("P annihilates h_3" in line for line in failing)
    assert any("Berlekamp-Massey on h_3" in line for line in failing)
