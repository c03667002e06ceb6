import json

import pytest

from orgrass.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("ORGRASS_CACHE_DIR", str(tmp_path / "cache"))


def test_dual_command(capsys):
    code, out, _ = run(capsys, "dual", "--k", "3", "--i", "3")
    assert code == 0
    assert out.strip() == "w1^3 + w3"
    code, out, _ = run(capsys, "dual", "--k", "4", "--i", "0")
    assert code == 0
    assert out.strip() == "1"
    code, out, _ = run(capsys, "dual", "--k", "3", "--i", "1")
    assert out.strip() == "w1"


def test_dual_writes_cache(capsys, tmp_path):
    cache = tmp_path / "explicit"
    code, out, _ = run(capsys, "dual", "--k", "3", "--i", "6", "--cache-dir", str(cache))
    assert code == 0
    path = cache / "dual_k3.txt"
    assert path.exists()
    first = path.read_text().splitlines()[0]
    assert first == "orgrass-duals/1"
    # second run reuses the file without error
    code, out, _ = run(capsys, "dual", "--k", "3", "--i", "4", "--cache-dir", str(cache))
    assert code == 0
    assert out.strip() == "w1^4 + w1^2*w2 + w2^2"


def test_g_command(capsys):
    code, out, _ = run(capsys, "g", "--k", "4", "--i", "5")
    assert code == 0
    assert out.strip() == "0"
    code, out, _ = run(capsys, "g", "--k", "5", "--i", "5")
    assert out.strip() == "w5"


def test_scan_command(capsys):
    code, out, _ = run(capsys, "scan", "--k", "3", "--kill", "1", "--lo", "2", "--hi", "100")
    assert code == 0
    assert "[5, 13, 29, 61]" in out


def test_scan_values(capsys):
    code, out, _ = run(
        capsys, "scan", "--k", "4", "--kill", "1,2,3", "--lo", "12", "--hi", "12", "--values"
    )
    assert code == 0
    assert "12: w4^3" in out


def test_scan_json(capsys):
    code, out, _ = run(
        capsys, "scan", "--k", "5", "--kill", "1", "--lo", "2", "--hi", "60", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["format"] == "orgrass-scan/1"
    assert payload["zero_degrees"] == []


def test_scan_bad_kill(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["scan", "--k", "3", "--kill", "7", "--lo", "0", "--hi", "4"])
    assert exc.value.code == 2


def test_betti_human(capsys):
    code, out, _ = run(capsys, "betti", "--n", "6", "--k", "3")
    assert code == 0
    assert "total dim H*(G)=20" in out
    assert "r(G~)=2" in out


def test_betti_json_stable(capsys):
    code, out1, _ = run(capsys, "betti", "--n", "8", "--k", "3", "--json")
    assert code == 0
    code, out2, _ = run(capsys, "betti", "--n", "8", "--k", "3", "--json")
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["format"] == "orgrass-gysin/1"
    assert payload["total_dim_base"] == 56
    row = payload["rows"][0]
    assert set(row) == {"j", "dim_base", "w1_rank", "ker", "coker", "dim_cover"}


def test_betti_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["betti", "--n", "5", "--k", "3"])
    assert exc.value.code == 2


def test_charrank_command(capsys):
    code, out, _ = run(capsys, "charrank", "--n", "8", "--k", "3")
    assert code == 0
    assert "exact 6" in out
    assert "agrees" in out


def test_charrank_capped_exit_code(capsys):
    code, out, _ = run(capsys, "charrank", "--n", "8", "--k", "3", "--cap", "3")
    assert code == 3
    assert "at least 3" in out


def test_charrank_json(capsys):
    code, out, _ = run(capsys, "charrank", "--n", "13", "--k", "4", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == 11
    assert payload["exact"] is True
    assert payload["prediction"] == {"kind": "exact", "value": 11}


def test_cup_command(capsys):
    code, out, _ = run(capsys, "cup", "--n", "8", "--k", "3")
    assert code == 0
    assert "upper bound: 5" in out
    assert "exact: 5" in out


def test_cup_json(capsys):
    code, out, _ = run(capsys, "cup", "--n", "8", "--k", "3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["upper"] == 5
    assert payload["lower_sw"] == 4
    assert payload["exact_source"] == "case_table"


def test_verify_small_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "points")
    assert code == 0
    assert "PASS" in out


def test_verify_vanishing_with_hi(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "vanishing", "--hi", "64")
    assert code == 0


def test_verify_json_stable_without_timing(capsys):
    code, out1, _ = run(capsys, "verify", "--suite", "points", "--json")
    code, out2, _ = run(capsys, "verify", "--suite", "points", "--json")
    assert code == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["ok"] is True
    assert all("seconds" not in row for row in payload["rows"])


def test_verify_charrank_tmax(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "charrank", "--t-max", "3")
    assert code == 0


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.startswith("orgrass ")
