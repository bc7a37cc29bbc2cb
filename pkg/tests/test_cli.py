import csv
import json

import pytest

from ebilliards.cli import TOL_ENV, ConfigError, Tolerances, main


def _run(tmp_path, *argv):
    return main(list(argv) + ["-o", str(tmp_path / "run")])


def _json(tmp_path):
    return json.loads((tmp_path / "run.json").read_text())


def test_hexagon_in_circle(tmp_path):
    assert _run(tmp_path, "orbit", "--ab", "1", "--n", "6") == 0
    out = _json(tmp_path)
    assert out["L"] == pytest.approx(6, rel=1e-12)
    assert out["turning"] == 1 and out["checks"]["valid"]
    assert (tmp_path / "run.svg").read_text().startswith("<?xml")


def test_heptagram_turning(tmp_path):
    assert _run(tmp_path, "orbit", "--ab", "1.1", "--n", "7", "--topology", "type2") == 0
    assert _json(tmp_path)["turning"] == 3


def test_bowtie_orbit(tmp_path):
    assert _run(tmp_path, "orbit", "--ab", "1.5", "--n", "4", "--topology", "type1", "--u", "0.2",
                "--show", "outer,inner,inversive") == 0
    out = _json(tmp_path)
    assert out["turning"] == 0
    assert out["invariants"]["k805a"]["measured"] is None


def test_doubled_up_bowtie_rejected(tmp_path):
    assert _run(tmp_path, "orbit", "--ab", "1.5", "--n", "4", "--topology", "type1", "--u", "0") == 2


def test_claimed_turning_mismatch_exits_3(tmp_path):
    assert _run(tmp_path, "orbit", "--ab", "1.5", "--n", "8", "--topology", "type2") == 3


def test_triangle_sweep(tmp_path):
    assert _run(tmp_path, "sweep", "--ab", "1.5", "--n", "3") == 0
    out = _json(tmp_path)
    assert all(c["verdict"] == "Invariant" for c in out["codes"].values())
    rows = list(csv.reader((tmp_path / "run.csv").open()))
    assert rows[0] == ["param", "code", "value"]
    assert len(rows) == 1 + 16 * len(out["codes"])
    assert out["version"].startswith("ebilliards")
    assert out["tolerances"]["invariant"] == 1e-7


def test_forced_k804_square(tmp_path):
    assert _run(tmp_path, "sweep", "--ab", "1.5", "--n", "4", "--codes", "k804") == 0
    assert _json(tmp_path)["codes"]["k804"]["verdict"] == "Variable"


def test_type2_hexagon_areas(tmp_path):
    assert _run(tmp_path, "sweep", "--ab", "3", "--n", "6", "--topology", "type2", "--codes", "k106,k110") == 0
    for c in _json(tmp_path)["codes"].values():
        assert abs(c["mean"]) < 1e-12


def test_scan(tmp_path):
    assert _run(tmp_path, "scan", "--n", "6", "--code", "k106", "--grid", "1.2,1.5,2,3") == 0
    assert [e["verdict"] for e in _json(tmp_path)["entries"]] == ["Invariant"] * 4


def test_bowtie_command(tmp_path):
    assert _run(tmp_path, "bowtie", "--ab", "1.5") == 0
    out = _json(tmp_path)
    assert all(s["harmonic"] < 1e-12 for s in out["samples"])
    assert len(out["samples"]) == 50


def test_bowtie_right_angle(tmp_path):
    assert _run(tmp_path, "bowtie", "--ab", "1.55377") == 0
    assert _json(tmp_path)["crossing_angle_deg"] == pytest.approx(90, abs=1e-2)


def test_bowtie_below_sqrt2(tmp_path, capsys):
    assert _run(tmp_path, "bowtie", "--ab", "1.41") == 2
    assert "sqrt(2)" in capsys.readouterr().err


def test_nonexistent_family(tmp_path):
    assert _run(tmp_path, "orbit", "--ab", "1.5", "--n", "6", "--topology", "type1") == 2


def test_bad_arguments(tmp_path):
    assert _run(tmp_path, "orbit", "--ab", "0.5") == 2
    assert _run(tmp_path, "orbit", "--n", "3", "--topology", "type1") == 2
    assert _run(tmp_path, "sweep", "--samples", "4") == 2


def test_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        d.mkdir()
        assert main(["sweep", "--ab", "2", "--n", "5", "-o", str(d / "run")]) == 0
        assert main(["bowtie", "--ab", "2", "-o", str(d / "bow")]) == 0
    for name in ("run.csv", "run.json", "bow.json", "bow.svg"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_tolerance_env(monkeypatch, tmp_path):
    monkeypatch.setenv(TOL_ENV, "invariant=1e-9, gap=1e-9")
    t = Tolerances.from_env()
    assert t.invariant == 1e-9 and t.gap == 1e-9 and t.variable == 1e-3
    assert _run(tmp_path, "sweep", "--ab", "1.5", "--n", "3") == 0
    assert _json(tmp_path)["tolerances"]["invariant"] == 1e-9
    monkeypatch.setenv(TOL_ENV, "invariant=abc")
    with pytest.raises(ConfigError):
        Tolerances.from_env()
    assert _run(tmp_path, "sweep", "--ab", "1.5", "--n", "3") == 2
