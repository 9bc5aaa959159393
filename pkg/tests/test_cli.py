import json

import pytest

from nbzeta import build_bouquet, complete_graph, serialize_graph
from nbzeta.cli import main


def _write_graph(tmp_path, g, name="g.nbg"):
    path = tmp_path / name
    path.write_text(serialize_graph(g))
    return path


def test_cli_census(tmp_path, capsys):
    out = tmp_path / "census.csv"
    rc = main([
        "census", "--model", "perm", "--n", "12", "--d", "4",
        "--samples", "5", "--seed", "3", "--out", str(out),
    ])
    assert rc == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["samples"] == 5
    lines = out.read_text().splitlines()
    assert lines[0] == "sample,seed,count,lambda1,lambda2"
    assert len(lines) == 6
    assert json.loads((tmp_path / "census.csv.json").read_text())["failures"] == 0


def test_cli_census_cover(tmp_path, capsys):
    base = _write_graph(tmp_path, build_bouquet(2, 0), "base.nbg")
    rc = main([
        "census", "--model", "cover", "--base", str(base), "--n", "8",
        "--samples", "4", "--seed", "1",
    ])
    assert rc == 0
    assert json.loads(capsys.readouterr().out)["samples"] == 4


def test_cli_zeta(tmp_path, capsys):
    path = _write_graph(tmp_path, complete_graph(4))
    rc = main([
        "zeta", "--graph", str(path), "--check-ihara", "--series-K", "3",
        "--contour", "0.2,0.05,+,512",
    ])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["ihara_identity"] is True
    assert out["series"] == ["12", "0", "0", "3"]
    assert out["contour"]["exact"] == 0
    assert abs(out["contour"]["numeric_real"]) < 1e-6
    # charpoly coefficients are exact decimal strings
    assert out["char_poly_u"][0] == "1"


def test_cli_spectrum(tmp_path, capsys):
    path = _write_graph(tmp_path, complete_graph(4))
    rc = main(["spectrum", "--graph", str(path), "--hashimoto", "--classify"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["adjacency"] == pytest.approx([3, -1, -1, -1])
    assert len(out["hashimoto"]) == 12
    assert out["non_ramanujan"]["is_ramanujan"] is True


def test_cli_traces_exact(capsys):
    rc = main(["traces", "--n", "2", "--d", "4", "--k", "1", "--exact"])
    assert rc == 0
    assert json.loads(capsys.readouterr().out)["exact_mean"] == "4"


def test_cli_traces_monte_carlo(capsys):
    rc = main([
        "traces", "--model", "perm", "--n", "6", "--d", "4", "--k", "2",
        "--samples", "50", "--seed", "9",
    ])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["samples"] == 50 and out["mean"] > 0


def test_cli_section8(capsys):
    rc = main(["section8", "--preset", "G4_100", "--samples", "40", "--seed", "2"])
    assert rc == 0
    assert "G4_100" in capsys.readouterr().out


def test_cli_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.nbg"
    bad.write_text("not a graph\n")
    rc = main(["spectrum", "--graph", str(bad)])
    assert rc == 2
    assert "error" in capsys.readouterr().err
