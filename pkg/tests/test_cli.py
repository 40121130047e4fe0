import csv
import io as _io

import pytest

from locuskit import reference as ref
from locuskit.cli import _grid, main
from locuskit.io import read_pgm


def _csv(text):
    return list(csv.reader(_io.StringIO(text)))


def test_check_trivial(capsys):
    assert main(["check", "--gamma", "0.8", "--lambda", "0.8", "--depth", "10"]) == 0
    assert capsys.readouterr().out.strip() == "TrivialInside"


def test_check_outside(capsys):
    assert main(["check", "--gamma", "0.55", "--lambda", "0.70", "--depth", "64"]) == 0
    assert capsys.readouterr().out.startswith("CertifiedOutside depth=")


@pytest.mark.parametrize("argv", [
    ["check", "--gamma", "1.5", "--lambda", "0.7"],
    ["check", "--gamma", "0.6"],
    ["check", "--gamma", "0.6", "--lambda", "0.7", "--bogus"],
    ["phi-table", "--from", "0.3"],
    ["psi-table", "--to", "0.75"],
    ["locus-render", "--gmin", "0.7", "--gmax", "0.6", "-o", "x.pgm"],
    ["attractor", "--form", "diagonal", "--gamma", "0.6"],
    ["attractor", "--form", "diagonal", "--gamma", "0.6", "--lambda", "0.6"],
    ["attractor", "--gamma", "0.6", "--lambda", "0.7", "--depth", "30"],
    ["corner", "--witness", "x,y"],
    [],
])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_computational_error_exit_1(capsys):
    code = main(["check", "--gamma", "0.6175", "--lambda", "0.6923", "--depth", "64", "--cap", "3"])
    assert code == 1
    assert "frontier overflow" in capsys.readouterr().err


def test_grid_helper():
    assert len(_grid(0.51, 0.64, 0.01)) == 14
    g = _grid(0.53, 0.7278, 0.02)
    assert len(g) == 11 and g[-1] == 0.7278 and g[-2] == 0.71


def test_phi_table_file(tmp_path):
    out = tmp_path / "phi.csv"
    assert main(["phi-table", "--paper-rounding", "-o", str(out)]) == 0
    rows = _csv(out.read_text())
    assert rows[0] == ["gamma", "phi", "k", "a"]
    assert len(rows) == 15
    for g, lam, k, a in rows[1:]:
        assert abs(float(lam) - ref.PHI_TABLE[float(g)]) <= 0.0015
        assert -1 <= float(a) <= 1 and int(k) >= 1


def test_psi_table_stdout(capsys):
    assert main(["psi-table"]) == 0
    rows = _csv(capsys.readouterr().out)
    assert rows[0] == ["gamma", "psi", "k", "l", "a", "b"]
    assert len(rows) == 12


def test_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["phi-table", "-o", str(a)])
    main(["phi-table", "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_locus_render(tmp_path):
    pgm, dump = tmp_path / "o.pgm", tmp_path / "o.csv"
    assert main(["locus-render", "--width", "16", "--height", "12", "--depth", "20",
                 "-o", str(pgm), "--csv", str(dump)]) == 0
    img = read_pgm(pgm.read_bytes())
    assert img.shape == (12, 16)
    rows = _csv(dump.read_text())
    assert rows[0] == ["gamma", "lambda", "verdict", "depth", "surviving"]
    assert len(rows) == 1 + 16 * 12
    assert not list(tmp_path.glob("*.tmp"))


def test_attractor_cloud(tmp_path):
    out = tmp_path / "cloud.csv"
    assert main(["attractor", "--gamma", "0.6", "--lambda", "0.7", "--depth", "6",
                 "-o", str(out), "--raster", "20x10"]) == 0
    rows = _csv(out.read_text())
    assert rows[0] == ["x", "y"] and len(rows) == 65
    assert rows[3] == ["0.6", "0.7"] and rows[4] == ["1.6", "1.7"]
    assert read_pgm((tmp_path / "cloud.pgm").read_bytes()).shape == (10, 20)


def test_attractor_jordan(capsys):
    assert main(["attractor", "--form", "jordan", "--lambda", "0.5", "--depth", "2"]) == 0
    rows = _csv(capsys.readouterr().out)
    assert rows[1:] == [["0", "0"], ["0", "1"], ["1", "0.5"], ["1", "1.5"]]


def test_corner_report(tmp_path, capsys):
    out = tmp_path / "corner.csv"
    assert main(["corner", "--witness", "4,0", "--n-min", "30", "--n-max", "35", "-o", str(out)]) == 0
    rows = _csv(out.read_text())
    assert rows[0] == ["N", "R_id", "gamma_tilde", "lambda_tilde", "ratio", "c1", "c2", "pass"]
    assert len(rows) == 1 + 6 * 3
    assert all(r[-1] == "true" for r in rows[1:])
    assert "gamma0=0.618033989" in capsys.readouterr().out


def test_corner_coefficient_list(capsys):
    assert main(["corner", "--witness", "1,-1,-1,-1,-1,0", "--n-min", "40", "--n-max", "40"]) == 0
    assert "gamma0=0.532958" in capsys.readouterr().err
