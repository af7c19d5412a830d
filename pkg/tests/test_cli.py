import subprocess
import sys
from pathlib import Path

import pytest

from botmf.cli import main
from botmf.ext import chart_from_text

GOLDEN = Path(__file__).parent / "golden" / "tmf_chart.chart"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_bg1(capsys):
    code, out, _ = run(capsys, "build", "bg:1")
    assert code == 0
    assert [ln for ln in out.splitlines() if ln.startswith("B ")] == ["B 0 1", "B 2 z1^2", "B 3 z2"]


def test_build_tmf_small(capsys):
    code, out, _ = run(capsys, "build", "tmf", "--max-degree", "16")
    degrees = [int(ln.split()[1]) for ln in out.splitlines() if ln.startswith("B ")]
    assert degrees == [0, 8, 12, 14, 15, 16]


def test_build_omega_has_bg1_bottom(capsys):
    code, out, _ = run(capsys, "build", "omega", "--max-degree", "12")
    assert "B 12 [j=1,k=0] 1" in out.splitlines()


def test_unknown_construction_is_usage_error(capsys):
    code, _, err = run(capsys, "build", "nope")
    assert code == 2
    assert "usage:" in err


def test_negative_bound_is_usage_error(capsys):
    assert run(capsys, "build", "tmf", "--max-degree", "-1")[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "bogus"])
    assert exc.value.code == 2


def test_window_violation_reports_minimal_degree(capsys):
    code, _, err = run(capsys, "ext", "tmf", "--max-degree", "40")
    assert code == 2
    assert "minimal admissible --max-degree is 48" in err


def test_verify_weights(capsys):
    code, out, _ = run(capsys, "verify", "weights")
    assert code == 0
    for k in (1, 2, 4):
        assert f"PASS weights.tmf.sq{k}.blockdiag" in out


def test_verify_splitting(capsys):
    code, out, _ = run(capsys, "verify", "splitting", "--max-degree", "48")
    assert code == 0
    assert "through degree 42" in out


def test_verify_davis_case(capsys):
    code, out, _ = run(capsys, "verify", "davis", "--case", "2")
    assert code == 0
    assert "PASS davis.case-2" in out and "bo<3>" in out


def test_verify_census_fails_on_eta_towers(capsys):
    code, out, _ = run(capsys, "verify", "chart-census")
    assert code == 1
    assert "FAIL census.eta-towers.stem4mod8" in out
    assert "PASS census.vacant.3567mod8" in out


def test_verify_cofiber_and_ring(capsys):
    assert run(capsys, "verify", "cofiber")[0] == 0
    assert run(capsys, "verify", "ring")[0] == 0


def test_ext_tmf_matches_golden(capsys, tmp_path):
    out_file = tmp_path / "tmf.chart"
    code, _, _ = run(capsys, "ext", "tmf", "--stem-max", "32", "--out", str(out_file))
    assert code == 0
    assert out_file.read_text() == GOLDEN.read_text()
    assert [p.name for p in tmp_path.iterdir()] == ["tmf.chart"]


def test_ext_is_deterministic(capsys):
    a = run(capsys, "ext", "bg:1", "--suspend", "12", "--stem-max", "26", "--s-max", "7")[1]
    b = run(capsys, "ext", "bg:1", "--suspend", "12", "--stem-max", "26", "--s-max", "7")[1]
    assert a == b
    C = chart_from_text(a)
    assert {st for st, s in C.classes if s == 0} == {12}


def test_chart_svg_class_count(capsys):
    chart = chart_from_text(run(capsys, "ext", "tmf")[1])
    code, svg, _ = run(capsys, "chart", "tmf", "--format", "svg")
    assert code == 0
    assert svg.count('<circle class="cls') == chart.total


def test_chart_text_format(capsys):
    code, out, _ = run(capsys, "chart", "bg:2", "--stem-max", "12", "--s-max", "6")
    assert code == 0 and "•" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "botmf.cli", "verify", "davis", "--case", "1,1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "PASS davis.case-1-1" in proc.stdout
