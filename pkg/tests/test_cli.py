import json
import math

import pytest

from alpwitness import cli, qcore
from alpwitness.curve_io import CSV_COLUMNS, load_curve

HEADER = "# name: test\n# abscissa: range_m\n# coupling: alpha_J_m\n"


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _csv_rows(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    return lines[0], lines[1:]


def test_scan_preset_csv(capsys):
    code, out, err = _run(capsys, "scan", "--preset", "fig2")
    assert code == 0
    header, rows = _csv_rows(out)
    assert header == ",".join(CSV_COLUMNS)
    assert len(rows) == 200
    assert "round-trip max error" in err


def test_scan_points_override(capsys):
    code, out, _ = _run(capsys, "scan", "--preset", "fig3", "--points", "2")
    assert code == 0 and len(_csv_rows(out)[1]) == 2


def test_csv_is_locale_independent(capsys):
    _, out, _ = _run(capsys, "scan", "--preset", "fig2", "--points", "3")
    for row in _csv_rows(out)[1]:
        first = row.split(",")[0]
        assert "e" in first and "." in first


def test_scan_json_echoes_config(tmp_path, capsys):
    out = tmp_path / "c.json"
    code, _, _ = _run(capsys, "scan", "--preset", "fig5", "--format", "json", "--out", str(out), "--gamma", "1e-3")
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["config"]["gamma"] == 1e-3 and doc["config"]["preset"] == "fig5"
    assert doc["round_trip"]["max_error"] <= 1e-9
    assert len(doc["samples"]) == 200


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.yaml"
    cfg.write_text("model: yukawa\npoints: 4\ngamma: 0.0\n")
    code, out, _ = _run(capsys, "scan", "--config", str(cfg))
    assert code == 0 and len(_csv_rows(out)[1]) == 4


def test_unknown_key_exit_code(tmp_path, capsys):
    cfg = tmp_path / "run.yaml"
    cfg.write_text("gama: 0.1\n")
    code, _, err = _run(capsys, "scan", "--config", str(cfg))
    assert code == 1 and "gama" in err


def test_config_and_preset_conflict(tmp_path, capsys):
    code, _, _ = _run(capsys, "scan", "--config", "x.yaml", "--preset", "fig2")
    assert code == 1


def test_unreachable_target_is_reported_in_band(capsys):
    code, out, _ = _run(capsys, "scan", "--preset", "fig2", "--witness", "-0.9", "--points", "2")
    assert code == 0
    assert all(r.endswith("unreachable_witness") for r in _csv_rows(out)[1])


def test_witness_zero(capsys):
    code, out, _ = _run(capsys, "witness", "--phi1", "0", "--phi2", "0", "--gamma", "0")
    assert code == 0
    values = dict(line.split(": ") for line in out.splitlines())
    for key in ("closed_form_W", "numeric_min_pt_eigenvalue", "negativity"):
        assert float(values[key]) == 0.0


def test_witness_maximal(capsys):
    _, out, _ = _run(capsys, "witness", "--phi1", str(-math.pi / 2), "--phi2", str(-math.pi / 2), "--gamma", "0")
    values = dict(line.split(": ") for line in out.splitlines())
    assert float(values["closed_form_W"]) == pytest.approx(-0.5, abs=1e-15)
    assert float(values["negativity"]) == pytest.approx(0.5, abs=1e-12)


def test_witness_model_point_matches_scan(tmp_path, capsys):
    path = tmp_path / "c.csv"
    _run(capsys, "scan", "--preset", "fig2", "--points", "3", "--out", str(path))
    curve = load_curve(path)
    x, g = float(curve.abscissa[1]), float(curve.coupling[1])
    code, out, _ = _run(capsys, "witness", "--preset", "fig2", "--abscissa", repr(x), "--coupling", repr(g))
    values = dict(line.split(": ") for line in out.splitlines())
    assert code == 0
    assert float(values["closed_form_W"]) == pytest.approx(-0.1, rel=1e-12)


def test_witness_needs_inputs(capsys):
    assert _run(capsys, "witness", "--phi1", "0.1")[0] == 1
    assert _run(capsys, "witness")[0] == 1


def test_witness_computation_error(capsys):
    assert _run(capsys, "witness", "--phi1", "0", "--phi2", "0", "--gamma", "-1")[0] == 2


def test_classify(tmp_path, capsys, bound_file):
    curve = tmp_path / "c.csv"
    _run(capsys, "scan", "--preset", "fig2", "--points", "10", "--out", str(curve))
    high = bound_file(HEADER + "1e-7 1\n1 1\n", "high.txt")
    code, out, err = _run(capsys, "classify", str(curve), "--exclusion", str(high))
    assert code == 0
    assert "allowed: 10" in err and "excluded: 0" in err
    assert len(out.splitlines()) == 11


def test_classify_without_regions(tmp_path, capsys):
    curve = tmp_path / "c.json"
    _run(capsys, "scan", "--preset", "fig2", "--points", "5", "--format", "json", "--out", str(curve))
    code, _, err = _run(capsys, "classify", str(curve))
    assert code == 0 and "outside_region_support: 5" in err


def test_classify_errors(tmp_path, capsys, bound_file):
    curve = tmp_path / "c.csv"
    _run(capsys, "scan", "--preset", "fig5", "--points", "3", "--out", str(curve))
    wrong_kind = bound_file(HEADER + "1e-7 1\n1 1\n")
    assert _run(capsys, "classify", str(curve), "--exclusion", str(wrong_kind))[0] == 1
    broken = bound_file(HEADER + "1e-7 one\n", "broken.txt")
    code, _, err = _run(capsys, "classify", str(curve), "--exclusion", str(broken))
    assert code == 1 and "line 4" in err
    assert _run(capsys, "classify", str(tmp_path / "absent.csv"))[0] == 1


def test_scan_with_exclusion_json(tmp_path, capsys, bound_file):
    high = bound_file(HEADER + "1e-7 1\n1 1\n")
    out = tmp_path / "c.json"
    code, _, _ = _run(capsys, "scan", "--preset", "fig2", "--points", "4", "--format", "json", "--exclusion", str(high), "--out", str(out))
    assert code == 0
    assert {s["classification"] for s in json.loads(out.read_text())["samples"]} == {"allowed"}


def test_validate_passes(capsys):
    code, out, _ = _run(capsys, "validate")
    assert code == 0
    assert "FAIL" not in out and "eq8-roundtrip" in out


def test_validate_catches_sign_flip(capsys):
    def flipped(omega_ent, gamma, tau):
        return qcore.witness_closed_form(-omega_ent, gamma, tau)

    code = cli.cmd_validate(None, witness=flipped)
    out, err = capsys.readouterr()
    assert code == 3
    assert "FAIL  eq8-roundtrip" in out and "eq8-roundtrip" in err


def test_usage_error_is_a_config_error(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["scan", "--points", "many"])
    assert info.value.code == 1


def test_module_entry_point(tmp_path):
    import subprocess
    import sys

    out = tmp_path / "fig2.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "alpwitness", "scan", "--preset", "fig2", "--points", "5", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert len(load_curve(out).abscissa) == 5
