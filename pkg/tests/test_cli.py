import json
import math

import numpy as np
import pytest

from bandspline.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spline_abs_error_report(capsys):
    code, out, _ = _run(capsys, "spline", "--target", "abs", "--n", "10")
    assert code == 0
    last = out.strip().splitlines()[-1]
    label, value = last.split(",")
    assert label == "mean_square_error"
    assert float(value) == pytest.approx(1.3e-3, rel=0.2)


def test_spline_sin_error_report(capsys):
    code, out, _ = _run(capsys, "spline", "--target", "sin2pi", "--n", "100")
    assert code == 0
    value = float(out.strip().splitlines()[-1].split(",")[1])
    assert value < 5.0e-10


def test_spline_rejects_zero_pieces(capsys):
    code, _, err = _run(capsys, "spline", "--target", "abs", "--n", "0")
    assert code == 2
    assert "n must be >= 1" in err


def test_unknown_potential_is_usage_error(capsys):
    code, _, err = _run(capsys, "eigen", "--potential", "cubic", "--range", "0", "1")
    assert code == 2
    assert "unknown potential" in err


def test_eigen_mathieu_table(capsys):
    code, out, _ = _run(
        capsys, "eigen", "--potential", "mathieu:0.2", "--range", "0.5", "10"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "index,E"
    values = [float(line.split(",")[1]) for line in lines[1:]]
    expected = [0.795124, 1.194874, 3.996676, 4.016588, 9.002376, 9.002626]
    assert len(values) == 6
    for v, e in zip(values, expected):
        assert v == pytest.approx(e, abs=2e-4)


def test_eigen_empty_range_is_success(capsys):
    code, out, _ = _run(capsys, "eigen", "--potential", "harmonic", "--range", "45", "45")
    assert code == 0
    assert out.strip() == "index,E"


def test_bands_free_single_band(capsys):
    code, out, _ = _run(capsys, "bands", "--potential", "free", "--range", "0", "45")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "band_index,E_lo,E_hi"
    assert len(lines) == 2


def test_bands_json_contains_gaps(capsys):
    code, out, _ = _run(
        capsys, "bands", "--potential", "harmonic", "--range", "9", "11",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"bands", "gaps", "dispersion"}
    gaps = [(float(a), float(b)) for a, b in payload["gaps"]]
    assert any(abs(a - 10.1512) < 1e-3 and abs(b - 10.2601) < 1e-3 for a, b in gaps)


def test_dispersion_output(capsys):
    code, out, _ = _run(
        capsys, "dispersion", "--potential", "free", "--range", "0.5", "5"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "E,alpha"
    for line in lines[1:]:
        E, alpha = map(float, line.split(","))
        # free particle: alpha = sqrt(E) folded into [0, pi/T]
        T = 2.0
        assert math.cos(alpha * T) == pytest.approx(
            math.cos(math.sqrt(E) * T), abs=1e-7
        )


def test_output_file_has_lf_endings(tmp_path, capsys):
    out_path = tmp_path / "bands.csv"
    code, _, _ = _run(
        capsys, "bands", "--potential", "free", "--range", "0", "10",
        "--out", str(out_path),
    )
    assert code == 0
    raw = out_path.read_bytes()
    assert b"\r" not in raw
    assert raw.decode().splitlines()[0] == "band_index,E_lo,E_hi"


def test_numbers_round_trip_17_digits(capsys):
    code, out, _ = _run(
        capsys, "eigen", "--potential", "mathieu:0.2", "--range", "1.0", "1.5"
    )
    assert code == 0
    value_text = out.strip().splitlines()[1].split(",")[1]
    assert float(value_text) == float(f"{float(value_text):.17g}")
    assert len(value_text.replace(".", "").replace("-", "").lstrip("0")) >= 15


def test_config_file_precedence(tmp_path, capsys):
    conf = tmp_path / "conf.json"
    conf.write_text(json.dumps({"potential": "free", "range": [0.0, 10.0]}))
    code, out, _ = _run(capsys, "bands", "--config", str(conf))
    assert code == 0
    assert out.strip().splitlines()[1].startswith("0,0,")
    # a flag overrides the config value
    code, out, _ = _run(
        capsys, "bands", "--config", str(conf), "--range", "0", "5"
    )
    assert code == 0
    assert float(out.strip().splitlines()[1].split(",")[2]) == pytest.approx(5.0)


def test_config_rejects_unknown_keys(tmp_path, capsys):
    conf = tmp_path / "conf.json"
    conf.write_text(json.dumps({"bogus": 1}))
    code, _, err = _run(capsys, "bands", "--config", str(conf))
    assert code == 2
    assert "bogus" in err


def test_tabulated_potential_file(tmp_path, capsys):
    from bandspline import Grid, emit_tabulated, harmonic

    path = tmp_path / "pot.dat"
    path.write_text(emit_tabulated(harmonic(), Grid(-1.0, 1.0, 100)))
    code, out, _ = _run(
        capsys, "eigen", "--potential", f"file:{path}", "--range", "0", "1"
    )
    assert code == 0
    ground = float(out.strip().splitlines()[1].split(",")[1])
    assert ground == pytest.approx(0.324942, abs=1e-4)


def test_determinism(capsys):
    outs = []
    for _ in range(2):
        code, out, _ = _run(
            capsys, "eigen", "--potential", "mathieu:0.2", "--range", "0.5", "10"
        )
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_validate_grid(capsys):
    code, out, _ = _run(capsys, "validate")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("m,n,k,parity")
    assert len(lines) == 1 + 6 * 6
    assert all(line.endswith("ok") for line in lines[1:])
