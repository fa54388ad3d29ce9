import json
import subprocess
import sys

import numpy as np
import pytest

from fraccalc.cli import main
from fraccalc.grid import Grid, SampledSignal


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gamma(capsys):
    code, out, _ = run(capsys, "gamma", "5")
    assert code == 0
    assert float(out) == pytest.approx(24.0, rel=1e-12)


def test_gamma_complex(capsys):
    code, out, _ = run(capsys, "gamma", "1+1j", "--format", "json")
    val = json.loads(out)
    assert code == 0
    assert complex(val["re"], val["im"]) == pytest.approx(0.4980156681183560 - 0.1549498283018106j, abs=1e-14)


def test_gamma_pole_exits_one(capsys):
    code, _, err = run(capsys, "gamma", "-2")
    assert code == 1
    assert "pole" in err


def test_differint_zero_order_is_identity(capsys):
    code, out, _ = run(capsys, "differint", "--method", "gl", "--order", "0", "--fn", "linear", "--n", "64")
    assert code == 0
    sig = SampledSignal.from_csv(__import__("io").StringIO(out))
    np.testing.assert_array_equal(sig.values, Grid(0.0, 1.0, 64).nodes)


@pytest.mark.parametrize("method,order", [("rl", 0.5), ("rl", -0.5), ("gl", -0.5), ("gl-fast", 0.5)])
def test_differint_methods(capsys, method, order):
    code, out, _ = run(capsys, "differint", "--method", method, "--order", str(order),
                       "--fn", "square", "--n", "128", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["x"]) == len(data["value"]) == 129


def test_differint_from_csv(capsys, tmp_path):
    src = SampledSignal.from_function(Grid(0.0, 2.0, 50), np.sin)
    src.to_csv(tmp_path / "in.csv")
    code, _, _ = run(capsys, "differint", "--method", "gl", "--order", "-1",
                     "--input", str(tmp_path / "in.csv"), "-o", str(tmp_path / "out.csv"))
    out = SampledSignal.from_csv(tmp_path / "out.csv")
    assert code == 0 and out.grid == src.grid


def test_compare_three_rows(capsys):
    code, out, _ = run(capsys, "compare", "--order", "0.5", "--fn", "square", "--resolutions", "256,512,1024")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "n,h,gap,order" and len(lines) == 4
    gaps = [float(line.split(",")[2]) for line in lines[1:]]
    assert gaps[0] > gaps[1] > gaps[2]


def test_compare_zero_order_is_domain_error(capsys):
    code, _, err = run(capsys, "compare", "--order", "0")
    assert code == 1 and "v = 0" in err


def test_laplace(capsys):
    code, out, _ = run(capsys, "laplace", "--s", "2", "--horizon", "20", "--n", "4000")
    row = out.strip().splitlines()[1].split(",")
    assert code == 0 and float(row[2]) == pytest.approx(0.5, abs=1e-6)


def test_laplace_rule(capsys):
    code, out, _ = run(capsys, "laplace", "--s", "2", "1+1j", "--rule", "0.5")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "s_re,s_im,lhs_re,lhs_im,rhs_re,rhs_im,abs_gap" and len(lines) == 3


def test_laplace_left_half_plane(capsys):
    code, _, err = run(capsys, "laplace", "--s", "-1")
    assert code == 1 and "Re(s)" in err


def test_ztransform(capsys):
    code, out, _ = run(capsys, "ztransform", "--z", "2", "--terms", "60", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["value_re"] == [2.0]
    code, _, _ = run(capsys, "ztransform", "--z", "0.5")
    assert code == 1


def test_ztransform_sequences(capsys):
    code, out, _ = run(capsys, "ztransform", "--z", "2", "--seq", "geometric:0.5", "--format", "json")
    assert json.loads(out)["value_re"][0] == pytest.approx(4 / 3, abs=1e-15)
    code, out, _ = run(capsys, "ztransform", "--z", "2", "--seq", "1,2,3", "--format", "json")
    assert json.loads(out)["value_re"][0] == pytest.approx(1 + 1 + 0.75)


def test_solve_fde(capsys, tmp_path):
    cfg = tmp_path / "p.json"
    cfg.write_text(json.dumps({"v": 0.5, "a": 0, "y0": 0, "T": 1, "n": 2048, "forcing": "const:1"}))
    code, out, err = run(capsys, "solve", "fde", "--config", str(cfg))
    sig = SampledSignal.from_csv(__import__("io").StringIO(out))
    assert code == 0 and "residual_norm" in err
    assert sig.values[-1] == pytest.approx(1.1283792, abs=1e-2)


def test_solve_fdiff_inline_forcing(capsys, tmp_path):
    cfg = tmp_path / "p.json"
    cfg.write_text(json.dumps({"v": 1, "a": 0, "y0": 0, "n": 3, "forcing": [1, 1, 1, 1]}))
    code, out, _ = run(capsys, "solve", "fdiff", "--config", str(cfg), "--format", "json")
    assert code == 0 and json.loads(out)["value"] == [1, 2, 3, 4]


def test_solve_bad_order(capsys, tmp_path):
    cfg = tmp_path / "p.json"
    cfg.write_text(json.dumps({"v": 1.5, "n": 4}))
    code, _, err = run(capsys, "solve", "fde", "--config", str(cfg))
    assert code == 1 and "(0, 1]" in err


def test_circuit_subcommands(capsys):
    code, out, _ = run(capsys, "circuit", "bode", "--kind", "frac_differentiator", "--order", "0.5")
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    assert code == 0 and all(float(r[2]) == 45.0 for r in rows)
    code, out, _ = run(capsys, "circuit", "impedance", "--s", "1j", "--format", "json")
    data = json.loads(out)
    assert data["z_re"][0] == pytest.approx(2**-0.5) and data["z_im"][0] == pytest.approx(2**-0.5)
    code, out, err = run(capsys, "circuit", "step", "--kind", "frac_integrator", "--n", "2048")
    assert code == 0 and "gl_gap" in err
    code, _, _ = run(capsys, "circuit", "step", "--kind", "resistoductor")
    assert code == 1


def test_usage_errors_exit_two():
    for argv in (["differint", "--order"], ["nope"], ["differint", "--order", "0.5", "--method", "x"], []):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


def test_output_is_deterministic(tmp_path):
    outputs = []
    for i in range(2):
        path = tmp_path / f"o{i}.csv"
        subprocess.run([sys.executable, "-m", "fraccalc", "differint", "--method", "rl", "--order", "0.5",
                        "--fn", "sin", "--n", "300", "-o", str(path)], check=True)
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]
