import json
import math

import numpy as np
import pytest
from click.testing import CliRunner

from fwberry.cli import main

TWO_PI = 2.0 * math.pi


@pytest.fixture()
def runner():
    return CliRunner()


def _json(result):
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


def test_curvature_planar_origin(runner):
    result = runner.invoke(
        main, ["curvature", "--model", "dirac2p1", "--m", "1", "--k", "0,0"]
    )
    body = _json(result)
    assert body["components"][0]["matrix"]["re"][0][0] == -0.5
    assert body["closed_form_residual"] < 1e-6


def test_curvature_four_momentum_block(runner):
    result = runner.invoke(
        main, ["curvature", "--model", "dirac4p1", "--k", "0,0,0,0"]
    )
    body = _json(result)
    f12 = body["components"][0]["matrix"]["re"]
    assert f12[0][0] == -0.5 and f12[1][1] == 0.5


def test_curvature_malformed_momentum_exits_2(runner):
    result = runner.invoke(main, ["curvature", "--model", "dirac2p1", "--k", "0,zz"])
    assert result.exit_code == 2
    result = runner.invoke(main, ["curvature", "--model", "dirac2p1", "--k", "0,0,0"])
    assert result.exit_code == 2
    result = runner.invoke(main, ["curvature", "--model", "dirac2p1"])
    assert result.exit_code == 2


def test_connection_command(runner):
    result = runner.invoke(
        main, ["connection", "--model", "dirac2p1", "--m", "1", "--k", "1,0"]
    )
    body = _json(result)
    expected = -1.0 / (2.0 * math.sqrt(2.0) * (math.sqrt(2.0) + 1.0))
    got = body["components"][1]["matrix"]["re"][0][0]
    assert got == pytest.approx(expected, rel=1e-9)


def test_chern_antiderivative(runner):
    result = runner.invoke(
        main,
        ["chern", "--model", "dirac4p1", "--domain", "full",
         "--method", "antiderivative"],
    )
    body = _json(result)
    assert body["result"]["value"] == 1.0
    assert body["claim"] is not None


def test_chern_quadrature(runner):
    # band selects what quadrature integrates; no domain flag needed
    result = runner.invoke(
        main,
        ["chern", "--model", "dirac2p1", "--band", "positive",
         "--method", "quadrature", "--tol", "1e-8"],
    )
    body = _json(result)
    assert body["quadrature"]["value"] == pytest.approx(-0.5, abs=1e-8)
    assert body["quadrature"]["abs_error"] <= 1e-8
    assert body["domain"]["kind"] == "positive"
    explicit = runner.invoke(
        main,
        ["chern", "--model", "dirac2p1", "--domain", "positive",
         "--method", "quadrature", "--tol", "1e-8"],
    )
    assert _json(explicit)["quadrature"]["value"] == body["quadrature"]["value"]


def test_chern_delta_report(runner):
    result = runner.invoke(main, ["chern", "--model", "kane_mele",
                                  "--report", "delta"])
    assert _json(result)["result"]["value"] == 2.0


def test_chern_numerical_failure_exits_3(runner):
    result = runner.invoke(
        main,
        ["chern", "--model", "dirac2p1", "--method", "quadrature",
         "--tol", "1e-14", "--max-subdivisions", "1"],
    )
    assert result.exit_code == 3


def test_bad_domain_exits_2(runner):
    result = runner.invoke(main, ["chern", "--model", "dirac2p1",
                                  "--domain", "everything"])
    assert result.exit_code == 2
    result = runner.invoke(main, ["chern", "--model", "dirac2p1",
                                  "--domain", "custom:0.1:2"])
    assert result.exit_code == 2


def test_reduce_soliton_profile(runner, tmp_path):
    wall = tmp_path / "wall.csv"
    xs = np.linspace(0.0, 4.0, 41)
    wall.write_text(
        "\n".join(f"{x},{math.pi * x / 4.0}" for x in xs) + "\n"
    )
    result = runner.invoke(main, ["reduce", "--quantity", "gw",
                                  "--profile", str(wall)])
    body = _json(result)
    assert body["value"] == 0.5
    assert body["claim"] is not None


def test_reduce_unreadable_profile_exits_2(runner, tmp_path):
    result = runner.invoke(
        main, ["reduce", "--quantity", "gw", "--profile",
               str(tmp_path / "missing.csv")]
    )
    assert result.exit_code == 2
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2,3\n")
    result = runner.invoke(main, ["reduce", "--quantity", "gw",
                                  "--profile", str(bad)])
    assert result.exit_code == 2


def test_reduce_surface_hall(runner):
    result = runner.invoke(
        main,
        ["reduce", "--quantity", "sigma_h", "--n2", "0.5",
         "--dtheta", "6.283185307179586"],
    )
    body = _json(result)
    assert body["value"] == pytest.approx(1.0 / (4.0 * math.pi), rel=1e-9)
    assert body["units"] == "e^2/hbar"


def test_reduce_p3_trivial(runner):
    result = runner.invoke(
        main, ["reduce", "--quantity", "p3", "--phi3", "0", "--n2", "1"]
    )
    assert _json(result)["value"] == 0.0


def test_verify_passes(runner):
    result = runner.invoke(main, ["verify"])
    assert result.exit_code == 0
    assert "0 failed" in result.output
    assert "[PASS]" in result.output


def test_verify_fault_injection_fails(runner):
    result = runner.invoke(main, ["verify", "--inject-sign-bug"])
    assert result.exit_code == 1
    assert "[FAIL]" in result.output
    assert "chern1-full-domain" in result.output


def test_verify_json_output(runner):
    result = runner.invoke(main, ["verify", "--json"])
    body = _json(result)
    assert body["all_passed"]
    assert {c["criterion"] for c in body["claims"]} == set(range(1, 13))


def test_models_command(runner):
    result = runner.invoke(main, ["models"])
    body = _json(result)
    assert len(body["models"]) == 8


def test_sweep_csv(runner):
    result = runner.invoke(
        main,
        ["sweep", "--quantity", "p", "--param", "theta", "--lo", "0",
         "--hi", str(TWO_PI), "--steps", "3", "--n1", "1",
         "--format", "csv"],
    )
    assert result.exit_code == 0, result.output
    lines = result.output.strip().splitlines()
    assert lines[0] == "param,value"
    assert lines[1] == "0,0"
    assert lines[-1].endswith(",1")


def test_output_is_bit_identical_across_runs(runner):
    args = ["chern", "--model", "dirac2p1", "--method", "quadrature",
            "--tol", "1e-8"]
    first = runner.invoke(main, args).output
    second = runner.invoke(main, args).output

    def strip_timing(text):
        return "\n".join(
            line for line in text.splitlines() if "elapsed_ms" not in line
        )

    assert strip_timing(first) == strip_timing(second)


def test_out_file_and_formats(runner, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(
        main,
        ["chern", "--model", "dirac2p1", "--domain", "half", "--out", str(out)],
    )
    assert result.exit_code == 0
    assert json.loads(out.read_text())["result"]["value"] == 0.5
    out_csv = tmp_path / "report.csv"
    result = runner.invoke(
        main,
        ["chern", "--model", "dirac2p1", "--domain", "half",
         "--format", "csv", "--out", str(out_csv)],
    )
    assert result.exit_code == 0
    assert "result.value,0.5" in out_csv.read_text()


def test_config_file_defaults_and_flag_precedence(runner, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("model = dirac4p1\nm = 2.0\n")
    result = runner.invoke(
        main, ["chern", "--config", str(cfg), "--domain", "half"]
    )
    body = _json(result)
    assert body["model"] == "dirac4p1"
    assert body["m"] == 2.0
    # explicit flags win over the config file
    result = runner.invoke(
        main,
        ["chern", "--config", str(cfg), "--model", "dirac2p1",
         "--domain", "half"],
    )
    assert _json(result)["model"] == "dirac2p1"


def test_config_file_errors(runner, tmp_path):
    result = runner.invoke(
        main, ["chern", "--config", str(tmp_path / "nope.cfg")]
    )
    assert result.exit_code == 2
    bad = tmp_path / "bad.cfg"
    bad.write_text("this is not a key value line\n")
    result = runner.invoke(main, ["chern", "--config", str(bad)])
    assert result.exit_code == 2


def test_numbers_rendered_with_twelve_significant_digits(runner):
    result = runner.invoke(
        main, ["reduce", "--quantity", "sigma_sh_3p1"]
    )
    body = _json(result)
    assert body["value"] == float(f"{1.0 / TWO_PI:.12g}")
