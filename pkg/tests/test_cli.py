from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from unidensity import cli, harness


def run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def test_alpha_logblocks():
    code, env = run_json("density", "--alpha", "logblocks(2,1)")
    assert code == 0
    assert set(env) == {"command", "config", "results", "versions"}
    res = env["results"][0]
    assert res["verdict"] == "convergent"
    assert res["value"]["float"] == 0.5


def test_alpha_numeric_method():
    code, env = run_json("alpha", "logblocks(2,1)", "--method", "numeric")
    res = env["results"][0]
    assert code == 0 and res["extras"]["path"] == "numeric"
    assert abs(res["value"] - 0.5) <= 1e-2


def test_thin_paper_example():
    code, env = run_json("thin", "periodic(2,[0,1))", "squares", "--window", "80")
    assert code == 0
    assert env["results"][0]["intervals"] == [["0", "1"], ["6", "7"], ["16", "17"], ["30", "31"],
                                              ["48", "49"], ["70", "71"]]


def test_thin_exact_rationals():
    code, env = run_json("thin", "periodic(3,[0,1/2))", "periodic(2,[0,1/3))", "--window", "10")
    assert env["results"][0]["intervals"][0] == ["0", "1/3"]


def test_thin_csv():
    code, text = run("thin", "periodic(2,[0,1))", "squares", "--window", "20", "--format", "csv")
    assert code == 0
    assert text.splitlines() == ["lo,hi", "0,1", "6,7", "16,17"]


def test_check_wtp_all_pass():
    code, env = run_json("check", "--suite", "wtp", "--seed", "42", "--trials", "3")
    assert code == 0
    assert env["config"]["seed"] == 42
    assert all(r["pass"] or r["status"] == "not_applicable" for r in env["results"])


def test_check_counterexample():
    code, env = run_json("check", "--suite", "counterexample")
    assert code == 0 and env["results"][0]["details"]["exact_form_match"] is True


def test_check_failure_exit_code(monkeypatch):
    bad = harness.AxiomCheckResult("P1", harness.FAIL, {}, {"gap": 1.0})
    monkeypatch.setattr(harness, "run_suite", lambda *a, **k: [bad])
    code, env = run_json("check", "--suite", "wtp")
    assert code == cli.EXIT_CHECK
    assert env["results"][0]["pass"] is False


def test_parse_error_exit_code(capsys):
    code, _ = run("density", "--alpha", "periodic(2,[0,3))")
    assert code == cli.EXIT_PARSE
    assert "exceeds period" in capsys.readouterr().err


def test_horizon_error_exit_code(capsys):
    code, _ = run("density", "--xi", "periodic(2,[0,1))", "--D", "1e10", "--x", "1e10")
    assert code == cli.EXIT_HORIZON
    assert "window" in capsys.readouterr().err


def test_strict_inconclusive_exit_code():
    args = ("alpha", "thin(logblocks(2,1), logblocks(2,1))", "--method", "symbolic")
    assert run(*args)[0] == 0
    assert run(*args, "--strict")[0] == cli.EXIT_STRICT


def test_scalar_functionals():
    _, env = run_json("density", "--rho", "periodic(2,[0,1))", "--x", "3")
    assert env["results"][0]["value"]["exact"] == "2/3"
    _, env = run_json("density", "--sigma", "periodic(2,[0,1))", "--D", "1", "--x", "1/2")
    assert env["results"][0]["value"]["exact"] == "1/2"
    _, env = run_json("density", "--tau", "periodic(2,[0,1))", "--C", "2", "--j", "3")
    assert env["results"][0]["value"]["exact"] == "1/2"
    _, env = run_json("density", "--xi", "periodic(2,[0,1))", "--D", "10000", "--x", "2")
    assert abs(env["results"][0]["value"] - 0.5131124) <= 1e-6


def test_missing_argument():
    assert run("density", "--rho", "squares")[0] == cli.EXIT_PARSE


def test_uniform_functionals():
    _, env = run_json("density", "--U", "periodic(2,[0,1))")
    assert abs(env["results"][0]["value"] - 0.5) < 1e-3
    _, env = run_json("density", "--Ustar", "logblocks(2,1)", "--C", "2")
    assert 0 < env["results"][0]["value"] < 1


def test_classify():
    _, env = run_json("classify", "logblocks(2,1)")
    summary = env["results"][0]
    assert summary == {"natural_density": False, "uniform": False, "log_density": True}


def test_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"tol": 0.01, "x_grid": "2:1.5:20", "seed": 9}))
    code, env = run_json("density", "--lambda", "logblocks(2,1)", "--config", str(cfg), "--seed", "3")
    assert code == 0
    assert env["config"]["tol"] == 0.01 and env["config"]["seed"] == 3
    assert env["config"]["x_grid"] == {"start": 2.0, "ratio": 1.5, "count": 20}
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run("alpha", "squares", "--config", str(cfg))[0] == cli.EXIT_PARSE


def test_grid_flags():
    code, env = run_json("density", "--L", "squares", "--D-grid", "10:2:6", "--x-grid", "2:2:10")
    assert code == 0 and len(env["results"][0]["samples"]) == 6
    with pytest.raises(SystemExit):
        cli.run(["alpha", "squares", "--D-grid", "10:1:6"], out=io.StringIO())


def test_metric_commands():
    _, env = run_json("metric", "--space", "euclidean:2", "--set", "halfplane")
    assert env["results"][0]["rho_bar"] == 0.5
    _, env = run_json("metric", "--what", "tree")
    assert env["results"][0]["sizes_match"] is True
    _, env = run_json("metric", "--set", "annuli", "--what", "reduction")
    r = env["results"][0]
    assert r["residual"] <= r["bound"] + 3 * r["error"]
    _, env = run_json("metric", "--space", "integer-lattice", "--set", "periodic(2,[0,1))")
    assert abs(env["results"][0]["rho_bar"] - 0.5) < 1e-3
    _, env = run_json("metric", "--set", "cone", "--what", "K")
    assert env["results"][0]["K"] == 0.25


def test_decompose():
    code, env = run_json("decompose", "finite([0,3))", "--window", "6")
    assert code == 0
    res, parts = env["results"]
    assert res["pass"] is True
    assert parts["A"] == ["[0,3)"]


def test_envelope_is_sorted_json():
    _, text = run("density", "--alpha", "periodic(2,[0,1))")
    env = json.loads(text)
    assert text == json.dumps(env, sort_keys=True, indent=2) + "\n"
    assert {"package", "python", "numpy", "scipy"} <= set(env["versions"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "unidensity", "density", "--alpha", "logblocks(2,1)"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"][0]["value"]["float"] == 0.5


def test_check_p2_search():
    code, env = run_json("check", "--suite", "p2-search", "--trials", "4", "--seed", "5")
    assert code == 0
    assert [r["axiom"] for r in env["results"]] == ["P2"] * 4
    assert all(r["pass"] for r in env["results"])


def test_alpha_csv_has_verdict_and_limit():
    code, text = run("alpha", "periodic(3,[0,2))", "--format", "csv")
    assert code == 0
    rows = text.strip().splitlines()
    assert rows[0] == "functional,argument,value"
    assert "alpha,verdict,convergent" in rows and "alpha,limit,2/3" in rows
