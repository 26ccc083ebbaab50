import json
import os
import subprocess
import sys

import pytest

from kpeterson.cache import Cache, canonical_json
from kpeterson.cli import compute_payload, main
from kpeterson.config import ConfigError, RunConfig, resolve
from kpeterson.demazure import DemazureContext
from kpeterson.quantum import GrothTable
from kpeterson.symseries import SymSeries


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for k in list(os.environ):
        if k.startswith("KPETERSON_"):
            monkeypatch.delenv(k)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- compute ---------------------------------------------------------------------------------------

def test_compute_gkschur_closed(capsys):
    code, out, _ = run(capsys, "compute", "gkschur-closed", "--n", "3", "--partition", "1", "--deg", "4")
    assert code == 0
    doc = json.loads(out)
    want = DemazureContext(3, 4).g_tilde((1,))
    assert SymSeries.from_json(doc["result"]) == want
    assert doc["config"]["n"] == 3 and doc["config"]["D"] == 4
    assert out == canonical_json(doc) + "\n"


def test_compute_groth(capsys):
    code, out, _ = run(capsys, "compute", "groth", "--n", "2", "--perm", "2,1")
    assert code == 0
    assert json.loads(out)["result"] == GrothTable(2)[(2, 1)].to_json()


def test_compute_tau_zero_is_one(capsys):
    code, out, _ = run(capsys, "compute", "tau", "--n", "3", "--i", "0", "--deg", "3")
    assert code == 0
    got = SymSeries.from_json(json.loads(out)["result"])
    assert got == SymSeries.const(got.ring, 3, 1)


def test_compute_z_matrix_is_upper_triangular(capsys):
    code, out, _ = run(capsys, "compute", "z-matrix", "--n", "2", "--deg", "2")
    assert code == 0
    rows = json.loads(out)["result"]
    assert SymSeries.from_json(rows[1][0]).is_zero()


@pytest.mark.parametrize("argv", [
    ["compute", "gkschur", "--n", "3", "--partition", "3"],
    ["compute", "gkschur", "--n", "3"],
    ["compute", "groth", "--n", "3", "--perm", "1,1,2"],
    ["compute", "tau", "--n", "3", "--i", "7"],
    ["compute", "nonsense"],
    ["verify", "main", "--n", "1"],
    ["verify", "main", "--mode", "XX"],
    ["toda", "--n", "3", "--z", "1,2"],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_budget_exit(capsys):
    code, _, err = run(capsys, "compute", "gkschur", "--n", "3", "--partition", "2,2,1", "--max-length", "3")
    assert code == 3
    assert "budget" in err


# -- verify ------------------------------------------------------------------------------------------

def test_verify_main_n2(capsys):
    code, out, _ = run(capsys, "verify", "main", "--n", "2", "--deg", "6", "--max-length", "4")
    assert code == 0
    report = json.loads(out)
    assert report["ok"] and report["summary"]["fail"] == 0
    assert report["config"]["D"] == 6


def test_verify_failure_exit(monkeypatch, capsys):
    from kpeterson import suites

    monkeypatch.setattr(suites, "case_maxfactor", lambda cfg: (False, {"witness": "forced"}))
    code, out, _ = run(capsys, "verify", "maxfactor", "--n", "3", "--deg", "2")
    assert code == 1
    assert json.loads(out)["cases"][0]["witness"] == "forced"


def test_verify_budget_exit(monkeypatch, capsys):
    from kpeterson import suites
    from kpeterson.demazure import BudgetExceeded

    def over(cfg):
        raise BudgetExceeded("forced")

    monkeypatch.setattr(suites, "case_maxfactor", over)
    code, out, _ = run(capsys, "verify", "maxfactor", "--n", "3", "--deg", "2")
    assert code == 3
    assert json.loads(out)["summary"]["budget"] == 1


def test_verify_writes_json_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "krect", "--n", "3", "--deg", "3", "--json", str(path))
    assert code == 0
    assert json.loads(path.read_text())["ok"]
    assert out.startswith("krect:")


def test_determinism(capsys):
    argv = ["verify", "operators", "--n", "3", "--deg", "2", "--seed", "5"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_parallel_report_matches_serial(capsys):
    argv = ["verify", "krect", "--n", "3", "--deg", "3"]
    _, serial, _ = run(capsys, *argv)
    _, parallel, _ = run(capsys, *argv, "--jobs", "2")
    a, b = json.loads(serial), json.loads(parallel)
    assert a["cases"] == b["cases"]


# -- toda ---------------------------------------------------------------------------------------------

def test_toda_orbit(capsys):
    code, out, _ = run(capsys, "toda", "--n", "3", "--steps", "2", "--z", "2,3,5", "--Q", "1/2,1/3")
    assert code == 0
    doc = json.loads(out)
    assert doc["conserved"] and len(doc["states"]) == 3
    assert doc["states"][0]["z"] == ["2", "3", "5"]


def test_toda_seeded_default(capsys):
    _, a, _ = run(capsys, "toda", "--n", "4", "--seed", "3")
    _, b, _ = run(capsys, "toda", "--n", "4", "--seed", "3")
    assert a == b and json.loads(a)["conserved"]


# -- configuration ------------------------------------------------------------------------------------

def test_env_and_cli_precedence():
    env = {"KPETERSON_N": "4", "KPETERSON_DEG": "2", "KPETERSON_MODE": "gl"}
    cfg = resolve({"n": None, "D": 3}, env)
    assert (cfg.n, cfg.D, cfg.mode) == (4, 3, "GL")
    assert resolve({}, {}) == RunConfig()
    with pytest.raises(ConfigError):
        resolve({}, {"KPETERSON_N": "x"})


def test_env_reaches_cli(monkeypatch, capsys):
    monkeypatch.setenv("KPETERSON_N", "2")
    code, out, _ = run(capsys, "compute", "tau", "--i", "2", "--deg", "1")
    assert code == 0 and json.loads(out)["config"]["n"] == 2


# -- cache ------------------------------------------------------------------------------------------------

def test_cache_roundtrip(tmp_path):
    cache = Cache(tmp_path)
    payload = DemazureContext(3, 4).g_tilde((2, 1)).to_json()
    cache.put("gkschur-closed", 3, 4, [2, 1], payload)
    assert cache.get("gkschur-closed", 3, 4, [2, 1]) == payload
    assert cache.get("gkschur-closed", 3, 6, [2, 1]) is None
    assert cache.get("gkschur-closed", 3, 4, [2, 1], mode="GL") is None


def test_corrupt_entry_is_recomputed(tmp_path):
    cache = Cache(tmp_path)
    p = cache.put("tau", 3, 2, 1, {"x": 1})
    doc = json.loads(p.read_text())
    doc["payload"] = {"x": 2}
    p.write_text(json.dumps(doc))
    assert cache.get("tau", 3, 2, 1) is None
    assert cache.get_or_compute("tau", 3, 2, 1, lambda: {"x": 1}) == {"x": 1}
    assert cache.get("tau", 3, 2, 1) == {"x": 1}


def test_cache_transparency_through_cli(tmp_path, capsys):
    argv = ["compute", "gkschur", "--n", "3", "--partition", "2,1", "--deg", "3"]
    _, plain, _ = run(capsys, *argv)
    _, cold, _ = run(capsys, *argv, "--cache-dir", str(tmp_path))
    _, warm, _ = run(capsys, *argv, "--cache-dir", str(tmp_path))
    strip = lambda s: {k: v for k, v in json.loads(s).items() if k != "config"}
    assert strip(plain) == strip(cold) == strip(warm)
    assert cold == warm
    files = list(tmp_path.rglob("*.json"))
    assert len(files) == 1


def test_cache_gc(tmp_path, capsys):
    cache = Cache(tmp_path)
    good = cache.put("tau", 2, 1, 0, [1])
    bad = cache.put("tau", 2, 1, 1, [2])
    bad.write_text("{not json")
    (tmp_path / "stray.tmp").write_text("")
    code, out, _ = run(capsys, "cache-gc", "--cache-dir", str(tmp_path))
    assert code == 0 and json.loads(out)["removed"] == 2
    assert good.exists() and not bad.exists()
    code, out, _ = run(capsys, "cache-gc", "--cache-dir", str(tmp_path), "--all")
    assert json.loads(out)["removed"] == 1
    assert run(capsys, "cache-gc")[0] == 2


def test_compute_payload_matches_direct_engine():
    cfg = RunConfig(n=3, D=3)
    assert compute_payload("gkschur", cfg, (1,)) == DemazureContext(3, 3).g((1,)).to_json()


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kpeterson.cli", "compute", "tau", "--n", "2", "--i", "0", "--deg", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["kind"] == "tau"
