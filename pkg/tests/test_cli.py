from __future__ import annotations

import json

import pytest

from gwconics import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cache(tmp_path, monkeypatch):
    monkeypatch.setenv("GWCONICS_CACHE", str(tmp_path / "c"))
    return tmp_path / "c"


@pytest.mark.parametrize("N,k,lines,dim", [(5, 5, "2875", 0), (4, 3, "27", 0), (7, 8, "0", 1)])
def test_lines(capsys, cache, N, k, lines, dim):
    code, out, _ = run(capsys, "lines", "--N", str(N), "--k", str(k))
    assert code == 0
    js = json.loads(out)
    assert js["lines"] == lines and js["dim_G"] == dim


def test_decompose2_quintic(capsys, cache):
    code, out, _ = run(capsys, "decompose2", "--N", "5", "--k", "5", "--abc", "1,1,1")
    js = json.loads(out)
    assert code == 0
    assert (js["gw"], js["dcover"], js["conics"]) == ("4876875", "2875", "4874000")
    assert json.loads(json.dumps(js)) == js


def test_vsc_lengths(capsys, cache):
    code, out, _ = run(capsys, "vsc", "--N", "7", "--k", "8", "--d", "2")
    js = json.loads(out)
    assert code == 0 and js["lengths"] == {"1": 8, "2": 9}


def test_stability(capsys, cache):
    code, out, _ = run(capsys, "stability", "--phi1", "1,0,0", "--phi2", "1,0,0")
    assert code == 0 and json.loads(out)["class"] == "unstable"
    code, out, _ = run(capsys, "stability", "--phi1=1,0,-1", "--phi2", "0,1,0")
    assert json.loads(out) == {"class": "stable", "D": ["5/4", "1", "1/4"]}


def test_range_error_exit_code(capsys, cache):
    code, _, err = run(capsys, "lines", "--N", "5", "--k", "9")
    assert code == cli.EXIT_ERROR
    assert json.loads(err)["error"] == "RangeError"
    code, out, _ = run(capsys, "lines", "--N", "5", "--k", "9", "--allow-out-of-range")
    assert code == 0


def test_cache_written_and_verified(capsys, cache):
    run(capsys, "gw2", "--N", "6", "--k", "7")
    data = json.loads((cache / cli.CACHE_FILE).read_text())
    assert data["version"] == cli.CACHE_VERSION
    assert set(data["rows"]) == {"6:7:1", "6:7:2"}
    code, out, _ = run(capsys, "--verify-cache")
    assert code == 0 and json.loads(out)["ok"]
    # tamper with one entry
    data["rows"]["6:7:2"][0] = "1"
    (cache / cli.CACHE_FILE).write_text(json.dumps(data))
    code, _, err = run(capsys, "--verify-cache")
    assert code == cli.EXIT_CHECK_FAILED and "6:7:2" in err


def test_cache_version_mismatch_ignored(capsys, cache):
    cache.mkdir(parents=True)
    (cache / cli.CACHE_FILE).write_text(json.dumps({"version": "old", "rows": {"5:5:1": ["0"]}}))
    code, out, _ = run(capsys, "vsc", "--N", "5", "--k", "5", "--d", "1")
    assert json.loads(out)["L"]["1"][0] == "120"


def test_cache_dir_flag_overrides_env(capsys, cache, tmp_path):
    other = tmp_path / "flag"
    run(capsys, "vsc", "--N", "5", "--k", "5", "--cache-dir", str(other))
    assert (other / cli.CACHE_FILE).exists() and not cache.exists()


def test_cached_results_identical(capsys, cache):
    _, first, _ = run(capsys, "gw2", "--N", "7", "--k", "9")
    _, second, _ = run(capsys, "gw2", "--N", "7", "--k", "9")
    assert first == second


def test_sweep_tsv_and_jobs_order(capsys, cache):
    _, serial, _ = run(capsys, "decompose2", "--N", "8", "--k", "9")
    _, parallel, _ = run(capsys, "decompose2", "--N", "8", "--k", "9", "--jobs", "2")
    assert serial == parallel
    lines = serial.strip().split("\n")
    assert lines[0].split("\t") == ["N", "k", "abc", "gw", "dcover", "conics"]
    assert len(lines) > 1


@pytest.mark.parametrize("argv,key,value", [
    (["boundary", "--D", "4,1,1"], "on_boundary", True),
    (["half-twist", "--lambda", "3", "--nu", "2"], "identity", True),
    (["half-twist", "--lambda", "2", "--nu", "5", "--squared"], "squared_identity", True),
    (["am-check"], "ok", True),
    (["selftest"], "ok", True),
    (["proof-form-check", "--N", "7", "--k", "9"], "ok", True),
    (["splitting", "--example", "O+O(-2)"], "str", "{0, -2}"),
    (["splitting", "--N", "6", "--k", "7", "--seed", "3"], "str", "{-1, -1, -1}"),
    (["cover-cohomology"], "h0", 1),
    (["dcover-class", "--N", "6", "--k", "7"], "codim", 1),
])
def test_subcommands(capsys, cache, argv, key, value):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert json.loads(out)[key] == value


def test_cubic_commands(capsys, cache):
    code, out, _ = run(capsys, "cubic-class", "--k", "6")
    terms = {(t["i"], t["j"]): t["coeff"] for t in json.loads(out)["class"]["terms"]}
    assert terms == {(2, 0): "7517/243", (0, 1): "2206/243"}
    code, out, _ = run(capsys, "cubic-decompose", "--N", "8", "--k", "9", "--abc", "1,1,1",
                       "--gw3", "1000")
    assert code == 0 and json.loads(out)["gw3"] == "1000"
    code, _, _ = run(capsys, "cubic-decompose", "--N", "8", "--k", "9", "--abc", "1,1,1")
    assert code == cli.EXIT_ERROR


def test_adapt_line(capsys, cache, tmp_path):
    poly = {"nvars": 3, "terms": [[[2, 0, 1], "1"], [[0, 2, 1], "-1"], [[0, 0, 3], "1"]],
            "p": ["1", "1", "0"], "q": ["0", "0", "0"]}
    poly["q"] = ["1", "-1", "0"]
    path = tmp_path / "poly.json"
    path.write_text(json.dumps(poly))
    code, out, err = run(capsys, "adapt-line", "--poly-json", str(path))
    # x^2 z - y^2 z + z^3 vanishes on z = 0
    assert code == 0, err
    js = json.loads(out)
    assert js["N"] == 3 and js["k"] == 3
    code, out, _ = run(capsys, "adapt-line", "--example", "m87")
    assert json.loads(out)["f"][0] == ["0", "0", "0", "0", "0", "0", "0", "8"]


def test_no_command(capsys):
    assert cli.main([]) == cli.EXIT_USAGE
