"""Command-line layer: canonical JSON, the result cache, exit codes."""

import json

import numpy as np
import pytest

from pq import reportio
from pq.catalog import CATALOG
from pq.cli import run
from pq.reportio import ResultCache, cache_key, canonical_json, plainify


def _run_json(argv, tmp_path, name="out.json"):
    out = tmp_path / name
    rc = run(list(argv) + ["--out", str(out)])
    return rc, json.loads(out.read_bytes())


# -- canonical serialization --------------------------------------------------

def test_canonical_json_sorts_keys_and_is_stable():
    a = canonical_json({"b": 1, "a": [1, 2, {"z": None, "y": True}]})
    b = canonical_json({"a": [1, 2, {"y": True, "z": None}], "b": 1})
    assert a == b
    assert a.endswith(b"\n")
    assert b'"a":[1,2,{"y":true,"z":null}]' in a


def test_canonical_json_rejects_floats():
    with pytest.raises(AssertionError):
        canonical_json({"x": 1.5})


def test_plainify_converts_numpy_scalars_and_tuples():
    obj = {"n": np.int64(7), "flag": np.bool_(True), "pair": (1, np.int32(2))}
    plain = plainify(obj)
    assert plain == {"n": 7, "flag": True, "pair": [1, 2]}
    assert type(plain["n"]) is int
    canonical_json(plain)


def test_plainify_rejects_floats():
    with pytest.raises(AssertionError):
        plainify({"x": 0.5})


# -- result cache --------------------------------------------------------------

def test_cache_put_then_get_round_trips_bytes(tmp_path):
    cache = ResultCache(tmp_path)
    cfg = {"group": "Sym(5)", "p": 2}
    payload = {"result": {"chi": -16}, "verdict": "pass"}
    cache.put("verify", cfg, payload)
    first = cache._path(cache_key("verify", cfg)).read_bytes()
    assert cache.get("verify", cfg) == payload
    cache.put("verify", cfg, payload)
    assert cache._path(cache_key("verify", cfg)).read_bytes() == first


def test_cache_miss_on_different_config(tmp_path):
    cache = ResultCache(tmp_path)
    cache.put("verify", {"p": 2}, {"v": 1})
    assert cache.get("verify", {"p": 3}) is None
    assert cache.get("poset", {"p": 2}) is None


def test_cache_version_bump_is_a_miss(tmp_path, monkeypatch):
    cache = ResultCache(tmp_path)
    cfg = {"p": 2}
    cache.put("verify", cfg, {"v": 1})
    monkeypatch.setattr(reportio, "TOOL_VERSION", "0.0.0-test")
    assert cache.get("verify", cfg) is None


def test_cache_ignores_stale_version_stamp(tmp_path):
    cache = ResultCache(tmp_path)
    cfg = {"p": 2}
    cache.put("verify", cfg, {"v": 1})
    path = cache._path(cache_key("verify", cfg))
    entry = json.loads(path.read_bytes())
    entry["tool_version"] = "0.0.0-stale"
    path.write_text(json.dumps(entry))
    assert cache.get("verify", cfg) is None


def test_cache_ignores_foreign_and_corrupt_files(tmp_path):
    cache = ResultCache(tmp_path)
    cfg = {"p": 5}
    key = cache_key("verify", cfg)
    (tmp_path / "README").write_text("not a cache entry")
    cache._path(key).write_text("{truncated")
    assert cache.get("verify", cfg) is None
    cache.put("verify", cfg, {"v": 2})
    assert cache.get("verify", cfg) == {"v": 2}


def test_cache_leaves_no_temp_files(tmp_path):
    cache = ResultCache(tmp_path)
    for i in range(5):
        cache.put("op", {"i": i}, {"v": i})
    assert not list(tmp_path.glob("*.tmp"))
    assert len(list(tmp_path.glob("*.json"))) == 5


def test_default_cache_dir_reads_env(tmp_path, monkeypatch):
    monkeypatch.setenv("PQ_CACHE_DIR", str(tmp_path / "envcache"))
    assert reportio.default_cache_dir() == tmp_path / "envcache"


# -- CLI runs ------------------------------------------------------------------

def test_verify_euler_example(tmp_path):
    rc, rep = _run_json(
        ["verify", "euler", "--group", "Alt(6)", "--p", "3",
         "--cache-dir", str(tmp_path / "c")], tmp_path)
    assert rc == 0
    assert rep["verdict"] == "pass"
    assert rep["result"]["chi"] == 9
    assert rep["tool_version"]
    assert rep["timing_ms"] == 0
    assert set(rep) == {"tool_version", "config", "result", "timing_ms", "verdict"}


def test_verify_solomon_tits_example(tmp_path):
    rc, rep = _run_json(
        ["verify", "solomon-tits", "--group", "PSL(3,2)", "--p", "2",
         "--cache-dir", str(tmp_path / "c")], tmp_path)
    assert rc == 0
    assert rep["result"]["degree"] == 1
    assert rep["result"]["rank"] == 8
    assert rep["verdict"] == "pass"


def test_verify_field_case_example(tmp_path):
    rc, rep = _run_json(
        ["verify", "field-case", "--group", "PSigmaL(2,4)", "--p", "2",
         "--cache-dir", str(tmp_path / "c")], tmp_path)
    assert rc == 0
    assert rep["result"]["dimension"] == 1
    assert rep["result"]["top_rank"] == 16


def test_list_includes_catalog_and_refusal(tmp_path):
    rc, rep = _run_json(["list"], tmp_path)
    assert rc == 0
    entries = rep["result"]["entries"]
    by_spec = {e["spec"]: e for e in entries}
    assert by_spec["2F4(2)"]["status"] == "refused"
    assert "element cap" in by_spec["2F4(2)"]["reason"]
    assert by_spec["PSigmaL(2,16)"]["slow"] is True
    provs = {
        g["provenance"]
        for e in entries for g in e.get("golden", [])
    }
    assert provs == {"paper", "derived-oracle"}


def test_cold_and_warm_reports_are_byte_identical(tmp_path):
    argv = ["homology", "bouc", "--group", "Sym(5)", "--p", "2",
            "--cache-dir", str(tmp_path / "c")]
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert run(argv + ["--out", str(out1)]) == 0
    assert run(argv + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    rep = json.loads(out1.read_bytes())
    assert rep["result"]["betti"] == [[1, 16]]


def test_stdout_report_is_canonical(capsysbinary, tmp_path):
    rc = run(["poset", "quillen", "--group", "Alt(5)", "--p", "2",
              "--cache-dir", str(tmp_path / "c")])
    out = capsysbinary.readouterr().out
    assert rc == 0
    assert out == canonical_json(json.loads(out))
    assert json.loads(out)["result"]["euler_mobius"] == 4


def test_pq_cache_dir_env_is_honored(tmp_path, monkeypatch):
    cache_dir = tmp_path / "envcache"
    monkeypatch.setenv("PQ_CACHE_DIR", str(cache_dir))
    rc, _ = _run_json(["poset", "--group", "Sym(3)", "--p", "3"], tmp_path)
    assert rc == 0
    assert list(cache_dir.glob("*.json"))


def test_exit_code_two_on_bad_input(tmp_path, capsys):
    assert run(["poset", "--group", "Nope(5)", "--p", "2",
                "--cache-dir", str(tmp_path / "c")]) == 2
    assert run(["poset", "--group", "Sym(5)",
                "--cache-dir", str(tmp_path / "c")]) == 2
    assert run(["poset", "--group", "Sym(5)", "--p", "4",
                "--cache-dir", str(tmp_path / "c")]) == 2
    assert run(["homology", "--group", "Sym(6)", "--p", "2",
                "--simplex-cap", "10", "--cache-dir", str(tmp_path / "c")]) == 2
    assert run(["group", "--group", "PSL(3,3)", "--element-cap", "100"]) == 2
    capsys.readouterr()


def test_element_cap_is_restored_after_run(tmp_path, capsys):
    from pq import config
    before = config.ELEMENT_CAP
    run(["group", "--group", "Sym(3)", "--element-cap", "50000"])
    assert config.ELEMENT_CAP == before
    capsys.readouterr()


def test_exit_code_one_on_golden_mismatch(tmp_path, monkeypatch, capsys):
    row = next(e for e in CATALOG if e["spec"] == "Sym(5)")["golden"][0]
    monkeypatch.setitem(row, "value", -17)
    rc, rep = _run_json(
        ["verify", "golden", "--group", "Sym(5)",
         "--cache-dir", str(tmp_path / "c")], tmp_path)
    assert rc == 1
    assert rep["verdict"] == "fail"
    check = rep["result"]["checks"][0]
    assert check["expected"] == -17 and check["computed"] == -16
    assert check["ok"] is False
    capsys.readouterr()


def test_verify_golden_passes_for_catalog_group(tmp_path):
    rc, rep = _run_json(
        ["verify", "golden", "--group", "PSL(2,9)",
         "--cache-dir", str(tmp_path / "c")], tmp_path)
    assert rc == 0
    checks = rep["result"]["checks"]
    assert all(c["ok"] for c in checks)
    assert {c["quantity"] for c in checks} == {
        "euler_quillen", "euler_bouc", "solomon_tits_rank"}


def test_verify_skipped_exits_zero(tmp_path):
    rc, rep = _run_json(
        ["verify", "field-case", "--group", "PSL(3,2):graph", "--p", "2",
         "--cache-dir", str(tmp_path / "c")], tmp_path)
    assert rc == 0
    assert rep["verdict"] == "skipped"
    assert "graph" in rep["result"]["reason"]


def test_verify_cross_characteristic(tmp_path):
    rc, rep = _run_json(
        ["verify", "cross-characteristic", "--group", "Sym(6)",
         "--p", "3", "--r", "2", "--cache-dir", str(tmp_path / "c")], tmp_path)
    assert rc == 0
    assert rep["result"]["computed"]["fixed_points"] == 0
    assert rep["result"]["computed"]["euler_residue"] == 1


def test_annotation_override_sets_designated_subgroup(tmp_path):
    rc, rep = _run_json(
        ["group", "--group", "PGammaL(2,9)", "--H", "sub(M10)"], tmp_path)
    assert rc == 0
    assert rep["result"]["designated_h_order"] == 720
    assert rep["config"]["H"] == "sub(M10)"
    assert run(["group", "--group", "Sym(6)", "--H", "bogus"]) == 2


def test_suite_desk_passes_and_caches(tmp_path):
    cache_dir = tmp_path / "c"
    argv = ["suite", "--cache-dir", str(cache_dir)]
    out1, out2 = tmp_path / "s1.json", tmp_path / "s2.json"
    assert run(argv + ["--out", str(out1)]) == 0
    assert run(argv + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    rep = json.loads(out1.read_bytes())
    assert rep["verdict"] == "pass"
    jobs = rep["result"]["jobs"]
    assert rep["result"]["counts"]["pass"] == len(jobs)
    assert {j["verifier"] for j in jobs} >= {
        "solomon-tits", "field-case", "no-field-case", "euler",
        "spherical-bp", "cross-characteristic", "golden"}
    # single runs share the suite's entries
    rc, rep1 = _run_json(
        ["verify", "solomon-tits", "--group", "PSL(2,9)", "--p", "3",
         "--cache-dir", str(cache_dir)], tmp_path, "one.json")
    assert rc == 0
    job = next(j for j in jobs
               if j["verifier"] == "solomon-tits" and j["group"] == "PSL(2,9)")
    assert rep1["result"] == job["result"]
