# Copyright (C) 2026 The parentt Authors
# SPDX-License-Identifier: Apache-2.0

# Black-box tests of the parentt binary: exit codes, JSON shapes, the documented examples.
# PARENTT_BIN points at the executable; schemas are read from ../schemas.

import csv
import json
import os
import pathlib
import subprocess

import jsonschema
import pytest
from referencing import Registry, Resource

ROOT = pathlib.Path(__file__).resolve().parent.parent
SCHEMAS = ROOT / "schemas"
BIN = os.environ.get("PARENTT_BIN", str(ROOT / "build" / "tools" / "parentt"))


def _registry():
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        schema = json.loads(path.read_text())
        res = Resource.from_contents(schema)
        resources.append((path.name, res))
        resources.append((schema["$id"], res))
    return Registry().with_resources(resources)


REGISTRY = _registry()


def validate(doc, name):
    schema = json.loads((SCHEMAS / name).read_text())
    jsonschema.Draft202012Validator(schema, registry=REGISTRY).validate(doc)


def run(*args, env=None, cwd=None):
    full_env = dict(os.environ)
    full_env.pop("PARENTT_OUT_DIR", None)
    if env:
        full_env.update(env)
    return subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, env=full_env, cwd=cwd, timeout=600)


def run_json(*args, **kw):
    p = run(*args, **kw)
    assert p.returncode == 0, p.stderr
    return json.loads(p.stdout)


TOY = ["--n", 8, "--v", 7, "--t", 2, "--t-prime", 2, "--mu", 14]


# ---- primes ----


def test_primes_json_matches_schema():
    doc = run_json("primes", "--v", 30, "--n", 4096, "--mu", 75, "--pot", 4)
    validate(doc, "primes.schema.json")
    assert doc["count"] == 8
    assert [p["q"] for p in doc["primes"]] == sorted(p["q"] for p in doc["primes"])
    for p in doc["primes"]:
        assert p["q"] % 8192 == 1
        assert p["q"] == 2**30 - p["beta"]
        assert sum(s * 2**e for s, e in p["pot"]) == p["q"]


def test_primes_with_n_beta_three_reports_what_it_finds():
    # 480 rows are published for this shape, but only 31 primes survive the n_beta=3 width rule.
    doc = run_json("primes", "--v", 45, "--n", 4096, "--mu", 120, "--pot", 5, "--n-beta", 3)
    assert doc["n_beta"] == 3
    assert doc["count"] == 31


def test_primes_169_shape():
    doc = run_json("primes", "--v", 30, "--n", 4096, "--mu", 90, "--pot", 5)
    assert doc["count"] == 169


def test_table3_json_and_text():
    doc = run_json("primes", "--table3")
    validate(doc, "table3.schema.json")
    published = [r["published"] for r in doc["rows"]]
    assert published == [12, 33, 126, 480, 8, 26, 23, 169]
    assert [r["counts_by_n_beta"]["2"] for r in doc["rows"]] == published
    assert doc["all_match_n_beta_2"] is True
    assert doc["t4_match_n_beta_3"] is False
    text = run("primes", "--table3", "--format", "text")
    assert text.returncode == 0
    assert "published" in text.stdout and "169" in text.stdout


def test_primes_rejects_bad_parameters():
    assert run("primes", "--v", 30, "--n", 1000, "--mu", 75).returncode == 2
    assert run("primes", "--n", 4096).returncode == 2
    assert run("primes", "--bogus").returncode == 2


# ---- multiply ----


def test_multiply_verify_at_full_scale(tmp_path):
    out = tmp_path / "prod.hex"
    doc = run_json("multiply", "--verify", "--out", out)
    validate(doc, "multiply.schema.json")
    assert doc["n"] == 4096 and doc["q_bits"] == 180 and doc["verified"] is True
    assert doc["context"]["t"] == 6 and doc["context"]["d"] == 2
    assert len(out.read_text().splitlines()) == 4096


def test_multiply_by_one_and_by_zero(tmp_path):
    a = tmp_path / "a.hex"
    a.write_text("".join(f"{x:x}\n" for x in [1, 2, 3, 10960, 0, 77, 5000, 9]))
    one = tmp_path / "one.hex"
    one.write_text("1\n" + "0\n" * 7)
    zero = tmp_path / "zero.hex"
    zero.write_text("0\n" * 8)
    out = tmp_path / "out.hex"
    run_json("multiply", *TOY, "--a", a, "--b", one, "--out", out)
    assert out.read_text() == a.read_text()
    run_json("multiply", *TOY, "--a", a, "--b", zero, "--out", out)
    assert out.read_text() == zero.read_text()


def test_multiply_engines_agree(tmp_path):
    ref = run_json("multiply", *TOY, "--seed", 4, "--out", tmp_path / "r.hex")
    sim = run_json("multiply", *TOY, "--seed", 4, "--engine", "simulator", "--out", tmp_path / "s.hex", "--verify")
    assert ref["digest"] == sim["digest"]
    assert (tmp_path / "r.hex").read_text() == (tmp_path / "s.hex").read_text()


def test_multiply_writes_to_the_output_directory(tmp_path):
    target = tmp_path / "nested" / "dir"
    doc = run_json("multiply", *TOY, env={"PARENTT_OUT_DIR": str(target)})
    assert pathlib.Path(doc["out"]) == target / "product.hex"
    assert (target / "product.hex").exists()


def test_multiply_error_exit_codes(tmp_path):
    short = tmp_path / "short.hex"
    short.write_text("1\n2\n")
    assert run("multiply", *TOY, "--a", short, "--out", tmp_path / "o.hex").returncode == 2
    assert run("multiply", *TOY, "--a", tmp_path / "missing.hex", "--out", tmp_path / "o.hex").returncode == 2
    assert run("multiply", "--n", 100).returncode == 2
    assert run("multiply", "--t", 6, "--t-prime", 4).returncode == 2
    assert run("multiply", "--v", 30, "--mu", 40).returncode == 2
    assert run("multiply", *TOY, "--engine", "abacus").returncode == 2


# ---- simulate ----


def test_simulate_full_size_with_baseline():
    doc = run_json("simulate", "--n", 4096, "--baseline", "--seed", 2)
    validate(doc, "simulate.schema.json")
    assert doc["latency"] == 4094 and doc["bpp"] == 2048
    assert doc["baseline"]["latency"] == 5118
    assert doc["baseline_excess"] == 1024
    assert abs(doc["baseline_relative_gap"] - 0.20) <= 0.01
    assert doc["junction_free"] is True and doc["verified"] is True


def test_simulate_three_blocks_at_16():
    doc = run_json("simulate", "--n", 16, "--blocks", 3, "--t-pipe", 5, "--dump-schedule")
    validate(doc, "simulate.schema.json")
    assert doc["latency"] == 14 + 5
    assert doc["total_cycles"] == doc["latency"] + 3 * 8
    assert doc["schedule"]["cascade_verified"] is True
    assert doc["schedule"]["ntt"]["orders"][1] == [4, 5, 6, 7, 0, 1, 2, 3]


def test_simulate_dual_chain_utilization():
    doc = run_json("simulate", "--n", 256, "--blocks", 8, "--dual-chain")
    assert doc["mode"] == "dual_chain"
    assert doc["pe_count"] == 3 * 8 + 1
    assert set(doc["utilization"].values()) == {1.0}


def test_simulate_trace_csv(tmp_path):
    doc = run_json("simulate", "--n", 16, "--blocks", 2, "--trace", env={"PARENTT_OUT_DIR": str(tmp_path)})
    path = tmp_path / "trace.csv"
    assert doc["trace"] == str(path)
    with path.open() as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["cycle", "element", "lane0", "lane1", "valid"]
    assert any(r[4] == "0" for r in rows[1:])
    assert any(r[4] == "1" for r in rows[1:])
    explicit = tmp_path / "t2.csv"
    run_json("simulate", "--n", 16, "--trace", explicit)
    assert explicit.exists()


def test_simulate_schedule_failure_exits_one():
    p = run("simulate", "--n", 64, "--blocks", 2, "--dsd-capacity", "ntt.dsd0=3")
    assert p.returncode == 1
    assert "ntt.dsd0" in p.stderr


def test_simulate_invalid_exits_two():
    assert run("simulate", "--n", 12).returncode == 2
    assert run("simulate", "--n", 16, "--q", 101).returncode == 2
    assert run("simulate", "--n", 16, "--blocks", 0).returncode == 2
    assert run("simulate", "--n", 16, "--dsd-capacity", "garbage").returncode == 2


# ---- bench ----


def test_bench_is_reproducible(tmp_path):
    args = ("bench", "--sizes", "64,128", "--reps", 1, "--seed", 11)
    a = run_json(*args)
    b = run_json(*args, "--out", tmp_path / "bench.json")
    validate(a, "bench.schema.json")
    assert [r["digest"] for r in a["results"]] == [r["digest"] for r in b["results"]]
    assert a["verified"] is True
    assert {r["label"] for r in a["results"]} == {"t6_v30", "t4_v45"}
    assert all(r["q_bits"] == 180 for r in a["results"])
    saved = json.loads((tmp_path / "bench.json").read_text())
    assert saved["results"][0]["digest"] == a["results"][0]["digest"]
    c = run_json("bench", "--sizes", "64", "--reps", 1, "--seed", 12)
    assert c["results"][0]["digest"] != a["results"][0]["digest"]


def test_bench_bad_size_exits_two():
    assert run("bench", "--sizes", "100").returncode == 2


def test_version_and_help():
    assert run("--version").returncode == 0
    assert run("--help").returncode == 0
    assert run().returncode == 2


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
