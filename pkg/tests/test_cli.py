import json

import pytest

from conftest import FIXTURES, toy_document
from corpus import openstack_shaped
from logsynth.cli import main

TOY = str(FIXTURES / "toy4.json")
M2 = str(FIXTURES / "m2.json")
M2P = str(FIXTURES / "m2_patterns.json")


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return path


def gen(capsys, out, seed=7, *extra):
    return run(capsys, "generate", M2, M2P, "--size", 1000, "--mlsl", 100, "--failure-pct", 20,
               "--type", "F", "--seed", seed, "--out", out, *extra)


# ---------------------------------------------------------------- model-validate


def test_model_validate_report(capsys):
    code, out, _ = run(capsys, "model-validate", TOY)
    assert code == 0
    assert out.splitlines()[0] == "states=4 transitions=12 sValue(q0)=2"


def test_model_validate_non_deterministic(capsys, tmp_path):
    doc = toy_document()
    doc["transitions"].append({"src": "q2", "symbol": "a", "dst": "q0"})
    code, _, err = run(capsys, "model-validate", write_json(tmp_path / "m.json", doc))
    assert code == 1 and "transitions[12]" in err


def test_model_validate_isolated(capsys, tmp_path):
    doc = toy_document()
    doc["states"].append("q9")
    code, _, err = run(capsys, "model-validate", write_json(tmp_path / "m.json", doc))
    assert code == 0 and "isolated state q9" in err


def test_model_validate_json(capsys):
    code, out, _ = run(capsys, "--json", "model-validate", TOY)
    assert code == 0 and json.loads(out)["initial_svalue"] == 2


# ---------------------------------------------------------------- pattern-check


@pytest.fixture
def xyz_model(tmp_path):
    doc = {
        "states": ["0", "1", "2"],
        "initial": "0",
        "accepting": ["2"],
        "alphabet": ["x", "y", "z"],
        "transitions": [
            {"src": "0", "symbol": "x", "dst": "1"},
            {"src": "1", "symbol": "y", "dst": "2"},
            {"src": "1", "symbol": "z", "dst": "2"},
            {"src": "1", "symbol": "x", "dst": "1"},
        ],
        "templates": {"x": "open *", "y": "read *", "z": "close *"},
    }
    return write_json(tmp_path / "xyz.json", doc)


def test_pattern_check_ok(capsys, tmp_path, xyz_model):
    pf = write_json(tmp_path / "p.json", {"id": "p", "model": "xyz", "type": "F", "expr": "x(y|z)"})
    code, out, _ = run(capsys, "pattern-check", pf, xyz_model)
    assert code == 0
    assert "length=4 alphabet=3 operators=1 star_depth=0 included=yes" in out


def test_pattern_check_witness(capsys, tmp_path, xyz_model):
    pf = write_json(tmp_path / "p.json", {"id": "p", "model": "xyz", "type": "F", "expr": "x ( y | y y )"})
    code, out, _ = run(capsys, "pattern-check", pf, xyz_model)
    assert code == 1 and "witness: x y y" in out


def test_pattern_check_type_mismatch(capsys, tmp_path, xyz_model):
    pf = write_json(tmp_path / "p.json", {"id": "p", "model": "xyz", "type": "F", "expr": "x*(y|z)"})
    code, out, _ = run(capsys, "pattern-check", pf, xyz_model)
    assert code == 1 and "ERROR" in out


# ---------------------------------------------------------------- generate / audit / stats


def test_generate_counts_and_determinism(capsys, tmp_path):
    a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    assert gen(capsys, a)[0] == 0
    assert gen(capsys, b)[0] == 0
    assert gen(capsys, c, 8)[0] == 0
    data = (a / "records.jsonl").read_bytes()
    assert data == (b / "records.jsonl").read_bytes()
    assert (a / "manifest.json").read_bytes() == (b / "manifest.json").read_bytes()
    assert data != (c / "records.jsonl").read_bytes()
    labels = [json.loads(line)["label"] for line in data.decode().splitlines()]
    assert labels.count("failure") == 200


def test_generate_prints_auto_seed(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", M2, M2P, "--size", 200, "--mlsl", 20, "--failure-pct", 5,
                       "--type", "I", "--out", tmp_path / "d")
    assert code == 0 and "seed=" in out
    seed = int(out.split("seed=")[1].split()[0])
    assert json.loads((tmp_path / "d" / "manifest.json").read_text())["seed"] == seed


def test_generate_missing_flags_is_usage_error(capsys, tmp_path):
    code, _, _ = run(capsys, "generate", M2, M2P, "--size", 200, "--out", tmp_path)
    assert code == 2


def test_bad_flag_is_usage_error(capsys):
    assert run(capsys, "advise", "--size", "lots", "--failure-pct", 5, "--mlsl", 20)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_generate_unreachable_mlsl(capsys, tmp_path):
    code, _, err = run(capsys, "generate", TOY, write_json(tmp_path / "p.json", {"id": "p", "model": "toy4", "type": "F", "expr": "c d"}),
                       "--size", 200, "--mlsl", 1, "--failure-pct", 5, "--type", "F", "--seed", 1, "--out", tmp_path / "o")
    assert code == 1 and "DegenerateModel" in err


def test_generate_split_oversample(capsys, tmp_path):
    d = tmp_path / "d"
    assert gen(capsys, d, 7, "--split", "--oversample")[0] == 0
    splits = json.loads((d / "manifest.json").read_text())["splits"]
    assert [len(splits[k]) for k in ("train", "validation", "test")] == [640, 160, 200]
    bal = [json.loads(line) for line in (d / "train_oversampled.jsonl").read_text().splitlines()]
    assert sum(r["label"] == "failure" for r in bal) * 2 == len(bal)


def test_grid_count(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", M2, M2P, "--grid", "--seed", 1, "--out", tmp_path, "--samples", 50)
    assert code == 0
    assert len(list(tmp_path.glob("*/manifest.json"))) == 60
    assert "datasets=60" in out


def test_audit_clean_and_faults(capsys, tmp_path):
    d = tmp_path / "d"
    gen(capsys, d)
    code, out, _ = run(capsys, "audit", d)
    assert code == 0 and out.strip().endswith("0 violations")

    lines = (d / "records.jsonl").read_text().splitlines()
    k = next(i for i, line in enumerate(lines) if '"failure"' in line)
    rec = json.loads(lines[k])
    rec.update(label="normal", pattern=None)
    flipped = lines[:]
    flipped[k] = json.dumps(rec)
    (d / "records.jsonl").write_text("\n".join(flipped) + "\n")
    code, out, _ = run(capsys, "audit", d)
    assert code == 1 and f"record {k}:" in out

    j = next(i for i, line in enumerate(lines) if '"normal"' in line)
    rec = json.loads(lines[j])
    rec["seq"] = rec["seq"] * 20
    long = lines[:]
    long[j] = json.dumps(rec)
    (d / "records.jsonl").write_text("\n".join(long) + "\n")
    code, out, _ = run(capsys, "audit", d)
    assert code == 1 and "exceeds maximum 100" in out


def test_stats(capsys, tmp_path):
    d = tmp_path / "d"
    gen(capsys, d, 7, "--split")
    code, out, _ = run(capsys, "stats", d)
    assert code == 0
    assert "records=1000 failures=200 (20.00%)" in out
    assert "test: records=200 failures=40" in out


def test_audit_missing_manifest(capsys, tmp_path):
    code, _, err = run(capsys, "audit", tmp_path)
    assert code == 1 and "FormatError" in err


# ---------------------------------------------------------------- ingest / advise


def test_ingest_openstack_shape(capsys, tmp_path):
    records, labels = openstack_shaped(tmp_path)
    code, out, _ = run(capsys, "ingest", records, labels, "--out", tmp_path / "ds")
    assert code == 0
    assert "876 sequences, 21.46% failures" in out
    assert (tmp_path / "ds" / "records.jsonl").exists()


def test_ingest_drop_and_cap(capsys, tmp_path):
    (tmp_path / "r.csv").write_text(
        "task_id,timestamp,template_id,is_failure_message\n"
        + "".join(f"long,{k},E{k},0\n" for k in range(12))
        + "bad,1,E1,1\nbad,2,E2,0\n"
    )
    (tmp_path / "l.csv").write_text("task_id,label\nlong,normal\nbad,failure\n")
    code, out, _ = run(capsys, "--json", "ingest", tmp_path / "r.csv", tmp_path / "l.csv", "--cap", 10)
    assert code == 0
    report = json.loads(out)
    assert report["dropped"] == ["bad"]
    assert report["stats"]["max_lsl"] == 10


def test_ingest_bad_csv(capsys, tmp_path):
    (tmp_path / "r.csv").write_text("task_id,timestamp,template_id,is_failure_message\nt,1,E1,maybe\n")
    (tmp_path / "l.csv").write_text("task_id,label\nt,normal\n")
    code, _, err = run(capsys, "ingest", tmp_path / "r.csv", tmp_path / "l.csv")
    assert code == 1 and ":2" in err


@pytest.mark.parametrize(
    "size, pct, mlsl, config, f1",
    [(5000, 10, 100, "CNN+L", 0.985), (300, 20, 100, "CNN+B", 0.816), (1000, 10, 1000, "BiLSTM+B", 0.664)],
)
def test_advise(capsys, size, pct, mlsl, config, f1):
    code, out, _ = run(capsys, "--json", "advise", "--size", size, "--failure-pct", pct, "--mlsl", mlsl)
    got = json.loads(out)
    assert code == 0 and got["config"] == config and got["expected_f1"] == f1
    code, out, _ = run(capsys, "advise", "--size", size, "--failure-pct", pct, "--mlsl", mlsl)
    assert f"configuration: {config}" in out and f"expected_f1: {f1}" in out


def test_global_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "advise", "--json", "--size", 5000, "--failure-pct", 10, "--mlsl", 100)
    assert code == 0 and json.loads(out)["batch_size"] == 60


def test_out_dir_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("LOGSYNTH_OUT", str(tmp_path / "env"))
    code, _, _ = run(capsys, "generate", M2, M2P, "--size", 200, "--mlsl", 20, "--failure-pct", 5,
                     "--type", "F", "--seed", 3)
    assert code == 0 and (tmp_path / "env" / "records.jsonl").exists()
