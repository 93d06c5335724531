import json

import jsonschema
import pytest

from dnbraids.cli import main
from dnbraids.verify import REPORT_SCHEMA, Report, RunConfig, emit, verify

D3_C = "[1][-3,-2]"
D4_C = "[1][-4,-2,3]"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report_json(capsys, *argv):
    code, out, _ = run(capsys, "verify", *argv, "--json")
    return code, json.loads(out)


def test_theorem_main_d3_text(capsys):
    code, out, _ = run(capsys, "verify", "theorem-main", "--rank", "3", "--coxeter", D3_C)
    assert code == 0
    assert out.splitlines()[0] == "PASS theorem-main D_3 (14 instances)"


def test_report_matches_schema(capsys):
    code, data = report_json(capsys, "theorem-main", "--rank", "3")
    assert code == 0
    jsonschema.validate(data, REPORT_SCHEMA)
    assert list(data) == ["check", "parameters", "instance_count", "failures", "notes", "wall_time", "artifact_version"]
    assert Report.from_json(data).to_json() == data


def test_schema_is_published(capsys):
    code, out, _ = run(capsys, "verify", "--schema")
    assert code == 0 and json.loads(out) == REPORT_SCHEMA


def test_injected_failure(capsys):
    code, out, _ = run(capsys, "verify", "theorem-main", "--rank", "3", "--coxeter", D3_C, "--inject-failure", "2")
    assert code == 1
    assert out.startswith("FAIL theorem-main D_3")
    repro = [line for line in out.splitlines() if "reproduce:" in line]
    assert len(repro) == 1 and "dnbraids verify theorem-main" in repro[0]
    code, data = report_json(capsys, "theorem-main", "--rank", "3", "--coxeter", D3_C, "--inject-failure", "2")
    assert code == 1 and len(data["failures"]) == 1
    jsonschema.validate(data, REPORT_SCHEMA)


def test_report_written_to_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "lemma-relations-dn", "--rank", "4", "--out", str(path))
    assert code == 0
    jsonschema.validate(json.loads(path.read_text()), REPORT_SCHEMA)


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "theorem-main", "--rank", "9"],
        ["verify", "theorem-main", "--rank", "2"],
        ["verify", "theorem-main", "--family", "B"],
        ["verify"],
        ["verify", "no-such-check"],
        ["nf", "--rank", "4", "--word", "q7"],
        ["dual", "simple", "--rank", "4", "--coxeter", D4_C, "--element", "((1,2))((3,4))((1,3))"],
        ["bridge", "rewrite", "--rank", "4", "--word", "s0 s1"],
        ["wb", "eval"],
    ],
)
def test_usage_and_capacity_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def without_time(data):
    return {k: v for k, v in data.items() if k != "wall_time"}


def test_reports_are_deterministic():
    cfg = RunConfig(check="ar-equivalence", rank=5, seed=3, samples=40)
    a = json.loads(emit(verify(cfg), "json"))
    b = json.loads(emit(verify(cfg), "json"))
    assert a["parameters"]["mode"] == "sampled"
    assert without_time(a) == without_time(b)


def test_workers_do_not_change_failures():
    serial = verify(RunConfig(check="cor-sdb", rank=3, inject_failure=5))
    parallel = verify(RunConfig(check="cor-sdb", rank=3, inject_failure=5, workers=3))
    assert serial.failures == parallel.failures and len(serial.failures) == 1
    assert serial.instances == parallel.instances


def test_worker_env(monkeypatch):
    monkeypatch.setenv("DNBRAIDS_WORKERS", "2")
    assert verify(RunConfig(check="lemma-std", rank=4)).ok


def test_wb_eval(capsys):
    code, out, _ = run(capsys, "wb", "eval", "--rank", "4", "--word", "t0 t1", "--json")
    data = json.loads(out)
    assert code == 0 and data["inf"] == 0 and data["sup"] == 1


def test_nc_list_and_hasse(capsys):
    code, out, _ = run(capsys, "nc", "list", "--rank", "3", "--coxeter", D3_C, "--json")
    assert code == 0 and len(json.loads(out)["elements"]) == 14
    code, out, _ = run(capsys, "nc", "hasse", "--rank", "3", "--coxeter", D3_C, "--json")
    assert code == 0 and json.loads(out)["covers"]


def test_nf(capsys):
    code, out, _ = run(capsys, "nf", "--rank", "3", "--word", "t1 t1^-1 t2")
    assert code == 0 and out.startswith("inf 0  sup 1")


def test_dual_commands(capsys):
    code, out, _ = run(capsys, "dual", "simple", "--rank", "4", "--coxeter", D4_C, "--element", "((1,-2))")
    assert code == 0 and out.strip()
    code, out, _ = run(capsys, "dual", "relations", "--rank", "3", "--coxeter", D3_C)
    assert code == 0 and out.startswith("PASS")


def test_bridge_commands(capsys):
    code, out, _ = run(capsys, "bridge", "rewrite", "--rank", "4", "--word", "s0 s1 s0 s2")
    assert code == 0 and out.strip() == "t0 t2"
    code, out, _ = run(capsys, "bridge", "verify-lifts", "--rank", "4")
    assert code == 0 and "192" in out


def test_mikado_commands(capsys):
    code, out, _ = run(capsys, "mikado", "check", "--rank", "3", "--word", "t1 t1", "--json")
    assert code == 0 and json.loads(out)["mikado"] is False
    code, out, _ = run(capsys, "mikado", "correspondence", "--rank", "2")
    assert code == 0 and out.startswith("PASS")


@pytest.mark.parametrize("what", ["nc", "braid", "vertical"])
def test_render_commands(capsys, tmp_path, what):
    out_path = tmp_path / f"{what}.svg"
    code, out, _ = run(capsys, "render", what, "--rank", "4", "--coxeter", D4_C, "--element", "((1,-2))",
                       "--out", str(out_path))
    assert code == 0 and out_path.read_text().startswith("<?xml")
