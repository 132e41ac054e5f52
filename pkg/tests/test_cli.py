import json
import shutil
import subprocess
from importlib import resources

import jsonschema
import pytest

from elasto_waves.cli import main
from elasto_waves.fixtures import FIXTURES, RUNNING_EXAMPLE

OFF = {"k": 1.0, "left": [0.0, 0.0], "middle": [1.0, 0.0], "right": [2.0, 0.0], "x0": 0.0, "x1": 1.0}
CONST = {"k": 1.0, "left": [0.5, 0.5], "middle": [0.5, 0.5], "right": [0.5, 0.5], "x0": 0.0, "x1": 1.0}


def schema(name):
    text = resources.files("elasto_waves").joinpath(f"schemas/{name}.schema.json").read_text()
    return json.loads(text)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, name, *argv):
    code, out, err = run(capsys, *argv)
    doc = json.loads(out)
    jsonschema.validate(doc, schema(name))
    return code, doc


def test_schemas_are_valid():
    for name in ("scenario", "riemann", "events", "solution", "verify_report", "oracle_summary"):
        jsonschema.Draft202012Validator.check_schema(schema(name))


def test_fixture_files_match_schema(scenario_file):
    for s in FIXTURES.values():
        path = scenario_file(s)
        with open(path) as fh:
            jsonschema.validate(json.load(fh), schema("scenario"))


def test_riemann(capsys):
    code, doc = run_json(capsys, "riemann", "riemann", "--k", "1", "--left", "0,0", "--right", "0,2")
    assert code == 0
    assert doc["middle_state"] == [1.0, 1.0]
    r, s = doc["waves"]
    assert (r["family"], r["kind"], r["xi_range"]) == (1, "rarefaction", [-1.0, 0.0])
    assert (s["family"], s["kind"], s["speed"]) == (2, "shock", 1.5)


def test_riemann_trivial(capsys):
    code, doc = run_json(capsys, "riemann", "riemann", "--k", "1", "--left", "0,0", "--right", "0,0")
    assert code == 0 and doc["waves"] == []


@pytest.mark.parametrize("argv,msg", [
    (["--k", "-1", "--left", "0,0", "--right", "0,2"], "k must be positive"),
    (["--k", "1", "--left", "0", "--right", "0,2"], "u,sigma"),
    (["--k", "1", "--left", "a,b", "--right", "0,2"], "bad state"),
    (["--k", "x", "--left", "0,0", "--right", "0,2"], "invalid float"),
])
def test_riemann_bad_flags(capsys, argv, msg):
    code, out, err = run(capsys, "riemann", *argv)
    assert code == 2 and msg in err and out == ""


def test_interact_events(capsys, scenario_file):
    path = scenario_file(FIXTURES[RUNNING_EXAMPLE])
    code, doc = run_json(capsys, "events", "interact", "--scenario", path, "--emit", "events")
    assert code == 0
    assert [(e["t"], e["x"]) for e in doc["events"]] == [(1.0, 2.0), (4.0, 4.0)]
    beta = [c for c in doc["curves"] if c["shape"] == "sqrt"]
    assert [(c["a"], c["c"], c["x_ref"]) for c in beta] == [(0.0, 2.0, 0.0)]


def test_interact_no_interaction(capsys, scenario_file):
    code, doc = run_json(capsys, "events", "interact", "--scenario", scenario_file(FIXTURES["case1_sub2"]))
    assert code == 0 and doc["branch"] == "NoInteraction" and doc["events"] == []


def test_interact_solution_all_fixtures(capsys, scenario_file):
    for name, s in FIXTURES.items():
        code, doc = run_json(capsys, "solution", "interact", "--scenario", scenario_file(s), "--emit", "solution")
        assert code == 0, name
        assert doc["phases"][-1]["t_end"] is None


def test_interact_csv(capsys, scenario_file, tmp_path):
    path = scenario_file(FIXTURES[RUNNING_EXAMPLE])
    out = tmp_path / "grid.csv"
    code, _, _ = run(capsys, "interact", "--scenario", path, "--emit", "csv",
                     "--t-max", "9", "--nx", "11", "--nt", "3", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "t,x,u,sigma,region"
    assert len(lines) == 1 + 33
    first = lines[1].split(",")
    assert float(first[0]) == 3.0
    # rerun is byte-identical
    out2 = tmp_path / "grid2.csv"
    run(capsys, "interact", "--scenario", path, "--emit", "csv",
        "--t-max", "9", "--nx", "11", "--nt", "3", "--out", str(out2))
    assert out.read_bytes() == out2.read_bytes()


def test_interact_unsupported(capsys, scenario_file):
    code, out, err = run(capsys, "interact", "--scenario", scenario_file(OFF))
    assert code == 3 and "level set" in err and out == ""


@pytest.mark.parametrize("content", ["{not json", json.dumps({"k": 1}), json.dumps(dict(OFF, k=0)),
                                     json.dumps(dict(OFF, x1=-1.0)), json.dumps(dict(OFF, left=[1]))])
def test_interact_bad_file(capsys, tmp_path, content):
    p = tmp_path / "bad.json"
    p.write_text(content)
    code, _, err = run(capsys, "interact", "--scenario", str(p))
    assert code == 2 and err


def test_interact_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "interact", "--scenario", str(tmp_path / "nope.json"))
    assert code == 2 and "cannot read" in err


def test_tolerance_override(capsys, scenario_file, monkeypatch):
    doc = {"k": 1.0, "left": [0.0, 0.0], "middle": [1.0, -1.0 + 1e-6], "right": [-1.0, 1.0], "x0": 0.0, "x1": 1.0}
    path = scenario_file(doc)
    assert run(capsys, "interact", "--scenario", path)[0] == 3
    monkeypatch.setenv("ELASTO_WAVES_TOL", "1e-5")
    assert run(capsys, "interact", "--scenario", path)[0] == 0
    monkeypatch.setenv("ELASTO_WAVES_TOL", "abc")
    assert run(capsys, "interact", "--scenario", path)[0] == 2


def test_verify(capsys, scenario_file):
    for name, s in FIXTURES.items():
        code, doc = run_json(capsys, "verify_report", "verify", "--scenario", scenario_file(s), "--samples", "100")
        assert code == 0, name
        assert {"rh", "continuity", "invariant", "smooth"} <= doc.keys()


def test_verify_corrupted(capsys, scenario_file):
    path = scenario_file(FIXTURES[RUNNING_EXAMPLE])
    code, doc = run_json(capsys, "verify_report", "verify", "--scenario", path, "--inject-speed-error", "0.01")
    assert code == 1 and doc["pass"] is False and doc["rh"]["pass"] is False


def test_verify_unsupported(capsys, scenario_file):
    assert run(capsys, "verify", "--scenario", scenario_file(OFF))[0] == 3


def test_oracle_fv_refines(capsys, scenario_file):
    path = scenario_file(FIXTURES[RUNNING_EXAMPLE])
    l1 = []
    for n in ("400", "800"):
        code, doc = run_json(capsys, "oracle_summary", "oracle", "--scenario", path, "--method", "fv",
                             "--t", "0.5", "--cells", n)
        assert code == 0
        l1.append(doc["l1_distance_to_exact"])
    assert l1[1] < l1[0]


@pytest.mark.parametrize("method", ["fv", "glimm", "frontrack"])
def test_oracle_constant(capsys, scenario_file, method):
    code, doc = run_json(capsys, "oracle_summary", "oracle", "--scenario", scenario_file(CONST),
                         "--method", method, "--t", "1", "--cells", "40")
    assert code == 0 and doc["l1_distance_to_exact"] == 0.0


def test_oracle_frontrack_front(capsys, scenario_file):
    path = scenario_file(FIXTURES[RUNNING_EXAMPLE])
    code, doc = run_json(capsys, "oracle_summary", "oracle", "--scenario", path, "--method", "frontrack",
                         "--t", "9", "--cells", "200")
    assert code == 0
    (f,) = doc["fronts"]
    assert f["x"] == 6.5 and f["kind"] == "shock"
    assert f["left"] == [0.0, 0.0] and f["right"] == [-1.0, 1.0]


def test_oracle_glimm_csv_is_stable(capsys, scenario_file, tmp_path):
    path = scenario_file(FIXTURES[RUNNING_EXAMPLE])
    outs = []
    for i in range(2):
        out = tmp_path / f"g{i}.csv"
        code, _, _ = run(capsys, "oracle", "--scenario", path, "--method", "glimm", "--t", "2",
                         "--cells", "200", "--seed", "5", "--out", str(out))
        assert code == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    assert outs[0].decode().startswith("x_center,u,sigma\n")
    assert outs[0].decode().count("\n") == 201


def test_oracle_domain_too_small(capsys, scenario_file):
    path = scenario_file(FIXTURES[RUNNING_EXAMPLE])
    code, out, err = run(capsys, "oracle", "--scenario", path, "--method", "fv", "--t", "9",
                         "--x-min", "-1", "--x-max", "2")
    assert code == 4 and "domain" in err and out == ""


@pytest.mark.parametrize("extra", [["--t", "0"], ["--t", "1", "--cells", "5"], ["--t", "1", "--seed", "-2"],
                                   ["--t", "1", "--method", "spectral"]])
def test_oracle_validation(capsys, scenario_file, extra):
    argv = ["oracle", "--scenario", scenario_file(FIXTURES[RUNNING_EXAMPLE])]
    if "--method" not in extra:
        argv += ["--method", "fv"]
    assert run(capsys, *argv, *extra)[0] == 2


def test_oracle_frontrack_unsupported(capsys, scenario_file):
    code, _, _ = run(capsys, "oracle", "--scenario", scenario_file(OFF), "--method", "frontrack", "--t", "1")
    assert code == 3


def test_no_command(capsys):
    assert run(capsys)[0] == 2


@pytest.mark.skipif(shutil.which("elasto-waves") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["elasto-waves", "riemann", "--k", "1", "--left", "0,0", "--right", "0,2"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["middle_state"] == [1.0, 1.0]
    bad = subprocess.run(["elasto-waves", "riemann", "--k", "-1", "--left", "0,0", "--right", "0,2"],
                         capture_output=True, text=True)
    assert bad.returncode == 2 and "k must be positive" in bad.stderr
