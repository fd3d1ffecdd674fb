import json
from importlib import resources

import jsonschema
import pytest
from click.testing import CliRunner

from hessclass.cli import cli
from hessclass.polyring import MultiPoly, VarSet
from hessclass.schubert import cohomology_normal_form, schubert_poly
from hessclass.perms import Perm

EXAMPLE = "2*x1^3 + 7*x1^2*x2 + 4*x1*x2^2 + x2^3 + 3*x1^2*x3 + 2*x1*x2*x3 + x2^2*x3"


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args, env=None):
        return runner.invoke(cli, list(args), env=env, catch_exceptions=False)

    return invoke


@pytest.fixture(scope="module")
def schema():
    text = resources.files("hessclass").joinpath("schemas/verdict.schema.json").read_text()
    return json.loads(text)


def test_class_text(run):
    r = run("class", "--h", "2,3,4,4", "--theory", "cohomology", "--format", "text")
    assert r.exit_code == 0
    assert r.output.strip() == EXAMPLE


def test_class_ktheory_trivial(run):
    r = run("class", "--h", "4,4,4,4", "--theory", "ktheory")
    assert r.exit_code == 0 and r.output.strip() == "1"


def test_class_schubert_basis(run):
    r = run("class", "--h", "2,3,4,4", "--basis", "schubert", "--format", "json")
    coeffs = json.loads(r.output)["coefficients"]
    assert all(c >= 0 for c in coeffs.values())
    xs = VarSet.x(4)
    total = sum((schubert_poly(Perm.parse(w)) * c for w, c in coeffs.items()), MultiPoly.zero(xs))
    assert cohomology_normal_form(total - MultiPoly.parse(EXAMPLE, xs), 4).is_zero()


def test_class_latex_and_json(run):
    r = run("class", "--h", "2,3,4,4", "--format", "latex")
    assert r.output.startswith("2 x_{1}^{3} + 7 x_{1}^{2} x_{2}")
    r = run("class", "--h", "2,3,4,4", "--theory", "ktheory", "--format", "json")
    data = json.loads(r.output)
    assert len(data["polynomial"]["terms"]) == 31
    r = run("class", "--h", "2,3,4,4", "--theory", "ktheory", "--basis", "schubert", "--format", "latex")
    assert r.exit_code == 0 and "\\mathfrak{G}" in r.output


def test_invalid_h_exits_2(run):
    for bad in ("3,1,2", "1,1", "x", "5,5"):
        r = run("class", "--h", bad)
        assert r.exit_code == 2


def test_wperm(run):
    r = run("wperm", "--h", "2,3,4,4")
    assert "w_h = 12536478" in r.output and "length = 3" in r.output
    r = run("wperm", "--h", "4,4,4,4", "--format", "json")
    data = json.loads(r.output)
    assert data["w_h"] == "12345678" and data["length"] == 0 and data["essential_set"] == []
    data = json.loads(run("wperm", "--h", "1,2,3,4", "--format", "json").output)
    assert data["length"] == 6


def test_ideal(run):
    assert run("ideal", "--h", "2,2", "--which", "J").output == ""
    r = run("ideal", "--h", "1,2", "--which", "I", "--op", "nilpotent")
    assert r.output.strip().splitlines() == ["z_2_1^2"]
    data = json.loads(run("ideal", "--h", "2,3,4,4", "--which", "fulton", "--format", "json").output)
    assert len(data["gens"]) == 9 and len(data["vars"]) == 64
    r = run("ideal", "--h", "1,2,3", "--which", "phi", "--op", "semisimple:1,5,7")
    assert r.exit_code == 0 and r.output.strip()
    assert run("ideal", "--h", "1,2", "--op", "semisimple:1,1").exit_code == 2
    assert run("ideal", "--h", "1,2", "--op", "file:/nonexistent").exit_code == 2


def test_ideal_operator_file(run, tmp_path):
    p = tmp_path / "x.txt"
    p.write_text("0 1\n0 0\n")
    a = run("ideal", "--h", "1,2", "--op", f"file:{p}").output
    assert a == run("ideal", "--h", "1,2").output


def test_verify_plucker(run, schema):
    r = run("verify", "--level", "plucker")
    assert r.exit_code == 0
    report = json.loads(r.output)
    jsonschema.validate(report, schema)
    assert report["status"] == "pass"


def test_verify_class_n2(run, schema):
    r = run("verify", "--n", "2", "--all-h", "--level", "class")
    assert r.exit_code == 0
    report = json.loads(r.output)
    jsonschema.validate(report, schema)
    assert [j["h"] for j in report["jobs"]] == [[1, 2], [2, 2]]


def test_verify_phi_image_n3(run):
    r = run("verify", "--n", "3", "--all-h", "--level", "phi-image", "--format", "text")
    assert r.exit_code == 0
    lines = r.output.splitlines()
    assert sum(line.startswith("pass ") for line in lines) == 5
    assert lines[-1] == "summary: 5 pass, 0 fail, 0 timeout"


def test_verify_is_byte_identical_and_parallel_safe(run):
    args = ("verify", "--n", "3", "--level", "class", "--level", "saturation")
    a = run(*args).output
    b = run(*args, "--jobs", "3").output
    assert a == b


def test_verify_timings_opt_in(run, schema):
    report = json.loads(run("verify", "--h", "1,2", "--level", "class", "--timings").output)
    jsonschema.validate(report, schema)
    assert all("seconds" in v for j in report["jobs"] for v in j["verdicts"])


def test_verify_timeout_exit_3(run, schema):
    r = run("verify", "--h", "1,2,3", "--level", "saturation", env={"HESS_TIME_BUDGET": "0.00001"})
    assert r.exit_code == 3
    report = json.loads(r.output)
    jsonschema.validate(report, schema)
    assert report["status"] == "timeout"
    # an explicit flag wins over the environment
    assert run("verify", "--h", "1,2,3", "--level", "saturation", "--budget", "60",
               env={"HESS_TIME_BUDGET": "0.00001"}).exit_code == 0


def test_verify_failure_exit_1(run, monkeypatch):
    import hessclass.suites as suites

    monkeypatch.setattr(suites, "plucker_symbolic", lambda: False)
    assert run("verify", "--level", "plucker").exit_code == 1


def test_verify_size_guard(run):
    r = run("verify", "--h", "2,3,4,4", "--level", "class")
    assert r.exit_code == 1
    assert run("verify", "--h", "2,3,4,4", "--level", "length").exit_code == 0


def test_verify_bad_budget_env(run):
    assert run("verify", "--level", "plucker", env={"HESS_TIME_BUDGET": "soon"}).exit_code == 2


def test_internal_error_exit_1(run, monkeypatch):
    import hessclass.cli as cli_mod

    def boom(*a, **k):
        raise RuntimeError("boom")

    monkeypatch.setattr(cli_mod, "compute_class", boom)
    r = run("class", "--h", "2,2")
    assert r.exit_code == 1


def test_schema_rejects_malformed_report(schema):
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"tool": "hessclass", "status": "ok"}, schema)
