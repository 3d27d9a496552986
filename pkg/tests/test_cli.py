import io
import json
import os
import subprocess
import sys

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from geoprove.cli import EXIT_BUDGET, EXIT_OK, EXIT_UNPROVED, EXIT_USAGE, RunConfig, main, run
from geoprove.corpus import corpus_path, names
from geoprove.schemas import NAMES, load_schema

REGISTRY = Registry().with_resources(
    [(load_schema(n)["$id"], Resource.from_contents(load_schema(n))) for n in NAMES]
)


def validate(doc, schema):
    errors = list(Draft202012Validator(load_schema(schema), registry=REGISTRY).iter_errors(doc))
    assert not errors, [e.message for e in errors[:3]]


def cli(*args, env=None):
    proc = subprocess.run(
        [sys.executable, "-m", "geoprove", *args], capture_output=True, text=True, env=env
    )
    return proc.returncode, proc.stdout, proc.stderr


def geo(name):
    return str(corpus_path(name))


def test_exit_0_heights_direct():
    code, out, _ = cli("prove", geo("heights_direct.geo"), "--encoding", "direct", "--specialize", "none")
    assert code == EXIT_OK
    assert "Difficulty: 0" in out and "Statement is formally true" in out


def test_exit_1_unproved():
    code, out, _ = cli("prove", geo("falsehood.geo"))
    assert code == EXIT_UNPROVED and "Statement is not proved" in out


def test_exit_2_parse_error(tmp_path):
    bad = tmp_path / "bad.geo"
    bad.write_text("point A\nM = midpoint(A, Q)\nthesis collinear(A, A, M)\n")
    code, out, err = cli("prove", str(bad))
    assert code == EXIT_USAGE and out == ""
    assert f"{bad}:2:17:" in err and "'Q'" in err


def test_exit_2_usage():
    assert cli("prove")[0] == EXIT_USAGE
    assert cli("prove", geo("medians.geo"), "--budget-spairs", "0")[0] == EXIT_USAGE
    assert cli("prove", geo("medians.geo"), "--specialize", "A=(0,")[0] == EXIT_USAGE
    assert cli("prove", "/nonexistent.geo")[0] == EXIT_USAGE


def test_exit_3_budget():
    code, _, err = cli("prove", geo("medians.geo"), "--budget-spairs", "1")
    assert code == EXIT_BUDGET and "budget" in err


def test_exit_3_budget_env():
    env = dict(os.environ, GEOPROVE_BUDGET_SPAIRS="1")
    assert cli("prove", geo("medians.geo"), env=env)[0] == EXIT_BUDGET


def test_medians_minimize_routes():
    out = io.StringIO()
    cfg = RunConfig("prove", geo("medians.geo"), specialize="auto", minimize=True)
    assert run(cfg, out) == EXIT_OK
    assert "Difficulty: 1" in out.getvalue()
    out = io.StringIO()
    cfg = RunConfig("prove", geo("medians.geo"), specialize="auto", minimize=True, route="reductio")
    assert run(cfg, out) == EXIT_OK
    assert "Difficulty: 2" in out.getvalue() and "geometrically true" in out.getvalue()


def test_explicit_specialization():
    out = io.StringIO()
    cfg = RunConfig("prove", geo("heights_direct.geo"), specialize="A=(0,0),B=(0,1)")
    assert run(cfg, out) == EXIT_OK
    assert "b2 = 1" in out.getvalue()


def test_v_offset_flag(capsys):
    assert main(["translate", geo("heights_translation.geo"), "--v-offset", "13"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["variables"][0]["v_index"] == "v13" and doc["variables"][-1]["v_index"] == "v26"


@pytest.mark.parametrize("name", names())
def test_json_outputs_match_schemas(name, capsys):
    code = main(["prove", geo(name), "--json", "--minimize"])
    assert code in (EXIT_OK, EXIT_UNPROVED)
    validate(json.loads(capsys.readouterr().out), "transcript")
    assert main(["translate", geo(name), "--specialize", "auto"]) == EXIT_OK
    validate(json.loads(capsys.readouterr().out), "polysystem")
    assert main(["discover", geo(name), "--json", "--kinds", "collinear,equal_length,parallel,perpendicular"]) == EXIT_OK
    validate(json.loads(capsys.readouterr().out), "report")


def test_discover_table(capsys):
    assert main(["discover", geo("fig3.geo"), "--kinds", "collinear", "--seed", "3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "collinear(C, F, G)" in out and "(seed 3)" in out
