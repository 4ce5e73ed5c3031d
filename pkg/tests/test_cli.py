import io
import json
import os
import subprocess
import sys

import pytest

from foldideals.cli import (
    EXIT_HYPOTHESIS,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILED,
    SpecError,
    parse_collection,
    run,
)
from foldideals.linalg import PrimeField

DATA = os.path.join(os.path.dirname(__file__), "data")
SIGMA = os.path.join(DATA, "sigma.json")
LINES = os.path.join(DATA, "four_lines.json")

CONCURRENT = json.dumps({"num_vars": 3, "forms": [
    {"coeffs": [1, 0, 0]}, {"coeffs": [0, 1, 0]}, {"coeffs": [1, 1, 0]}, {"coeffs": [0, 0, 1]}]})


def call(argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(argv, stdout=out)
    return code, out.getvalue()


def test_ghw_four_lines():
    code, out = call(["ghw", LINES, "--check"])
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["results"]["weights"] == [2, 3, 4]
    assert rep["results"]["height_profile"] == {"1": 3, "2": 3, "3": 2, "4": 1}
    assert rep["verdicts"]["height_consistency"] == "pass"


def test_betti_linear_verdict():
    code, out = call(["betti", LINES, "-a", "3", "--check"])
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["results"]["is_linear"] is True
    assert rep["results"]["regularity"] == 2


def test_betti_csv():
    code, out = call(["betti", SIGMA, "-a", "2", "--format", "csv"])
    lines = out.strip().splitlines()
    assert lines[:2] == ["# betti", "i,j,j_minus_i,beta"]
    assert "1,2,1,6" in lines


def test_decompose_report():
    code, out = call(["decompose", SIGMA, "-a", "3", "--check"])
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["verdicts"] == {"cor24": "pass", "lemma21": "pass", "prop22": "pass"}
    assert len(rep["results"]["components"]) == 4
    prov = rep["provenance"]
    assert prov["field"] == "rational" and prov["generic_support"] is True
    assert prov["degree_bound_source"] == "default"
    assert "tool_version" in prov


def test_lowered_bound_is_flagged():
    _, out = call(["decompose", SIGMA, "-a", "3", "--degree-bound", "4"])
    prov = json.loads(out)["provenance"]
    assert prov["degree_bound"] == 4 and prov["degree_bound_source"] == "user"
    assert "degree_bound_note" in prov


def test_output_is_deterministic():
    a = call(["gens", SIGMA, "-a", "3"])[1]
    b = call(["gens", SIGMA, "-a", "3"])[1]
    assert a == b
    assert json.loads(a)["results"]["num_generators"] == 7


def test_stdin_input(monkeypatch):
    code, out = call(["gens", "-", "-a", "2"], stdin=open(LINES).read(), monkeypatch=monkeypatch)
    assert code == EXIT_OK
    assert json.loads(out)["results"]["min_gen_degrees"] == {"2": 6}


def test_hypothesis_violation_exit(monkeypatch):
    code, out = call(["star", "-", "-c", "2", "--check"], stdin=CONCURRENT, monkeypatch=monkeypatch)
    assert code == EXIT_HYPOTHESIS
    assert json.loads(out)["verdicts"]["ghm"] == "hypothesis violated"
    # without --check the report is still written and the exit code is 0
    code, _ = call(["star", "-", "-c", "2"], stdin=CONCURRENT, monkeypatch=monkeypatch)
    assert code == EXIT_OK


def test_non_generic_decompose_tags_hypothesis(monkeypatch):
    code, out = call(["decompose", "-", "-a", "2", "--check"], stdin=CONCURRENT, monkeypatch=monkeypatch)
    rep = json.loads(out)
    assert rep["verdicts"]["lemma21"] == "pass"
    assert "hypothesis violated" in rep["verdicts"]["cor24"]
    assert code == EXIT_HYPOTHESIS


def test_verification_failure_exit():
    # (5,3) with r <= 6: no failing ratio within 1/6 of 9/5
    code, out = call(["resurgence", "-s", "5", "-c", "3", "--m-max", "9", "--r-max", "6", "--check"])
    rep = json.loads(out)
    assert rep["verdicts"]["failure_within_1_over_r_max"] == "fail"
    assert code == EXIT_VERIFICATION_FAILED


def test_resurgence_cli_example():
    code, out = call(["resurgence", "-s", "4", "-c", "2", "--m-max", "8", "--r-max", "6", "--check"])
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["results"]["formula"] == "3/2"
    assert rep["verdicts"]["no_failure_at_or_above_formula"] == "pass"


def test_resurgence_with_phi(monkeypatch):
    code, out = call(["resurgence", "-s", "4", "-c", "2", "--m-max", "4", "--r-max", "4",
                      "--spec", LINES, "--phi-bound", "2", "--check"])
    rep = json.loads(out)
    assert rep["verdicts"]["phi_transfer"] == "pass"
    assert len(rep["results"]["phi_transfer"]) == 4


def test_resurgence_csv():
    _, out = call(["resurgence", "-s", "4", "-c", "2", "--m-max", "2", "--r-max", "2", "--format", "csv"])
    assert out.splitlines()[1] == "m,r,ratio,contained"
    assert "2,2,1,False" in out


def test_star_report():
    code, out = call(["star", LINES, "-c", "2", "-m", "2", "--check"])
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["results"]["ordinary_power_dims"]["6"] == 10


@pytest.mark.parametrize("text,needle", [
    ('{"num_vars": 3, "forms": [{"coeffs": [1, 0]}]}', "forms[0].coeffs"),
    ('{"num_vars": 3, "forms": [{"coeffs": [1, 0, 0], "multiplicity": 0}]}', "forms[0].multiplicity"),
    ('{"num_vars": 3, "forms": [{"coeffs": [0, 0, 0]}]}', "zero form"),
    ('{"num_vars": 3, "forms": [{"coeffs": [1.5, 0, 0]}]}', "forms[0].coeffs[0]"),
    ('{"num_vars": 3, "forms": []}', "forms"),
    ('{"num_vars": 3, "forms": [{"coeffs": [1, 0, 0]}], "extra": 1}', "unknown keys"),
    ('{"field": "real", "num_vars": 1, "forms": [{"coeffs": [1]}]}', "field"),
    ('{"num_vars": 3,\n "forms": [', "line 2"),
])
def test_parse_errors_name_the_field(text, needle):
    with pytest.raises(SpecError) as exc:
        parse_collection(text)
    assert needle in str(exc.value)


def test_parse_error_exit_code(monkeypatch, capsys):
    code, _ = call(["ghw", "-"], stdin="{", monkeypatch=monkeypatch)
    assert code == EXIT_USAGE
    assert "parse error" in capsys.readouterr().err


def test_field_override():
    text = open(LINES).read()
    s = parse_collection(text, PrimeField(2))
    assert s.field == PrimeField(2)
    code, out = call(["ghw", LINES, "--field", "prime:7"])
    assert json.loads(out)["provenance"]["field"] == PrimeField(7).describe()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "foldideals", "ghw", LINES],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["weights"] == [2, 3, 4]
