"""Job files, the runner, report rendering and the command-line entry point."""

import json

import pytest

from knotselmer.cli.fixtures import fixture_names, fixture_text
from knotselmer.cli.jobfile import parse_job
from knotselmer.cli.main import main
from knotselmer.cli.report import emit, emit_structured, parse_structured
from knotselmer.cli.runner import run
from knotselmer.errors import MissingWitnessError, ParseError

HOLONOMY = fixture_text("fig8-holonomy")

SMALL = """\
name small
generators g1 g2
relation g1 g2^-1 g1^-1 g2 g1 = g2 g1 g2^-1 g1^-1 g2
ring quadratic_integers -3 w
let omega = (1 + w)/2
image g1 = [1, 1; 0, 1]
image g2 = [1, 0; omega, 1]
"""


def test_every_fixture_parses():
    names = fixture_names()
    assert set(names) >= {"fig8-meridian", "fig8-longitude", "k52", "fig8-holonomy",
                          "fig8-twovar", "k52-twovar"}
    for name in names:
        job = parse_job(fixture_text(name))
        assert job.tasks


def test_unknown_fixture():
    with pytest.raises(KeyError):
        fixture_text("no-such-job")


def test_missing_witness_is_a_parse_error():
    text = SMALL.replace("let omega = (1 + w)/2", "let omega = sqrt(w)")
    with pytest.raises(MissingWitnessError) as exc:
        parse_job(text)
    assert exc.value.line == 5


def test_two_variable_indeterminate_only_in_expectations():
    text = SMALL + "let bad = t + 1\n"
    with pytest.raises(ParseError):
        parse_job(text)


def test_unknown_task_option():
    with pytest.raises(ParseError):
        parse_job(SMALL + "task selmer colour=red\n")


def test_empty_task_list_echoes_input():
    report = run(parse_job(SMALL))
    assert report.ok
    assert report.doc["tasks"] == []
    assert report.doc["input"]["generators"] == ["g1", "g2"]
    assert report.doc["input"]["constants"] == {"omega": "(1 + w)/2"}


def test_structured_output_is_deterministic_and_round_trips():
    a = emit_structured(run(parse_job(HOLONOMY)))
    b = emit_structured(run(parse_job(HOLONOMY)))
    assert a == b
    doc = json.loads(a)
    assert doc["schema"] == "knotselmer.report" and doc["version"] == 1
    assert "time" not in a
    assert emit_structured(parse_structured(a)) == a


def test_parse_structured_rejects_other_documents():
    with pytest.raises(ValueError):
        parse_structured('{"schema": "other", "version": 1}')
    with pytest.raises(ValueError):
        parse_structured('{"schema": "knotselmer.report", "version": 99}')


def test_text_report_mentions_module():
    text = emit(run(parse_job(HOLONOMY)), "text")
    assert "Sel ≅ 𝒪/(√−3)" in text
    assert "status: ok" in text


def test_main_exit_codes(capsys, tmp_path):
    assert main(["--fixture", "fig8-holonomy"]) == 0
    assert "Sel ≅" in capsys.readouterr().out
    bad = tmp_path / "bad.job"
    bad.write_text(SMALL.replace("image g2 = [1, 0; omega, 1]", "image g2 = [1, 0; 1, 1]")
                   + "task selmer\n")
    assert main(["--input", str(bad)]) == 1
    assert "setup FAILED" in capsys.readouterr().out
    broken = tmp_path / "broken.job"
    broken.write_text(SMALL + "let z = (1 +\n")
    assert main(["--input", str(broken)]) == 2
    assert "parse error" in capsys.readouterr().err
    assert main(["--fixture", "nope"]) == 2
    assert main([]) == 2


def test_expectation_mismatch_fails_the_task(tmp_path, capsys):
    job = tmp_path / "j.job"
    job.write_text(SMALL + "task selmer expect_L=2\n")
    assert main(["--input", str(job)]) == 1
    assert "MISMATCH" in capsys.readouterr().out


def test_define_overrides_a_constant(capsys):
    # the complex-conjugate holonomy is also a representation, with the same L
    assert main(["--fixture", "fig8-holonomy", "--define", "omega=(1 - w)/2",
                 "--format", "structured"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["input"]["constants"]["omega"] == "(1 - w)/2"
    assert doc["tasks"][0]["result"]["expectation"]["matches"]


def test_task_filter(capsys):
    assert main(["--fixture", "fig8-twovar", "--task", "irreducibility", "--format", "structured"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [t["kind"] for t in doc["tasks"]] == ["irreducibility"]
    assert doc["tasks"][0]["result"]["absolutely_irreducible"] is True


def test_precision_override(capsys):
    assert main(["--fixture", "fig8-meridian", "--precision-s", "5", "--format", "structured"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["precision"]["s"] == 5
    assert main(["--fixture", "fig8-meridian", "--precision-s", "0"]) == 2


def test_list_fixtures(capsys):
    assert main(["--list-fixtures"]) == 0
    assert "k52-twovar" in capsys.readouterr().out.split()
