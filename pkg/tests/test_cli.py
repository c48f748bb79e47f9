import json
from pathlib import Path

import pytest

import deonmf.corpus
from deonmf.cli import EXIT_BUDGET, EXIT_CONTRARY, EXIT_OK, EXIT_USAGE, main
from deonmf.config import BUDGET_ENV
from deonmf.solver.dimacs import parse_dimacs

GEWIRTH = Path(deonmf.corpus.__file__).parent / "gewirth.dl"

SMALL = """
consts A : m
goal weaker [axioms = none] : validD A => valid A
goal stronger [axioms = none] : valid A => validD A
"""


@pytest.fixture
def small(tmp_path):
    path = tmp_path / "small.dl"
    path.write_text(SMALL, encoding="utf-8")
    return path


def test_check_summarizes_the_theory(small, capsys):
    assert main(["check", str(small)]) == EXIT_OK
    assert "ok (1 constants, 0 definitions, 0 axioms, 2 goals)" in capsys.readouterr().out


def test_check_json(small, capsys):
    assert main(["check", str(small), "--format", "json"]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["goals"] == ["weaker", "stronger"]


def test_parse_prints_the_theory_back(small, capsys):
    assert main(["parse", str(small)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "consts A" in out
    assert "goal weaker" in out


def test_countermodel_found(small, capsys):
    assert main(["countermodel", str(small), "--goal", "weaker", "--scope", "w=2", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["verdict"] == "sat"
    assert payload["model"]["scope"] == {"c": 1, "e": 1, "w": 2}


def test_no_countermodel_is_the_contrary_outcome(small):
    assert main(["countermodel", str(small), "--goal", "stronger", "--scope", "w=2"]) == EXIT_CONTRARY


def test_valid_outcomes(small, capsys):
    assert main(["valid", str(small), "--goal", "stronger", "--scope", "c=1,e=1,w=2"]) == EXIT_OK
    assert "bounded-valid up to (1,1,2)" in capsys.readouterr().out
    assert main(["valid", str(small), "--goal", "weaker", "--scope", "c=1,e=1,w=2"]) == EXIT_CONTRARY


def test_consistency_of_gewirth(capsys):
    assert main(["consistency", str(GEWIRTH), "--scope", "c=1,e=1,w=2"]) == EXIT_OK
    assert "FWB" in capsys.readouterr().out
    assert main(["consistency", str(GEWIRTH), "--scope", "c=1,e=1,w=1"]) == EXIT_CONTRARY


def test_zero_scope_is_a_usage_error(capsys):
    assert main(["valid", str(GEWIRTH), "--goal", "PGC", "--scope", "c=0"]) == EXIT_USAGE
    assert "deon-mf: error" in capsys.readouterr().err


def test_unknown_goal_is_a_usage_error(small, capsys):
    assert main(["countermodel", str(small), "--goal", "PGC"]) == EXIT_USAGE
    err = capsys.readouterr().err
    assert "unknown goal 'PGC'" in err
    assert str(small) in err


def test_missing_file_is_a_usage_error(tmp_path):
    assert main(["check", str(tmp_path / "nothing.dl")]) == EXIT_USAGE


def test_parse_errors_name_the_location(tmp_path, capsys):
    path = tmp_path / "broken.dl"
    path.write_text("consts A : m\naxiom ax : valid (A &)\n", encoding="utf-8")
    assert main(["check", str(path)]) == EXIT_USAGE
    assert "2:" in capsys.readouterr().err


def test_unknown_condition_is_a_usage_error(small):
    argv = ["countermodel", str(small), "--goal", "weaker", "--disable", "sem-ob-sideways"]
    assert main(argv) == EXIT_USAGE


def test_missing_command_is_a_usage_error():
    assert main([]) == EXIT_USAGE


def test_bad_budget_in_environment(small, monkeypatch):
    monkeypatch.setenv(BUDGET_ENV, "soon")
    assert main(["countermodel", str(small), "--goal", "weaker"]) == EXIT_USAGE


def test_scope_budget_exceeded(capsys):
    # the bundled theory at a scope far beyond the cell budget
    assert main(["consistency", str(GEWIRTH), "--scope", "c=6,e=6,w=6"]) == EXIT_BUDGET
    assert "budget exceeded" in capsys.readouterr().err


def test_emit_dimacs_to_file(small, tmp_path):
    output = tmp_path / "out" / "weaker.cnf"
    argv = ["emit-dimacs", str(small), "--goal", "weaker", "--mode", "refute", "--scope", "w=2", "--output", str(output)]
    assert main(argv) == EXIT_OK
    problem = parse_dimacs(output.read_text(encoding="utf-8"))
    assert problem.num_vars > 0
    assert problem.clauses


def test_deterministic_json_is_byte_identical(small, capsys):
    argv = ["countermodel", str(small), "--goal", "weaker", "--scope", "w=2", "--deterministic", "--format", "json"]
    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == first


def test_corpus_subset(capsys):
    argv = ["corpus", "--entry", "indexical-weaker", "--entry", "gewirth-consistent", "--deterministic", "--format", "json"]
    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    payload = json.loads(first)
    assert payload["ok"] is True
    assert [entry["name"] for entry in payload["entries"]] == ["indexical-weaker", "gewirth-consistent"]
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == first


def test_corpus_rejects_unknown_entries_and_dropped_load_bearing_conditions():
    assert main(["corpus", "--entry", "nosuch"]) == EXIT_USAGE
    assert main(["corpus", "--entry", "kants-law", "--disable", "sem_5ab"]) == EXIT_USAGE
