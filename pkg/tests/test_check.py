import json

import pytest

from deonmf.check import Checker, axioms_for, load_theory, resolve_goal
from deonmf.config import BUDGET_ENV, DEFAULT_BUDGET_SECONDS, CheckerConfig, default_budget, load_scope
from deonmf.errors import ConfigError, VerificationError
from deonmf.grounder.encoder import REFUTE, SATISFY
from deonmf.semantics.frame import Frame, Interpretation
from deonmf.semantics.scope import Scope
from deonmf.solver.result import Verdict

from conftest import theory_from

TWO_WORLDS = Scope(1, 1, 2)

SMALL = """
consts A : m
axiom contingent : validD (diaP A) && validD (diaP ~A)
goal weaker [axioms = none] : validD A => valid A
goal stronger [axioms = none] : valid A => validD A
goal contingent-copy : validD (diaP A)
goal broken [without = nosuch] : valid A
"""


@pytest.fixture
def small():
    return theory_from(SMALL)


def test_consistency_of_gewirth_needs_two_worlds(gewirth):
    checker = Checker(gewirth)
    found = checker.consistency(TWO_WORLDS)
    assert found.verdict is Verdict.SAT
    assert found.model is not None and found.model.scope == TWO_WORLDS
    assert checker.consistency(Scope(1, 1, 1)).verdict is Verdict.UNSAT


def test_consistency_goal_of_the_bundled_theory(gewirth):
    result = Checker(gewirth).satisfy(gewirth.goal("axiomsConsistent"), TWO_WORLDS)
    assert result.verdict is Verdict.SAT
    assert result.model is not None and result.model.scope == TWO_WORLDS


def test_countermodel_for_indexical_to_classical(small):
    result = Checker(small).countermodel(small.goal("weaker"), TWO_WORLDS)
    assert result.found_model
    assert result.size.variables >= result.size.auxiliary
    assert Checker(small).countermodel(small.goal("weaker"), Scope(1, 1, 1)).verdict is Verdict.UNSAT


def test_valid_deepens_until_the_first_countermodel(small):
    report = Checker(small).valid(small.goal("weaker"), Scope(1, 1, 2))
    assert report.countermodel is not None
    assert report.countermodel.scope == TWO_WORLDS
    assert report.completed == (Scope(1, 1, 1),)
    assert report.summary() == "countermodel at (1,1,2)"


def test_valid_reports_bounded_validity(small):
    report = Checker(small).valid(small.goal("stronger"), Scope(2, 1, 2))
    assert report.exhaustive
    assert report.largest_completed == Scope(2, 1, 2)
    assert report.summary() == "bounded-valid up to (2,1,2)"


def test_budget_spent_before_grounding_finishes_is_a_timeout(small):
    goal = small.goal("weaker")
    result = Checker(small).run(goal.name, goal.formula, REFUTE, TWO_WORLDS, axioms=(), budget=0)
    assert result.verdict is Verdict.TIMEOUT
    assert result.size is None


def test_goal_attributes_select_axioms(small):
    assert axioms_for(small, small.goal("weaker")) == ()
    assert [axiom.name for axiom in axioms_for(small, small.goal("contingent-copy"))] == ["contingent"]
    with pytest.raises(ConfigError):
        axioms_for(small, small.goal("broken"))


def test_unknown_goal_lists_declared_goals(small):
    with pytest.raises(ConfigError, match="weaker"):
        resolve_goal(small, "PGC")


def test_verification_rejects_a_frame_violating_the_conditions(small):
    bad = Frame(TWO_WORLDS, av=(1, 2), pv=(3, 3), ob=(0, 1 << 2, 0, 0), world_of=(0,), agent_of=(0,))
    with pytest.raises(VerificationError):
        Checker(small).verify("bad", Interpretation(bad), None, SATISFY, ())


def test_deterministic_reports_serialize_identically(small):
    config = CheckerConfig(deterministic=True)
    first = Checker(small, config).countermodel(small.goal("weaker"), TWO_WORLDS).to_json(include_timing=False)
    second = Checker(small, config).countermodel(small.goal("weaker"), TWO_WORLDS).to_json(include_timing=False)
    assert first == second
    payload = json.loads(first)
    assert payload["verdict"] == "sat"
    assert "elapsed" not in payload["stats"]
    assert payload["model"]["scope"] == {"c": 1, "e": 1, "w": 2}


def test_load_theory_reports_missing_files(tmp_path):
    with pytest.raises(ConfigError):
        load_theory(tmp_path / "missing.dl")
    path = tmp_path / "small.dl"
    path.write_text(SMALL, encoding="utf-8")
    assert [goal.name for goal in load_theory(path).goals][:2] == ["weaker", "stronger"]


def test_budget_from_environment():
    assert default_budget({}) == DEFAULT_BUDGET_SECONDS
    assert default_budget({BUDGET_ENV: "2.5"}) == 2.5
    with pytest.raises(ConfigError):
        default_budget({BUDGET_ENV: "soon"})
    with pytest.raises(ConfigError):
        default_budget({BUDGET_ENV: "-1"})


def test_config_validation_and_workers():
    with pytest.raises(ConfigError):
        CheckerConfig(budget=0)
    with pytest.raises(ConfigError):
        CheckerConfig(jobs=0)
    assert CheckerConfig(budget=1, jobs=4, deterministic=True).workers == 1
    assert CheckerConfig(budget=1, jobs=4, deterministic=False).workers == 4
    config = CheckerConfig(budget=1).with_conditions(disable=["sem-ob-down"])
    assert config.to_dict()["conditions"]["sem-ob-down"] is False


def test_scope_option_falls_back_to_default():
    assert load_scope(None, Scope(2, 2, 2)) == Scope(2, 2, 2)
    assert load_scope("w=2") == TWO_WORLDS
    with pytest.raises(ConfigError):
        load_scope(None)
