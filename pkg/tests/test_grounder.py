import pytest

from deonmf.errors import IncompleteAssignment, ScopeTooLarge
from deonmf.grounder.dimacs import emit
from deonmf.grounder.encoder import REFUTE, SATISFY, ground
from deonmf.grounder.reconstruct import assignment_for, reconstruct_model
from deonmf.grounder.varmap import PropVarMap
from deonmf.semantics.conditions import frame_conditions_check
from deonmf.semantics.evaluator import Evaluator
from deonmf.semantics.scope import Scope
from deonmf.solver.dimacs import parse_dimacs
from deonmf.solver.dpll import solve
from deonmf.surface.checker import check_meta
from deonmf.surface.parser import parse_meta

from conftest import theory_from

TWO_WORLDS = Scope(1, 1, 2)


def goal(theory, text):
    return check_meta(theory, parse_meta(text))


def test_variable_count_matches_closed_form(gewirth):
    varmap = PropVarMap.build(gewirth.signature, TWO_WORLDS)
    # 27 frame cells, 3 tables of 4 rows, NeedsForPurpose with 16 rows, FWB with 1 row; 2 cells per row.
    assert varmap.size == PropVarMap.closed_form_count(gewirth.signature, TWO_WORLDS) == 85


def test_every_primary_variable_is_described(gewirth):
    varmap = PropVarMap.build(gewirth.signature, TWO_WORLDS)
    names = [name for _, name in varmap.cells()]
    assert len(names) == len(set(names)) == varmap.size
    assert names[0] == "av[w1][w1]"
    assert "FWB[e1][c1w2]" in names


def test_grounding_is_deterministic(one_constant):
    formula = goal(one_constant, "validD A => valid A")
    first = ground(one_constant, formula, REFUTE, TWO_WORLDS)
    second = ground(one_constant, formula, REFUTE, TWO_WORLDS)
    assert first.clauses == second.clauses
    assert emit(first) == emit(second)


def test_scope_budget_is_enforced(gewirth):
    with pytest.raises(ScopeTooLarge):
        ground(gewirth, None, SATISFY, Scope(2, 2, 2), cell_budget=1000)


def test_unknown_mode_is_rejected(empty_theory):
    with pytest.raises(ValueError):
        ground(empty_theory, None, "prove", TWO_WORLDS)


def test_dimacs_export_parses_back(one_constant):
    problem = ground(one_constant, goal(one_constant, "validD A => valid A"), REFUTE, TWO_WORLDS)
    text = emit(problem)
    assert "c var 1 av[w1][w1]" in text
    parsed = parse_dimacs(text)
    assert parsed.num_vars == problem.num_vars
    assert parsed.clauses == tuple(tuple(clause) for clause in problem.clauses)
    assert solve(parsed).verdict == solve(problem).verdict


def test_reconstructed_countermodel_separates_indexical_and_classical_validity(one_constant):
    problem = ground(one_constant, goal(one_constant, "validD A => valid A"), REFUTE, TWO_WORLDS)
    result = solve(problem)
    assert result.is_sat
    model = reconstruct_model(problem, result.assignment)
    evaluator = Evaluator(model)
    assert evaluator.meta(parse_meta("validD A"))
    assert not evaluator.meta(parse_meta("valid A"))
    assert not frame_conditions_check(model)


def test_unit_frame_has_the_reflexive_shape(empty_theory):
    problem = ground(empty_theory, goal(empty_theory, "valid true"), SATISFY, Scope(1, 1, 1))
    result = solve(problem)
    model = reconstruct_model(problem, result.assignment)
    assert model.frame.av == (1,)
    assert model.frame.pv == (1,)
    assert model.frame.ob[0] == 0


def test_assignment_round_trips_through_interpretation(gewirth):
    problem = ground(gewirth, None, SATISFY, TWO_WORLDS)
    result = solve(problem)
    assert result.is_sat
    model = reconstruct_model(problem, result.assignment)
    evaluator = Evaluator(model, gewirth.definitions)
    assert all(evaluator.meta(axiom.formula) for axiom in gewirth.axioms)
    assert reconstruct_model(problem, assignment_for(problem, model)) == model


def test_partial_assignment_is_rejected(empty_theory):
    problem = ground(empty_theory, None, SATISFY, Scope(1, 1, 1))
    with pytest.raises(IncompleteAssignment):
        reconstruct_model(problem, {1: True})


def test_gewirth_theory_has_no_one_world_model(gewirth):
    assert solve(ground(gewirth, None, SATISFY, Scope(1, 1, 1))).is_unsat


def test_pgc_is_entailed_at_two_worlds(gewirth):
    problem = ground(gewirth, gewirth.goal("PGC").formula, REFUTE, TWO_WORLDS)
    assert solve(problem).is_unsat


def test_symmetry_breaking_keeps_satisfiability(one_constant):
    formula = goal(one_constant, "validD A => valid A")
    plain = solve(ground(one_constant, formula, REFUTE, Scope(1, 1, 2)))
    broken = solve(ground(one_constant, formula, REFUTE, Scope(1, 1, 2), symmetry_breaking=True))
    assert plain.verdict == broken.verdict


def test_same_named_binders_of_different_sorts_ground_separately():
    theory = theory_from(
        "consts G : e => m\n"
        "axiom ax : validD (forall x:e. G x)\n"
        "goal g : valid (forall x:m. x)\n"
    )
    problem = ground(theory, theory.goal("g").formula, REFUTE, TWO_WORLDS)
    result = solve(problem)
    assert result.is_sat
    model = reconstruct_model(problem, result.assignment)
    evaluator = Evaluator(model)
    assert evaluator.meta(theory.theory.axiom("ax").formula)
    assert not evaluator.meta(theory.goal("g").formula)
