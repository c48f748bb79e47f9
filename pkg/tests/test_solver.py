from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from deonmf.errors import ParseError
from deonmf.grounder.encoder import REFUTE, SATISFY, ground
from deonmf.grounder.reconstruct import reconstruct_model
from deonmf.semantics.canonical import canonical_classes
from deonmf.semantics.oracle import naive_models
from deonmf.semantics.scope import Scope
from deonmf.solver.dimacs import CnfProblem, parse_dimacs
from deonmf.solver.dpll import Solver, solve
from deonmf.solver.enumerate import enumerate_models
from deonmf.solver.result import Verdict
from deonmf.surface.checker import check_meta
from deonmf.surface.parser import parse_meta

from conftest import theory_from

MAX_VARS = 6

literals = st.integers(min_value=1, max_value=MAX_VARS).flatmap(lambda v: st.sampled_from([v, -v]))
clause_lists = st.lists(st.lists(literals, min_size=1, max_size=3), max_size=24)


def brute_force_models(clauses, num_vars=MAX_VARS):
    count = 0
    for bits in product((False, True), repeat=num_vars):
        if all(any(bits[abs(lit) - 1] == (lit > 0) for lit in clause) for clause in clauses):
            count += 1
    return count


def satisfies(assignment, clauses):
    return all(any(assignment[abs(lit)] == (lit > 0) for lit in clause) for clause in clauses)


@given(clause_lists, st.booleans())
@settings(max_examples=200)
def test_verdict_agrees_with_brute_force(clauses, learning):
    problem = CnfProblem(MAX_VARS, tuple(tuple(clause) for clause in clauses))
    result = solve(problem, learning=learning)
    assert result.is_sat == (brute_force_models(clauses) > 0)
    if result.is_sat:
        assert satisfies(result.assignment, clauses)


@given(clause_lists, st.randoms(use_true_random=False))
def test_unit_propagation_is_confluent(clauses, rng):
    shuffled = [list(clause) for clause in clauses]
    rng.shuffle(shuffled)
    for clause in shuffled:
        rng.shuffle(clause)
    first = Solver(MAX_VARS, clauses).propagate_only()
    second = Solver(MAX_VARS, shuffled).propagate_only()
    assert first == second


def test_contradictory_units_are_unsat():
    result = solve(CnfProblem(1, ((1,), (-1,))))
    assert result.verdict is Verdict.UNSAT
    assert result.assignment is None


def test_empty_clause_is_unsat():
    assert solve(CnfProblem(2, ((1, 2), ()))).is_unsat


def parity_problem():
    # x1 xor x2 xor x3 = 1
    clauses = tuple(
        tuple(-v if bit else v for v, bit in zip((1, 2, 3), bits))
        for bits in product((False, True), repeat=3)
        if sum(bits) % 2 == 0
    )
    return CnfProblem(3, clauses)


def test_parity_constraint_has_four_models():
    problem = parity_problem()
    assert brute_force_models(problem.clauses, 3) == 4


def test_deterministic_runs_are_reproducible():
    problem = parity_problem()
    first = solve(problem, deterministic=True)
    second = solve(problem, deterministic=True)
    assert first.assignment == second.assignment
    assert first.stats.to_payload(include_timing=False) == second.stats.to_payload(include_timing=False)


def pigeonhole(pigeons, holes):
    def var(pigeon, hole):
        return pigeon * holes + hole + 1

    clauses = [tuple(var(p, hole) for hole in range(holes)) for p in range(pigeons)]
    for hole in range(holes):
        for p in range(pigeons):
            for q in range(p + 1, pigeons):
                clauses.append((-var(p, hole), -var(q, hole)))
    return CnfProblem(pigeons * holes, tuple(clauses))


def test_learning_and_chronological_backtracking_agree_on_pigeonhole():
    problem = pigeonhole(3, 2)
    assert solve(problem, learning=True).is_unsat
    assert solve(problem, learning=False).is_unsat


@pytest.mark.parametrize("learning", [True, False])
def test_spent_budget_is_noticed_at_the_first_conflict(learning):
    result = solve(pigeonhole(3, 2), budget=0, learning=learning)
    assert result.verdict is Verdict.TIMEOUT
    assert result.stats.conflicts == 1


def test_parallel_cubes_agree_with_single_worker():
    problem = parity_problem()
    assert solve(problem, deterministic=False, jobs=2).is_sat
    unsat = CnfProblem(2, ((1, 2), (-1, 2), (1, -2), (-1, -2)))
    assert solve(unsat, deterministic=False, jobs=2).is_unsat


def test_stats_render_as_key_value_lines():
    result = solve(parity_problem())
    lines = result.stats.lines(include_timing=False)
    assert lines[0].startswith("decisions=")
    assert all("=" in line for line in lines)
    assert not any(line.startswith("elapsed=") for line in lines)


def test_dimacs_reader():
    problem = parse_dimacs("c comment\np cnf 3 2\n1 -2 0\n2 3\n0\n")
    assert problem == CnfProblem(3, ((1, -2), (2, 3)))
    with pytest.raises(ParseError):
        parse_dimacs("p cnf 1 1\n2 0\n")
    with pytest.raises(ParseError):
        parse_dimacs("1 0\n")


# Enumeration ----------------------------------------------------------------


def test_enumeration_of_the_unit_frames(empty_theory):
    formula = check_meta(empty_theory, parse_meta("valid true"))
    problem = ground(empty_theory, formula, SATISFY, Scope(1, 1, 1))
    assert len(enumerate_models(problem, 100, canonicalize=True)) == 2
    assert len(enumerate_models(problem, 100)) == 2


def test_enumeration_of_an_unsatisfiable_problem_is_empty(empty_theory):
    formula = check_meta(empty_theory, parse_meta("valid true"))
    problem = ground(empty_theory, formula, REFUTE, Scope(1, 1, 1))
    assert enumerate_models(problem, 10) == []


def test_first_enumerated_model_is_the_solver_model(gewirth):
    problem = ground(gewirth, None, SATISFY, Scope(1, 1, 2))
    models = enumerate_models(problem, 1)
    assert len(models) == 1
    assert models[0] == dict(solve(problem).assignment)


def test_enumeration_limit_must_be_positive(empty_theory):
    problem = ground(empty_theory, None, SATISFY, Scope(1, 1, 1))
    with pytest.raises(ValueError):
        enumerate_models(problem, 0)


ONE_CONSTANT_QUERIES = [
    "valid true",
    "valid A => validD A",
    "validD A => valid A",
    "validD (A -> Oa A)",
    "validD (A -> boxA A)",
    "validD A => validD (boxA A)",
    "validD A => validD (boxD A)",
    "valid (Oi A) => validD (diaP A)",
    "valid (forall phi:m. Oi phi -> diaP phi)",
    "validD (forall phi:m. Oi phi -> Oi (diaA phi))",
    "valid (O<A | true>) => validD (diaA A)",
    "forall C:c. validAt A C => validCtx A C",
]

# Gewirth goals over signatures small enough to enumerate: PPA and the claim
# right to FWB become plain properties, interference is fixed to FWB.
FWB_ONLY = "consts FWB : p\n"
FWB_CONTINGENT = (
    FWB_ONLY
    + "axiom explicationFWB2 : validD (forall a:e. diaP (FWB a))\n"
    + "axiom explicationFWB3 : validD (forall a:e. diaP ~(FWB a))\n"
)
PPA_ONLY = "consts PPA : p\n"
ESSENTIAL_PPA = PPA_ONLY + "axiom essentialPPA : validD (forall a:e. PPA a -> boxD (PPA a))\n"
PPA_AND_RIGHT = "consts PPA, RightToFWB : p\n"
INTERFERENCE = (
    "consts FWB : p\n"
    "consts InterferesWithFWB : e => e => m\n"
    "axiom explicationInterference : valid (forall a:e. (exists b:e. InterferesWithFWB b a) <-> ~diaA (FWB a))\n"
)

REDUCED_QUERIES = [
    pytest.param(FWB_CONTINGENT, "valid true", id="axiomsConsistent"),
    pytest.param(FWB_ONLY, "validD (forall a:e. diaP (FWB a) & diaP ~(FWB a))", id="fwb-contingent"),
    pytest.param(
        ESSENTIAL_PPA,
        "forall C, D:c. validAt (PPA (Agent D)) D => validAt (PPA (Agent D)) C",
        id="recognizeOtherPPA",
    ),
    pytest.param(PPA_ONLY, "validD (forall a:e. PPA a -> boxD (PPA a))", id="essentialPPA"),
    pytest.param(
        PPA_AND_RIGHT,
        "forall C:c. validAt (PPA (Agent C) -> RightToFWB (Agent C)) C",
        id="PGC",
        marks=pytest.mark.slow,
    ),
    pytest.param(
        PPA_AND_RIGHT,
        "validD (forall x:e. PPA x -> RightToFWB x)",
        id="PGC-indexical",
        marks=pytest.mark.slow,
    ),
    pytest.param(
        PPA_AND_RIGHT,
        "(forall C:c. validAt (PPA (Agent C)) C => validAt (RightToFWB (Agent C)) C)"
        " => (forall C:c. validAt (PPA (Agent C) -> RightToFWB (Agent C)) C)",
        id="step-5-13",
        marks=pytest.mark.slow,
    ),
    pytest.param(
        INTERFERENCE,
        "valid (forall a:e. ~diaA (FWB a) -> (exists b:e. InterferesWithFWB b a))",
        id="InterferenceWithFWB",
        marks=pytest.mark.slow,
    ),
]


def assert_enumerations_agree(theory, text, mode):
    formula = check_meta(theory, parse_meta(text))
    for scope in (Scope(1, 1, 1), Scope(1, 1, 2)):
        problem = ground(theory, formula, mode, scope)
        found = [reconstruct_model(problem, assignment) for assignment in enumerate_models(problem, 10_000, canonicalize=True)]
        expected = naive_models(theory, formula, mode, scope)
        assert len(canonical_classes(found)) == len(found)
        assert set(canonical_classes(found)) == set(expected)


def test_battery_size():
    assert len(ONE_CONSTANT_QUERIES) + len(REDUCED_QUERIES) == 20


@pytest.mark.parametrize("text", ONE_CONSTANT_QUERIES)
@pytest.mark.parametrize("mode", [SATISFY, REFUTE])
def test_solver_enumeration_matches_naive_enumeration(one_constant, text, mode):
    assert_enumerations_agree(one_constant, text, mode)


@pytest.mark.parametrize("theory_text, text", REDUCED_QUERIES)
@pytest.mark.parametrize("mode", [SATISFY, REFUTE])
def test_gewirth_goals_match_naive_enumeration_on_reduced_signatures(theory_text, text, mode):
    assert_enumerations_agree(theory_from(theory_text), text, mode)
