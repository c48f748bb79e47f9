import time

import pytest
from hypothesis import given, settings, strategies as st

from deonmf.corpus.manifest import THEORY_FILE, bundled_text
from deonmf.errors import ArityError, DuplicateName, ParseError, SortError, SortMismatch, UnboundVariable, UnknownSort
from deonmf.surface import ast
from deonmf.surface.checker import check_char, check_meta
from deonmf.surface.parser import parse_formula, parse_meta, parse_sort, parse_theory
from deonmf.surface.printer import print_formula, print_meta, print_theory
from deonmf.surface.sorts import C, E, M, P, Fun
from deonmf.surface.substitution import alpha_equivalent, alpha_normalize, substitute

from conftest import theory_from

BOUND = ("x", "y")

leaves = st.sampled_from(
    [
        ast.Const("A"),
        ast.Const("B"),
        ast.Var("x"),
        ast.Var("y"),
        ast.Top(),
        ast.Bottom(),
        ast.Lit(M, 5),
    ]
)


def _extend(children):
    return st.one_of(
        st.builds(lambda op, body: op(body), st.sampled_from(ast.UNARY_OPS), children),
        st.builds(lambda op, left, right: op(left, right), st.sampled_from(ast.BINARY_OPS), children, children),
        st.builds(ast.ObDyadic, children, children),
        st.builds(
            lambda op, var, body: op(var, M, body),
            st.sampled_from(ast.BINDERS),
            st.sampled_from(BOUND),
            children,
        ),
    )


formulas = st.recursive(leaves, _extend, max_leaves=12)


@given(formulas)
@settings(max_examples=300)
def test_print_then_parse_is_identity(formula):
    assert parse_formula(print_formula(formula), bound=BOUND) == formula


@given(formulas)
def test_alpha_normalize_is_idempotent(formula):
    once = alpha_normalize(formula)
    assert alpha_normalize(once) == once


@given(formulas)
def test_substituting_an_absent_variable_changes_nothing(formula):
    assert substitute(formula, "z", ast.Const("B")) is formula


def test_precedence_and_binds_tighter_than_or_and_implication_is_right_associative():
    formula = parse_formula("A & B | ~A -> B -> A")
    a, b = ast.Const("A"), ast.Const("B")
    assert formula == ast.Imp(ast.Or(ast.And(a, b), ast.Not(a)), ast.Imp(b, a))


def test_dyadic_obligation_body_and_condition():
    formula = parse_formula("O<A & B | A | B>")
    a, b = ast.Const("A"), ast.Const("B")
    assert formula == ast.ObDyadic(ast.And(a, b), ast.Or(a, b))


def test_obligation_opener_is_one_token():
    # a constant named O stays usable, but O directly followed by < always opens an obligation
    a, b = ast.Const("A"), ast.Const("B")
    assert parse_formula("O<A | B>") == ast.ObDyadic(a, b)
    assert parse_formula("O A") == ast.App(ast.Const("O"), a)
    with pytest.raises(ParseError) as info:
        parse_formula("O <A | B>")
    assert (info.value.line, info.value.column) == (1, 3)


def test_sexpr_forms_match_infix():
    assert parse_formula("(and A B A)") == parse_formula("A & B & A")
    assert parse_formula("(ob A (not B))") == parse_formula("O<A | ~B>")


def test_quantifier_binds_and_application_is_left_nested():
    formula = parse_formula("forall a:e, P:m. Good a P")
    assert isinstance(formula, ast.Forall) and formula.var == "a" and formula.var_sort == E
    inner = formula.body
    assert isinstance(inner, ast.Forall) and inner.var_sort == M
    assert inner.body == ast.App(ast.App(ast.Const("Good"), ast.Var("a")), ast.Var("P"))


def test_meta_formula_structure():
    meta = parse_meta("forall C, D:c. validAt A D => !validCtx A C && validD A")
    assert isinstance(meta, ast.MetaForallCtx) and meta.var == "C"
    assert isinstance(meta.body, ast.MetaForallCtx) and meta.body.var == "D"
    body = meta.body.body
    assert isinstance(body, ast.MetaImp)
    assert body.left == ast.AtCtx(ast.Const("A"), ast.Var("D"))
    assert isinstance(body.right, ast.MetaAnd)
    assert isinstance(body.right.left, ast.MetaNot)


def test_meta_round_trip():
    text = "forall C:c. validAt (PPA (Agent C)) C => valid (A -> B) && !validD A"
    meta = parse_meta(text)
    assert parse_meta(print_meta(meta)) == meta


def test_parse_error_reports_position_and_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse_theory("consts A : m\naxiom ax : valid (A &)")
    assert info.value.line == 2
    assert info.value.column == 22
    assert "'('" in info.value.expected


def test_sort_parsing_expands_aliases():
    assert parse_sort("e => m => m") == Fun(E, Fun(M, M))
    assert parse_sort("p") == P
    with pytest.raises(UnknownSort):
        parse_sort("q")


def test_duplicate_constant_is_rejected():
    with pytest.raises(DuplicateName):
        parse_theory("consts A : m\nconsts A : m")


def test_theory_round_trips_through_printer(gewirth):
    text = print_theory(gewirth.theory)
    again = parse_theory(text)
    assert print_theory(again) == text
    assert [axiom.name for axiom in again.axioms] == [axiom.name for axiom in gewirth.axioms]


def test_gewirth_signature_sorts(gewirth):
    assert gewirth.signature["Good"] == Fun(E, Fun(M, M))
    assert gewirth.signature["NeedsForPurpose"] == Fun(E, Fun(P, Fun(M, M)))
    assert gewirth.signature["FWB"] == P
    assert gewirth.definition_sort("RightTo") == Fun(E, Fun(P, M))
    assert len(gewirth.axioms) == 9
    assert sorted(gewirth.definitions) == ["PPA", "RightTo"]
    assert [goal.name for goal in gewirth.goals] == [
        "recognizeOtherPPA",
        "KantsLaw",
        "InterferenceWithFWB",
        "axiomsConsistent",
        "PGC",
        "PGC-indexical",
    ]


def test_bundled_theory_parses_quickly():
    text = bundled_text(THEORY_FILE)
    timings = []
    for _ in range(3):
        start = time.perf_counter()
        theory = parse_theory(text)
        timings.append(time.perf_counter() - start)
    assert (len(theory.axioms), len(theory.definitions), len(theory.goals)) == (9, 2, 6)
    assert min(timings) < 0.05


def test_property_in_individual_position_is_a_sort_mismatch(gewirth):
    formula = parse_formula("Good FWB a", bound=("a",))
    with pytest.raises(SortMismatch) as info:
        check_char(gewirth, formula, {"a": E})
    assert info.value.expected == "e"
    assert info.value.found == "p"


def test_applying_an_individual_is_an_arity_error(gewirth):
    with pytest.raises(ArityError):
        check_char(gewirth, parse_formula("Agent d d", bound=("d",)), {"d": C})


def test_undeclared_constant_is_unbound(gewirth):
    with pytest.raises(UnboundVariable):
        check_meta(gewirth, parse_meta("valid Foo"))


def test_binder_may_not_shadow_a_constant(gewirth):
    with pytest.raises(SortError):
        check_meta(gewirth, parse_meta("valid (forall FWB:p. FWB Agent)"))


def test_checked_subterms_carry_sorts(gewirth):
    checked = check_char(gewirth, parse_formula("FWB a", bound=("a",)), {"a": E})
    assert checked.sort == M
    assert checked.fun.sort == P


def test_meta_formula_must_have_character_body():
    theory = theory_from("consts A : m\nconsts x : e")
    with pytest.raises(SortMismatch):
        check_meta(theory, parse_meta("valid x"))


def test_substitution_into_application():
    formula = parse_formula("Good a P", bound=("a", "P"))
    result = substitute(formula, "P", parse_formula("FWB a", bound=("a",)))
    assert result == parse_formula("Good a (FWB a)", bound=("a",))


def test_substitution_avoids_capture():
    formula = parse_formula("forall b:e. InterferesWith b phi", bound=("phi",))
    result = substitute(formula, "phi", parse_formula("Good b A", bound=("b",)))
    assert isinstance(result, ast.Forall) and result.var != "b"
    assert "b" in ast.free_vars(result)
    expected = parse_formula("forall z:e. InterferesWith z (Good b A)", bound=("b",))
    assert alpha_equivalent(result, expected)


def test_alpha_equivalence_ignores_bound_names_only():
    left = parse_formula("forall x:m. x -> A")
    assert alpha_equivalent(left, parse_formula("forall y:m. y -> A"))
    assert not alpha_equivalent(left, parse_formula("forall y:m. y -> B"))
