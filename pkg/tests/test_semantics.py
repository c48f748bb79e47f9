import pytest
from hypothesis import given, strategies as st

from deonmf.errors import ConfigError
from deonmf.semantics.canonical import apply_renaming, canonical_form, isomorphic, renamings
from deonmf.semantics.conditions import (
    CONDITION_NAMES,
    DEFAULT_CONDITIONS,
    OB_DOWN,
    SEM_5AB,
    ConditionSet,
    frame_conditions_check,
)
from deonmf.semantics.evaluator import Evaluator, eval_char, eval_meta
from deonmf.semantics.frame import Frame, Interpretation, Table
from deonmf.semantics.oracle import count_frames
from deonmf.semantics.render import model_payload, render_text
from deonmf.semantics.scope import Scope, scopes_up_to
from deonmf.semantics.universe import value_universe
from deonmf.surface import ast
from deonmf.surface.parser import parse_meta
from deonmf.surface.sorts import M, P, W

from conftest import frames_at

TWO_WORLDS = Scope(1, 1, 2)


def with_constant(frame: Frame, mask: int) -> Interpretation:
    return Interpretation(frame, (("A", Table((), (mask,))),))


two_world_models = st.builds(
    with_constant,
    st.sampled_from(frames_at(1, 1, 2)),
    st.integers(min_value=0, max_value=3),
)


def holds(model: Interpretation, text: str) -> bool:
    return Evaluator(model).meta(parse_meta(text))


# Scopes -------------------------------------------------------------------


def test_scope_parse_defaults_missing_keys():
    assert Scope.parse("c=2,w=3") == Scope(2, 1, 3)
    assert Scope.parse("") == Scope(1, 1, 1)


@pytest.mark.parametrize("text", ["c=0", "c=1,c=2", "x=1", "c=two", "c"])
def test_scope_parse_rejects_malformed_bounds(text):
    with pytest.raises(ConfigError):
        Scope.parse(text)


def test_scopes_up_to_visits_smallest_first():
    scopes = list(scopes_up_to(Scope(2, 2, 2)))
    assert scopes[0] == Scope(1, 1, 1)
    assert scopes[-1] == Scope(2, 2, 2)
    assert len(scopes) == 8
    sizes = [scope.n_c * scope.n_e * scope.n_w for scope in scopes]
    assert sizes == sorted(sizes)


# Frame conditions ---------------------------------------------------------


def test_frame_counts_at_one_and_two_worlds():
    assert count_frames(Scope(1, 1, 1)) == 2
    assert count_frames(TWO_WORLDS) == 160


def test_5ab_violation_is_reported_with_witness():
    # ob({w1}) contains {w2}, which does not meet {w1}.
    frame = Frame(TWO_WORLDS, av=(1, 2), pv=(3, 3), ob=(0, 1 << 2, 0, 0), world_of=(0,), agent_of=(0,))
    violations = frame_conditions_check(frame)
    assert any(v.condition == SEM_5AB for v in violations)
    assert not frame_conditions_check(frame, DEFAULT_CONDITIONS.toggled(disable=[SEM_5AB, OB_DOWN, "sem-ob-ext", "sem-ob-up"]))


def test_condition_set_toggles_and_round_trips(tmp_path):
    conditions = DEFAULT_CONDITIONS.toggled(disable=[OB_DOWN])
    assert OB_DOWN not in conditions.enabled
    assert ConditionSet.from_dict(conditions.to_dict()) == conditions
    path = tmp_path / "conditions.json"
    path.write_text('{"sem-ob-down": false}', encoding="utf-8")
    assert ConditionSet.from_file(path) == conditions
    assert set(DEFAULT_CONDITIONS.enabled) == set(CONDITION_NAMES)


def test_unknown_or_load_bearing_conditions_are_refused():
    with pytest.raises(ConfigError):
        DEFAULT_CONDITIONS.toggled(disable=["sem-ob-sideways"])
    with pytest.raises(ConfigError):
        DEFAULT_CONDITIONS.toggled(disable=[SEM_5AB]).require_load_bearing()


# Evaluator ----------------------------------------------------------------


@given(two_world_models)
def test_modal_duality(model):
    evaluator = Evaluator(model)
    for box, dia in (("boxA", "diaA"), ("boxP", "diaP")):
        left = evaluator.mask(parse_meta(f"valid ({dia} A)").formula)
        right = evaluator.mask(parse_meta(f"valid (~{box} ~A)").formula)
        assert left == right


@given(two_world_models)
def test_classical_validity_implies_indexical_validity(model):
    assert holds(model, "valid A => validD A")


@given(two_world_models)
def test_a_priori_necessitation(model):
    assert holds(model, "validD A => validD (boxD A)")


@given(st.sampled_from(frames_at(1, 1, 2)))
def test_ought_implies_can(frame):
    assert holds(Interpretation(frame), "valid (forall phi:m. Oi phi -> diaP phi)")


def test_indexical_validity_is_weaker_than_classical_validity():
    # A holds at the context's own world only.
    frame = next(f for f in frames_at(1, 1, 2) if f.world_of == (0,))
    model = with_constant(frame, 0b01)
    assert holds(model, "validD A")
    assert not holds(model, "valid A")
    assert not holds(model, "forall C:c. validCtx A C")


def test_point_and_meta_evaluation_agree():
    frame = next(f for f in frames_at(1, 1, 2) if f.world_of == (0,))
    model = with_constant(frame, 0b01)
    assert eval_char(ast.Const("A"), model, {}, 0, 0)
    assert not eval_char(ast.Const("A"), model, {}, 0, 1)
    assert eval_meta(parse_meta("validD A"), model)
    assert not eval_meta(parse_meta("valid A"), model)


def test_value_universes_are_ordered_and_sized():
    assert value_universe(W, Scope(1, 1, 3)) == [0, 1, 2]
    assert value_universe(M, TWO_WORLDS) == [0, 1, 2, 3]
    assert len(value_universe(P, Scope(1, 2, 2))) == 16


def test_world_and_agent_features_follow_the_frame():
    frame = next(f for f in frames_at(1, 1, 2) if f.world_of == (1,))
    model = with_constant(frame, 0b10)
    assert holds(model, "forall C:c. validAt A C")
    assert holds(model, "validD A")
    assert not holds(model, "forall C:c. validCtx A C")


# Canonical forms ----------------------------------------------------------


@given(two_world_models)
def test_canonical_form_is_invariant_under_renaming(model):
    canonical = canonical_form(model)
    assert canonical_form(canonical) == canonical
    for renaming in renamings(model.scope):
        renamed = apply_renaming(model, renaming)
        assert canonical_form(renamed) == canonical
        assert isomorphic(renamed, model)


def test_renaming_preserves_truth():
    for frame in frames_at(1, 1, 2)[:20]:
        model = with_constant(frame, 0b01)
        for renaming in renamings(model.scope):
            renamed = apply_renaming(model, renaming)
            for text in ("validD A", "valid (A -> boxA A)", "validD (Oi A)"):
                assert holds(model, text) == holds(renamed, text)


def test_rendering_lists_every_carrier():
    model = with_constant(frames_at(1, 1, 2)[0], 0b10)
    text = render_text(model)
    assert "worlds: w1 w2" in text
    assert "A: {c1w2}" in text
    payload = model_payload(model)
    assert payload["scope"] == {"c": 1, "e": 1, "w": 2}
    assert set(payload["av"]) == {"w1", "w2"}
