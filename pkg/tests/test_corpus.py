import json

import pytest

import deonmf.check as check_module
from deonmf.config import CheckerConfig
from deonmf.corpus.manifest import BOUNDED_VALID, KINDS, CorpusEntry, load_corpus, manifest_entries
from deonmf.corpus.runner import failed_entries, run_corpus, run_entry
from deonmf.errors import ConfigError
from deonmf.report import Outcome
from deonmf.semantics.conditions import DEFAULT_CONDITIONS, SEM_5AB
from deonmf.semantics.scope import Scope
from deonmf.solver.result import SolverResult, SolverStats

from conftest import theory_from

FAST = [
    "indexical-weaker",
    "no-deontic-collapse",
    "no-alethic-collapse",
    "necessitation-fails-boxA",
    "gewirth-consistent",
    "gewirth-needs-two-worlds",
    "pgc-bounded",
]

PREMISES = ["pgc-needs-explGoodness3", "pgc-needs-OIOAC"]

SLOW = [
    "valid-implies-indexical",
    "necLD",
    "kants-law",
    "recognizeOtherPPA-bounded",
    "interferenceWithFWB",
    "pgc-bounded-two-contexts",
    "step-1-2",
    "step-23-4",
    "step-4-5",
    "step-5-13",
    "pgc-bounded-full",
    "pgc-indexical",
]


def entry_named(entries, name):
    return next(entry for entry in entries if entry.name == name)


def test_manifest_shape(corpus):
    _, entries = corpus
    names = [entry.name for entry in entries]
    assert len(entries) == 21
    assert len(set(names)) == len(names)
    assert sorted(names) == sorted(FAST + PREMISES + SLOW)
    assert all(entry.kind in KINDS for entry in entries)
    assert all(entry.anchor for entry in entries)
    assert all(entry.scope == Scope(2, 2, 2) for entry in entries if entry.kind == BOUNDED_VALID)


def test_reconstructed_entries_are_marked(corpus):
    _, entries = corpus
    assert entry_named(entries, "pgc-bounded").reconstructed
    assert not entry_named(entries, "indexical-weaker").reconstructed
    assert entry_named(entries, "pgc-bounded-full").allow_timeout


@pytest.mark.parametrize("name", FAST)
def test_fast_entries_pass(corpus, name):
    theory, entries = corpus
    report = run_entry(theory, entry_named(entries, name), CheckerConfig(budget=120))
    assert report.outcome is Outcome.PASS, report.detail


def test_indexical_countermodel_has_the_expected_shape(corpus):
    theory, entries = corpus
    report = run_entry(theory, entry_named(entries, "indexical-weaker"), CheckerConfig(budget=120))
    model = report.model
    assert model is not None
    assert model.scope == Scope(1, 1, 2)
    # A holds at the context's own world and nowhere else.
    assert model.table("A").cells == (1 << model.frame.world_of[0],)


@pytest.mark.parametrize("name", PREMISES)
def test_dropping_a_premise_is_never_a_failure(corpus, name):
    theory, entries = corpus
    report = run_entry(theory, entry_named(entries, name), CheckerConfig(budget=120))
    assert report.outcome in (Outcome.PASS, Outcome.INCONCLUSIVE)
    if report.outcome is Outcome.PASS:
        assert report.model is not None


@pytest.mark.slow
def test_scope_two_entries(corpus):
    theory, entries = corpus
    report = run_corpus(theory, entries, CheckerConfig(budget=3600), only=SLOW)
    assert report.ok, failed_entries(report)
    for entry in report.entries:
        assert entry.outcome in (Outcome.PASS, Outcome.TIMEOUT)


def test_report_follows_manifest_order(corpus):
    theory, entries = corpus
    report = run_corpus(theory, entries, CheckerConfig(budget=120), only=["gewirth-consistent", "indexical-weaker"])
    assert [entry.name for entry in report.entries] == ["indexical-weaker", "gewirth-consistent"]
    assert report.ok
    assert report.totals()["pass"] == 2


def test_deterministic_runs_produce_identical_json(corpus):
    theory, entries = corpus
    config = CheckerConfig(budget=120, deterministic=True)
    only = ["indexical-weaker", "no-alethic-collapse", "gewirth-needs-two-worlds"]
    first = run_corpus(theory, entries, config, only=only).to_json(include_timing=False)
    second = run_corpus(theory, entries, config, only=only).to_json(include_timing=False)
    assert first == second
    payload = json.loads(first)
    assert payload["ok"] is True
    assert all("elapsed" not in entry for entry in payload["entries"])


def test_unknown_entry_is_a_configuration_error(corpus):
    theory, entries = corpus
    with pytest.raises(ConfigError, match="nosuch"):
        run_corpus(theory, entries, only=["nosuch"])


def test_load_bearing_conditions_cannot_be_dropped(corpus):
    theory, entries = corpus
    config = CheckerConfig(budget=10, conditions=DEFAULT_CONDITIONS.toggled(disable=[SEM_5AB]))
    with pytest.raises(ConfigError):
        run_corpus(theory, entries, config, only=["kants-law"])


# Outcomes on a small hand-written manifest -------------------------------------

FLIPS = """
consts A : m
axiom fixA : valid A
goal wrong [kind = countermodel] [expect = unsat] [scope = c=1,e=1,w=2] [axioms = none] [anchor = "flip"] :
  validD A => valid A
goal premise-used [kind = necessary-premise] [scope = c=1,e=1,w=1] [without = fixA] [anchor = "premise"] :
  valid A
goal premise-idle [kind = necessary-premise] [scope = c=1,e=1,w=2] [without = fixA] [anchor = "idle"] :
  valid (A | ~A)
goal not-an-entry : valid A
"""


@pytest.fixture
def flips():
    theory = theory_from(FLIPS)
    return theory, manifest_entries(theory)


def test_goals_without_kind_are_not_entries(flips):
    _, entries = flips
    assert [entry.name for entry in entries] == ["wrong", "premise-used", "premise-idle"]


def test_contrary_verdict_fails_the_entry(flips):
    theory, entries = flips
    report = run_corpus(theory, entries, CheckerConfig(budget=30))
    outcomes = {entry.name: entry.outcome for entry in report.entries}
    assert outcomes == {
        "wrong": Outcome.FAIL,
        "premise-used": Outcome.PASS,
        "premise-idle": Outcome.INCONCLUSIVE,
    }
    assert not report.ok
    assert failed_entries(report) == ["wrong"]
    assert "expected unsat, got sat" in report.entries[0].detail


@pytest.mark.parametrize(
    "attributes, message",
    [
        ("[kind = proven] [scope = w=1] [anchor = \"a\"]", "unknown kind"),
        ("[kind = entailed] [expect = maybe] [scope = w=1] [anchor = \"a\"]", "expect"),
        ("[kind = entailed] [anchor = \"a\"]", "scope"),
        ("[kind = entailed] [scope = c=0] [anchor = \"a\"]", "entry 'g'"),
        ("[kind = entailed] [scope = w=1]", "anchor"),
        ("[kind = necessary-premise] [scope = w=1] [anchor = \"a\"]", "without"),
        ("[kind = entailed] [scope = w=1] [anchor = \"a\"] [allow-timeout = yes]", "allow-timeout"),
    ],
)
def test_malformed_entries_are_rejected(attributes, message):
    theory = theory_from(f"consts A : m\ngoal g {attributes} : valid A")
    with pytest.raises(ConfigError, match=message):
        CorpusEntry.from_goal(theory.goal("g"))


def test_manifest_naming_an_unknown_axiom_is_rejected(tmp_path):
    manifest = tmp_path / "manifest.dl"
    manifest.write_text('goal g [kind = entailed] [scope = w=1] [axioms = nosuch] [anchor = "a"] : valid true\n')
    with pytest.raises(ConfigError, match="nosuch"):
        load_corpus(manifest_path=manifest)


def test_tolerated_timeout_records_the_largest_completed_scope(monkeypatch):
    theory = theory_from(
        "consts A : m\n"
        'goal slow-entry [kind = entailed] [scope = c=2,e=1,w=2] [axioms = none] [allow-timeout = true] [anchor = "t"] :\n'
        "  valid A => validD A\n"
    )
    (entry,) = manifest_entries(theory)
    assert entry.deepening

    real_solve = check_module.solve

    def solve_one_context(problem, *args, **kwargs):
        if problem.scope.n_c > 1:
            return SolverResult.timeout(SolverStats())
        return real_solve(problem, *args, **kwargs)

    monkeypatch.setattr(check_module, "solve", solve_one_context)
    report = run_entry(theory, entry, CheckerConfig(budget=60))
    assert report.outcome is Outcome.TIMEOUT
    assert report.scope == Scope(1, 1, 2)
    assert report.detail == "bounded-valid up to (1,1,2) (timeout above)"
