import pytest

from src.corpus import find_outcome, run_corpus, run_corpus_entry
from src.concepts import Atom
from src.documents import list_corpus, load_interpretation, read_corpus_entry
from src.model import is_nonempty
from src.propositions import check_proposition
from src.translations import mu


def test_every_entry_is_reproduced():
    results = run_corpus()
    assert len(results) == len(list_corpus()) == 9
    assert [r.id for r in results if not r.reproduced] == []


@pytest.mark.parametrize("entry, proposition, strength", [
    ("ce-desid-1", "ap-rule-extrapolation", "standard"),
    ("ce-desid-2", "ap-lift-conjunction", "standard"),
    ("ce-extrap-weak", "rule-extrapolation", "strong"),
    ("ce-liftconj-weak", "lift-conjunction", "standard"),
    ("ce-ctrans-weak-1", "c-transitivity", "standard"),
])
def test_premises_hold_and_conclusion_fails(entry, proposition, strength):
    outcome = find_outcome(run_corpus_entry(entry), proposition, strength)
    assert outcome is not None
    assert outcome.premises_hold
    assert not outcome.conclusion_holds


def test_side_condition_is_needed():
    # without the transposed assertion the conclusion fails; with it the premises do not hold
    result = run_corpus_entry("ce-extrap-side")
    partial = find_outcome(result, "rule-extrapolation-partial", "standard")
    full = find_outcome(result, "rule-extrapolation", "standard")
    assert partial.premises_hold and not partial.conclusion_holds
    assert not full.premises_hold


def test_missing_outcome():
    assert find_outcome(run_corpus_entry("ce-desid-1"), "symmetry", "standard") is None


def test_weak_extrapolation_needs_wider_domains():
    # one feature per domain: φ(A1) = {f, g} is the whole feature set, so A1 is empty
    entry = read_corpus_entry("ce-extrap-weak")
    narrow = load_interpretation({
        "features": ["f", "g"],
        "domains": [["f"], ["g"]],
        "forbidden": ["ALL"],
        "analogous": [[1, 2]],
        "bijections": {"1->2": {"f": "g"}},
        "mode": "weak",
        "natural_atoms": {
            "A1": ["f", "g"], "A2": ["f", "g"], "A3": ["f"], "A4": ["f"],
            "B1": ["f"], "B2": ["g"], "B3": ["f"], "B4": ["g"],
        },
    })
    assert not is_nonempty(narrow, Atom("A1"))
    assert len(mu(narrow, Atom("A1"), Atom("A2"))) == 2
    for check in entry.checks:
        verdict = check_proposition(check.proposition, narrow, check.bindings, check.strength)
        assert not verdict.premises_hold

    wide = load_interpretation(entry.interpretation)
    assert is_nonempty(wide, Atom("A1"))
    assert len(mu(wide, Atom("A1"), Atom("A2"))) == 1
