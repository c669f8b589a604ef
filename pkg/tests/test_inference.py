import pytest

from src.exceptions import WitnessError
from src.inference import closure, fact_text
from src.model import satisfies_ci
from src.parser import parse_axiom, parse_tbox

ADULT_WOLF = parse_axiom("ci (and Adult Wolf) <= Dangerous")
PLAN = parse_axiom("ci Plan <= (some specifies Building)", intra={"specifies"})


class TestRuleExtrapolation:
    def test_derives_the_wolf_rule(self, example1):
        result = closure(example1)
        derivation = result.find(ADULT_WOLF)
        assert derivation is not None
        assert derivation.rule == "rule_extrapolation"
        assert {"lift_conjunction", "rule_extrapolation"} <= derivation.rules_used()

    def test_side_conditions_are_assumed(self, example1):
        derivation = closure(example1).find(ADULT_WOLF)
        assert [s.source for s in derivation.side_conditions] == ["assumed"]

    def test_with_witness(self, example1, zoo):
        result = closure(example1, witness=zoo)
        assert ADULT_WOLF in result
        assert satisfies_ci(zoo, ADULT_WOLF.sub, ADULT_WOLF.sup)

    def test_weak_mode_cannot_extrapolate(self, example1):
        result = closure(example1, mode="weak")
        assert ADULT_WOLF not in result
        assert not {d.rule for d in result} & {"lift_conjunction", "rule_extrapolation", "c_transitivity"}

    def test_explain(self, example1):
        lines = closure(example1).find(ADULT_WOLF).explain()
        assert lines[0].endswith("ci (and Adult Wolf) <= Dangerous  (rule_extrapolation)  "
                                 "given nonempty (and Cat Young) [assumed]")
        assert any("(asserted)" in line for line in lines[1:])


class TestRuleTranslation:
    def test_derives_through_intra_role(self, example2, spec):
        result = closure(example2, witness=spec)
        derivation = result.find(PLAN)
        assert derivation is not None
        assert {"lift_existential", "rule_translation"} <= derivation.rules_used()
        assert satisfies_ci(spec, PLAN.sub, PLAN.sup)

    def test_symmetric_forms(self, example2):
        result = closure(example2)
        assert parse_axiom("ana Plan : Program :: Building : Software") in result
        assert parse_axiom("ana Software : Building :: Program : Plan") in result

    def test_holds_in_weak_mode(self, example2):
        assert PLAN in closure(example2, mode="weak")


class TestBounds:
    def test_fact_budget(self, example1):
        result = closure(example1, max_facts=8)
        assert result.bound_reached
        assert len(result) == 8

    def test_empty_tbox(self):
        result = closure(parse_tbox("natural A\n"))
        assert len(result) == 0
        assert result.rounds == 0

    def test_report(self, example1):
        result = closure(example1)
        report = result.report()
        assert report.derived == len(result.derived)
        assert len(report.facts) == len(result)
        assert fact_text(ADULT_WOLF) in {f.conclusion for f in report.facts}

    def test_unknown_mode(self, example1):
        with pytest.raises(ValueError):
            closure(example1, mode="medium")


def test_witness_must_be_a_model(zoo):
    tbox = parse_tbox("natural Cat, Dog\nci Cat <= Dog\n")
    with pytest.raises(WitnessError):
        closure(tbox, witness=zoo)
