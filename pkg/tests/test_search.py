import pytest

from src.exceptions import BoundsError, WorkbenchError
from src.model import satisfies_ci
from src.parser import parse_concept, parse_tbox
import src.search
from src.search import CAVEAT, countermodel_search, integer_partitions
from src.translations import satisfies_ana

PROPORTION = parse_tbox("natural A, B, C, D\nana A : B :: C : D\n", source="proportion")
INCLUSION = parse_tbox("natural A, B\nci A <= B\n", source="inclusion")


class TestCountermodels:
    def test_exchange_of_means_is_not_entailed(self):
        outcome = countermodel_search(PROPORTION, "ana A : C :: B : D", max_features=1)
        assert outcome.found
        a, b, c, d = (parse_concept(x) for x in "ABCD")
        assert satisfies_ana(outcome.interpretation, a, b, c, d)
        assert not satisfies_ana(outcome.interpretation, a, c, b, d)

    def test_converse_inclusion(self):
        outcome = countermodel_search(INCLUSION, "ci B <= A", max_features=2)
        result = outcome.result()
        assert result.status == "countermodel"
        assert result.interpretation is not None
        assert result.caveat is None
        a, b = parse_concept("A"), parse_concept("B")
        assert satisfies_ci(outcome.interpretation, a, b)
        assert not satisfies_ci(outcome.interpretation, b, a)

    @pytest.mark.slow
    def test_swapping_sides_has_no_countermodel(self):
        outcome = countermodel_search(PROPORTION, "ana C : D :: A : B", max_features=2)
        assert not outcome.found
        result = outcome.result()
        assert result.status == "none-within-bounds"
        assert result.caveat == CAVEAT
        assert result.candidates > 0

    def test_rejected_candidate_does_not_end_its_structure(self, monkeypatch):
        tbox = parse_tbox("natural A, B, C\nci C <= C\n", source="free")
        confirm = src.search._confirmed
        rejected = []

        def reject_first(interp, tbox, query):
            if not rejected:
                rejected.append(interp)
                return False
            return confirm(interp, tbox, query)

        monkeypatch.setattr(src.search, "_confirmed", reject_first)
        outcome = countermodel_search(tbox, "ci B <= A", max_features=1)
        assert outcome.found
        assert outcome.candidates == 2
        first, second = rejected[0], outcome.interpretation
        assert first.space == second.space
        assert first.natural_atoms["C"] != second.natural_atoms["C"]
        assert second.natural_atoms["B"] == first.natural_atoms["B"]

    def test_premise_itself(self):
        assert not countermodel_search(INCLUSION, "ci A <= B", max_features=2).found


class TestBounds:
    @pytest.mark.parametrize("kwargs", [{"max_features": 9}, {"max_atoms": 7}])
    def test_hard_caps(self, kwargs):
        with pytest.raises(BoundsError):
            countermodel_search(INCLUSION, "ci B <= A", **kwargs)

    def test_too_many_atoms(self):
        with pytest.raises(BoundsError):
            countermodel_search(PROPORTION, "ana A : B :: C : D", max_atoms=3)

    def test_undeclared_atom(self):
        with pytest.raises(WorkbenchError):
            countermodel_search(INCLUSION, "ci B <= E", max_features=2)

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            countermodel_search(INCLUSION, "ci B <= A", mode="medium")


@pytest.mark.parametrize("n, count", [(1, 1), (3, 3), (4, 5), (6, 11)])
def test_integer_partitions(n, count):
    partitions = list(integer_partitions(n))
    assert len(partitions) == count
    assert all(sum(p) == n for p in partitions)
