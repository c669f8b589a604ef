import pytest

from src.documents import load_interpretation
from src.validation import validate_interpretation


def conditions(report):
    return {v.condition for v in report.violations}


def build(**document):
    return load_interpretation(document)


class TestFixtures:
    def test_zoo_is_valid(self, zoo):
        report = validate_interpretation(zoo)
        assert report.valid, report.violations
        assert report.mode == "strong"

    def test_spec_is_valid(self, spec):
        assert validate_interpretation(spec).valid

    def test_strong_fixture_is_also_weakly_valid(self, zoo):
        assert validate_interpretation(zoo.with_mode("weak")).valid


class TestDomainConditions:
    """Each violated condition is reported with a witness"""

    def test_analogous_features_must_exclude_each_other_in_strong_mode(self):
        document = dict(
            features=["f", "g", "h"], domains=[["f"], ["g"], ["h"]],
            analogous=[[1, 2]], bijections={"1->2": {"f": "g"}},
        )
        strong = validate_interpretation(build(**document))
        assert not strong.valid
        violation = next(v for v in strong.violations if v.condition == "domain-exclusivity")
        assert violation.witness == {"features": ["f", "g"], "pair": [1, 2]}
        assert validate_interpretation(build(mode="weak", **document)).valid

    def test_bijections_preserve_consistency(self):
        interp = build(
            features=["f1", "f2", "g1", "g2"], domains=[["f1", "f2"], ["g1", "g2"]],
            forbidden=["ALL", ["g1", "g2"]], analogous=[[1, 2]],
            bijections={"1->2": {"f1": "g1", "f2": "g2"}}, mode="weak",
        )
        report = validate_interpretation(interp)
        assert conditions(report) == {"consistency-preservation"}
        assert report.violations[0].witness["set"] == ["f1", "f2"]

    def test_analogous_domains_of_different_size(self):
        interp = build(
            features=["f", "g", "h"], domains=[["f"], ["g", "h"]],
            analogous=[[1, 2]], bijections={"1->2": {"f": "g"}}, mode="weak",
        )
        assert "bijection-coherence" in conditions(validate_interpretation(interp))

    def test_feature_outside_every_domain(self):
        interp = build(features=["f", "g"], domains=[["f"]])
        assert "partition" in conditions(validate_interpretation(interp))

    def test_individual_with_forbidden_combination(self):
        interp = build(features=["f", "g"], domains=[["f", "g"]], individuals={"x": ["f", "g"]})
        report = validate_interpretation(interp)
        assert conditions(report) == {"forbidden-subset"}
        assert report.violations[0].witness["individual"] == "x"


class TestKappa:
    """κ tables: defined on every consistent single-domain set, non-empty images"""

    @pytest.mark.parametrize("tables, expected", [
        ([{"source": ["p"], "image": ["q"]}, {"source": ["q"], "image": ["q"]}], set()),
        ([{"source": ["p"], "image": []}, {"source": ["q"], "image": ["q"]}], {"kappa-nonempty"}),
        ([{"source": ["p"], "image": ["q"]}], {"kappa-undefined"}),
    ])
    def test_tables(self, tables, expected):
        interp = build(
            features=["p", "q"], domains=[["p", "q"]],
            kappa={"r": {"mode": "tabular", "tables": tables}},
        )
        assert conditions(validate_interpretation(interp)) == expected

    def test_additive_table_must_stay_in_domain(self):
        interp = build(
            features=["p", "q"], domains=[["p"], ["q"]],
            kappa={"r": {"mode": "additive", "tables": [
                {"source": ["p"], "image": ["q"]}, {"source": ["q"], "image": ["q"]},
            ]}},
        )
        assert "kappa-domain" in conditions(validate_interpretation(interp))
