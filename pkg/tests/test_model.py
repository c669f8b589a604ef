import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.concepts import BOT, TOP, And, Atom, Between, Exists
from src.documents import dump_interpretation, load_interpretation, parse_document, to_document
from src.exceptions import BoundsError, DocumentError, VocabularyError
from src.features import FeatureSpace
from src.model import Individual, delta, extension, is_nonempty, phi, satisfies_ci
from src.parser import parse_concept

CAT, DOG, YOUNG, CUTE = Atom("Cat"), Atom("Dog"), Atom("Young"), Atom("Cute")


class TestFeatureSpace:
    def test_universe_is_always_forbidden(self):
        space = FeatureSpace.build(["f", "g"], [["f"], ["g"]])
        assert space.universe_inserted
        assert not space.is_consistent(frozenset({"f", "g"}))
        assert space.is_consistent(frozenset({"f"}))

    def test_delta_and_domains(self, zoo):
        space = zoo.space
        assert space.k == 4
        assert space.domain_of("c'") == 2
        assert space.delta(frozenset({"c", "y"})) == frozenset({1, 3})

    def test_unknown_feature(self, zoo):
        with pytest.raises(VocabularyError):
            zoo.space.consistent({"z"})

    def test_enumeration_cap(self, zoo):
        with pytest.raises(BoundsError):
            zoo.space.consistent_family(cap=4)

    @given(st.frozensets(st.sampled_from(["c", "d", "c'", "d'", "y", "a"])), st.data())
    def test_consistency_is_downward_closed(self, zoo, features, data):
        subset = data.draw(st.frozensets(st.sampled_from(sorted(features))) if features else st.just(frozenset()))
        if zoo.space.is_consistent(features):
            assert zoo.space.is_consistent(subset)


class TestEvaluation:
    """Extensions and feature sets over the animals fixture"""

    def test_canonical_individuals(self, zoo):
        # 7 choices over the two animal domains, 3 over age and demeanour
        assert len(zoo.individuals) == 21

    def test_natural_atom(self, zoo):
        assert phi(zoo, CAT) == frozenset({"c"})
        assert len(extension(zoo, CAT)) == 6
        assert all("c" in d.features for d in extension(zoo, CAT))

    def test_conjunction(self, zoo):
        young_cat = And(YOUNG, CAT)
        assert phi(zoo, young_cat) == frozenset({"c", "y"})
        assert delta(zoo, young_cat) == frozenset({1, 3})

    def test_empty_extension_has_every_feature(self, zoo):
        cat_wildcat = parse_concept("(and Cat WildCat)")
        assert not is_nonempty(zoo, cat_wildcat)
        assert phi(zoo, cat_wildcat) == zoo.space.universe
        assert phi(zoo, BOT) == zoo.space.universe

    def test_top(self, zoo):
        assert phi(zoo, TOP) == frozenset()
        assert len(extension(zoo, TOP)) == 21

    def test_between(self, zoo):
        assert phi(zoo, Between(CAT, DOG)) == frozenset()
        assert satisfies_ci(zoo, CAT, Between(CAT, DOG))

    @pytest.mark.parametrize("sub, sup, holds", [
        ("(and Young Cat)", "Cute", True),
        ("(and Adult WildCat)", "Dangerous", True),
        ("(and Adult Wolf)", "Dangerous", True),
        ("Cat", "Cute", False),
        ("(and Cat WildCat)", "Cute", True),
        ("Young", "Cute", True),
    ])
    def test_inclusions(self, zoo, sub, sup, holds):
        assert satisfies_ci(zoo, parse_concept(sub), parse_concept(sup)) is holds

    def test_unknown_atom(self, zoo):
        with pytest.raises(VocabularyError):
            phi(zoo, Atom("Rock"))


class TestIntraRoles:
    """∃r.C for an intra-domain role is read through κ"""

    def test_existential_on_source_domain(self, spec):
        assert phi(spec, Exists("specifies", Atom("Software"))) == frozenset({"pr"})
        assert satisfies_ci(spec, Atom("Program"), Exists("specifies", Atom("Software")))

    def test_existential_carried_to_analogous_domain(self, spec):
        assert phi(spec, Exists("specifies", Atom("Building"))) == frozenset({"pl"})
        assert satisfies_ci(spec, Atom("Plan"), Exists("specifies", Atom("Building")))


class TestPlainVocabulary:
    """Plain atoms and ordinary roles are evaluated over explicit individuals"""

    @pytest.fixture
    def interp(self):
        return load_interpretation({
            "features": ["f", "g"],
            "domains": [["f", "g"]],
            "natural_atoms": {"F": ["f"]},
            "individuals": {"x": ["g"]},
            "plain_atoms": {"P": [["f"], "x"]},
            "roles": {"likes": [[["f"], "x"]]},
        })

    def test_plain_atom(self, interp):
        assert extension(interp, Atom("P")) == frozenset({Individual(frozenset({"f"})), interp.extras[0]})
        assert phi(interp, Atom("P")) == frozenset()

    def test_ordinary_role(self, interp):
        assert extension(interp, Exists("likes", Atom("P"))) == frozenset({Individual(frozenset({"f"}))})
        assert satisfies_ci(interp, Exists("likes", Atom("P")), Atom("F"))


class TestDocuments:
    def test_document_round_trip(self, zoo, tmp_path):
        path = dump_interpretation(zoo, tmp_path / "zoo.json", "copy")
        again = load_interpretation(path)
        assert again.space.partition == zoo.space.partition
        assert set(again.space.forbidden) == set(zoo.space.forbidden)
        assert again.natural_atoms == zoo.natural_atoms
        assert again.analogy.sigma == zoo.analogy.sigma

    def test_kappa_survives_round_trip(self, spec):
        document = to_document(spec)
        assert document.kappa["specifies"].mode == "tabular"
        assert len(document.kappa["specifies"].tables) == 3

    def test_malformed_document(self):
        with pytest.raises(DocumentError):
            parse_document({"features": ["f", "f"], "domains": [["f"]]})

    def test_unknown_fixture(self):
        with pytest.raises(DocumentError):
            load_interpretation("no-such-fixture")
