import pytest

from src.concepts import BOT, TOP, And, Atom, Between, Exists, normalize, to_sexpr
from src.exceptions import ConceptSyntaxError, DeclarationError, NaturalnessError
from src.parser import format_tbox, parse_axiom, parse_concept, parse_feature_set, parse_tbox
from src.tbox import AnalogyAssertion, Inclusion


class TestConcepts:
    """s-expression concepts"""

    @pytest.mark.parametrize("text, expected", [
        ("top", TOP),
        ("bot", BOT),
        ("Cat", Atom("Cat")),
        ("(and Young Cat)", And(Atom("Young"), Atom("Cat"))),
        ("(some specifies Software)", Exists("specifies", Atom("Software"))),
        ("(btw Cat Dog)", Between(Atom("Cat"), Atom("Dog"))),
        ("(and A B C)", And(And(Atom("A"), Atom("B")), Atom("C"))),
    ])
    def test_parse(self, text, expected):
        assert parse_concept(text) == expected

    @pytest.mark.parametrize("text", [
        "(and Young Cat)",
        "(some specifies (and Plan Building))",
        "(btw (and A B) C)",
        "top",
    ])
    def test_print_then_parse(self, text):
        concept = parse_concept(text)
        assert parse_concept(to_sexpr(concept)) == concept

    def test_error_position(self):
        with pytest.raises(ConceptSyntaxError) as info:
            parse_concept("(and Cat")
        assert info.value.line == 1
        assert info.value.column == len("(and Cat") + 1

    def test_unknown_constructor(self):
        with pytest.raises(ConceptSyntaxError) as info:
            parse_concept("(or A B)")
        assert info.value.column == 2

    def test_trailing_input(self):
        with pytest.raises(ConceptSyntaxError):
            parse_concept("Cat Dog")

    def test_between_needs_natural_sides(self):
        with pytest.raises(NaturalnessError) as info:
            parse_concept("(btw Cat Rock)", natural={"Cat"})
        assert info.value.subterm == "Rock"


class TestAxioms:
    def test_inclusion_without_keyword(self):
        axiom = parse_axiom("(and Young Cat) <= Cute")
        assert axiom == Inclusion(And(Atom("Young"), Atom("Cat")), Atom("Cute"))

    def test_strong_assertion(self):
        axiom = parse_axiom("sana A : B :: C : D")
        assert isinstance(axiom, AnalogyAssertion)
        assert axiom.strong

    def test_assertion_over_undeclared_atom(self):
        with pytest.raises(NaturalnessError) as info:
            parse_axiom("ana Cat : WildCat :: Dog : Wolf", natural={"Cat", "WildCat", "Dog"})
        assert info.value.subterm == "Wolf"


class TestTBoxFiles:
    """Line-oriented TBox files"""

    def test_example1_counts(self, example1):
        assert len(example1.cis) == 3
        assert len(example1.anas) == 4
        assert len(example1.nonempty) == 4
        assert "Dangerous" in example1.natural

    def test_example2_declares_intra_role(self, example2):
        assert example2.intra == frozenset({"specifies"})
        assert example2.cis[0].sup == Exists("specifies", Atom("Software"))

    def test_format_then_parse(self, example1):
        assert parse_tbox(format_tbox(example1)) == example1

    def test_undeclared_atom_in_assertion(self):
        text = "natural Cat, WildCat, Dog\nana Cat : WildCat :: Dog : Wolf\n"
        with pytest.raises(NaturalnessError):
            parse_tbox(text)

    def test_role_declared_as_atom(self):
        with pytest.raises(DeclarationError):
            parse_tbox("natural r\nintra r\n")

    def test_unknown_directive_position(self):
        with pytest.raises(ConceptSyntaxError) as info:
            parse_tbox("natural A\n  axiom A <= A\n", source="bad.tbox")
        assert (info.value.line, info.value.column) == (2, 3)
        assert info.value.source == "bad.tbox"

    def test_comments_and_blank_lines(self):
        tbox = parse_tbox("# header\n\nnatural A, B  # two atoms\nci A <= B\n")
        assert tbox.cis == (Inclusion(Atom("A"), Atom("B")),)


class TestFeatureSets:
    @pytest.mark.parametrize("text, expected", [
        ("{a,b}", {"a", "b"}),
        ("a, b", {"a", "b"}),
        ("{}", set()),
        ("", set()),
    ])
    def test_literals(self, text, expected):
        assert parse_feature_set(text) == frozenset(expected)

    def test_unbalanced(self):
        with pytest.raises(ConceptSyntaxError):
            parse_feature_set("{a,b")


def test_normalize_matches_conjunction_order():
    left = normalize(parse_concept("(and Young (and Cat top))"))
    right = normalize(parse_concept("(and Cat Young)"))
    assert left == right
