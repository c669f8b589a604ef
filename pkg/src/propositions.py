"""The registry of checkable propositions.

A proposition is a premises/conclusion pair over named concept (and role)
variables. Checking one on an interpretation evaluates both sides
independently; the proposition fails on that interpretation only when the
premises hold and the conclusion does not.
"""
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Tuple, Union

import structlog

from .concepts import And, Between, Concept, Exists, require_natural
from .exceptions import TranslationError, UnknownPropositionError, VocabularyError
from .model import STRONG, WEAK, Interpretation, is_nonempty, phi, satisfies_ci
from .parser import parse_concept
from .proportions import ap_sets
from .schemas import Verdict
from .translations import apply_translation, compose, invert, mu, satisfies_ana

logger = structlog.get_logger(__name__)

STANDARD = "standard"
STRENGTHS = (STANDARD, STRONG)

Binding = Dict[str, Concept]
Check = Callable[[Interpretation, Binding, Dict[str, str], bool], bool]


@dataclass(frozen=True)
class Proposition:
    id: str
    description: str
    concepts: Tuple[str, ...]
    premises: Check
    conclusion: Check
    roles: Tuple[str, ...] = ()
    uses_strength: bool = True
    modes: Tuple[str, ...] = (STRONG, WEAK)
    negative: bool = False

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.concepts + self.roles


def _ana(i: Interpretation, b: Binding, names: str, strong: bool) -> bool:
    c1, c2, d1, d2 = (b[n] for n in names.split())
    return satisfies_ana(i, c1, c2, d1, d2, strong=strong)


def _ci(i: Interpretation, b: Binding, sub: str, sup: str) -> bool:
    return satisfies_ci(i, b[sub], b[sup])


def _ap(i: Interpretation, concepts: List[Concept]) -> bool:
    return ap_sets(*(phi(i, c) for c in concepts))


def _mu_nonempty(i: Interpretation, b: Binding, source: str, target: str) -> bool:
    return bool(mu(i, b[source], b[target]))


def _inversion(i: Interpretation, b: Binding, roles: Dict[str, str], strong: bool) -> bool:
    source = phi(i, b["C"])
    backward = mu(i, b["D"], b["C"])
    for translation in mu(i, b["C"], b["D"]):
        forward = apply_translation(i.space, i.analogy, translation, source)
        if apply_translation(i.space, i.analogy, invert(translation), forward) != source:
            return False
        if invert(translation) not in backward:
            return False
    return True


def _composition(i: Interpretation, b: Binding, roles: Dict[str, str], strong: bool) -> bool:
    try:
        composed = {compose(u, v) for u in mu(i, b["C"], b["D"]) for v in mu(i, b["D"], b["E"])}
    except TranslationError:
        return False
    return composed == set(mu(i, b["C"], b["E"]))


def _uniqueness_premises(i: Interpretation, b: Binding, roles: Dict[str, str], strong: bool) -> bool:
    return is_nonempty(i, b["C"]) and is_nonempty(i, b["D"]) and _mu_nonempty(i, b, "C", "D")


def _lift_conjunction_premises(i: Interpretation, b: Binding, roles: Dict[str, str], strong: bool) -> bool:
    if not (_ana(i, b, "C1 C2 C3 C4", strong) and _ana(i, b, "D1 D2 D3 D4", strong)):
        return False
    return all(is_nonempty(i, And(b[f"C{k}"], b[f"D{k}"])) for k in range(1, 5))


def _lift_conjunction_conclusion(i: Interpretation, b: Binding, roles: Dict[str, str], strong: bool) -> bool:
    c1, c2, c3, c4 = (And(b[f"C{k}"], b[f"D{k}"]) for k in range(1, 5))
    return satisfies_ana(i, c1, c2, c3, c4, strong=strong)


def _lift_existential(mixed: bool) -> Check:
    def conclusion(i: Interpretation, b: Binding, roles: Dict[str, str], strong: bool) -> bool:
        r = roles["r"]
        left = (b["C"], b["D"]) if mixed else (Exists(r, b["C"]), Exists(r, b["D"]))
        return satisfies_ana(i, *left, Exists(r, b["E"]), Exists(r, b["F"]), strong=strong)

    return conclusion


def _extrapolation_premises(transposed: bool) -> Check:
    def premises(i: Interpretation, b: Binding, roles: Dict[str, str], strong: bool) -> bool:
        if not (_ana(i, b, "C1 C2 C3 C4", strong) and _ana(i, b, "D1 D2 D3 D4", strong)):
            return False
        if transposed and not _ana(i, b, "D1 D3 D2 D4", strong):
            return False
        return all(_ci(i, b, f"C{k}", f"D{k}") for k in (1, 2, 3)) and is_nonempty(i, b["C1"])

    return premises


def _ap_extrapolation_premises(i: Interpretation, b: Binding, roles: Dict[str, str], strong: bool) -> bool:
    return (
        _ap(i, [b[f"A{k}"] for k in range(1, 5)])
        and _ap(i, [b[f"C{k}"] for k in range(1, 5)])
        and all(_ci(i, b, f"A{k}", f"C{k}") for k in (1, 2, 3))
    )


def _ap_lift_premises(i: Interpretation, b: Binding, roles: Dict[str, str], strong: bool) -> bool:
    return _ap(i, [b[n] for n in ("A1", "B1", "C1", "D1")]) and _ap(i, [b[n] for n in ("A2", "B2", "C2", "D2")])


def _ap_lift_conclusion(i: Interpretation, b: Binding, roles: Dict[str, str], strong: bool) -> bool:
    return _ap(i, [And(b[f"{x}1"], b[f"{x}2"]) for x in "ABCD"])


PROPOSITIONS: Dict[str, Proposition] = {p.id: p for p in [
    Proposition(
        "ap-rule-translation",
        "a proportion between the feature sets of A1, A2, B1, B2 carries A1 ⊑ B1 to A2 ⊑ B2",
        ("A1", "A2", "B1", "B2"),
        lambda i, b, r, s: _ap(i, [b["A1"], b["A2"], b["B1"], b["B2"]]) and _ci(i, b, "A1", "B1"),
        lambda i, b, r, s: _ci(i, b, "A2", "B2"),
        uses_strength=False,
    ),
    Proposition(
        "inversion",
        "every translation in μ(C,D) is undone by its inverse, which lies in μ(D,C)",
        ("C", "D"),
        lambda i, b, r, s: _mu_nonempty(i, b, "C", "D"),
        _inversion,
        uses_strength=False,
    ),
    Proposition(
        "composition",
        "μ(C,E) is the set of compositions of μ(C,D) with μ(D,E)",
        ("C", "D", "E"),
        lambda i, b, r, s: _mu_nonempty(i, b, "C", "D") and _mu_nonempty(i, b, "D", "E"),
        _composition,
        uses_strength=False,
        modes=(STRONG,),
    ),
    Proposition(
        "uniqueness",
        "μ(C,D) has at most one element when C and D are non-empty",
        ("C", "D"),
        _uniqueness_premises,
        lambda i, b, r, s: len(mu(i, b["C"], b["D"])) == 1,
        uses_strength=False,
        modes=(STRONG,),
    ),
    Proposition(
        "symmetry",
        "C1 : C2 :: D1 : D2 gives C2 : C1 :: D2 : D1",
        ("C1", "C2", "D1", "D2"),
        lambda i, b, r, s: _ana(i, b, "C1 C2 D1 D2", s),
        lambda i, b, r, s: _ana(i, b, "C2 C1 D2 D1", s),
    ),
    Proposition(
        "s-transitivity-a",
        "C1 : C2 :: D1 : D2 and D1 : D2 :: E1 : E2 give C1 : C2 :: E1 : E2",
        ("C1", "C2", "D1", "D2", "E1", "E2"),
        lambda i, b, r, s: _ana(i, b, "C1 C2 D1 D2", s) and _ana(i, b, "D1 D2 E1 E2", s),
        lambda i, b, r, s: _ana(i, b, "C1 C2 E1 E2", s),
    ),
    Proposition(
        "s-transitivity-b",
        "C1 : C2 :: D1 : D2 and C2 : C3 :: D2 : D3 give C1 : C3 :: D1 : D3",
        ("C1", "C2", "C3", "D1", "D2", "D3"),
        lambda i, b, r, s: _ana(i, b, "C1 C2 D1 D2", s) and _ana(i, b, "C2 C3 D2 D3", s),
        lambda i, b, r, s: _ana(i, b, "C1 C3 D1 D3", s),
    ),
    Proposition(
        "c-transitivity",
        "C1 : D1 :: D2 : C2 and C1 : E1 :: E2 : C2 give D1 : E1 :: E2 : D2",
        ("C1", "C2", "D1", "D2", "E1", "E2"),
        lambda i, b, r, s: _ana(i, b, "C1 D1 D2 C2", s) and _ana(i, b, "C1 E1 E2 C2", s),
        lambda i, b, r, s: _ana(i, b, "D1 E1 E2 D2", s),
    ),
    Proposition(
        "lift-conjunction",
        "two assertions lift to the assertion between the pairwise conjunctions, when those are non-empty",
        ("C1", "C2", "C3", "C4", "D1", "D2", "D3", "D4"),
        _lift_conjunction_premises,
        _lift_conjunction_conclusion,
    ),
    Proposition(
        "lift-existential",
        "C : D :: E : F gives ∃r.C : ∃r.D :: ∃r.E : ∃r.F for an intra-domain role r",
        ("C", "D", "E", "F"),
        lambda i, b, r, s: _ana(i, b, "C D E F", s),
        _lift_existential(mixed=False),
        roles=("r",),
    ),
    Proposition(
        "lift-existential-mixed",
        "C : D :: E : F gives C : D :: ∃r.E : ∃r.F for an intra-domain role r",
        ("C", "D", "E", "F"),
        lambda i, b, r, s: _ana(i, b, "C D E F", s),
        _lift_existential(mixed=True),
        roles=("r",),
    ),
    Proposition(
        "rule-translation",
        "C1 : D1 :: C2 : D2 and C1 ⊑ C2 give D1 ⊑ D2",
        ("C1", "D1", "C2", "D2"),
        lambda i, b, r, s: _ana(i, b, "C1 D1 C2 D2", s) and _ci(i, b, "C1", "C2"),
        lambda i, b, r, s: _ci(i, b, "D1", "D2"),
    ),
    Proposition(
        "rule-extrapolation",
        "three inclusions of an analogical pattern, with a non-empty C1, give the fourth",
        ("C1", "C2", "C3", "C4", "D1", "D2", "D3", "D4"),
        _extrapolation_premises(transposed=True),
        lambda i, b, r, s: _ci(i, b, "C4", "D4"),
    ),
    Proposition(
        "interpolation",
        "A ⊑ X, B ⊑ X and D ⊑ A ⋈ B give D ⊑ X for a natural X",
        ("A", "B", "D", "X"),
        lambda i, b, r, s: _ci(i, b, "A", "X") and _ci(i, b, "B", "X")
        and satisfies_ci(i, b["D"], Between(b["A"], b["B"])),
        lambda i, b, r, s: _ci(i, b, "D", "X"),
        uses_strength=False,
    ),
    Proposition(
        "ap-rule-extrapolation",
        "rule extrapolation over analogical proportions of feature sets",
        ("A1", "A2", "A3", "A4", "C1", "C2", "C3", "C4"),
        _ap_extrapolation_premises,
        lambda i, b, r, s: _ci(i, b, "A4", "C4"),
        uses_strength=False,
        negative=True,
    ),
    Proposition(
        "ap-lift-conjunction",
        "lifting analogical proportions of feature sets to conjunctions",
        ("A1", "B1", "C1", "D1", "A2", "B2", "C2", "D2"),
        _ap_lift_premises,
        _ap_lift_conclusion,
        uses_strength=False,
        negative=True,
    ),
    Proposition(
        "rule-extrapolation-partial",
        "rule extrapolation without the transposed assertion D1 : D3 :: D2 : D4",
        ("C1", "C2", "C3", "C4", "D1", "D2", "D3", "D4"),
        _extrapolation_premises(transposed=False),
        lambda i, b, r, s: _ci(i, b, "C4", "D4"),
        negative=True,
    ),
]}


def get_proposition(prop_id: str) -> Proposition:
    try:
        return PROPOSITIONS[prop_id]
    except KeyError:
        raise UnknownPropositionError(
            f"unknown proposition '{prop_id}'; known: {', '.join(sorted(PROPOSITIONS))}"
        ) from None


def sound_propositions(mode: str = STRONG) -> List[Proposition]:
    return [p for p in PROPOSITIONS.values() if not p.negative and mode in p.modes]


def _bind(
    proposition: Proposition, interp: Interpretation, bindings: Mapping[str, Union[str, Concept]]
) -> Tuple[Binding, Dict[str, str]]:
    missing = [v for v in proposition.variables if v not in bindings]
    if missing:
        raise VocabularyError(f"proposition '{proposition.id}' needs bindings for {', '.join(missing)}")
    concepts: Binding = {}
    for name in proposition.concepts:
        value = bindings[name]
        if isinstance(value, str):
            value = parse_concept(value, interp.natural_names, interp.intra_roles)
        require_natural(value, interp.natural_names, interp.intra_roles)
        concepts[name] = value
    roles = {name: str(bindings[name]) for name in proposition.roles}
    for role in roles.values():
        if role not in interp.intra_roles:
            raise VocabularyError(f"'{role}' is not an intra-domain role")
    return concepts, roles


def check_proposition(
    prop_id: str,
    interp: Interpretation,
    bindings: Mapping[str, Union[str, Concept]],
    strength: str = STANDARD,
) -> Verdict:
    if strength not in STRENGTHS:
        raise ValueError(f"unknown strength '{strength}', expected one of {', '.join(STRENGTHS)}")
    proposition = get_proposition(prop_id)
    concepts, roles = _bind(proposition, interp, bindings)
    strong = strength == STRONG and proposition.uses_strength
    verdict = Verdict(
        proposition=prop_id,
        strength=strength if proposition.uses_strength else STANDARD,
        premises_hold=proposition.premises(interp, concepts, roles, strong),
        conclusion_holds=proposition.conclusion(interp, concepts, roles, strong),
    )
    if verdict.fails:
        logger.debug("proposition_fails", proposition=prop_id, strength=verdict.strength, mode=interp.mode)
    return verdict
