"""TBoxes of concept inclusions and analogy assertions, and model checking against them."""
from dataclasses import dataclass, field
from typing import FrozenSet, Iterator, List, Tuple

import structlog

from .concepts import (
    Concept,
    check_between,
    is_natural,
    normalize,
    require_natural,
    subconcepts,
    to_dl,
    to_sexpr,
)
from .exceptions import NaturalnessError, VocabularyError
from .model import Interpretation, is_nonempty, satisfies_ci
from .schemas import AxiomVerdict, TBoxReport
from .translations import satisfies_ana
from .validation import validate_interpretation

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class Inclusion:
    sub: Concept
    sup: Concept

    def normalized(self) -> "Inclusion":
        return Inclusion(normalize(self.sub), normalize(self.sup))

    def to_text(self) -> str:
        return f"{to_sexpr(self.sub)} <= {to_sexpr(self.sup)}"

    def to_dl(self) -> str:
        return f"{to_dl(self.sub)} ⊑ {to_dl(self.sup)}"

    def concepts(self) -> Tuple[Concept, ...]:
        return (self.sub, self.sup)


@dataclass(frozen=True)
class AnalogyAssertion:
    """C1 : C2 :: D1 : D2, standard or strong"""

    c1: Concept
    c2: Concept
    d1: Concept
    d2: Concept
    strong: bool = False

    def normalized(self) -> "AnalogyAssertion":
        return AnalogyAssertion(normalize(self.c1), normalize(self.c2), normalize(self.d1), normalize(self.d2),
                                self.strong)

    def as_standard(self) -> "AnalogyAssertion":
        return AnalogyAssertion(self.c1, self.c2, self.d1, self.d2, False)

    def concepts(self) -> Tuple[Concept, ...]:
        return (self.c1, self.c2, self.d1, self.d2)

    @property
    def keyword(self) -> str:
        return "sana" if self.strong else "ana"

    def to_text(self) -> str:
        c1, c2, d1, d2 = (to_sexpr(c) for c in self.concepts())
        return f"{self.keyword} {c1} : {c2} :: {d1} : {d2}"

    def to_dl(self) -> str:
        c1, c2, d1, d2 = (to_dl(c, nested=True) for c in self.concepts())
        return f"{self.keyword}({c1} : {c2} :: {d1} : {d2})"


@dataclass(frozen=True)
class TBox:
    natural: FrozenSet[str] = frozenset()
    intra: FrozenSet[str] = frozenset()
    cis: Tuple[Inclusion, ...] = ()
    anas: Tuple[AnalogyAssertion, ...] = ()
    nonempty: Tuple[Concept, ...] = ()
    source: str = field(default="<tbox>", compare=False)

    def __post_init__(self):
        for assertion in self.anas:
            for concept in assertion.concepts():
                require_natural(concept, self.natural, self.intra)
        for concept in self.concepts():
            check_between(concept, self.natural, self.intra)

    def concepts(self) -> Iterator[Concept]:
        for ci in self.cis:
            yield from ci.concepts()
        for assertion in self.anas:
            yield from assertion.concepts()
        yield from self.nonempty

    def subconcepts(self) -> FrozenSet[Concept]:
        return frozenset(normalize(sub) for concept in self.concepts() for sub in subconcepts(concept))

    def is_natural(self, concept: Concept) -> bool:
        return is_natural(concept, self.natural, self.intra)

    def extend(self, *facts) -> "TBox":
        cis, anas = list(self.cis), list(self.anas)
        for fact in facts:
            if isinstance(fact, Inclusion):
                cis.append(fact)
            elif isinstance(fact, AnalogyAssertion):
                anas.append(fact)
            else:
                raise TypeError(f"not an axiom: {fact!r}")
        return TBox(self.natural, self.intra, tuple(cis), tuple(anas), self.nonempty, self.source)

    @property
    def empty(self) -> bool:
        return not (self.cis or self.anas or self.nonempty)


def _verdict(kind: str, axiom: str, check) -> AxiomVerdict:
    try:
        return AxiomVerdict(kind=kind, axiom=axiom, holds=bool(check()))
    except (VocabularyError, NaturalnessError) as exc:
        return AxiomVerdict(kind=kind, axiom=axiom, holds=False, detail=str(exc))


def check_tbox(interp: Interpretation, tbox: TBox) -> List[AxiomVerdict]:
    verdicts: List[AxiomVerdict] = []
    for name in sorted(tbox.natural):
        declared = name in interp.natural_atoms
        verdicts.append(AxiomVerdict(
            kind="natural", axiom=f"natural {name}", holds=declared,
            detail=None if declared else "not a natural atom of the interpretation",
        ))
    kappa_violations = []
    if tbox.intra:
        kappa_violations = [v for v in validate_interpretation(interp).violations if v.condition.startswith("kappa")]
    for role in sorted(tbox.intra):
        declared = role in interp.kappa
        detail = None if declared else "not an intra-domain role of the interpretation"
        if declared:
            broken = [v for v in kappa_violations if v.witness.get("role") == role]
            if broken:
                declared, detail = False, broken[0].message
        verdicts.append(AxiomVerdict(kind="intra", axiom=f"intra {role}", holds=declared, detail=detail))
    for ci in tbox.cis:
        verdicts.append(_verdict("ci", ci.to_text(), lambda ci=ci: satisfies_ci(interp, ci.sub, ci.sup)))
    for assertion in tbox.anas:
        verdicts.append(_verdict(
            assertion.keyword,
            assertion.to_text(),
            lambda a=assertion: satisfies_ana(interp, a.c1, a.c2, a.d1, a.d2, strong=a.strong),
        ))
    for concept in tbox.nonempty:
        verdicts.append(_verdict("nonempty", f"nonempty {to_sexpr(concept)}",
                                 lambda c=concept: is_nonempty(interp, c)))
    return verdicts


def satisfies_tbox(interp: Interpretation, tbox: TBox) -> TBoxReport:
    verdicts = check_tbox(interp, tbox)
    report = TBoxReport(holds=all(v.holds for v in verdicts), verdicts=verdicts)
    logger.debug("tbox_checked", source=tbox.source, holds=report.holds, failures=len(report.failures))
    return report
