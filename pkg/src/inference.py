"""Plausible inference over TBoxes: single-step rules and a bounded closure.

Every rule is an operational reading of a proposition that holds in every
domain-constrained interpretation of the selected mode, so everything the
closure derives is entailed. The closure is not complete: it only chains the
rules below, and it stops at a depth bound and a fact budget.
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Set, Tuple, Union

import structlog

from .concepts import And, Between, Concept, Exists, depth, normalize, to_sexpr
from .exceptions import NaturalnessError, VocabularyError, WitnessError
from .model import STRONG, WEAK, Interpretation, is_nonempty
from .schemas import ClosureReport, DerivationTrace, SideConditionTrace
from .tbox import AnalogyAssertion, Inclusion, TBox, satisfies_tbox

logger = structlog.get_logger(__name__)

Fact = Union[Inclusion, AnalogyAssertion]

ASSERTED = "asserted"
ASSUMED = "assumed"
WITNESSED = "witnessed"


@dataclass(frozen=True)
class SideCondition:
    """A non-emptiness condition a rule consumed, and where it came from"""
    concept: Concept
    source: str


@dataclass(frozen=True, eq=False)
class Derivation:
    id: int
    conclusion: Fact
    rule: str
    premises: Tuple["Derivation", ...] = ()
    side_conditions: Tuple[SideCondition, ...] = ()

    @property
    def asserted(self) -> bool:
        return self.rule == ASSERTED

    def rules_used(self) -> Set[str]:
        rules = set() if self.asserted else {self.rule}
        for premise in self.premises:
            rules |= premise.rules_used()
        return rules

    def trace(self) -> DerivationTrace:
        return DerivationTrace(
            id=self.id,
            conclusion=fact_text(self.conclusion),
            rule=self.rule,
            premises=[p.id for p in self.premises],
            side_conditions=[SideConditionTrace(concept=to_sexpr(s.concept), source=s.source)
                             for s in self.side_conditions],
        )

    def explain(self, indent: int = 0) -> List[str]:
        """The provenance tree, one line per node"""
        pad = "  " * indent
        line = f"{pad}[{self.id}] {fact_text(self.conclusion)}  ({self.rule})"
        if self.side_conditions:
            line += "  given " + ", ".join(f"nonempty {to_sexpr(s.concept)} [{s.source}]"
                                          for s in self.side_conditions)
        lines = [line]
        for premise in self.premises:
            lines.extend(premise.explain(indent + 1))
        return lines


def fact_text(fact: Fact) -> str:
    return fact.to_text() if isinstance(fact, AnalogyAssertion) else "ci " + fact.to_text()


Candidate = Tuple[Fact, Tuple[Derivation, ...], Tuple[SideCondition, ...]]


class FactBase:
    """Facts known so far, indexed by their normalized form"""

    def __init__(self, tbox: TBox, witness: Optional[Interpretation], mode: str, depth_bound: int,
                 max_facts: int, relevance: bool = True):
        self.tbox = tbox
        self.witness = witness
        self.mode = mode
        self.max_facts = max_facts
        self.relevance = relevance
        self.goal = tbox.subconcepts()
        self.assumed = frozenset(normalize(c) for c in tbox.nonempty)
        self.depth_limit = max([depth_bound] + [depth(c) for c in self.goal])
        self.facts: Dict[Fact, Derivation] = {}
        self.bound_reached = False
        self._witnessed: Dict[Concept, bool] = {}

    @property
    def full(self) -> bool:
        return len(self.facts) >= self.max_facts

    def add(self, fact: Fact, rule: str, premises: Tuple[Derivation, ...] = (),
            side_conditions: Tuple[SideCondition, ...] = ()) -> Optional[Derivation]:
        fact = fact.normalized()
        if fact in self.facts:
            return None
        if isinstance(fact, AnalogyAssertion) and not fact.strong and fact_strong(fact) in self.facts:
            return None
        if any(depth(c) > self.depth_limit for c in fact.concepts()):
            self.bound_reached = True
            return None
        if self.full:
            self.bound_reached = True
            return None
        derivation = Derivation(len(self.facts) + 1, fact, rule, premises, side_conditions)
        self.facts[fact] = derivation
        return derivation

    def inclusions(self) -> List[Derivation]:
        return [d for f, d in self.facts.items() if isinstance(f, Inclusion)]

    def assertions(self, strong_only: bool = False) -> List[Derivation]:
        return [d for f, d in self.facts.items()
                if isinstance(f, AnalogyAssertion) and (f.strong or not strong_only)]

    def ci(self, sub: Concept, sup: Concept) -> Optional[Derivation]:
        return self.facts.get(Inclusion(normalize(sub), normalize(sup)))

    def ana(self, c1: Concept, c2: Concept, d1: Concept, d2: Concept) -> Optional[Derivation]:
        """A standard assertion, or the strong one that implies it"""
        fact = AnalogyAssertion(c1, c2, d1, d2).normalized()
        return self.facts.get(fact) or self.facts.get(fact_strong(fact))

    def nonempty(self, concept: Concept) -> Optional[SideCondition]:
        concept = normalize(concept)
        if concept in self.assumed:
            return SideCondition(concept, ASSUMED)
        if self.witness is None:
            return None
        if concept not in self._witnessed:
            try:
                self._witnessed[concept] = is_nonempty(self.witness, concept)
            except (VocabularyError, NaturalnessError):
                self._witnessed[concept] = False
        return SideCondition(concept, WITNESSED) if self._witnessed[concept] else None

    def relevant(self, *built: Concept) -> bool:
        return not self.relevance or any(normalize(c) in self.goal for c in built)


def fact_strong(fact: AnalogyAssertion) -> AnalogyAssertion:
    return AnalogyAssertion(fact.c1, fact.c2, fact.d1, fact.d2, True)


def _index(derivations: List[Derivation], key: Callable[[AnalogyAssertion], tuple]) -> Dict[tuple, List[Derivation]]:
    index: Dict[tuple, List[Derivation]] = {}
    for d in derivations:
        index.setdefault(key(d.conclusion), []).append(d)
    return index


def symmetry(base: FactBase) -> List[Candidate]:
    """Reverse both pairs, and swap the two sides"""
    out: List[Candidate] = []
    for d in base.assertions():
        a = d.conclusion
        out.append((AnalogyAssertion(a.c2, a.c1, a.d2, a.d1, a.strong), (d,), ()))
        out.append((AnalogyAssertion(a.d1, a.d2, a.c1, a.c2, a.strong), (d,), ()))
    return out


def s_transitivity_a(base: FactBase) -> List[Candidate]:
    # weak mode keeps only the strong-assertion form
    premises = base.assertions(strong_only=base.mode == WEAK)
    by_left = _index(premises, lambda a: (a.c1, a.c2))
    out: List[Candidate] = []
    for p in premises:
        a = p.conclusion
        for q in by_left.get((a.d1, a.d2), []):
            b = q.conclusion
            out.append((AnalogyAssertion(a.c1, a.c2, b.d1, b.d2, a.strong and b.strong), (p, q), ()))
    return out


def s_transitivity_b(base: FactBase) -> List[Candidate]:
    premises = base.assertions()
    by_first = _index(premises, lambda a: (a.c1, a.d1))
    out: List[Candidate] = []
    for p in premises:
        a = p.conclusion
        for q in by_first.get((a.c2, a.d2), []):
            b = q.conclusion
            out.append((AnalogyAssertion(a.c1, b.c2, a.d1, b.d2, a.strong and b.strong), (p, q), ()))
    return out


def c_transitivity(base: FactBase) -> List[Candidate]:
    premises = base.assertions()
    by_outer = _index(premises, lambda a: (a.c1, a.d2))
    out: List[Candidate] = []
    for p in premises:
        a = p.conclusion
        for q in by_outer.get((a.c1, a.d2), []):
            if q is p:
                continue
            b = q.conclusion
            out.append((AnalogyAssertion(a.c2, b.c2, b.d1, a.d1, a.strong and b.strong), (p, q), ()))
    return out


def lift_conjunction(base: FactBase) -> List[Candidate]:
    out: List[Candidate] = []
    premises = base.assertions()
    for p in premises:
        for q in premises:
            a, b = p.conclusion, q.conclusion
            built = [normalize(And(x, y)) for x, y in zip(a.concepts(), b.concepts())]
            if built == list(a.concepts()) or not base.relevant(*built):
                continue
            sides = [base.nonempty(c) for c in built]
            if all(sides):
                out.append((AnalogyAssertion(*built), (p, q), tuple(dict.fromkeys(sides))))
    return out


def lift_existential(base: FactBase) -> List[Candidate]:
    """Both lifted forms, over every declared intra-domain role"""
    out: List[Candidate] = []
    for d in base.assertions():
        a = d.conclusion
        for role in sorted(base.tbox.intra):
            ec, ed, ee, ef = (Exists(role, c) for c in a.concepts())
            if base.relevant(ec, ed, ee, ef):
                out.append((AnalogyAssertion(ec, ed, ee, ef), (d,), ()))
            if base.relevant(ee, ef):
                out.append((AnalogyAssertion(a.c1, a.c2, ee, ef), (d,), ()))
    return out


def rule_translation(base: FactBase) -> List[Candidate]:
    out: List[Candidate] = []
    for d in base.assertions():
        a = d.conclusion
        premise = base.ci(a.c1, a.d1)
        if premise is not None:
            out.append((Inclusion(a.c2, a.d2), (d, premise), ()))
    return out


def rule_extrapolation(base: FactBase) -> List[Candidate]:
    out: List[Candidate] = []
    premises = base.assertions()
    for p in premises:
        c = p.conclusion
        first = [(q, base.ci(c.c1, q.conclusion.c1)) for q in premises]
        for q, ci1 in first:
            if ci1 is None:
                continue
            d = q.conclusion
            ci2 = base.ci(c.c2, d.c2)
            ci3 = base.ci(c.d1, d.d1)
            transposed = base.ana(d.c1, d.d1, d.c2, d.d2)
            if ci2 is None or ci3 is None or transposed is None:
                continue
            side = base.nonempty(c.c1)
            if side is not None:
                out.append((Inclusion(c.d2, d.d2), (p, q, transposed, ci1, ci2, ci3), (side,)))
    return out


def rule_interpolation(base: FactBase) -> List[Candidate]:
    """From A ⊑ X, B ⊑ X and D ⊑ A ⋈ B, with X natural, derive D ⊑ X"""
    out: List[Candidate] = []
    inclusions = base.inclusions()
    by_sub = _index(inclusions, lambda ci: (ci.sub,))
    for d in inclusions:
        between = d.conclusion.sup
        if not isinstance(between, Between):
            continue
        for left in by_sub.get((between.left,), []):
            x = left.conclusion.sup
            right = base.ci(between.right, x)
            if right is not None and base.tbox.is_natural(x):
                out.append((Inclusion(d.conclusion.sub, x), (left, right, d), ()))
    return out


# rule name, rule, modes in which it is sound
RULES: Tuple[Tuple[str, Callable[[FactBase], List[Candidate]], Tuple[str, ...]], ...] = (
    ("symmetry", symmetry, (STRONG, WEAK)),
    ("s_transitivity_a", s_transitivity_a, (STRONG, WEAK)),
    ("s_transitivity_b", s_transitivity_b, (STRONG, WEAK)),
    ("c_transitivity", c_transitivity, (STRONG,)),
    ("lift_conjunction", lift_conjunction, (STRONG,)),
    ("lift_existential", lift_existential, (STRONG, WEAK)),
    ("rule_translation", rule_translation, (STRONG, WEAK)),
    ("rule_extrapolation", rule_extrapolation, (STRONG,)),
    ("rule_interpolation", rule_interpolation, (STRONG, WEAK)),
)


@dataclass(frozen=True)
class ClosureResult:
    derivations: Tuple[Derivation, ...]
    rounds: int
    bound_reached: bool
    depth_bound: int
    mode: str = STRONG
    _by_fact: Dict[Fact, Derivation] = field(default_factory=dict, compare=False, repr=False)

    def __iter__(self) -> Iterator[Derivation]:
        return iter(self.derivations)

    def __len__(self) -> int:
        return len(self.derivations)

    @property
    def derived(self) -> List[Derivation]:
        return [d for d in self.derivations if not d.asserted]

    def find(self, fact: Fact) -> Optional[Derivation]:
        fact = fact.normalized()
        found = self._by_fact.get(fact)
        if found is None and isinstance(fact, AnalogyAssertion) and not fact.strong:
            found = self._by_fact.get(fact_strong(fact))
        return found

    def __contains__(self, fact: Fact) -> bool:
        return self.find(fact) is not None

    def report(self) -> ClosureReport:
        return ClosureReport(
            facts=[d.trace() for d in self.derivations],
            derived=len(self.derived),
            rounds=self.rounds,
            bound_reached=self.bound_reached,
            depth_bound=self.depth_bound,
        )


def closure(
    tbox: TBox,
    witness: Optional[Interpretation] = None,
    mode: Optional[str] = None,
    depth_bound: int = 3,
    max_facts: int = 5000,
    relevance: bool = True,
) -> ClosureResult:
    """Apply every rule sound in `mode` until nothing new is derived.

    Non-emptiness side conditions are discharged from the TBox's `nonempty`
    lines, or checked in `witness`, which must itself be a model of the TBox.
    """
    if mode is None:
        mode = witness.mode if witness is not None else STRONG
    if mode not in (STRONG, WEAK):
        raise ValueError(f"unknown mode '{mode}'")
    if witness is not None:
        report = satisfies_tbox(witness, tbox)
        if not report.holds:
            failure = report.failures[0]
            raise WitnessError(f"the witness is not a model of the TBox: {failure.axiom} does not hold")

    base = FactBase(tbox, witness, mode, depth_bound, max_facts, relevance)
    for fact in list(tbox.cis) + list(tbox.anas):
        base.add(fact, ASSERTED)

    rounds = 0
    changed = not tbox.empty
    while changed and not base.full:
        rounds += 1
        changed = False
        for name, rule, modes in RULES:
            if mode not in modes:
                continue
            for fact, premises, sides in rule(base):
                if base.add(fact, name, premises, sides) is not None:
                    changed = True
                if base.full:
                    break
            if base.full:
                base.bound_reached = True
                break

    derivations = tuple(base.facts.values())
    logger.info("closure_finished", source=tbox.source, mode=mode, facts=len(derivations),
                derived=sum(1 for d in derivations if not d.asserted), rounds=rounds,
                bound_reached=base.bound_reached)
    return ClosureResult(derivations, rounds, base.bound_reached, depth_bound, mode, dict(base.facts))
