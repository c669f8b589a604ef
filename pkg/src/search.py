"""Exhaustive bounded countermodel search.

Candidate interpretations are enumerated by increasing feature count. Within
one feature count the structure (partition, analogy classes, bijections,
forbidden sets, κ tables) is fixed first, then natural atoms are assigned one
at a time and every axiom is checked as soon as all of its atoms have values.

Features are named by position within their domain and bijections map equal
positions. Every checked property is invariant under renaming features, so
this loses no countermodel.
"""
from dataclasses import dataclass, replace
from itertools import product
from string import ascii_lowercase
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Set, Tuple, Union

import structlog

from .concepts import Concept, atom_names, role_names, to_sexpr
from .documents import to_document
from .exceptions import BoundsError, VocabularyError
from .features import AnalogyStructure, FeatureSet, FeatureSpace, subsets
from .inference import fact_text
from .model import ADDITIVE, STRONG, WEAK, Interpretation, KappaTable, is_nonempty, satisfies_ci
from .parser import parse_axiom
from .schemas import CountermodelResult
from .tbox import AnalogyAssertion, Inclusion, TBox, satisfies_tbox
from .translations import satisfies_ana
from .validation import validate_interpretation

logger = structlog.get_logger(__name__)

CAVEAT = (
    "no countermodel within these bounds; this is not a proof of entailment, "
    "larger interpretations were not examined"
)

Axiom = Union[Inclusion, AnalogyAssertion]


@dataclass(frozen=True)
class _Check:
    label: str
    atoms: Set[str]
    test: Callable[[Interpretation], bool]


@dataclass(frozen=True)
class SearchOutcome:
    query: Axiom
    mode: str
    bounds: Dict[str, int]
    candidates: int
    interpretation: Optional[Interpretation] = None

    @property
    def found(self) -> bool:
        return self.interpretation is not None

    def result(self) -> CountermodelResult:
        return CountermodelResult(
            status="countermodel" if self.found else "none-within-bounds",
            query=fact_text(self.query),
            mode=self.mode,
            bounds=self.bounds,
            candidates=self.candidates,
            interpretation=to_document(self.interpretation, "countermodel") if self.found else None,
            caveat=None if self.found else CAVEAT,
        )


def _axiom_check(axiom: Axiom) -> Callable[[Interpretation], bool]:
    if isinstance(axiom, Inclusion):
        return lambda i: satisfies_ci(i, axiom.sub, axiom.sup)
    return lambda i: satisfies_ana(i, axiom.c1, axiom.c2, axiom.d1, axiom.d2, strong=axiom.strong)


def _atoms(concepts: Sequence[Concept]) -> Set[str]:
    return set().union(*(atom_names(c) for c in concepts)) if concepts else set()


def integer_partitions(n: int, largest: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Block-size patterns of n features, largest block first"""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for size in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - size, size):
            yield (size,) + rest


def analogy_classes(sizes: Tuple[int, ...]) -> Iterator[List[List[int]]]:
    """Partitions of the domains into classes of equal-size domains"""
    def extend(domain: int, classes: List[List[int]]) -> Iterator[List[List[int]]]:
        if domain > len(sizes):
            yield [list(c) for c in classes]
            return
        for c in classes:
            if sizes[c[0] - 1] == sizes[domain - 1]:
                c.append(domain)
                yield from extend(domain + 1, classes)
                c.pop()
        classes.append([domain])
        yield from extend(domain + 1, classes)
        classes.pop()

    yield from extend(1, [])


def _kappa_tables(
    roles: Sequence[str], blocks: List[List[str]], classes: List[List[int]]
) -> Iterator[Dict[str, KappaTable]]:
    features = [f for members in classes for f in blocks[members[0] - 1]]
    options = [
        [s for s in subsets(blocks[_domain(f, blocks) - 1]) if s]
        for f in features
    ]
    per_role = [
        dict(zip((frozenset([f]) for f in features), images))
        for images in product(*options)
    ]
    for combination in product(per_role, repeat=len(roles)):
        yield {role: KappaTable(role, ADDITIVE, entries) for role, entries in zip(roles, combination)}


def _domain(feature: str, blocks: List[List[str]]) -> int:
    return next(i for i, block in enumerate(blocks, start=1) if feature in block)


def candidate_structures(
    n: int, mode: str, roles: Sequence[str] = (), within_domain_forbidden: bool = False
) -> Iterator[Interpretation]:
    """Every atom-free interpretation skeleton over n features"""
    for sizes in integer_partitions(n):
        blocks = [[f"{ascii_lowercase[p]}{i}" for p in range(size)] for i, size in enumerate(sizes, start=1)]
        features = [f for block in blocks for f in block]
        space_features = frozenset(features)
        for classes in analogy_classes(sizes):
            bijections = {
                (members[0], j): dict(zip(blocks[members[0] - 1], blocks[j - 1]))
                for members in classes for j in members[1:]
            }
            base: List[FeatureSet] = [space_features]
            if mode == STRONG:
                for members in classes:
                    for s, t in product(members, members):
                        if s < t:
                            base.extend(frozenset((f, g)) for f in blocks[s - 1] for g in blocks[t - 1])
            variants = [base]
            if within_domain_forbidden:
                for members in classes:
                    ref = blocks[members[0] - 1]
                    for x in range(len(ref)):
                        for y in range(x + 1, len(ref)):
                            closed = [frozenset((blocks[j - 1][x], blocks[j - 1][y])) for j in members]
                            variants.append(base + closed)
            for forbidden in variants:
                space = FeatureSpace.build(features, blocks, list(dict.fromkeys(forbidden)))
                analogy = AnalogyStructure.build(space, list(bijections), bijections)
                tables: Iterator[Dict[str, KappaTable]] = (
                    _kappa_tables(roles, blocks, classes) if roles else iter([{}])
                )
                for kappa in tables:
                    yield Interpretation(space, analogy, mode, {}, kappa=kappa)


def _resolve_query(tbox: TBox, query: Union[str, Axiom]) -> Axiom:
    if isinstance(query, str):
        return parse_axiom(query, tbox.natural, tbox.intra)
    return query


def countermodel_search(
    tbox: TBox,
    query: Union[str, Axiom],
    max_features: int = 6,
    max_atoms: int = 4,
    mode: str = STRONG,
    hard_features: int = 8,
    hard_atoms: int = 6,
    within_domain_forbidden: bool = False,
) -> SearchOutcome:
    """Look for an interpretation that models `tbox` and falsifies `query`"""
    if mode not in (STRONG, WEAK):
        raise ValueError(f"unknown mode '{mode}'")
    if max_features > hard_features:
        raise BoundsError(f"max_features {max_features} is above the search cap {hard_features}")
    if max_atoms > hard_atoms:
        raise BoundsError(f"max_atoms {max_atoms} is above the search cap {hard_atoms}")
    query = _resolve_query(tbox, query)

    axioms: List[Axiom] = list(tbox.cis) + list(tbox.anas)
    every_concept = [c for a in axioms + [query] for c in a.concepts()] + list(tbox.nonempty)
    order: List[str] = []
    for concept in every_concept:
        for name in sorted(atom_names(concept)):
            if name not in order:
                order.append(name)
    plain = [name for name in order if name not in tbox.natural]
    if plain:
        raise VocabularyError(f"the search assigns natural atoms only; declare {', '.join(plain)} natural")
    roles = sorted(set().union(*(role_names(c) for c in every_concept)) if every_concept else set())
    ordinary = [r for r in roles if r not in tbox.intra]
    if ordinary:
        raise VocabularyError(f"the search handles intra-domain roles only; declare {', '.join(ordinary)} intra")
    if len(order) > max_atoms:
        raise BoundsError(f"{len(order)} atoms exceed max_atoms {max_atoms}")

    checks = [_Check(a.to_text(), _atoms(a.concepts()), _axiom_check(a)) for a in axioms]
    checks += [_Check(f"nonempty {to_sexpr(c)}", atom_names(c), lambda i, c=c: is_nonempty(i, c))
               for c in tbox.nonempty]
    query_holds = _axiom_check(query)
    checks.append(_Check("query", _atoms(query.concepts()), lambda i: not query_holds(i)))

    # each check runs right after the last of its atoms is assigned
    schedule: Dict[int, List[_Check]] = {}
    for check in checks:
        position = max((order.index(a) for a in check.atoms), default=-1)
        schedule.setdefault(position, []).append(check)

    bounds = {"max_features": max_features, "max_atoms": max_atoms}
    candidates = 0

    def assign(skeleton: Interpretation, options: List[FeatureSet], position: int,
               values: Dict[str, FeatureSet]) -> Optional[Interpretation]:
        nonlocal candidates
        if position == len(order):
            candidates += 1
            interp = replace(skeleton, natural_atoms=dict(values))
            if _confirmed(interp, tbox, query):
                return interp
            logger.error("countermodel_rejected", query=fact_text(query), features=len(skeleton.space.features))
            return None
        for value in options:
            values[order[position]] = value
            interp = replace(skeleton, natural_atoms=dict(values))
            if all(check.test(interp) for check in schedule.get(position, [])):
                found = assign(skeleton, options, position + 1, values)
                if found is not None:
                    return found
        values.pop(order[position], None)
        return None

    for n in range(1, max_features + 1):
        for skeleton in candidate_structures(n, mode, roles, within_domain_forbidden):
            if not validate_interpretation(skeleton).valid:
                continue
            if not all(check.test(skeleton) for check in schedule.get(-1, [])):
                continue
            # an inconsistent φ gives an atom the empty extension
            options = skeleton.space.consistent_family() + [skeleton.space.universe]
            found = assign(skeleton, options, 0, {})
            if found is not None:
                logger.info("countermodel_found", query=fact_text(query), features=n, candidates=candidates)
                return SearchOutcome(query, mode, bounds, candidates, found)

    logger.info("countermodel_none", query=fact_text(query), candidates=candidates, **bounds)
    return SearchOutcome(query, mode, bounds, candidates)


def _confirmed(interp: Interpretation, tbox: TBox, query: Axiom) -> bool:
    """Independent re-check of a countermodel before it is reported"""
    return (
        validate_interpretation(interp).valid
        and satisfies_tbox(interp, tbox).holds
        and not _axiom_check(query)(interp)
    )
