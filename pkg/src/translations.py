"""Domain translations σ_U and the translation sets μ(C, D).

μ is enumerated as partial injective maps from the domains of φ(C) onto
analogous domains, then filtered by the three conditions: the image of φ(C)
is φ(D), every source domain is used by φ(C), and no target collides with a
domain of φ(C) that stays put. `naive_mu` enumerates every subset of ∼ and is
kept as an independent cross-check.
"""
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple
from weakref import WeakKeyDictionary

import structlog

from .concepts import Concept, require_natural, to_sexpr
from .exceptions import TranslationError
from .features import AnalogyStructure, DomainPair, FeatureSet, FeatureSpace
from .model import Interpretation, phi

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class DomainTranslation:
    pairs: FrozenSet[DomainPair] = frozenset()

    def __post_init__(self):
        sources = [s for s, _ in self.pairs]
        targets = [t for _, t in self.pairs]
        if len(set(sources)) != len(sources):
            raise TranslationError(f"domain translation {self.label} has repeated source domains")
        if len(set(targets)) != len(targets):
            raise TranslationError(f"domain translation {self.label} has repeated target domains")

    @classmethod
    def of(cls, pairs: Iterable[Iterable[int]]) -> "DomainTranslation":
        return cls(frozenset(tuple(p) for p in pairs))

    @property
    def sources(self) -> FrozenSet[int]:
        return frozenset(s for s, _ in self.pairs)

    @property
    def targets(self) -> FrozenSet[int]:
        return frozenset(t for _, t in self.pairs)

    def sorted_pairs(self) -> List[DomainPair]:
        return sorted(self.pairs)

    @property
    def label(self) -> str:
        if not self.pairs:
            return "σ_∅"
        return "σ_{" + ",".join(f"({s},{t})" for s, t in self.sorted_pairs()) + "}"

    def __lt__(self, other: "DomainTranslation") -> bool:
        return (len(self.pairs), self.sorted_pairs()) < (len(other.pairs), other.sorted_pairs())


IDENTITY = DomainTranslation()


def check_translation(analogy: AnalogyStructure, translation: DomainTranslation) -> None:
    for s, t in translation.sorted_pairs():
        if s == t or not analogy.equivalent(s, t):
            raise TranslationError(f"pair ({s},{t}) of {translation.label} is not a pair of distinct analogous domains")


def apply_translation(
    space: FeatureSpace, analogy: AnalogyStructure, translation: DomainTranslation, features: FeatureSet
) -> FeatureSet:
    features = space.check_features(features)
    moved = {s: t for s, t in translation.pairs}
    image = features - frozenset().union(*(space.domain(s) for s in moved))
    for s, t in moved.items():
        image |= analogy.apply_pair(s, t, features & space.domain(s))
    return image


def apply(interpretation: Interpretation, translation: DomainTranslation, features: Iterable[str]) -> FeatureSet:
    check_translation(interpretation.analogy, translation)
    return apply_translation(interpretation.space, interpretation.analogy, translation, frozenset(features))


def invert(translation: DomainTranslation) -> DomainTranslation:
    return DomainTranslation(frozenset((t, s) for s, t in translation.pairs))


def compose(first: DomainTranslation, second: DomainTranslation) -> DomainTranslation:
    """U ⊕ V: apply U, then V"""
    chained = {(i, k) for i, j in first.pairs for j2, k in second.pairs if j == j2 and i != k}
    kept_first = {(i, j) for i, j in first.pairs if j not in second.sources}
    kept_second = {(j, k) for j, k in second.pairs if j not in first.targets}
    return DomainTranslation(frozenset(chained | kept_first | kept_second))


def _admissible(
    space: FeatureSpace,
    analogy: AnalogyStructure,
    translation: DomainTranslation,
    source: FeatureSet,
    target: FeatureSet,
    source_domains: FrozenSet[int],
) -> bool:
    if not translation.sources <= source_domains:
        return False
    if translation.targets & (source_domains - translation.sources):
        return False
    return apply_translation(space, analogy, translation, source) == target


_mu_caches: "WeakKeyDictionary[AnalogyStructure, Dict[Tuple[FeatureSet, FeatureSet], FrozenSet[DomainTranslation]]]"
_mu_caches = WeakKeyDictionary()


def mu_sets(
    space: FeatureSpace, analogy: AnalogyStructure, source: FeatureSet, target: FeatureSet
) -> FrozenSet[DomainTranslation]:
    """All domain translations carrying the feature set `source` onto `target`"""
    cache = _mu_caches.setdefault(analogy, {})
    key = (source, target)
    if key in cache:
        return cache[key]

    source_domains = space.delta(source)
    ordered = sorted(source_domains)
    found: List[DomainTranslation] = []

    def extend(position: int, chosen: List[DomainPair], used: FrozenSet[int]) -> None:
        if position == len(ordered):
            candidate = DomainTranslation(frozenset(chosen))
            if _admissible(space, analogy, candidate, source, target, source_domains):
                found.append(candidate)
            return
        s = ordered[position]
        extend(position + 1, chosen, used)
        for t in sorted(analogy.class_of(s) - {s} - used):
            if (s, t) in analogy.sigma:
                extend(position + 1, chosen + [(s, t)], used | {t})

    extend(0, [], frozenset())
    result = frozenset(found)
    cache[key] = result
    return result


def _naive_image(
    space: FeatureSpace, analogy: AnalogyStructure, chosen: Tuple[DomainPair, ...], features: FeatureSet
) -> FeatureSet:
    image = set()
    for f in features:
        home = space.domain_of(f)
        for s, t in chosen:
            if s == home:
                image.add(analogy.sigma[(s, t)].get(f, f))
                break
        else:
            image.add(f)
    return frozenset(image)


def naive_mu_sets(
    space: FeatureSpace, analogy: AnalogyStructure, source: FeatureSet, target: FeatureSet
) -> FrozenSet[DomainTranslation]:
    """Every subset of ∼ checked against the three μ conditions, feature by feature"""
    candidates = [p for p in analogy.pairs(reflexive=False) if p in analogy.sigma]
    used = {space.domain_of(f) for f in source}
    found = set()
    for size in range(len(candidates) + 1):
        for chosen in combinations(candidates, size):
            sources = [s for s, _ in chosen]
            targets = [t for _, t in chosen]
            if len(set(sources)) < size or len(set(targets)) < size:
                continue
            if any(s not in used for s in sources):
                continue
            if any(t in used and t not in sources for t in targets):
                continue
            if _naive_image(space, analogy, chosen, source) == target:
                found.add(DomainTranslation(frozenset(chosen)))
    return frozenset(found)


def mu(interpretation: Interpretation, source: Concept, target: Concept) -> FrozenSet[DomainTranslation]:
    return mu_sets(
        interpretation.space, interpretation.analogy, phi(interpretation, source), phi(interpretation, target)
    )


def naive_mu(interpretation: Interpretation, source: Concept, target: Concept) -> FrozenSet[DomainTranslation]:
    return naive_mu_sets(
        interpretation.space, interpretation.analogy, phi(interpretation, source), phi(interpretation, target)
    )


def sorted_translations(translations: Iterable[DomainTranslation]) -> List[DomainTranslation]:
    return sorted(translations)


def ana_witnesses(
    interpretation: Interpretation,
    c1: Concept,
    c2: Concept,
    d1: Concept,
    d2: Concept,
) -> Tuple[FrozenSet[DomainTranslation], FrozenSet[DomainTranslation]]:
    for concept in (c1, c2, d1, d2):
        require_natural(concept, interpretation.natural_names, interpretation.intra_roles)
    return mu(interpretation, c1, c2), mu(interpretation, d1, d2)


def satisfies_ana(
    interpretation: Interpretation,
    c1: Concept,
    c2: Concept,
    d1: Concept,
    d2: Concept,
    strong: bool = False,
) -> bool:
    left, right = ana_witnesses(interpretation, c1, c2, d1, d2)
    holds = bool(left & right) and (not strong or left == right)
    logger.debug(
        "ana_checked",
        assertion=" : ".join(to_sexpr(c) for c in (c1, c2)) + " :: " + " : ".join(to_sexpr(c) for c in (d1, d2)),
        strong=strong,
        holds=holds,
    )
    return holds


def shared_translation(
    interpretation: Interpretation, c1: Concept, c2: Concept, d1: Concept, d2: Concept
) -> Optional[DomainTranslation]:
    left, right = ana_witnesses(interpretation, c1, c2, d1, d2)
    common = sorted_translations(left & right)
    return common[0] if common else None
