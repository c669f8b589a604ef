"""Feature-enriched interpretations and concept evaluation.

The domain of an interpretation is one canonical individual per consistent
feature set plus any named extras. Natural concepts, in-between concepts and
existentials over intra-domain roles denote principal filters
{d | R ⊆ π(d)}; they are evaluated symbolically and only materialized when a
plain atom or an ordinary role forces an explicit individual set.
"""
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import structlog

from .concepts import And, Atom, Between, Bot, Concept, Exists, Top, to_sexpr
from .exceptions import DocumentError, VocabularyError
from .features import AnalogyStructure, FeatureSet, FeatureSpace, format_features

logger = structlog.get_logger(__name__)

STRONG = "strong"
WEAK = "weak"
MODES = (STRONG, WEAK)

TABULAR = "tabular"
ADDITIVE = "additive"


@dataclass(frozen=True)
class Individual:
    features: FeatureSet
    name: Optional[str] = None

    @property
    def canonical(self) -> bool:
        return self.name is None

    @property
    def label(self) -> str:
        return self.name if self.name is not None else format_features(self.features)

    def sort_key(self) -> Tuple[int, str, Tuple[str, ...]]:
        return (0 if self.name is None else 1, self.name or "", tuple(sorted(self.features)))


def sorted_individuals(individuals: Iterable[Individual]) -> List[Individual]:
    return sorted(individuals, key=Individual.sort_key)


@dataclass(frozen=True)
class KappaExpansion:
    """κ restricted to each domain, keyed by the members of that domain's consistent family"""

    per_domain: Mapping[int, Mapping[FeatureSet, FeatureSet]]
    missing: Tuple[Tuple[int, FeatureSet], ...] = ()
    conflicts: Tuple[Tuple[int, FeatureSet, FeatureSet, FeatureSet], ...] = ()
    stray: Tuple[FeatureSet, ...] = ()


@dataclass(frozen=True)
class KappaTable:
    """The feature-level map of an intra-domain role.

    In tabular mode `entries` maps consistent single-domain sets to their
    image; in additive mode it maps singletons and κ(F) is the union of the
    images of the members of F. Entries may be given for one domain of an
    analogy class and are carried to the others through the bijections.
    """

    role: str
    mode: str
    entries: Mapping[FeatureSet, FeatureSet]

    def expand(self, space: FeatureSpace, analogy: AnalogyStructure, cap: int = 16) -> KappaExpansion:
        per_domain: Dict[int, Dict[FeatureSet, FeatureSet]] = {}
        missing: List[Tuple[int, FeatureSet]] = []
        conflicts: List[Tuple[int, FeatureSet, FeatureSet, FeatureSet]] = []
        keys_used = set()

        for j in space.domain_ids:
            singles: Dict[str, Optional[FeatureSet]] = {}
            if self.mode == ADDITIVE:
                for f in sorted(space.domain(j)):
                    key = frozenset([f])
                    found = self._propagated(analogy, j, key, keys_used)
                    if found and any(other != found[0] for other in found[1:]):
                        other = next(o for o in found[1:] if o != found[0])
                        conflicts.append((j, key, found[0], other))
                    singles[f] = found[0] if found else None

            table: Dict[FeatureSet, FeatureSet] = {}
            for subset in space.domain_family(j, cap):
                if not subset:
                    table[subset] = frozenset()
                    continue
                if self.mode == ADDITIVE:
                    images = [singles[f] for f in sorted(subset)]
                    if any(image is None for image in images):
                        missing.append((j, subset))
                        continue
                    table[subset] = frozenset().union(*images)
                    continue
                found = self._propagated(analogy, j, subset, keys_used)
                if not found:
                    missing.append((j, subset))
                    continue
                for other in found[1:]:
                    if other != found[0]:
                        conflicts.append((j, subset, found[0], other))
                        break
                table[subset] = found[0]
            per_domain[j] = table

        stray = tuple(sorted((k for k in self.entries if k not in keys_used), key=sorted))
        return KappaExpansion(per_domain, tuple(missing), tuple(conflicts), stray)

    def _propagated(
        self,
        analogy: AnalogyStructure,
        j: int,
        subset: FeatureSet,
        keys_used: set,
    ) -> List[FeatureSet]:
        """Every value κ(subset) receives from a given entry, the direct entry first"""
        values: List[FeatureSet] = []
        for i in [j] + sorted(analogy.class_of(j) - {j}):
            if (j, i) not in analogy.sigma or (i, j) not in analogy.sigma:
                continue
            source = analogy.apply_pair(j, i, subset)
            if source in self.entries:
                keys_used.add(source)
                values.append(analogy.apply_pair(i, j, self.entries[source]))
        return values


@dataclass(frozen=True)
class Denotation:
    """A concept's extension, either as a principal filter or as explicit members"""

    filter: Optional[FeatureSet] = None
    members: Optional[FrozenSet[Individual]] = None

    @property
    def symbolic(self) -> bool:
        return self.filter is not None


@dataclass(frozen=True, eq=False)
class Interpretation:
    space: FeatureSpace
    analogy: AnalogyStructure
    mode: str = STRONG
    natural_atoms: Mapping[str, FeatureSet] = field(default_factory=dict)
    plain_atoms: Mapping[str, FrozenSet[Individual]] = field(default_factory=dict)
    roles: Mapping[str, FrozenSet[Tuple[Individual, Individual]]] = field(default_factory=dict)
    kappa: Mapping[str, KappaTable] = field(default_factory=dict)
    extras: Tuple[Individual, ...] = ()
    enumeration_cap: int = 16

    @property
    def intra_roles(self) -> FrozenSet[str]:
        return frozenset(self.kappa)

    @property
    def natural_names(self) -> FrozenSet[str]:
        return frozenset(self.natural_atoms)

    @property
    def atom_names(self) -> FrozenSet[str]:
        return frozenset(self.natural_atoms) | frozenset(self.plain_atoms)

    @cached_property
    def individuals(self) -> Tuple[Individual, ...]:
        canonical = [Individual(s) for s in self.space.consistent_family(self.enumeration_cap)]
        return tuple(sorted_individuals(canonical + list(self.extras)))

    @cached_property
    def kappa_expansions(self) -> Dict[str, KappaExpansion]:
        return {
            role: table.expand(self.space, self.analogy, self.enumeration_cap)
            for role, table in sorted(self.kappa.items())
        }

    def with_mode(self, mode: str) -> "Interpretation":
        return replace(self, mode=mode)

    def individual(self, features: Iterable[str], name: Optional[str] = None) -> Individual:
        return Individual(self.space.check_features(features), name)

    def kappa_of(self, role: str, features: FeatureSet) -> FeatureSet:
        if role not in self.kappa:
            raise VocabularyError(f"'{role}' is not an intra-domain role")
        if not self.space.is_consistent(features):
            return self.space.universe
        expansion = self.kappa_expansions[role]
        image: FeatureSet = frozenset()
        for i in sorted(self.space.delta(features)):
            part = features & self.space.domain(i)
            try:
                image |= expansion.per_domain[i][part]
            except KeyError:
                raise DocumentError(f"kappa for role '{role}' is undefined on {format_features(part)}") from None
        return image

    def evaluate(self, concept: Concept) -> Denotation:
        if isinstance(concept, Top):
            return Denotation(filter=frozenset())
        if isinstance(concept, Bot):
            return Denotation(filter=self.space.universe)
        if isinstance(concept, Atom):
            if concept.name in self.natural_atoms:
                return Denotation(filter=self.natural_atoms[concept.name])
            if concept.name in self.plain_atoms:
                return Denotation(members=self.plain_atoms[concept.name])
            raise VocabularyError(f"unknown atom '{concept.name}'")
        if isinstance(concept, And):
            left, right = self.evaluate(concept.left), self.evaluate(concept.right)
            if left.symbolic and right.symbolic:
                return Denotation(filter=left.filter | right.filter)
            return Denotation(members=self.members(left) & self.members(right))
        if isinstance(concept, Between):
            return Denotation(filter=self.phi_of(self.evaluate(concept.left)) & self.phi_of(self.evaluate(concept.right)))
        if isinstance(concept, Exists):
            filler = self.evaluate(concept.filler)
            if concept.role in self.kappa:
                return Denotation(filter=self.kappa_of(concept.role, self.phi_of(filler)))
            if concept.role in self.roles:
                return Denotation(members=frozenset(
                    d for d, e in self.roles[concept.role] if self.contains(filler, e)
                ))
            raise VocabularyError(f"unknown role '{concept.role}'")
        raise TypeError(f"not a concept: {concept!r}")

    def contains(self, denotation: Denotation, individual: Individual) -> bool:
        if denotation.symbolic:
            return denotation.filter <= individual.features
        return individual in denotation.members

    def members(self, denotation: Denotation) -> FrozenSet[Individual]:
        if denotation.symbolic:
            if not self.space.is_consistent(denotation.filter):
                return frozenset(d for d in self.extras if denotation.filter <= d.features)
            return frozenset(d for d in self.individuals if denotation.filter <= d.features)
        return denotation.members

    def is_empty(self, denotation: Denotation) -> bool:
        if denotation.symbolic:
            return not self.space.is_consistent(denotation.filter) and not any(
                denotation.filter <= d.features for d in self.extras
            )
        return not denotation.members

    def phi_of(self, denotation: Denotation) -> FeatureSet:
        if denotation.symbolic:
            return denotation.filter if not self.is_empty(denotation) else self.space.universe
        if not denotation.members:
            return self.space.universe
        return frozenset.intersection(*(d.features for d in denotation.members))

    def includes(self, sub: Denotation, sup: Denotation) -> bool:
        if self.is_empty(sub):
            return True
        if sub.symbolic and sup.symbolic and self.space.is_consistent(sub.filter):
            # the canonical individual for sub.filter is the least member of sub
            return sup.filter <= sub.filter
        return all(self.contains(sup, d) for d in self.members(sub))


def phi(interpretation: Interpretation, concept: Concept) -> FeatureSet:
    return interpretation.phi_of(interpretation.evaluate(concept))


def extension(interpretation: Interpretation, concept: Concept) -> FrozenSet[Individual]:
    return interpretation.members(interpretation.evaluate(concept))


def delta(interpretation: Interpretation, concept: Concept) -> FrozenSet[int]:
    return interpretation.space.delta(phi(interpretation, concept))


def is_nonempty(interpretation: Interpretation, concept: Concept) -> bool:
    return not interpretation.is_empty(interpretation.evaluate(concept))


def satisfies_ci(interpretation: Interpretation, sub: Concept, sup: Concept) -> bool:
    result = interpretation.includes(interpretation.evaluate(sub), interpretation.evaluate(sup))
    logger.debug("ci_checked", sub=to_sexpr(sub), sup=to_sexpr(sup), holds=result)
    return result
