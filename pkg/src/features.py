"""Feature spaces, forbidden combinations and the analogy structure between domains.

Domains are numbered from 1, matching the document format. Feature sets are
frozensets of feature identifiers; anything that must be reproducible
iterates them in sorted order.
"""
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import structlog

from .exceptions import BoundsError, TranslationError, VocabularyError

logger = structlog.get_logger(__name__)

FeatureSet = FrozenSet[str]
DomainPair = Tuple[int, int]

EMPTY: FeatureSet = frozenset()


def feature_set(features: Iterable[str]) -> FeatureSet:
    return frozenset(features)


def format_features(features: Iterable[str]) -> str:
    return "{" + ",".join(sorted(features)) + "}"


def subsets(features: Iterable[str]) -> Iterable[FeatureSet]:
    ordered = sorted(features)
    for size in range(len(ordered) + 1):
        for combo in combinations(ordered, size):
            yield frozenset(combo)


@dataclass(frozen=True)
class FeatureSpace:
    """The feature set, its partition into domains and the forbidden combinations"""

    features: Tuple[str, ...]
    partition: Tuple[FeatureSet, ...]
    forbidden: Tuple[FeatureSet, ...]
    universe_inserted: bool = False

    @classmethod
    def build(
        cls,
        features: Sequence[str],
        partition: Sequence[Iterable[str]],
        forbidden: Sequence[Iterable[str]] = (),
    ) -> "FeatureSpace":
        universe = frozenset(features)
        blocks = tuple(frozenset(block) for block in partition)
        forbidden_sets = [frozenset(x) for x in forbidden]
        inserted = universe not in forbidden_sets
        if inserted:
            forbidden_sets.append(universe)
        return cls(tuple(features), blocks, tuple(forbidden_sets), inserted)

    @cached_property
    def universe(self) -> FeatureSet:
        return frozenset(self.features)

    @property
    def k(self) -> int:
        return len(self.partition)

    @property
    def domain_ids(self) -> range:
        return range(1, self.k + 1)

    @cached_property
    def _domain_index(self) -> Dict[str, int]:
        index: Dict[str, int] = {}
        for i, block in enumerate(self.partition, start=1):
            for f in block:
                index.setdefault(f, i)
        return index

    def domain(self, i: int) -> FeatureSet:
        if not 1 <= i <= self.k:
            raise VocabularyError(f"unknown domain id {i}")
        return self.partition[i - 1]

    def domain_of(self, feature: str) -> int:
        try:
            return self._domain_index[feature]
        except KeyError:
            raise VocabularyError(f"unknown feature '{feature}'") from None

    def check_features(self, features: Iterable[str]) -> FeatureSet:
        result = frozenset(features)
        unknown = result - self.universe
        if unknown:
            raise VocabularyError(f"unknown feature(s) {format_features(unknown)}")
        return result

    def is_consistent(self, features: FeatureSet) -> bool:
        return not any(x <= features for x in self.forbidden)

    def consistent(self, features: Iterable[str]) -> bool:
        return self.is_consistent(self.check_features(features))

    def delta(self, features: FeatureSet) -> FrozenSet[int]:
        return frozenset(self._domain_index[f] for f in features if f in self._domain_index)

    def restrict(self, features: FeatureSet, i: int) -> FeatureSet:
        return features & self.domain(i)

    def domain_family(self, i: int, cap: int = 16) -> List[FeatureSet]:
        """Consistent subsets of a single domain"""
        block = self.domain(i)
        if len(block) > cap:
            raise BoundsError(f"domain {i} has {len(block)} features, above the enumeration cap {cap}")
        return [s for s in subsets(block) if self.is_consistent(s)]

    def consistent_family(self, cap: int = 16) -> List[FeatureSet]:
        if len(self.features) > cap:
            raise BoundsError(
                f"{len(self.features)} features is above the enumeration cap {cap}; "
                "only natural concepts can be evaluated on this space"
            )
        return [s for s in subsets(self.features) if self.is_consistent(s)]


class _UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {i: i for i in items}

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True, eq=False)
class AnalogyStructure:
    """The equivalence relation over domains and the bijections between analogous domains.

    `given` holds the bijections as supplied; `sigma` holds the completed
    family for every ordered pair of analogous domains, derived from each
    class's smallest domain by composition and inversion. Anything that
    prevented a clean completion is kept in `problems` for the validator.
    """

    generators: Tuple[DomainPair, ...]
    given: Mapping[DomainPair, Mapping[str, str]]
    classes: Tuple[FrozenSet[int], ...]
    sigma: Mapping[DomainPair, Mapping[str, str]]
    problems: Tuple[Tuple[str, str, dict], ...] = field(default=())

    @classmethod
    def build(
        cls,
        space: FeatureSpace,
        generators: Iterable[DomainPair] = (),
        given: Optional[Mapping[DomainPair, Mapping[str, str]]] = None,
    ) -> "AnalogyStructure":
        given = {pair: dict(mapping) for pair, mapping in (given or {}).items()}
        generators = tuple(sorted({tuple(p) for p in generators}))
        problems: List[Tuple[str, str, dict]] = []

        uf = _UnionFind(space.domain_ids)
        for s, t in list(generators) + list(given):
            if s not in uf.parent or t not in uf.parent:
                raise VocabularyError(f"analogy between unknown domains ({s},{t})")
            uf.union(s, t)
        grouped: Dict[int, Set[int]] = {}
        for i in space.domain_ids:
            grouped.setdefault(uf.find(i), set()).add(i)
        classes = tuple(frozenset(c) for _, c in sorted(grouped.items()))

        edges: Dict[DomainPair, Dict[str, str]] = {}
        for (s, t), mapping in sorted(given.items()):
            problem = _bijection_problem(space, s, t, mapping)
            if problem:
                problems.append(("bijection-coherence", problem, {"pair": [s, t]}))
                continue
            edges[(s, t)] = mapping
            edges.setdefault((t, s), {v: k for k, v in mapping.items()})

        from_root: Dict[int, Dict[str, str]] = {}
        for members in classes:
            root = min(members)
            sizes = {len(space.domain(i)) for i in members}
            if len(sizes) > 1:
                problems.append((
                    "bijection-coherence",
                    "analogous domains differ in size",
                    {"domains": sorted(members)},
                ))
            from_root[root] = {f: f for f in space.domain(root)}
            queue = deque([root])
            while queue:
                s = queue.popleft()
                for (a, b), mapping in sorted(edges.items()):
                    if a != s or b in from_root:
                        continue
                    from_root[b] = {f: mapping[g] for f, g in from_root[s].items() if g in mapping}
                    queue.append(b)
            for i in sorted(members - set(from_root)):
                problems.append((
                    "bijection-coherence",
                    f"no bijection path from domain {root} to domain {i}",
                    {"pair": [root, i]},
                ))

        sigma: Dict[DomainPair, Dict[str, str]] = {}
        for members in classes:
            reachable = sorted(i for i in members if i in from_root)
            for s in reachable:
                inverse_s = {v: k for k, v in from_root[s].items()}
                for t in reachable:
                    if s == t:
                        sigma[(s, t)] = {f: f for f in space.domain(s)}
                    else:
                        sigma[(s, t)] = {
                            f: from_root[t][root_f] for f, root_f in inverse_s.items() if root_f in from_root[t]
                        }

        for (s, t), mapping in sorted(edges.items()):
            if sigma.get((s, t)) != mapping:
                problems.append((
                    "bijection-coherence",
                    f"bijection {s}->{t} conflicts with the composition of the other bijections",
                    {"pair": [s, t]},
                ))
        if problems:
            logger.debug("analogy_structure_problems", count=len(problems))
        return cls(generators, given, classes, sigma, tuple(problems))

    def class_of(self, i: int) -> FrozenSet[int]:
        for members in self.classes:
            if i in members:
                return members
        raise VocabularyError(f"unknown domain id {i}")

    def equivalent(self, s: int, t: int) -> bool:
        return t in self.class_of(s)

    def pairs(self, reflexive: bool = True) -> List[DomainPair]:
        return sorted(
            (s, t)
            for members in self.classes
            for s in members
            for t in members
            if reflexive or s != t
        )

    def sigma_map(self, s: int, t: int) -> Mapping[str, str]:
        try:
            return self.sigma[(s, t)]
        except KeyError:
            raise TranslationError(f"no bijection for ({s},{t}); the domains are not analogous") from None

    def apply_pair(self, s: int, t: int, features: FeatureSet) -> FeatureSet:
        mapping = self.sigma_map(s, t)
        return frozenset(mapping.get(f, f) for f in features)


def _bijection_problem(space: FeatureSpace, s: int, t: int, mapping: Mapping[str, str]) -> Optional[str]:
    source, target = space.domain(s), space.domain(t)
    if set(mapping) != set(source):
        return f"bijection {s}->{t} is not total on domain {s}"
    if set(mapping.values()) != set(target) or len(set(mapping.values())) != len(mapping):
        return f"bijection {s}->{t} is not onto domain {t}"
    return None
