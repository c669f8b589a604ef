"""Seeded generation of random valid interpretations.

Every draw goes through a single numpy Generator created from the seed, so a
seed and a parameter set always produce the same interpretation.
"""
from dataclasses import dataclass
from itertools import product
from string import ascii_lowercase
from typing import Dict, List, Optional, Tuple

import numpy as np
import structlog

from .exceptions import BoundsError, GenerationError
from .features import AnalogyStructure, FeatureSet, FeatureSpace
from .model import STRONG, TABULAR, WEAK, Individual, Interpretation, KappaTable
from .translations import DomainTranslation, apply_translation
from .validation import validate_interpretation

logger = structlog.get_logger(__name__)

ROLE = "r"


@dataclass(frozen=True)
class GeneratorParams:
    max_features: int = 6
    max_domains: int = 4
    mode: str = STRONG
    atoms: int = 5
    translated_atoms: int = 2
    feature_density: float = 0.4
    analogy_density: float = 0.7
    forbidden_density: float = 0.3
    intra_role: bool = True
    extra_individuals: int = 0
    # features of analogous domains never co-occur; None follows the mode (on in strong mode)
    exclusive_domains: Optional[bool] = None
    hard_cap: int = 10
    attempts: int = 20

    def __post_init__(self):
        if self.mode not in (STRONG, WEAK):
            raise ValueError(f"unknown mode '{self.mode}'")
        if self.max_features > self.hard_cap:
            raise BoundsError(f"max_features {self.max_features} is above the generator cap {self.hard_cap}")
        if self.max_features < 2 or self.max_domains < 1:
            raise ValueError("need at least two features and one domain")


def _block_sizes(rng: np.random.Generator, n: int, k: int) -> List[int]:
    sizes = [n // k] * k
    for _ in range(n - sum(sizes)):
        sizes[int(rng.integers(k))] += 1
    return sizes


def _classes(rng: np.random.Generator, sizes: List[int], density: float) -> List[List[int]]:
    classes: List[List[int]] = []
    for domain, size in enumerate(sizes, start=1):
        candidates = [c for c in classes if sizes[c[0] - 1] == size]
        if candidates and rng.random() < density:
            candidates[int(rng.integers(len(candidates)))].append(domain)
        else:
            classes.append([domain])
    return classes


def _consistent_subset(rng: np.random.Generator, space: FeatureSpace, pool: List[str], density: float) -> FeatureSet:
    chosen = [f for f in pool if rng.random() < density]
    while chosen and not space.is_consistent(frozenset(chosen)):
        chosen.pop(int(rng.integers(len(chosen))))
    return frozenset(chosen)


def _random_translation(
    rng: np.random.Generator, analogy: AnalogyStructure, domains: List[int]
) -> DomainTranslation:
    pairs, used = [], set()
    for s in domains:
        options = sorted(analogy.class_of(s) - {s} - used)
        if options and rng.random() < 0.7:
            t = options[int(rng.integers(len(options)))]
            pairs.append((s, t))
            used.add(t)
    return DomainTranslation(frozenset(pairs))


def _attempt(rng: np.random.Generator, params: GeneratorParams) -> Interpretation:
    n = int(rng.integers(2, params.max_features + 1))
    k = int(rng.integers(1, min(params.max_domains, n) + 1))
    sizes = _block_sizes(rng, n, k)
    blocks = [[f"{ascii_lowercase[p]}{i}" for p in range(size)] for i, size in enumerate(sizes, start=1)]
    features = [f for block in blocks for f in block]
    classes = _classes(rng, sizes, params.analogy_density)

    bijections: Dict[Tuple[int, int], Dict[str, str]] = {}
    for members in classes:
        ref = members[0]
        for j in members[1:]:
            order = rng.permutation(len(blocks[j - 1]))
            bijections[(ref, j)] = {f: blocks[j - 1][int(p)] for f, p in zip(blocks[ref - 1], order)}

    forbidden: List[FeatureSet] = [frozenset(features)]
    exclusive = params.mode == STRONG if params.exclusive_domains is None else params.exclusive_domains
    if exclusive:
        for members in classes:
            for s, t in product(members, members):
                if s < t:
                    forbidden.extend(frozenset((f, g)) for f in blocks[s - 1] for g in blocks[t - 1])
    for members in classes:
        ref_block = blocks[members[0] - 1]
        if len(ref_block) < 2 or rng.random() >= params.forbidden_density:
            continue
        size = int(rng.integers(2, len(ref_block) + 1))
        picked = frozenset(ref_block[int(p)] for p in rng.choice(len(ref_block), size=size, replace=False))
        forbidden.append(picked)
        for j in members[1:]:
            forbidden.append(frozenset(bijections[(members[0], j)][f] for f in picked))

    space = FeatureSpace.build(features, blocks, list(dict.fromkeys(forbidden)))
    analogy = AnalogyStructure.build(space, list(bijections), bijections)

    natural: Dict[str, FeatureSet] = {}
    for index in range(1, params.atoms + 1):
        natural[f"A{index}"] = _consistent_subset(rng, space, features, params.feature_density)
    originals = list(natural.values())
    for index in range(params.atoms + 1, params.atoms + params.translated_atoms + 1):
        base = originals[int(rng.integers(len(originals)))]
        translation = _random_translation(rng, analogy, sorted(space.delta(base)))
        image = apply_translation(space, analogy, translation, base)
        natural[f"A{index}"] = image if space.is_consistent(image) else base

    kappa: Dict[str, KappaTable] = {}
    if params.intra_role and rng.random() < 0.8:
        entries: Dict[FeatureSet, FeatureSet] = {}
        for members in classes:
            ref = members[0]
            block = space.domain(ref)
            family = [s for s in space.domain_family(ref) if s]
            images = [s for s in family if len(block) < 2 or s != block]
            for subset in family:
                entries[subset] = images[int(rng.integers(len(images)))]
        kappa[ROLE] = KappaTable(ROLE, TABULAR, entries)

    family = space.consistent_family()
    extras = tuple(
        Individual(family[int(rng.integers(len(family)))], f"x{index}")
        for index in range(1, params.extra_individuals + 1)
    )
    return Interpretation(space, analogy, params.mode, natural, kappa=kappa, extras=extras)


def gen_interpretation(params: GeneratorParams, seed: int) -> Interpretation:
    rng = np.random.default_rng(seed)
    for attempt in range(1, params.attempts + 1):
        interp = _attempt(rng, params)
        report = validate_interpretation(interp)
        if report.valid:
            return interp
        logger.warning("generation_retry", seed=seed, attempt=attempt,
                       condition=report.violations[0].condition)
    raise GenerationError(f"no valid interpretation for seed {seed} after {params.attempts} attempts")
