"""Analogical proportions between finite sets and between concepts."""
from typing import AbstractSet, List

from .concepts import And, Between, Concept, require_natural
from .model import Interpretation, extension, phi
from .tbox import Inclusion

EXTENSIONS = "extensions"
FEATURES = "features"
BOTH = "both"
LEVELS = (EXTENSIONS, FEATURES, BOTH)


def ap_sets(s1: AbstractSet, s2: AbstractSet, s3: AbstractSet, s4: AbstractSet) -> bool:
    """s1 differs from s2 in the same way that s3 differs from s4"""
    return s1 - s2 == s3 - s4 and s2 - s1 == s4 - s3


def ap_sets_alt(s1: AbstractSet, s2: AbstractSet, s3: AbstractSet, s4: AbstractSet) -> bool:
    return s1 & s4 == s2 & s3 and s1 | s4 == s2 | s3


def ap_concepts(
    interp: Interpretation, a: Concept, b: Concept, c: Concept, d: Concept, level: str = BOTH
) -> bool:
    if level not in LEVELS:
        raise ValueError(f"unknown level '{level}', expected one of {', '.join(LEVELS)}")
    quad = (a, b, c, d)
    holds = True
    if level in (FEATURES, BOTH):
        holds = ap_sets(*(phi(interp, x) for x in quad))
    if holds and level in (EXTENSIONS, BOTH):
        holds = ap_sets(*(extension(interp, x) for x in quad))
    return holds


def ap_as_cis(
    a: Concept, b: Concept, c: Concept, d: Concept, natural: AbstractSet[str], intra: AbstractSet[str] = frozenset()
) -> List[Inclusion]:
    for concept in (a, b, c, d):
        require_natural(concept, natural, intra)
    return [
        Inclusion(And(a, d), And(b, c)),
        Inclusion(And(b, c), And(a, d)),
        Inclusion(Between(a, d), Between(b, c)),
        Inclusion(Between(b, c), Between(a, d)),
    ]
