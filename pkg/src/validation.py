"""Checks an interpretation against the domain-constrained and intra-role conditions.

Violations are collected into a ValidityReport rather than raised; every
entry names the condition it breaks and carries a witness.
"""
from itertools import product
from typing import Any, Dict, List

import structlog

from .features import format_features
from .model import MODES, STRONG, Interpretation
from .schemas import ValidityReport, Violation

logger = structlog.get_logger(__name__)


def _fs(features) -> List[str]:
    return sorted(features)


class _Collector:
    def __init__(self):
        self.violations: List[Violation] = []

    def add(self, condition: str, message: str, **witness: Any) -> None:
        self.violations.append(Violation(condition=condition, message=message, witness=witness))


def _check_partition(interp: Interpretation, out: _Collector) -> None:
    space = interp.space
    seen: Dict[str, int] = {}
    for i, block in enumerate(space.partition, start=1):
        if not block:
            out.add("partition", f"domain {i} is empty", domain=i)
        for f in sorted(block):
            if f in seen:
                out.add("partition", f"feature '{f}' is in domains {seen[f]} and {i}", feature=f, domains=[seen[f], i])
            else:
                seen[f] = i
    unknown = set(seen) - space.universe
    for f in sorted(unknown):
        out.add("unknown-feature", f"domain feature '{f}' is not declared", feature=f)
    for f in sorted(space.universe - set(seen)):
        out.add("partition", f"feature '{f}' belongs to no domain", feature=f)
    for x in space.forbidden:
        if not x <= space.universe:
            out.add("unknown-feature", "forbidden combination uses undeclared features", set=_fs(x - space.universe))


def _check_individuals(interp: Interpretation, out: _Collector) -> None:
    space = interp.space
    referenced = list(interp.extras)
    for members in interp.plain_atoms.values():
        referenced.extend(members)
    for pairs in interp.roles.values():
        for d, e in pairs:
            referenced.extend((d, e))
    reported = set()
    for d in referenced:
        if d in reported:
            continue
        if not d.features <= space.universe:
            out.add("unknown-feature", f"individual {d.label} uses undeclared features", individual=d.label)
            reported.add(d)
        elif not space.is_consistent(d.features):
            blocking = next(x for x in space.forbidden if x <= d.features)
            out.add(
                "forbidden-subset",
                f"individual {d.label} has the forbidden combination {format_features(blocking)}",
                individual=d.label,
                forbidden=_fs(blocking),
            )
            reported.add(d)
    for name, features in sorted(interp.natural_atoms.items()):
        if not features <= space.universe:
            out.add("natural-atom", f"natural atom '{name}' uses undeclared features", atom=name,
                    features=_fs(features - space.universe))


def _check_analogy(interp: Interpretation, out: _Collector) -> None:
    space, analogy = interp.space, interp.analogy
    for condition, message, witness in analogy.problems:
        out.add(condition, message, **witness)
    for (s, t), mapping in sorted(analogy.sigma.items()):
        inverse = analogy.sigma.get((t, s), {})
        if any(inverse.get(g) != f for f, g in mapping.items()):
            out.add("bijection-coherence", f"bijections {s}->{t} and {t}->{s} are not inverse", pair=[s, t])
        for u in sorted(analogy.class_of(t)):
            onward, direct = analogy.sigma.get((t, u)), analogy.sigma.get((s, u))
            if onward is None or direct is None:
                continue
            if any(onward.get(g) != direct.get(f) for f, g in mapping.items()):
                out.add("bijection-coherence", f"bijections {s}->{t}->{u} and {s}->{u} disagree", path=[s, t, u])

    for i in space.domain_ids:
        family = space.domain_family(i, interp.enumeration_cap)
        for j in sorted(analogy.class_of(i) - {i}):
            if (i, j) not in analogy.sigma:
                continue
            for subset in family:
                image = analogy.apply_pair(i, j, subset)
                if not space.is_consistent(image):
                    out.add(
                        "consistency-preservation",
                        f"{format_features(subset)} is consistent but its image under {i}->{j} is not",
                        set=_fs(subset),
                        image=_fs(image),
                        pair=[i, j],
                    )

    if interp.mode != STRONG:
        return
    for s, t in analogy.pairs(reflexive=False):
        if s > t:
            continue
        for f, g in product(sorted(space.domain(s)), sorted(space.domain(t))):
            if space.is_consistent(frozenset((f, g))):
                out.add(
                    "domain-exclusivity",
                    f"features '{f}' and '{g}' of analogous domains {s} and {t} can co-occur",
                    features=[f, g],
                    pair=[s, t],
                )


def _check_kappa(interp: Interpretation, out: _Collector) -> None:
    space, analogy = interp.space, interp.analogy
    for role, expansion in interp.kappa_expansions.items():
        for key in expansion.stray:
            if len(space.delta(key)) > 1:
                out.add("kappa-additivity", f"kappa_{role} is given on {format_features(key)}, which spans domains",
                        role=role, set=_fs(key))
            else:
                out.add("kappa-domain", f"kappa_{role} is given on {format_features(key)}, which is not a consistent "
                        "set of a single domain", role=role, set=_fs(key))
        for i, subset in expansion.missing:
            out.add("kappa-undefined", f"kappa_{role} is undefined on {format_features(subset)}",
                    role=role, domain=i, set=_fs(subset))
        for i, subset, first, second in expansion.conflicts:
            out.add(
                "kappa-commutation",
                f"kappa_{role} on {format_features(subset)} is both {format_features(first)} "
                f"and {format_features(second)} once carried through the bijections",
                role=role, domain=i, set=_fs(subset), images=[_fs(first), _fs(second)],
            )
        for i, table in sorted(expansion.per_domain.items()):
            block = space.domain(i)
            for subset, image in sorted(table.items(), key=lambda item: sorted(item[0])):
                if not image <= block:
                    out.add("kappa-domain", f"kappa_{role}({format_features(subset)}) leaves domain {i}",
                            role=role, domain=i, set=_fs(subset), image=_fs(image))
                if subset and not image:
                    out.add("kappa-nonempty", f"kappa_{role}({format_features(subset)}) is empty",
                            role=role, domain=i, set=_fs(subset))
                for j in sorted(analogy.class_of(i) - {i}):
                    if (i, j) not in analogy.sigma or j not in expansion.per_domain:
                        continue
                    moved = analogy.apply_pair(i, j, subset)
                    if moved in expansion.per_domain[j] and expansion.per_domain[j][moved] != analogy.apply_pair(
                        i, j, image
                    ):
                        out.add(
                            "kappa-commutation",
                            f"kappa_{role} does not commute with the bijection {i}->{j} on {format_features(subset)}",
                            role=role, pair=[i, j], set=_fs(subset),
                        )


def validate_interpretation(interp: Interpretation) -> ValidityReport:
    out = _Collector()
    notes: List[str] = []
    if interp.mode not in MODES:
        out.add("mode", f"unknown mode '{interp.mode}'")
    if interp.space.universe_inserted:
        notes.append("the full feature set was added to the forbidden combinations")

    _check_partition(interp, out)
    _check_individuals(interp, out)
    partition_ok = not any(v.condition in ("partition", "unknown-feature") for v in out.violations)
    if partition_ok:
        _check_analogy(interp, out)
        _check_kappa(interp, out)

    # duplicate reports can arise from a single broken bijection seen along several paths
    unique: List[Violation] = []
    for violation in out.violations:
        if violation not in unique:
            unique.append(violation)

    report = ValidityReport(valid=not unique, mode=interp.mode, notes=notes, violations=unique)
    logger.debug("interpretation_validated", mode=interp.mode, valid=report.valid, violations=len(unique))
    return report
