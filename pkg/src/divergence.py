"""Seeded proposition sweeps and the strong/weak divergence matrix.

A sweep draws random valid interpretations, instantiates a proposition's
variables with their natural atoms, and counts the instances whose premises
hold and whose conclusion does not. Seeds are independent, so sweeps fan out
over joblib workers and are merged in seed order.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
import structlog
from joblib import Parallel, delayed

from .concepts import TOP, And, Atom, Concept
from .corpus import find_outcome, run_corpus_entry
from .generator import ROLE, GeneratorParams, gen_interpretation
from .model import STRONG, WEAK, Interpretation, phi, satisfies_ci
from .proportions import ap_as_cis, ap_sets
from .propositions import STANDARD, STRENGTHS, check_proposition, get_proposition, sound_propositions
from .schemas import DivergenceCell, DivergenceReport, SweepResult
from .translations import mu_sets, naive_mu_sets

logger = structlog.get_logger(__name__)

HOLDS = "HOLDS"
FAILS = "FAILS"

# checks that compare two computations instead of a premise and a conclusion
MU_ORACLE = "mu-oracle"
AP_ENCODING = "ap-encoding"
CROSS_CHECKS = (MU_ORACLE, AP_ENCODING)


@dataclass(frozen=True)
class MatrixCell:
    rule: str
    strength: str
    expected: str
    # corpus entry reproducing a FAILS cell
    fixture: Optional[str] = None


WEAK_MATRIX: Tuple[MatrixCell, ...] = (
    MatrixCell("c-transitivity", STANDARD, FAILS, "CE-CTRANS-WEAK-1"),
    MatrixCell("c-transitivity", STRONG, FAILS, "CE-CTRANS-WEAK-2"),
    MatrixCell("s-transitivity-a", STANDARD, FAILS, "CE-STRANS-WEAK"),
    MatrixCell("s-transitivity-a", STRONG, HOLDS),
    MatrixCell("s-transitivity-b", STANDARD, HOLDS),
    MatrixCell("s-transitivity-b", STRONG, HOLDS),
    MatrixCell("lift-existential", STANDARD, HOLDS),
    MatrixCell("lift-existential-mixed", STANDARD, HOLDS),
    MatrixCell("lift-existential", STRONG, FAILS, "CE-LIFTEXISTS-STRONG"),
    MatrixCell("lift-existential-mixed", STRONG, FAILS, "CE-LIFTEXISTS-STRONG"),
    MatrixCell("lift-conjunction", STANDARD, FAILS, "CE-LIFTCONJ-WEAK"),
    MatrixCell("lift-conjunction", STRONG, FAILS, "CE-LIFTCONJ-WEAK"),
    MatrixCell("rule-translation", STANDARD, HOLDS),
    MatrixCell("rule-translation", STRONG, HOLDS),
    MatrixCell("rule-extrapolation", STANDARD, FAILS, "CE-EXTRAP-WEAK"),
    MatrixCell("rule-extrapolation", STRONG, FAILS, "CE-EXTRAP-WEAK"),
)


def default_params(mode: str = STRONG, max_features: int = 6, hard_cap: int = 10) -> GeneratorParams:
    return GeneratorParams(max_features=min(max_features, hard_cap), mode=mode, hard_cap=hard_cap)


def _pool(interp: Interpretation) -> List[Concept]:
    return [Atom(name) for name in sorted(interp.natural_atoms)] + [TOP]


def random_bindings(
    interp: Interpretation, variables: Tuple[str, ...], roles: Tuple[str, ...], rng: np.random.Generator
) -> Optional[Dict[str, object]]:
    """Natural atoms (and ⊤) for concept variables; None when a role variable cannot be bound"""
    if roles and ROLE not in interp.kappa:
        return None
    pool = _pool(interp)
    bindings: Dict[str, object] = {v: pool[int(rng.integers(len(pool)))] for v in variables}
    bindings.update({r: ROLE for r in roles})
    return bindings


def _cross_check(task: str, interp: Interpretation, rng: np.random.Generator) -> Tuple[bool, bool]:
    """(applicable, mismatch) for one random instance of a cross-check"""
    pool = _pool(interp)
    pick = [pool[int(rng.integers(len(pool)))] for _ in range(4)]
    if task == MU_ORACLE:
        source, target = phi(interp, pick[0]), phi(interp, pick[1])
        if interp.space.k > 4:
            return False, False
        fast = mu_sets(interp.space, interp.analogy, source, target)
        naive = naive_mu_sets(interp.space, interp.analogy, source, target)
        return True, fast != naive
    a, b, c, d = pick
    values = [phi(interp, x) for x in pick]
    if not (interp.space.is_consistent(values[0] | values[3]) and interp.space.is_consistent(values[1] | values[2])):
        return False, False
    cis = ap_as_cis(a, b, c, d, interp.natural_names, interp.intra_roles)
    encoded = all(satisfies_ci(interp, ci.sub, ci.sup) for ci in cis)
    return True, encoded != ap_sets(*values)


def sweep_seed(
    task: str, params: GeneratorParams, seed: int, strength: str = STANDARD, instantiations: int = 5
) -> Tuple[int, int, int]:
    """(instances, premises held, violations) for one generated interpretation"""
    interp = gen_interpretation(params, seed)
    rng = np.random.default_rng([seed, sum(map(ord, task)), len(strength)])
    instances = held = violations = 0
    if task in CROSS_CHECKS:
        for _ in range(instantiations):
            applicable, mismatch = _cross_check(task, interp, rng)
            instances += 1
            held += applicable
            violations += mismatch
        return instances, held, violations

    proposition = get_proposition(task)
    for _ in range(instantiations):
        bindings = random_bindings(interp, proposition.concepts, proposition.roles, rng)
        if bindings is None:
            break
        verdict = check_proposition(task, interp, bindings, strength)
        instances += 1
        held += verdict.premises_hold
        violations += verdict.fails
    return instances, held, violations


def sweep(
    task: str,
    mode: str = STRONG,
    strength: str = STANDARD,
    seeds: int = 100,
    n_jobs: int = 1,
    params: Optional[GeneratorParams] = None,
    instantiations: int = 5,
    start: int = 0,
) -> SweepResult:
    params = params or default_params(mode)
    seed_range = range(start, start + seeds)
    counts = Parallel(n_jobs=n_jobs)(
        delayed(sweep_seed)(task, params, seed, strength, instantiations) for seed in seed_range
    )
    first = next((seed for seed, (_, _, bad) in zip(seed_range, counts) if bad), None)
    result = SweepResult(
        proposition=task,
        mode=mode,
        strength=strength,
        seeds=seeds,
        instances=sum(c[0] for c in counts),
        premises_held=sum(c[1] for c in counts),
        violations=sum(c[2] for c in counts),
        first_violation_seed=first,
    )
    logger.info("sweep_finished", proposition=task, mode=mode, strength=strength, seeds=seeds,
                violations=result.violations)
    return result


def run_proposition_suite(mode: str = STRONG, seeds: int = 100, n_jobs: int = 1,
                          params: Optional[GeneratorParams] = None) -> List[SweepResult]:
    """Sweep every proposition sound in `mode`, in each strength it distinguishes, plus the cross-checks"""
    results = []
    for proposition in sound_propositions(mode):
        strengths = STRENGTHS if proposition.uses_strength else (STANDARD,)
        for strength in strengths:
            results.append(sweep(proposition.id, mode, strength, seeds, n_jobs, params))
    for task in CROSS_CHECKS:
        results.append(sweep(task, mode, STANDARD, seeds, n_jobs, params))
    return results


def _corpus_observation(cell: MatrixCell) -> Tuple[str, str]:
    result = run_corpus_entry(cell.fixture.lower())
    outcome = find_outcome(result, cell.rule, cell.strength)
    if result.valid and outcome is not None and outcome.premises_hold and not outcome.conclusion_holds:
        return FAILS, cell.fixture
    return HOLDS, f"{cell.fixture} not reproduced"


def _sweep_observation(cell: MatrixCell, mode: str, seeds: int, n_jobs: int,
                       params: Optional[GeneratorParams]) -> Tuple[str, str]:
    result = sweep(cell.rule, mode, cell.strength, seeds, n_jobs, params)
    if result.holds:
        return HOLDS, f"sweep: {result.instances} instances, {result.premises_held} with premises holding"
    return FAILS, f"sweep: seed {result.first_violation_seed}"


def run_divergence_matrix(mode: str = WEAK, seeds: int = 100, n_jobs: int = 1,
                          params: Optional[GeneratorParams] = None) -> DivergenceReport:
    """Observed HOLDS/FAILS per (rule, strength) cell against the expected pattern.

    In weak mode FAILS cells are observed by reproducing their corpus entry and
    HOLDS cells by sweeping; in strong mode every sound proposition is expected
    to hold and is swept.
    """
    if mode == WEAK:
        cells = WEAK_MATRIX
    else:
        cells = tuple(
            MatrixCell(p.id, strength, HOLDS)
            for p in sound_propositions(mode)
            for strength in (STRENGTHS if p.uses_strength else (STANDARD,))
        )
    observed: List[DivergenceCell] = []
    for cell in cells:
        if cell.fixture is not None:
            outcome, evidence = _corpus_observation(cell)
        else:
            outcome, evidence = _sweep_observation(cell, mode, seeds, n_jobs, params)
        observed.append(DivergenceCell(rule=cell.rule, mode=mode, strength=cell.strength,
                                       expected=cell.expected, observed=outcome, evidence=evidence))
    report = DivergenceReport(mode=mode, seeds=seeds, cells=observed)
    logger.info("divergence_matrix_finished", mode=mode, seeds=seeds, agrees=report.agrees)
    return report


def sweep_table(results: List[SweepResult]) -> pd.DataFrame:
    frame = pd.DataFrame([r.model_dump() for r in results])
    if frame.empty:
        return frame
    frame["holds"] = frame["violations"] == 0
    return frame[["proposition", "mode", "strength", "seeds", "instances", "premises_held", "violations", "holds"]]


def matrix_table(report: DivergenceReport) -> pd.DataFrame:
    frame = pd.DataFrame([c.model_dump() for c in report.cells])
    if frame.empty:
        return frame
    frame["agrees"] = frame["expected"] == frame["observed"]
    return frame[["rule", "strength", "expected", "observed", "agrees", "evidence"]]
