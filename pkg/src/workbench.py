import time
from dataclasses import replace
from typing import Dict, List, Optional, Sequence, Tuple, Union

import structlog

from config.settings import settings
from monitoring.logger import log_query, log_sweep

from .concepts import to_sexpr
from .corpus import run_corpus
from .divergence import default_params, run_divergence_matrix, run_proposition_suite
from .documents import from_document, list_fixtures, list_tboxes, load_interpretation, load_tbox
from .exceptions import DeclarationError, WorkbenchError
from .features import format_features
from .inference import ClosureResult, closure
from .model import WEAK, Interpretation, phi
from .parser import parse_axiom, parse_concept, parse_feature_set
from .propositions import PROPOSITIONS
from .proportions import ap_concepts, ap_sets
from .schemas import (
    AnaResult,
    ApResult,
    CorpusResult,
    DivergenceReport,
    InterpretationDocument,
    MuResult,
    SweepResult,
    TBoxReport,
    ValidityReport,
    WorkbenchInfo,
)
from .search import SearchOutcome, countermodel_search
from .tbox import AnalogyAssertion, TBox, satisfies_tbox
from .translations import mu, satisfies_ana, sorted_translations
from .validation import validate_interpretation

logger = structlog.get_logger(__name__)

InterpretationInput = Union[str, InterpretationDocument, Interpretation]


def _elapsed(start: float) -> float:
    return round((time.perf_counter() - start) * 1000, 2)


class AnalogyWorkbench:
    """Entry point shared by the CLI and the API: resolves fixtures, runs queries, logs them"""

    def __init__(self, enumeration_cap: int = settings.ENUMERATION_CAP):
        self.enumeration_cap = enumeration_cap
        self._fixtures: Dict[str, Interpretation] = {}

    def interpretation(self, source: InterpretationInput) -> Interpretation:
        if isinstance(source, Interpretation):
            return source
        if isinstance(source, InterpretationDocument):
            return from_document(source, self.enumeration_cap)
        key = str(source).lower()
        if key in list_fixtures():
            if key not in self._fixtures:
                self._fixtures[key] = load_interpretation(key, self.enumeration_cap)
            return self._fixtures[key]
        return load_interpretation(source, self.enumeration_cap)

    def tbox(self, source: Union[str, TBox]) -> TBox:
        return source if isinstance(source, TBox) else load_tbox(source)

    def validate(self, source: InterpretationInput) -> ValidityReport:
        start = time.perf_counter()
        try:
            report = validate_interpretation(self.interpretation(source))
        except WorkbenchError as e:
            logger.warning("validate_failed", error=str(e))
            raise
        log_query("validate", report.valid, _elapsed(start), violations=len(report.violations))
        return report

    def check(self, source: InterpretationInput, tbox: Union[str, TBox]) -> TBoxReport:
        start = time.perf_counter()
        try:
            report = satisfies_tbox(self.interpretation(source), self.tbox(tbox))
        except WorkbenchError as e:
            logger.warning("check_failed", error=str(e))
            raise
        log_query("check", report.holds, _elapsed(start), failures=len(report.failures))
        return report

    def _mu_result(self, interp: Interpretation, source, target) -> MuResult:
        translations = sorted_translations(mu(interp, source, target))
        return MuResult(
            source=to_sexpr(source),
            target=to_sexpr(target),
            phi_source=sorted(phi(interp, source)),
            phi_target=sorted(phi(interp, target)),
            translations=[t.sorted_pairs() for t in translations],
            labels=[t.label for t in translations],
        )

    def mu(self, source: InterpretationInput, c: str, d: str) -> MuResult:
        start = time.perf_counter()
        interp = self.interpretation(source)
        concepts = [parse_concept(text, interp.natural_names, interp.intra_roles) for text in (c, d)]
        result = self._mu_result(interp, *concepts)
        log_query("mu", len(result.translations), _elapsed(start))
        return result

    def ana(self, source: InterpretationInput, assertion: str, strong: bool = False) -> AnaResult:
        """Evaluate `C1 : C2 :: D1 : D2`; `strong` upgrades an unprefixed assertion to sana"""
        start = time.perf_counter()
        interp = self.interpretation(source)
        parsed = parse_axiom(assertion, interp.natural_names, interp.intra_roles)
        if not isinstance(parsed, AnalogyAssertion):
            raise DeclarationError(f"'{assertion}' is an inclusion, not an analogy assertion")
        if strong and not parsed.strong:
            parsed = replace(parsed, strong=True)
        holds = satisfies_ana(interp, parsed.c1, parsed.c2, parsed.d1, parsed.d2, strong=parsed.strong)
        log_query("ana", holds, _elapsed(start), strong=parsed.strong)
        return AnaResult(
            assertion=parsed.to_text(),
            strong=parsed.strong,
            holds=holds,
            left=self._mu_result(interp, parsed.c1, parsed.c2),
            right=self._mu_result(interp, parsed.d1, parsed.d2),
        )

    def ap(self, arguments: Sequence[str], source: Optional[InterpretationInput] = None,
           level: str = "both") -> ApResult:
        start = time.perf_counter()
        if len(arguments) != 4:
            raise DeclarationError(f"an analogical proportion takes 4 arguments, got {len(arguments)}")
        if source is None:
            sets = [parse_feature_set(a) for a in arguments]
            result = ApResult(level="sets", holds=ap_sets(*sets), arguments=[format_features(s) for s in sets])
        else:
            interp = self.interpretation(source)
            concepts = [parse_concept(a, interp.natural_names, interp.intra_roles) for a in arguments]
            result = ApResult(level=level, holds=ap_concepts(interp, *concepts, level=level),
                              arguments=[to_sexpr(c) for c in concepts])
        log_query("ap", result.holds, _elapsed(start), level=result.level)
        return result

    def infer(self, tbox: Union[str, TBox], witness: Optional[InterpretationInput] = None,
              depth: Optional[int] = None, mode: Optional[str] = None) -> ClosureResult:
        start = time.perf_counter()
        try:
            result = closure(
                self.tbox(tbox),
                self.interpretation(witness) if witness is not None else None,
                mode=mode,
                depth_bound=settings.CLOSURE_DEPTH if depth is None else depth,
                max_facts=settings.CLOSURE_MAX_FACTS,
            )
        except WorkbenchError as e:
            logger.warning("infer_failed", error=str(e))
            raise
        log_query("infer", len(result.derived), _elapsed(start), bound_reached=result.bound_reached)
        return result

    def countermodel(self, tbox: Union[str, TBox], query: str, max_features: Optional[int] = None,
                     max_atoms: Optional[int] = None, mode: str = "strong") -> SearchOutcome:
        start = time.perf_counter()
        outcome = countermodel_search(
            self.tbox(tbox),
            query,
            max_features=settings.SEARCH_MAX_FEATURES if max_features is None else max_features,
            max_atoms=settings.SEARCH_MAX_ATOMS if max_atoms is None else max_atoms,
            mode=mode,
            hard_features=settings.SEARCH_HARD_FEATURES,
            hard_atoms=settings.SEARCH_HARD_ATOMS,
        )
        log_query("countermodel", outcome.found, _elapsed(start), candidates=outcome.candidates)
        return outcome

    def props(self, mode: str = "strong", seeds: Optional[int] = None,
              n_jobs: Optional[int] = None) -> Tuple[List[SweepResult], Optional[DivergenceReport]]:
        """Strong mode sweeps every sound proposition; weak mode runs the divergence matrix"""
        start = time.perf_counter()
        seeds = settings.SWEEP_SEEDS if seeds is None else seeds
        n_jobs = settings.N_JOBS if n_jobs is None else n_jobs
        params = default_params(mode, hard_cap=settings.GENERATOR_MAX_FEATURES)
        if mode == WEAK:
            sweeps, matrix = [], run_divergence_matrix(WEAK, seeds, n_jobs, params)
        else:
            sweeps, matrix = run_proposition_suite(mode, seeds, n_jobs, params), None
        log_sweep(mode, seeds, len(sweeps) if matrix is None else len(matrix.cells), _elapsed(start))
        return sweeps, matrix

    def fixtures(self) -> List[CorpusResult]:
        start = time.perf_counter()
        results = run_corpus()
        log_query("fixtures", all(r.reproduced for r in results), _elapsed(start), entries=len(results))
        return results

    def info(self) -> WorkbenchInfo:
        return WorkbenchInfo(
            version=settings.VERSION,
            fixtures=list_fixtures(),
            tboxes=list_tboxes(),
            propositions=sorted(PROPOSITIONS),
            settings=settings.as_dict(),
        )


# Singleton instance
workbench = AnalogyWorkbench()
