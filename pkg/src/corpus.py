"""Reproduce the bundled counterexample corpus."""
from typing import List, Optional, Union

import structlog

from .documents import from_document, list_corpus, read_corpus_entry
from .propositions import check_proposition
from .schemas import CheckOutcome, CorpusEntry, CorpusResult
from .validation import validate_interpretation

logger = structlog.get_logger(__name__)


def run_corpus_entry(entry: Union[str, CorpusEntry]) -> CorpusResult:
    """Validate the entry's interpretation in its declared mode and run every check.

    An entry is reproduced when the interpretation is valid and each check
    gives exactly the expected premise and conclusion verdicts.
    """
    if isinstance(entry, str):
        entry = read_corpus_entry(entry)
    interp = from_document(entry.interpretation)
    report = validate_interpretation(interp)
    outcomes: List[CheckOutcome] = []
    for check in entry.checks:
        verdict = check_proposition(check.proposition, interp, check.bindings, check.strength)
        outcomes.append(CheckOutcome(
            proposition=check.proposition,
            strength=check.strength,
            premises_hold=verdict.premises_hold,
            conclusion_holds=verdict.conclusion_holds,
            reproduced=(verdict.premises_hold == check.expect_premises
                        and verdict.conclusion_holds == check.expect_conclusion),
        ))
    result = CorpusResult(
        id=entry.id,
        valid=report.valid,
        reproduced=report.valid and all(o.reproduced for o in outcomes),
        checks=outcomes,
        violations=report.violations,
    )
    if not result.reproduced:
        logger.warning("corpus_entry_not_reproduced", id=entry.id, valid=report.valid)
    return result


def run_corpus(ids: Optional[List[str]] = None) -> List[CorpusResult]:
    return [run_corpus_entry(name) for name in (ids or list_corpus())]


def find_outcome(result: CorpusResult, proposition: str, strength: str) -> Optional[CheckOutcome]:
    return next((o for o in result.checks if o.proposition == proposition and o.strength == strength), None)
