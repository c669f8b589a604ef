import pytest

from src.divergence import (
    AP_ENCODING,
    FAILS,
    MU_ORACLE,
    WEAK_MATRIX,
    matrix_table,
    run_divergence_matrix,
    run_proposition_suite,
    sweep,
    sweep_table,
)
from src.propositions import sound_propositions


@pytest.mark.slow
@pytest.mark.parametrize("task", ["symmetry", "rule-translation", "interpolation", MU_ORACLE, AP_ENCODING])
def test_sweeps_find_no_violation(task):
    result = sweep(task, mode="strong", seeds=8)
    assert result.instances > 0
    assert result.holds, result.first_violation_seed


def test_sweep_is_deterministic():
    first = sweep("s-transitivity-b", mode="weak", seeds=2)
    assert sweep("s-transitivity-b", mode="weak", seeds=2) == first


@pytest.mark.slow
def test_parallel_matches_serial():
    assert sweep("symmetry", seeds=4, n_jobs=2) == sweep("symmetry", seeds=4, n_jobs=1)


@pytest.mark.slow
def test_strong_suite():
    results = run_proposition_suite("strong", seeds=3)
    assert {r.proposition for r in results} >= {p.id for p in sound_propositions("strong")}
    assert [r.proposition for r in results if not r.holds] == []
    frame = sweep_table(results)
    assert len(frame) == len(results)
    assert frame["holds"].all()


@pytest.mark.slow
def test_weak_matrix_agrees():
    report = run_divergence_matrix("weak", seeds=4)
    assert len(report.cells) == len(WEAK_MATRIX)
    assert report.agrees
    failing = {(c.rule, c.strength) for c in report.cells if c.observed == FAILS}
    assert ("lift-conjunction", "standard") in failing
    assert ("s-transitivity-b", "standard") not in failing
    assert matrix_table(report)["agrees"].all()


def test_every_fails_cell_names_a_fixture():
    assert all(cell.fixture for cell in WEAK_MATRIX if cell.expected == FAILS)


def test_translation_oracle_agrees_on_a_few_seeds():
    result = sweep(MU_ORACLE, mode="weak", seeds=2)
    assert result.instances > 0
    assert result.holds, result.first_violation_seed
