import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from algebra.errors import DEGENERATE_DENOMINATOR, DomainError
from config.settings import Settings
from engine.proof_steps import (
    check_pole_ratio_step,
    check_root_ratio_step,
    lemma_sweep,
    proof_step_sweep,
    run_lemma_checks,
)


def test_root_step_equality_at_antipode():
    check = check_root_ratio_step(0.3, 2.5, math.pi)
    assert check.holds
    assert check.lhs == pytest.approx(check.rhs, abs=1e-15)


def test_root_step_eta_one_is_trivial():
    check = check_root_ratio_step(1.0, 3.0, 1.2)
    assert check.lhs == pytest.approx(1.0)
    assert check.rhs == 1.0


def test_root_step_strict_away_from_antipode():
    check = check_root_ratio_step(0.0, 2.0, 0.0)
    assert check.lhs == pytest.approx(2.0)
    assert check.rhs == pytest.approx(2.0 / 3.0)
    assert bool(check)


def test_root_step_degenerate_denominator():
    check = check_root_ratio_step(0.5, 1.0, 0.0)
    assert check.holds and check.degenerate
    assert check.lhs == math.inf
    assert check.warnings == [DEGENERATE_DENOMINATOR]


def test_root_step_domain():
    with pytest.raises(DomainError):
        check_root_ratio_step(1.5, 2.0, 0.0)
    with pytest.raises(DomainError):
        check_root_ratio_step(0.5, 0.9, 0.0)


def test_pole_step_equality_when_aligned():
    check = check_pole_ratio_step(0.0, 2.0, 0.0)
    assert check.lhs == pytest.approx(0.5, abs=1e-15)
    assert check.rhs == pytest.approx(0.5, abs=1e-15)
    assert check.holds


def test_pole_step_rejects_pole_inside_disk():
    with pytest.raises(DomainError):
        check_pole_ratio_step(0.5, 0.5, 0.0)
    with pytest.raises(DomainError):
        check_pole_ratio_step(0.5, 1.0j, 0.0)


@given(
    st.floats(min_value=0.0, max_value=1.0),
    st.floats(min_value=1.001, max_value=50.0),
    st.floats(min_value=0.0, max_value=2.0 * math.pi),
)
def test_root_step_holds(eta, eta_j, delta):
    assert check_root_ratio_step(eta, eta_j, delta).holds


@given(
    st.floats(min_value=0.0, max_value=1.0),
    st.floats(min_value=1.01, max_value=50.0),
    st.floats(min_value=0.0, max_value=2.0 * math.pi),
    st.floats(min_value=0.0, max_value=2.0 * math.pi),
)
def test_pole_step_holds(eta, modulus, angle, theta):
    beta = modulus * complex(math.cos(angle), math.sin(angle))
    assert check_pole_ratio_step(eta, beta, theta).holds


def test_sweeps_find_no_violations():
    for summary in lemma_sweep(2000, seed=3) + proof_step_sweep(2000, seed=3):
        assert summary.passed, summary.name
        assert summary.samples + summary.degenerate == 2000
        assert summary.equality_residual <= 1e-12


def test_run_lemma_checks():
    summary = run_lemma_checks(500, seed=0)
    assert summary.passed
    assert [s.name for s in summary.sweeps] == [
        "lemma1",
        "lemma2",
        "root_ratio_step",
        "pole_ratio_step",
    ]


def test_run_lemma_checks_is_deterministic():
    assert run_lemma_checks(200, seed=9) == run_lemma_checks(200, seed=9)


def test_run_lemma_checks_takes_tolerances_from_settings():
    custom = run_lemma_checks(300, seed=5, settings=Settings(step_tol=1e-10, log_space_threshold=2))
    reference = run_lemma_checks(300, seed=5)
    assert custom.passed
    for got, expected in zip(custom.sweeps, reference.sweeps):
        assert got.name == expected.name
        assert got.samples == expected.samples
        assert got.worst_margin == pytest.approx(expected.worst_margin, abs=1e-12)
