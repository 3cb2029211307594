import random

import pytest

import engine.campaign as campaign
from algebra.instance import Instance
from engine.campaign import aggregate, fuzz_campaign, run_trial
from engine.generator import GeneratorConfig, generate_case
from engine.search import CircleGrid
from engine.verifier import verify_theorem
from theorems.base import BoundParams, TheoremId

GRID = CircleGrid(points=512, refine_iters=20)
ETAS = [0.0, 0.5, 1.0]


def test_small_campaign_has_no_failures():
    cfg = GeneratorConfig(n=3, seed=2)
    report = fuzz_campaign(TheoremId.T1_NEW, cfg, 20, ETAS, GRID, workers=3)
    assert report.failed == 0
    assert report.errors == 0
    assert report.passed + report.vacuous == 20 * len(ETAS)
    assert [s.eta for s in report.per_eta] == ETAS
    assert sum(s.passed for s in report.per_eta) == report.passed
    assert report.min_slack is not None and report.min_slack >= -1e-9
    assert report.min_slack <= report.median_slack <= report.max_slack


@pytest.mark.parametrize("k", [1.0, 1.5, 2.0, 3.0])
def test_t2_campaign_has_no_failures_for_each_k(k):
    cfg = GeneratorConfig(n=3, k=k, seed=23)
    report = fuzz_campaign(TheoremId.T2_NEW, cfg, 10, [0.0, 0.25, 0.5, 0.75, 1.0], GRID)
    assert report.failed == 0
    assert report.errors == 0
    assert report.passed > 0


def test_max_modulus_campaign_uses_nu():
    cfg = GeneratorConfig(n=3, seed=6)
    report = fuzz_campaign(TheoremId.E2_MAXMOD, cfg, 4, [0.0], GRID, nu=2.0)
    assert report.nu == 2.0
    assert report.failed == 0
    assert report.errors == 0
    assert report.witness.report.params.nu == 2.0
    assert report.witness.report.factor == 8.0


def test_campaign_is_deterministic_across_worker_counts():
    cfg = GeneratorConfig(n=2, n_max=4, k=1.5, seed=17)
    one = fuzz_campaign(TheoremId.T2_NEW, cfg, 8, ETAS, GRID, workers=1)
    many = fuzz_campaign(TheoremId.T2_NEW, cfg, 8, ETAS, GRID, workers=8)
    assert one == many


def test_single_trial_matches_verify_theorem():
    cfg = GeneratorConfig(n=3, k=1.0, seed=4)
    report = fuzz_campaign(TheoremId.G_RAT, cfg, 1, [0.5], GRID)
    expected = verify_theorem(TheoremId.G_RAT, generate_case(cfg, 0), BoundParams(eta=0.5, k=1.0), GRID)
    assert report.witness is not None
    assert report.witness.report == expected
    assert report.min_slack == expected.slack


def test_witness_round_trips_through_instance_document():
    cfg = GeneratorConfig(n=3, seed=8)
    report = fuzz_campaign(TheoremId.T1_NEW, cfg, 6, [0.25], GRID)
    witness = report.witness
    instance = Instance.from_document(witness.instance)
    again = verify_theorem(TheoremId.T1_NEW, instance, BoundParams(eta=witness.eta), GRID)
    assert again.slack == pytest.approx(witness.slack, abs=1e-12)
    assert again.instance_digest == witness.report.instance_digest


def test_aggregate_ignores_outcome_order():
    cfg = GeneratorConfig(n=2, seed=3)
    outcomes = [o for trial in range(5) for o in run_trial(TheoremId.T1_NEW, cfg, trial, ETAS, GRID)]
    shuffled = list(outcomes)
    random.Random(0).shuffle(shuffled)
    assert aggregate(TheoremId.T1_NEW, cfg, GRID, 5, ETAS, outcomes) == aggregate(
        TheoremId.T1_NEW, cfg, GRID, 5, ETAS, shuffled
    )


def test_errors_are_counted_not_raised(monkeypatch):
    real = campaign.verify_theorem

    def flaky(theorem_id, instance, params, grid=None, settings=None):
        if params.eta == 0.5:
            raise RuntimeError("boom")
        return real(theorem_id, instance, params, grid)

    monkeypatch.setattr(campaign, "verify_theorem", flaky)
    report = fuzz_campaign(TheoremId.T1_NEW, GeneratorConfig(n=2, seed=1), 4, ETAS, GRID)
    assert report.errors == 4
    assert report.per_eta[1].errors == 4
    assert report.per_eta[0].errors == 0
    assert all("RuntimeError: boom" in msg for msg in report.error_messages)


def test_trials_must_be_positive():
    with pytest.raises(ValueError):
        fuzz_campaign(TheoremId.T1_NEW, GeneratorConfig(n=2), 0, ETAS, GRID)
