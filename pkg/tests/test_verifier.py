import pytest

from algebra.errors import PreconditionError
from algebra.instance import Instance
from algebra.polynomial import Polynomial, RootForm, poly_from_roots
from algebra.rational import PoleSet, RationalFunction
from config.settings import Settings
from engine.generator import GeneratorConfig, generate_case
from engine.search import CircleGrid
from engine.verifier import check_hypotheses, max_modulus_check, pointwise_check, verify_theorem
from theorems.base import BoundParams, TheoremId
from theorems.catalog import pole_product

GRID = CircleGrid(points=1024, refine_iters=40)


def test_pointwise_check_simple_rational():
    r = RationalFunction(numerator=poly_from_roots(1.0, [-1.0]), poles=PoleSet(poles=[2.0]))
    report = pointwise_check(r, 0.5, 0.3)
    assert report.passed
    assert report.status == "pass"
    assert report.violations == 0
    # 分子在 θ = π 处为 0
    assert report.skipped_points >= 1
    assert report.min_observed == pytest.approx(0.5, abs=1e-12)


def test_pointwise_check_detects_a_too_large_factor():
    r = RationalFunction(numerator=poly_from_roots(1.0, [-1.0]), poles=PoleSet(poles=[2.0]))
    report = pointwise_check(r, 0.5, 0.6, GRID)
    assert not report.passed
    assert report.status == "fail"
    assert report.violations > 0


def test_eta_one_with_pole_product_always_passes():
    poles = PoleSet(poles=[1.3, -2.0j, 4.0 + 1.0j])
    r = RationalFunction(numerator=poly_from_roots(1.0, [0.5, -1.5, 2.0j]), poles=poles)
    assert pointwise_check(r, 1.0, pole_product(poles, 1.0), GRID).passed


def test_verify_t1_example():
    instance = Instance.from_document(
        {"n": 1, "numerator": {"roots": {"leading": [1, 0], "roots": [[-2, 0]]}}, "poles": [[2, 0]]}
    )
    report = verify_theorem(TheoremId.T1_NEW, instance, BoundParams(eta=0.0), GRID)
    assert report.factor == pytest.approx(1.0 / 3.0, rel=1e-15)
    assert report.passed
    assert report.slack >= 0.0
    assert report.instance_digest == instance.digest()


def test_verify_t2_with_k_two():
    instance = Instance.from_roots(RootForm(leading=1.0, roots=[-3.0]), [3.0], k=2.0)
    report = verify_theorem(TheoremId.T2_NEW, instance, BoundParams(eta=0.0, k=2.0), GRID)
    assert report.factor == pytest.approx(0.5, rel=1e-15)
    assert report.passed


def test_root_inside_k_disk_is_hypothesis_unmet():
    instance = Instance.from_roots(RootForm(leading=1.0, roots=[-1.5]), [3.0])
    report = verify_theorem(TheoremId.T2_NEW, instance, BoundParams(eta=0.5, k=2.0), GRID)
    assert report.status == "hypothesis_unmet"
    assert not report.passed
    assert report.factor is None
    assert [v.kind for v in report.hypothesis_violations] == ["root"]


def test_rational_theorem_needs_poles():
    instance = Instance.from_roots(RootForm(leading=1.0, roots=[-2.0]))
    with pytest.raises(PreconditionError):
        verify_theorem(TheoremId.T1_NEW, instance, BoundParams(eta=0.5), GRID)


def test_polynomial_theorem_ignores_poles():
    # (z + 2)³ 是 tF 在 k = 2 时的极值多项式
    instance = Instance.from_roots(RootForm(leading=1.0, roots=[-2.0] * 3), [5.0, 5.0, 5.0], k=2.0)
    report = verify_theorem(TheoremId.F_DK, instance, BoundParams(eta=0.5, k=2.0), GRID)
    assert report.passed
    assert report.slack == pytest.approx(0.0, abs=1e-9)


def test_coefficient_instance_is_checked_without_zeros():
    instance = Instance.from_coeffs([6.0, 5.0, 1.0], [3.0, 3.0], k=2.0)
    report = verify_theorem(TheoremId.T2_NEW, instance, BoundParams(eta=0.25, k=2.0), GRID)
    assert report.passed
    assert not report.zeros_verified
    outcome = check_hypotheses(TheoremId.T2_NEW, instance, BoundParams(k=2.0))
    assert outcome.accepted and not outcome.zeros_verified


def test_coefficient_instance_failing_necessary_condition():
    instance = Instance.from_coeffs([1.0, 5.0, 1.0], [3.0, 3.0])
    report = verify_theorem(TheoremId.T2_NEW, instance, BoundParams(eta=0.25, k=2.0), GRID)
    assert report.status == "hypothesis_unmet"


def test_degree_short_of_n_is_unmet_for_coefficient_bounds():
    instance = Instance.from_coeffs([4.0, 1.0, 0.0], [2.0, 2.0], n=2)
    report = verify_theorem(TheoremId.T1_NEW, instance, BoundParams(eta=0.5), GRID)
    assert report.status == "hypothesis_unmet"
    # tG 只要求 deg f ≤ n
    assert verify_theorem(TheoremId.G_RAT, instance, BoundParams(eta=0.5), GRID).passed


@pytest.mark.parametrize("theorem", [TheoremId.T1_NEW, TheoremId.G_RAT, TheoremId.I_RAT])
@pytest.mark.parametrize("draw", range(5))
def test_global_minimum_not_below_factor_when_passing(theorem, draw):
    cfg = GeneratorConfig(n=4, seed=11)
    report = verify_theorem(theorem, generate_case(cfg, draw), BoundParams(eta=0.6), GRID)
    assert report.passed
    assert report.min_observed >= report.factor - 1e-9


def test_max_modulus_checks():
    p = poly_from_roots(1.0, [-2.0, 1.0j])
    upper = max_modulus_check(p, TheoremId.E2_MAXMOD, BoundParams(nu=2.0), 2, GRID)
    assert upper.passed and upper.slack >= 0.0
    lower = max_modulus_check(p, TheoremId.E1_VARGA, BoundParams(eta=0.5), 2, GRID)
    assert lower.passed and lower.slack >= 0.0

    zero = max_modulus_check(Polynomial(coeffs=[0.0]), TheoremId.E2_MAXMOD, BoundParams(nu=3.0), 2, GRID)
    assert zero.passed
    assert zero.min_observed is None


def test_verify_dispatches_max_modulus_theorems():
    instance = Instance.from_coeffs([0.0, 0.0, 2.0], n=2)
    report = verify_theorem(TheoremId.E2_MAXMOD, instance, BoundParams(nu=1.5), GRID)
    assert report.passed
    assert report.min_observed == pytest.approx(2.25, rel=1e-12)


def test_report_serializes_pass_alias():
    r = RationalFunction(numerator=poly_from_roots(1.0, [-1.0]), poles=PoleSet(poles=[2.0]))
    dumped = pointwise_check(r, 0.5, 0.3, GRID).model_dump(by_alias=True)
    assert dumped["pass"] is True


@pytest.mark.parametrize("n", [32, 48, 64])
def test_high_degree_root_form_instances_are_verified(n):
    instance = generate_case(GeneratorConfig(n=n, seed=5), 0)
    grid = CircleGrid(points=512, refine_iters=20)
    report = verify_theorem(TheoremId.T1_NEW, instance, BoundParams(eta=0.5), grid)
    assert report.status == "pass"
    assert report.factor > 0.0
    assert report.min_observed >= report.factor * (1.0 - 1e-9)


def test_root_form_short_of_n_is_unmet_for_coefficient_bounds():
    instance = Instance.from_roots(RootForm(leading=1.0, roots=[-2.0]), [2.0, 2.0], n=2)
    report = verify_theorem(TheoremId.T1_NEW, instance, BoundParams(eta=0.5), GRID)
    assert report.status == "hypothesis_unmet"
    assert [v.kind for v in report.hypothesis_violations] == ["degree"]


def test_hypothesis_tolerances_come_from_settings():
    instance = Instance.from_coeffs([4.0, 1.0, 0.3], [2.0, 2.0])
    assert check_hypotheses(TheoremId.T1_NEW, instance, BoundParams()).accepted
    coarse = Settings(degeneracy_tol=0.5)
    outcome = check_hypotheses(TheoremId.T1_NEW, instance, BoundParams(), coarse)
    assert [v.kind for v in outcome.violations] == ["degree"]
    assert verify_theorem(TheoremId.T1_NEW, instance, BoundParams(eta=0.5), GRID, coarse).status == "hypothesis_unmet"

    near = Instance.from_coeffs([0.999, 0.0, 1.0], [2.0, 2.0])
    assert not check_hypotheses(TheoremId.T1_NEW, near, BoundParams()).accepted
    assert check_hypotheses(TheoremId.T1_NEW, near, BoundParams(), Settings(rel_tol=0.01)).accepted
