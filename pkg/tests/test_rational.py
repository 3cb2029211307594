import cmath

import numpy as np
import pytest
from pydantic import ValidationError

from algebra.errors import PoleHit
from algebra.polynomial import Polynomial, RootForm, poly_from_roots
from algebra.rational import (
    PoleSet,
    RationalFunction,
    ZeroConstraint,
    blaschke_eval,
    numerator_eval,
    rat_eval,
    validate_coefficient_instance,
    validate_instance,
    w_eval,
)


def test_blaschke_product_is_unimodular_on_the_circle():
    rng = np.random.default_rng(20240601)
    z = np.exp(1j * 2.0 * np.pi * np.arange(64) / 64)
    for _ in range(1000):
        n = int(rng.integers(1, 9))
        moduli = rng.uniform(1.0001, 10.0, size=n)
        angles = rng.uniform(0.0, 2.0 * np.pi, size=n)
        poles = PoleSet(poles=[cmath.rect(m, a) for m, a in zip(moduli, angles)])
        values = np.abs(blaschke_eval(poles, z))
        assert np.all(np.abs(values - 1.0) <= 1e-10)


def test_blaschke_rejects_evaluation_at_a_pole():
    with pytest.raises(PoleHit):
        blaschke_eval(PoleSet(poles=[2.0]), 2.0)


def test_w_and_rational_evaluation():
    poles = PoleSet(poles=[2.0, -3.0])
    assert w_eval(poles, 0.0) == -6 + 0j
    assert poles.w().coeffs == (-6 + 0j, 1 + 0j, 1 + 0j)

    r = RationalFunction(numerator=poly_from_roots(1.0, [-1.0]), poles=PoleSet(poles=[2.0]))
    assert rat_eval(r, 0.0) == pytest.approx(-0.5)
    assert r(1j) == pytest.approx((1j + 1) / (1j - 2))
    with pytest.raises(PoleHit):
        r(2.0)


def test_no_poles_means_the_polynomial_itself():
    p = poly_from_roots(2.0, [1.0, -1.0])
    r = RationalFunction(numerator=p)
    assert r.n == 0
    assert r(3.0) == pytest.approx(16.0)


def test_numerator_degree_cannot_exceed_pole_count():
    with pytest.raises(ValidationError):
        RationalFunction(numerator=Polynomial(coeffs=[1.0, 1.0, 1.0]), poles=PoleSet(poles=[2.0]))


def test_validate_instance_lists_every_violation():
    roots = RootForm(leading=1.0, roots=[-1.5, 3.0])
    poles = PoleSet(poles=[1.01, 4.0])
    outcome = validate_instance(roots, poles, ZeroConstraint(k=2.0))
    assert not outcome.accepted
    kinds = sorted((v.kind, v.index) for v in outcome.violations)
    assert kinds == [("pole", 0), ("root", 0)]


def test_validate_instance_accepts_boundary_roots():
    outcome = validate_instance(RootForm(leading=1.0, roots=[-1.0]), PoleSet(poles=[2.0]), ZeroConstraint())
    assert outcome.accepted
    assert outcome.zeros_verified


def test_zero_constraint_needs_k_at_least_one():
    with pytest.raises(ValidationError):
        ZeroConstraint(k=0.5)


def test_coefficient_instance_checks_necessary_condition():
    # (z + 2)(z + 3)，k = 2：6 ≥ 4
    good = validate_coefficient_instance(
        Polynomial(coeffs=[6.0, 5.0, 1.0]), 2, PoleSet(poles=[3.0, 3.0]), ZeroConstraint(k=2.0)
    )
    assert good.accepted
    assert not good.zeros_verified

    bad = validate_coefficient_instance(
        Polynomial(coeffs=[1.0, 5.0, 1.0]), 2, PoleSet(poles=[3.0, 3.0]), ZeroConstraint(k=2.0)
    )
    assert not bad.accepted
    assert [v.kind for v in bad.violations] == ["coefficients"]


def test_coefficient_instance_degree_policy():
    numerator = Polynomial(coeffs=[4.0, 1.0])
    exact = validate_coefficient_instance(numerator, 2, PoleSet(poles=[2.0, 2.0]), ZeroConstraint())
    assert not exact.accepted
    assert exact.violations[-1].kind == "degree"

    relaxed = validate_coefficient_instance(
        numerator, 2, PoleSet(poles=[2.0, 2.0]), ZeroConstraint(), exact_degree=False
    )
    assert relaxed.accepted


def test_structural_degree_check_counts_tiny_coefficients():
    with pytest.raises(ValidationError):
        RationalFunction(numerator=Polynomial(coeffs=[1.0, 1.0, 1e-20]), poles=PoleSet(poles=[2.0]))


def test_coefficient_instance_tolerances_are_parameters():
    numerator = Polynomial(coeffs=[4.0, 1.0, 0.3])
    poles = PoleSet(poles=[2.0, 2.0])
    assert validate_coefficient_instance(numerator, 2, poles, ZeroConstraint()).accepted
    coarse = validate_coefficient_instance(numerator, 2, poles, ZeroConstraint(), degeneracy_tol=0.5)
    assert [v.kind for v in coarse.violations] == ["degree"]

    near = Polynomial(coeffs=[0.999, 0.0, 1.0])
    assert not validate_coefficient_instance(near, 2, poles, ZeroConstraint()).accepted
    assert validate_coefficient_instance(near, 2, poles, ZeroConstraint(), rel_tol=0.01).accepted


def test_root_form_numerator_is_evaluated_as_a_product():
    form = RootForm(leading=1.5, roots=[-2.0, 1.0 + 2.0j])
    poles = PoleSet(poles=[3.0, -2.5j])
    with_roots = RationalFunction(numerator=form.to_polynomial(), poles=poles, roots=form)
    plain = RationalFunction(numerator=form.to_polynomial(), poles=poles)
    z = np.exp(1j * np.linspace(0.0, 6.0, 13))
    assert np.allclose(rat_eval(with_roots, z), rat_eval(plain, z), rtol=1e-12, atol=0.0)
    assert numerator_eval(with_roots, 0.5j) == form.evaluate(0.5j)
