import pytest
from hypothesis import given
from hypothesis import strategies as st

from algebra.errors import DomainError
from theorems.lemmas import lemma1_rhs, lemma2_rhs, product_lhs

etas = st.floats(min_value=0.0, max_value=1.0)


@given(etas, st.lists(st.floats(min_value=1.0, max_value=10.0), min_size=1, max_size=8))
def test_lemma1_holds(eta, moduli):
    assert product_lhs(eta, moduli) >= lemma1_rhs(eta, moduli) - 1e-12


@given(etas, st.floats(min_value=1.0, max_value=3.0), st.data())
def test_lemma2_holds(eta, k, data):
    moduli = data.draw(st.lists(st.floats(min_value=k, max_value=10.0), min_size=1, max_size=8))
    assert product_lhs(eta, moduli) >= lemma2_rhs(eta, k, moduli) - 1e-12


@given(etas, st.floats(min_value=1.0, max_value=10.0))
def test_single_root_is_equality(eta, modulus):
    assert product_lhs(eta, [modulus]) == pytest.approx(lemma1_rhs(eta, [modulus]), abs=1e-12)
    k = 1.0 + (modulus - 1.0) / 2.0
    assert product_lhs(eta, [modulus]) == pytest.approx(lemma2_rhs(eta, k, [modulus]), abs=1e-12)


def test_lemma2_with_k_one_is_lemma1():
    moduli = [1.5, 2.0, 7.25]
    assert lemma2_rhs(0.3, 1.0, moduli) == pytest.approx(lemma1_rhs(0.3, moduli), rel=1e-15)


def test_eta_one_is_identity():
    assert product_lhs(1.0, [2.0, 3.0]) == 1.0
    assert lemma1_rhs(1.0, [2.0, 3.0]) == 1.0


def test_domain_errors():
    with pytest.raises(DomainError):
        lemma1_rhs(0.5, [0.9])
    with pytest.raises(DomainError):
        lemma2_rhs(0.5, 2.0, [1.5])
    with pytest.raises(DomainError):
        lemma2_rhs(0.5, 0.5, [1.5])
