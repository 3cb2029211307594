import pytest
from pydantic import ValidationError

from algebra.rational import ZeroConstraint, validate_instance
from engine.generator import GeneratorConfig, generate_case, generate_instance


def test_same_seed_and_draw_give_same_instance():
    cfg = GeneratorConfig(n=5, k=1.5, seed=42)
    assert generate_instance(cfg, 7) == generate_instance(cfg, 7)
    assert generate_case(cfg, 7).digest() == generate_case(cfg, 7).digest()
    assert generate_case(cfg, 7).digest() != generate_case(cfg, 8).digest()


def test_draws_do_not_depend_on_order():
    cfg = GeneratorConfig(n=3, seed=1)
    forward = [generate_case(cfg, d).digest() for d in range(10)]
    backward = [generate_case(cfg, d).digest() for d in reversed(range(10))]
    assert forward == list(reversed(backward))


@pytest.mark.parametrize("draw", range(50))
def test_moduli_in_range_and_accepted(draw):
    cfg = GeneratorConfig(n=4, k=2.0, root_modulus_max=6.0, pole_modulus_max=8.0, seed=5)
    root_form, poles = generate_instance(cfg, draw)
    assert root_form.n == 4 and poles.n == 4
    assert abs(abs(root_form.leading) - 1.0) < 1e-12
    assert all(2.0 - 1e-12 <= m <= 6.0 + 1e-12 for m in root_form.moduli())
    assert all(1.0 + cfg.pole_margin <= m <= 8.0 + 1e-12 for m in poles.moduli())
    assert validate_instance(root_form, poles, ZeroConstraint(k=2.0), cfg.pole_margin).accepted


def test_n_max_range():
    cfg = GeneratorConfig(n=2, n_max=5, seed=0)
    degrees = {generate_case(cfg, d).n for d in range(200)}
    assert degrees <= {2, 3, 4, 5}
    assert len(degrees) > 1


def test_case_carries_k():
    assert generate_case(GeneratorConfig(n=2, k=1.25), 0).k == 1.25


@pytest.mark.parametrize(
    "kwargs",
    [
        {"n": 0},
        {"n": 3, "n_max": 2},
        {"n": 2, "k": 0.5},
        {"n": 2, "k": 3.0, "root_modulus_max": 2.0},
        {"n": 2, "pole_modulus_max": 1.01},
        {"n": 2, "seed": -1},
    ],
)
def test_invalid_config(kwargs):
    with pytest.raises(ValidationError):
        GeneratorConfig(**kwargs)
