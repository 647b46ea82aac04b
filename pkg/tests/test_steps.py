import pytest

from blocksmoo.steps import StepSizeRule


def test_sqrt_horizon_constant_across_t():
    rule = StepSizeRule.sqrt_horizon()
    assert rule.alpha(0, 100) == pytest.approx(0.1)
    assert rule.alpha(99, 100) == pytest.approx(0.1)


def test_sqrt_horizon_scaled_base():
    rule = StepSizeRule.sqrt_horizon(base=2.0)
    assert rule.alpha(5, 400) == pytest.approx(0.1)


def test_pl_harmonic_sequence():
    rule = StepSizeRule.pl_harmonic(mu=0.5)
    assert rule.alpha(0, 10) == pytest.approx(4.0)
    assert rule.alpha(3, 10) == pytest.approx(1.0)


def test_fixed_value():
    rule = StepSizeRule.fixed(0.02)
    assert rule.alpha(0, 1) == 0.02
    assert rule.alpha(12345, 1) == 0.02


def test_all_emitted_steps_positive():
    rules = [StepSizeRule.sqrt_horizon(), StepSizeRule.pl_harmonic(1.3), StepSizeRule.fixed(0.001)]
    for rule in rules:
        for t in range(0, 1000, 97):
            assert rule.alpha(t, 1000) > 0


def test_invalid_parameters_rejected():
    with pytest.raises(ValueError):
        StepSizeRule.fixed(0.0)
    with pytest.raises(ValueError):
        StepSizeRule.pl_harmonic(0.0)
    with pytest.raises(ValueError):
        StepSizeRule(kind="adaptive")
