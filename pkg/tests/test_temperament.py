"""Physiological layer: trait tables, fuzzy sampling, stress dynamics."""

import numpy as np
import pytest

from affectsim.temperament import (
    Balance,
    FuzzyVariable,
    Mobility,
    SocialGroup,
    Strength,
    TemperamentConfig,
    TemperamentKind,
    actuation_limits,
    default_anxiety,
    eysenck_group,
    pavlov_traits,
    sample_profile,
    stress_update,
)


def test_trait_table():
    sanguine = pavlov_traits(TemperamentKind.SANGUINE)
    assert (sanguine.strength, sanguine.balance, sanguine.mobility) == (
        Strength.STRONG,
        Balance.BALANCED,
        Mobility.MOBILE,
    )
    phlegmatic = pavlov_traits(TemperamentKind.PHLEGMATIC)
    assert (phlegmatic.strength, phlegmatic.balance, phlegmatic.mobility) == (
        Strength.STRONG,
        Balance.BALANCED,
        Mobility.INERT,
    )
    choleric = pavlov_traits(TemperamentKind.CHOLERIC)
    assert (choleric.strength, choleric.balance) == (
        Strength.STRONG,
        Balance.UNBALANCED,
    )
    assert choleric.excitation_dominant
    melancholic = pavlov_traits(TemperamentKind.MELANCHOLIC)
    assert melancholic.strength is Strength.WEAK
    assert not melancholic.excitation_dominant


def test_eysenck_groups():
    assert eysenck_group(TemperamentKind.SANGUINE) is SocialGroup.EXTRAVERT
    assert eysenck_group(TemperamentKind.CHOLERIC) is SocialGroup.EXTRAVERT
    assert eysenck_group(TemperamentKind.PHLEGMATIC) is SocialGroup.INTROVERT
    assert eysenck_group(TemperamentKind.MELANCHOLIC) is SocialGroup.INTROVERT


def test_default_anxiety_ordering():
    assert default_anxiety(TemperamentKind.CHOLERIC) == pytest.approx(0.9)
    assert default_anxiety(TemperamentKind.MELANCHOLIC) == pytest.approx(0.8)
    assert default_anxiety(TemperamentKind.SANGUINE) == pytest.approx(0.3)
    assert default_anxiety(TemperamentKind.PHLEGMATIC) == pytest.approx(0.1)


def test_memberships_form_a_partition():
    for x in np.linspace(0.0, 1.0, 101):
        low, med, high = FuzzyVariable(float(x), 0.5).memberships()
        assert low >= 0.0 and med >= 0.0 and high >= 0.0
        assert low + med + high == pytest.approx(1.0)
    assert FuzzyVariable(0.0, 0.0).memberships() == pytest.approx((1.0, 0.0, 0.0))
    assert FuzzyVariable(0.5, 0.0).memberships() == pytest.approx((0.0, 1.0, 0.0))
    assert FuzzyVariable(1.0, 0.0).memberships() == pytest.approx((0.0, 0.0, 1.0))


def test_dominant_term():
    assert FuzzyVariable(0.05, 0.5).dominant() == "low"
    assert FuzzyVariable(0.5, 0.5).dominant() == "medium"
    assert FuzzyVariable(0.92, 0.5).dominant() == "high"


def test_fuzzy_variable_validates():
    with pytest.raises(ValueError):
        FuzzyVariable(1.2, 0.5)
    with pytest.raises(ValueError):
        FuzzyVariable(0.5, -0.1)


# Which band each kind draws from: strong/mobile/balanced traits use the
# favourable band, weak/inert/unbalanced the unfavourable one.
BAND_EXPECTATION = {
    TemperamentKind.SANGUINE: ("upper", "upper", "upper"),
    TemperamentKind.PHLEGMATIC: ("upper", "lower", "upper"),
    TemperamentKind.CHOLERIC: ("upper", "upper", "lower"),
    TemperamentKind.MELANCHOLIC: ("lower", "lower", "lower"),
}


def test_sampled_profiles_land_in_their_bands():
    cfg = TemperamentConfig()
    rng = np.random.default_rng(123)
    for kind, (force_band, mobility_band, steadiness_band) in BAND_EXPECTATION.items():
        for _ in range(250):
            profile = sample_profile(kind, rng, cfg)
            for var, band in zip(
                profile.variables(), (force_band, mobility_band, steadiness_band)
            ):
                lo, hi = cfg.upper_band if band == "upper" else cfg.lower_band
                assert lo <= var.value <= hi
                assert var.baseline == var.value


def test_sampling_is_reproducible():
    a = sample_profile(TemperamentKind.CHOLERIC, np.random.default_rng(99))
    b = sample_profile(TemperamentKind.CHOLERIC, np.random.default_rng(99))
    assert a == b


def test_profile_carries_group_and_anxiety():
    profile = sample_profile(TemperamentKind.MELANCHOLIC, np.random.default_rng(1))
    assert profile.group is SocialGroup.INTROVERT
    assert profile.anxiety == pytest.approx(0.8)


def _fixed_profile(value: float, baseline: float, kind=TemperamentKind.SANGUINE):
    """Profile with all three variables pinned to the same value/baseline."""
    profile = sample_profile(kind, np.random.default_rng(0))
    for var in profile.variables():
        var.value = value
        var.baseline = baseline
    return profile


def test_stress_step_matches_hand_computation():
    # One stress event, calm arousal: 0.5 + 0.01*(1+0)*1 = 0.51.
    profile = _fixed_profile(0.5, 0.5)
    stress_update(profile, stress_events=1, arousal=0.0, dt=1, rate0=0.01)
    for var in profile.variables():
        assert var.value == pytest.approx(0.51)


def test_stress_step_scales_with_arousal():
    # Full arousal doubles the step: 0.5 + 0.01*(1+1) = 0.52.
    profile = _fixed_profile(0.5, 0.5)
    stress_update(profile, stress_events=1, arousal=1.0, dt=1, rate0=0.01)
    for var in profile.variables():
        assert var.value == pytest.approx(0.52)


def test_negative_arousal_does_not_shrink_the_step():
    profile = _fixed_profile(0.5, 0.5)
    stress_update(profile, stress_events=1, arousal=-1.0, dt=1, rate0=0.01)
    for var in profile.variables():
        assert var.value == pytest.approx(0.51)


def test_stress_step_scales_with_event_count():
    profile = _fixed_profile(0.5, 0.5)
    stress_update(profile, stress_events=3, arousal=0.0, dt=1, rate0=0.01)
    for var in profile.variables():
        assert var.value == pytest.approx(0.53)


def test_stress_saturates_at_one():
    profile = _fixed_profile(0.999, 0.5)
    stress_update(profile, stress_events=5, arousal=1.0, dt=1, rate0=0.1)
    for var in profile.variables():
        assert var.value == 1.0


def test_relaxation_decays_toward_baseline():
    profile = _fixed_profile(0.9, 0.4)
    stress_update(profile, stress_events=0, arousal=0.0, dt=1, rate0=0.01)
    for var in profile.variables():
        assert var.value == pytest.approx(0.9 + (0.4 - 0.9) * 0.01)
    # baseline is a fixed point
    calm = _fixed_profile(0.4, 0.4)
    stress_update(calm, stress_events=0, arousal=0.0, dt=1, rate0=0.01)
    for var in calm.variables():
        assert var.value == pytest.approx(0.4)


def test_relaxation_recovers_from_below_baseline_too():
    profile = _fixed_profile(0.1, 0.6)
    stress_update(profile, stress_events=0, arousal=0.0, dt=1, rate0=0.5)
    for var in profile.variables():
        assert var.value == pytest.approx(0.1 + (0.6 - 0.1) * 0.5)


def test_stress_update_rejects_zero_dt():
    profile = _fixed_profile(0.5, 0.5)
    with pytest.raises(ValueError):
        stress_update(profile, 1, 0.0, dt=0)


def test_long_random_drive_keeps_variables_in_range():
    rng = np.random.default_rng(2024)
    profile = sample_profile(TemperamentKind.MELANCHOLIC, rng)
    for _ in range(20000):
        stress_update(
            profile,
            stress_events=int(rng.integers(0, 4)),
            arousal=float(rng.uniform(-1.0, 1.0)),
            dt=1,
            rate0=0.05,
        )
        for var in profile.variables():
            assert 0.0 <= var.value <= 1.0


def test_actuation_limits_scale_with_force():
    profile = _fixed_profile(1.0, 1.0)
    limits = actuation_limits(profile)
    assert limits.motor_ceiling == pytest.approx(1.0)
    assert limits.sensor_reach == pytest.approx(1.0)
    weak = _fixed_profile(0.0, 0.0)
    limits = actuation_limits(weak)
    assert limits.motor_ceiling == pytest.approx(0.2)
    assert limits.sensor_reach == pytest.approx(0.6)
    mid = _fixed_profile(0.5, 0.5)
    limits = actuation_limits(mid)
    assert limits.motor_ceiling == pytest.approx(0.6)
    assert limits.sensor_reach == pytest.approx(0.8)


def test_emotional_rate_is_one_plus_anxiety():
    profile = _fixed_profile(0.5, 0.5)
    profile.anxiety = 0.9
    assert actuation_limits(profile).emotional_rate == pytest.approx(1.9)
    profile.anxiety = 0.0
    assert actuation_limits(profile).emotional_rate == pytest.approx(1.0)


def test_motor_ceiling_monotone_in_force():
    values = [0.0, 0.2, 0.5, 0.8, 1.0]
    ceilings = [
        actuation_limits(_fixed_profile(v, v)).motor_ceiling for v in values
    ]
    assert ceilings == sorted(ceilings)
