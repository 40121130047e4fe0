import math

import pytest

from locuskit import reference as ref
from locuskit.corners import (
    CORNER_WITNESSES,
    GEOMETRIC,
    STANDARD_R,
    NotCornerWitness,
    NTooSmall,
    ResolutionLimit,
    corner_envelope,
    corner_membership_check,
    envelope_from_series,
    perturbed_zeros,
    sandwich_bounds,
    star_parameters,
)
from locuskit.series import TernarySeries

H4 = CORNER_WITNESSES["h4_0"]


@pytest.mark.parametrize("name", sorted(CORNER_WITNESSES))
def test_corner_points(name):
    env = envelope_from_series(CORNER_WITNESSES[name])
    g, l = ref.CORNER_POINTS[name]
    assert abs(env.gamma0 - g) < 1e-5 and abs(env.lambda0 - l) < 1e-5
    assert env.alpha == pytest.approx(math.log(env.lambda0) / math.log(env.gamma0))
    assert 0 < env.c1 < env.c2
    assert not env.uniqueness_assumed


def test_golden_corner_exact():
    env = envelope_from_series(H4)
    assert env.gamma0 == pytest.approx((math.sqrt(5) - 1) / 2, abs=1e-14)


def test_explicit_brackets():
    env = corner_envelope(H4, (0.61, 0.63), (0.67, 0.69))
    assert env.lambda0 == pytest.approx(0.6823278038, abs=1e-10)
    with pytest.raises(NotCornerWitness):
        corner_envelope(H4, (0.52, 0.53), (0.67, 0.69))
    with pytest.raises(NotCornerWitness):
        corner_envelope(TernarySeries((1, -1, -1, -1, 0), 0), (0.61, 0.63), (0.67, 0.69))


def test_star_parameters():
    assert star_parameters(H4) == (4, 0.0)
    assert star_parameters(CORNER_WITNESSES["h5_m1"]) == (5, -1.0)
    assert star_parameters(TernarySeries((1, -1, 0, 1, 0), 1)) is None


def test_non_star_witness_flags_uniqueness():
    h = TernarySeries((1, -1, -1, -1, 1, 0, 1, 0), 1)
    env = envelope_from_series(h)
    assert env.uniqueness_assumed
    assert env.lambda0 == pytest.approx(0.6823278, abs=1e-6)


def test_sandwich_and_ratio_over_range():
    env = envelope_from_series(H4)
    report = corner_membership_check(env, (30, 60), STANDARD_R)
    assert len(report.rows) == 31 * len(STANDARD_R)
    assert report.ok, report.failures


@pytest.mark.parametrize("name", ["h4_m1", "h5_0", "h6_0"])
def test_other_corners_envelope(name):
    env = envelope_from_series(CORNER_WITNESSES[name])
    report = corner_membership_check(env, (35, 45), {"geom": GEOMETRIC})
    assert report.ok, report.failures


def test_perturbed_zeros_direction():
    env = envelope_from_series(H4)
    g, l = perturbed_zeros(H4, 40, GEOMETRIC)
    assert g < env.gamma0 and l > env.lambda0
    (lg, ug), (ll, ul) = sandwich_bounds(env, 40, GEOMETRIC)
    assert lg <= env.gamma0 - g <= ug
    assert ll <= l - env.lambda0 <= ul


def test_perturbed_zeros_rejects_bad_R():
    with pytest.raises(ValueError):
        perturbed_zeros(H4, 40, TernarySeries((1, -1), 0))


def test_small_N_rejected():
    with pytest.raises(NTooSmall):
        perturbed_zeros(H4, 2, GEOMETRIC)


def test_resolution_limit():
    env = envelope_from_series(CORNER_WITNESSES["h5_0"])
    with pytest.raises(ResolutionLimit):
        perturbed_zeros(env, 60, GEOMETRIC)
    report = corner_membership_check(env, (40, 70), STANDARD_R, stop_at_resolution=True)
    assert report.ok and 40 < report.resolution_stop < 60
    assert all(r.N < report.resolution_stop for r in report.rows)
