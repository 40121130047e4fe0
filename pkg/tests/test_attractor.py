import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locuskit.attractor import (
    AffinePair,
    InconsistentVerdict,
    attractor_points,
    connectivity_cross_check,
    hata_gap,
    raster,
)
from locuskit.membership import Verdict


def test_pair_validation():
    with pytest.raises(ValueError):
        AffinePair.rotation(0.8, 0.8)
    with pytest.raises(ValueError):
        AffinePair.diagonal(0.6, 0.6)
    with pytest.raises(ValueError):
        AffinePair.jordan(1.0)
    with pytest.raises(ValueError):
        AffinePair.diagonal(0.6, 0.7, b_vec=(1.0, 0.0))
    with pytest.raises(ValueError):
        AffinePair("shear", (0.5,), (1.0, 0.0))


def test_matrices():
    assert np.array_equal(AffinePair.jordan(0.7).matrix, [[0.7, 1.0], [0.0, 0.7]])
    assert np.array_equal(AffinePair.rotation(0.3, 0.5).matrix, [[0.3, 0.5], [-0.5, 0.3]])


@pytest.mark.parametrize("pair", [
    AffinePair.rotation(0.3, 0.5), AffinePair.diagonal(0.6, 0.8), AffinePair.jordan(0.7)])
def test_orbit_norm_closed_form(pair):
    v = np.asarray(pair.b_vec, dtype=float)
    for n in range(12):
        assert pair.orbit_norm(n) == pytest.approx(np.linalg.norm(v), rel=1e-12)
        v = pair.matrix @ v


def test_cloud_size_and_digits():
    pair = AffinePair.diagonal(0.6, 0.7)
    cloud = attractor_points(pair, 5)
    assert cloud.points.shape == (32, 2)
    # index 0b10110 has digits a_1 = a_2 = a_4 = 1
    expect = pair.matrix @ [1, 1] + pair.matrix @ pair.matrix @ [1, 1] + np.linalg.matrix_power(pair.matrix, 4) @ [1, 1]
    assert cloud.points[0b10110] == pytest.approx(expect)
    with pytest.raises(ValueError):
        attractor_points(pair, 25)


def test_tail_radius_bounds_refinement():
    pair = AffinePair.jordan(0.7)
    for d in (4, 8):
        coarse = attractor_points(pair, d)
        fine = attractor_points(pair, d + 1).points
        dist = np.min(np.linalg.norm(fine[:, None, :] - coarse.points[None], axis=2), axis=1)
        assert dist.max() <= coarse.tail_radius


@settings(max_examples=1000)
@given(st.sampled_from(["rotation", "diagonal", "jordan"]), st.floats(0.05, 0.9),
       st.floats(0.05, 0.9), st.integers(0, 8))
def test_self_affinity(form, p, q, d):
    if form == "rotation":
        if p * p + q * q >= 0.99:
            return
        pair = AffinePair.rotation(p, q)
    elif form == "diagonal":
        if abs(p - q) < 1e-3:
            return
        pair = AffinePair.diagonal(p, q)
    else:
        pair = AffinePair.jordan(p)
    T = pair.matrix
    cur = attractor_points(pair, d).points
    nxt = attractor_points(pair, d + 1).points
    image = cur @ T.T
    b = np.asarray(pair.b_vec)
    # bit 0 of the index is the digit of b itself
    assert np.allclose(nxt[0::2], image, rtol=0, atol=1e-12)
    assert np.allclose(nxt[1::2], image + b, rtol=0, atol=1e-12)


def test_gap_examples():
    assert hata_gap(AffinePair.diagonal(0.55, 0.70), 18) > 0
    assert hata_gap(AffinePair.diagonal(0.8, 0.9), 16) == 0.0


def test_gap_swap_symmetry():
    a = hata_gap(AffinePair.diagonal(0.55, 0.70), 14)
    b = hata_gap(AffinePair.diagonal(0.70, 0.55), 14)
    assert a == pytest.approx(b, rel=1e-9, abs=1e-12)


def test_gap_depth_consistency():
    pair = AffinePair.diagonal(0.55, 0.70)
    for d in range(10, 16):
        assert hata_gap(pair, d + 1) >= hata_gap(pair, d) - 2 * pair.tail_radius(d)


def test_cross_checks():
    c = connectivity_cross_check(0.55, 0.70, 18)
    assert c.verdict is Verdict.CertifiedOutside and c.gap > 0 and c.consistent
    c = connectivity_cross_check(0.8, 0.9, 16)
    assert c.verdict is Verdict.TrivialInside and c.gap == 0 and c.consistent
    with pytest.raises(ValueError):
        connectivity_cross_check(0.6, 0.6, 10)


def test_cross_check_at_exact_corner():
    from locuskit.corners import CORNER_WITNESSES, envelope_from_series

    env = envelope_from_series(CORNER_WITNESSES["h4_0"])
    c = connectivity_cross_check(env.gamma0, env.lambda0, 16)
    assert c.verdict is Verdict.Undecided and c.gap == 0.0


def test_inconsistency_is_detectable():
    from locuskit.attractor import CrossCheck

    assert not CrossCheck(0.8, 0.9, Verdict.TrivialInside, 0.1).consistent
    assert issubclass(InconsistentVerdict, RuntimeError)


def test_raster():
    cloud = attractor_points(AffinePair.diagonal(0.6, 0.7), 10)
    img = raster(cloud, 32, 24)
    assert img.shape == (24, 32) and img.dtype == np.uint8
    assert img[-1, 0] == 0 and img[0, -1] == 0
