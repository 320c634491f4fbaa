import numpy as np
import pytest

import nfisac as nf
from nfisac.beams import BeamKind

C = nf.SPEED_OF_LIGHT

CARRIER = 28e9
WAVELENGTH = C / CARRIER


def focusing(n=512, r0=5.0, theta=np.pi / 2):
    geom = nf.dense_ula(n, WAVELENGTH)
    return nf.focusing_weights(geom, r0, theta, CARRIER)


def temporal(m=512, spacing=5e5, r0=5.0):
    grid = nf.OfdmGrid(CARRIER, m, spacing, 1)
    return nf.temporal_weights(grid, r0 / C)


def test_weights_are_unit_norm_with_coherent_focal_gain():
    w = focusing(n=128)
    assert np.linalg.norm(w.coefficients) == pytest.approx(1.0, abs=1e-12)
    pattern = nf.gain_profile(w, np.array([5.0]))
    assert pattern.focal_gain_abs == pytest.approx(128.0, rel=1e-10)
    assert pattern.gain_db[0] == pytest.approx(0.0, abs=1e-12)

    wt = temporal(m=64)
    assert np.linalg.norm(wt.coefficients) == pytest.approx(1.0, abs=1e-12)
    pattern = nf.gain_profile(wt, np.array([5.0]))
    assert pattern.focal_gain_abs == pytest.approx(64.0, rel=1e-10)
    assert pattern.gain_db[0] == pytest.approx(0.0, abs=1e-12)


def test_normalized_gain_never_exceeds_focal_gain():
    probe = np.geomspace(1.0, 200.0, 400)
    for weights in (focusing(), temporal()):
        pattern = nf.gain_profile(weights, probe)
        assert np.all(pattern.gain_db <= 1e-9)
        peak_idx = int(np.argmax(pattern.gain_abs))
        focal_idx = int(np.argmin(np.abs(probe - 5.0)))
        assert abs(peak_idx - focal_idx) <= 1


def test_far_regime_focusing_is_range_flat():
    # focal point far beyond aperture^2 / wavelength: no range selectivity
    w = focusing(r0=20000.0)
    probe = np.geomspace(2000.0, 20000.0, 300)
    pattern = nf.gain_profile(w, probe)
    assert np.ptp(pattern.gain_db) <= 1.0


def test_near_focal_point_has_finite_depth_of_focus():
    w = focusing(r0=5.0)
    probe = np.linspace(1.0, 15.0, 3001)
    width = nf.half_power_width(nf.gain_profile(w, probe))
    assert 0.05 < width < 2.0


def test_depth_of_focus_grows_with_focal_distance():
    widths = []
    for r0 in (5.0, 10.0, 20.0):
        w = focusing(r0=r0)
        probe = np.linspace(0.3 * r0, 3.0 * r0, 4001)
        widths.append(nf.half_power_width(nf.gain_profile(w, probe)))
    assert np.all(np.diff(widths) > 0)


def test_temporal_width_is_focal_independent_dirichlet():
    expected = 0.886 * C / (512 * 5e5)
    widths = []
    for r0 in (5.0, 10.0, 20.0):
        w = temporal(r0=r0)
        probe = np.linspace(r0 - 3.0, r0 + 3.0, 6001)
        widths.append(nf.half_power_width(nf.gain_profile(w, probe)))
    widths = np.asarray(widths)
    assert np.all(np.abs(widths - expected) / expected < 0.02)
    assert np.ptp(widths) / widths.mean() < 0.05


def test_single_subcarrier_temporal_gain_is_flat():
    w = temporal(m=1)
    pattern = nf.gain_profile(w, np.geomspace(1.0, 100.0, 50))
    assert np.allclose(pattern.gain_db, 0.0, atol=1e-12)


def test_distinct_focal_ranges_decorrelate():
    w = focusing(r0=5.0)
    cross = nf.gain_profile(w, np.array([10.0]))
    assert 10 ** (cross.gain_db[0] / 10) < 0.5


def test_focusing_profile_nearly_symmetric_in_inverse_range():
    # the focusing response depends on range chiefly through 1/r, so the
    # main lobe is close to symmetric in u = 1/r (observed asymmetry is
    # about 0.1 dB at a 5 m focus)
    for r0 in (5.0, 10.0):
        w = focusing(r0=r0)
        u0 = 1.0 / r0
        delta = np.linspace(0.0, 0.4 * u0, 200)[1:]
        up = nf.gain_profile(w, 1.0 / (u0 + delta)).gain_db
        um = nf.gain_profile(w, 1.0 / (u0 - delta)).gain_db
        main = up > -10.0
        assert np.abs(up - um)[main].max() <= 0.5


def test_gain_profile_validation_and_kinds():
    w = focusing()
    with pytest.raises(ValueError):
        nf.gain_profile(w, np.array([]))
    assert w.kind is BeamKind.SPATIAL_FOCUSING
    assert temporal().kind is BeamKind.TEMPORAL_BEAMFORMING
    assert temporal(r0=6.0).focal_delay_s == pytest.approx(6.0 / C)
