import numpy as np
import pytest

import nfisac as nf
from nfisac.geometry import ArrayGeometry, ArrayKind

C = nf.SPEED_OF_LIGHT


def test_dense_pair_is_centered_half_wavelength():
    geom = nf.dense_ula(2, 0.005)
    assert np.allclose(geom.element_positions[:, 0], [-0.00125, 0.00125], atol=0)
    assert np.all(geom.element_positions[:, 1] == 0)


def test_dense_512_first_offset():
    geom = nf.dense_ula(512, 0.005)
    assert geom.element_positions[0, 0] == -255.5 * 0.0025
    assert geom.spacing == 0.0025
    assert geom.aperture == pytest.approx(511 * 0.0025)


def test_uca_default_radius_matches_dense_aperture():
    geom = nf.uca(512, 0.005)
    assert geom.radius == pytest.approx((511 * 0.0025) / 2)
    dist = np.hypot(geom.element_positions[:, 0], geom.element_positions[:, 1])
    assert np.allclose(dist, geom.radius, rtol=1e-12)


def test_sparse_spacing_is_one_wavelength():
    geom = nf.sparse_ula(16, 0.01)
    assert geom.spacing == 0.01
    assert geom.aperture == pytest.approx(15 * 0.01)


def test_invalid_geometry_rejected():
    with pytest.raises(ValueError):
        nf.dense_ula(4, -0.005)
    with pytest.raises(ValueError):
        nf.uca(8, 0.005, radius=0.0)
    pos = np.array([[0.0, 0.0], [0.0, 0.0]])
    with pytest.raises(ValueError):
        ArrayGeometry(ArrayKind.DENSE_ULA, pos, 0.005, spacing=0.0025)
    # dense kind demands exactly half-wavelength spacing
    good = nf.dense_ula(4, 0.005)
    with pytest.raises(ValueError):
        ArrayGeometry(ArrayKind.DENSE_ULA, good.element_positions, 0.005, spacing=0.003)
    # off-center linear array
    with pytest.raises(ValueError):
        ArrayGeometry(ArrayKind.DENSE_ULA, good.element_positions + [0.001, 0.0],
                      0.005, spacing=0.0025)


def test_target_state_validation_and_accessors():
    with pytest.raises(ValueError):
        nf.TargetState(0.0, 1.0)
    with pytest.raises(ValueError):
        nf.TargetState(1.0, np.pi)
    target = nf.TargetState(20.0, np.pi / 3, v_radial=2.0, v_transverse=-1.0)
    assert target.delay_s == pytest.approx(20.0 / C, rel=1e-15)
    assert target.position @ target.los_unit == pytest.approx(20.0)
    assert target.los_unit @ target.transverse_unit == pytest.approx(0.0, abs=1e-15)
    assert target.velocity @ target.los_unit == pytest.approx(2.0)
    assert target.velocity @ target.transverse_unit == pytest.approx(-1.0)


def test_element_delay_center_and_offset():
    target = nf.TargetState(20.0, np.pi / 2)
    assert nf.element_delay(target, np.zeros(2)) == pytest.approx(20.0 / C, rel=1e-14)
    assert nf.element_delay(target, np.zeros(2)) == pytest.approx(66.713e-9, rel=1e-4)
    # broadside kills the cross term
    off = nf.element_delay(target, np.array([0.63875, 0.0]))
    assert off == pytest.approx(np.sqrt(20.0**2 + 0.63875**2) / C, rel=1e-14)
    assert off == pytest.approx(66.747e-9, rel=1e-4)


def test_element_delay_close_to_planar_expansion():
    # exact delay vs first-order planar expansion, within 0.2% of the
    # per-element time offset for every element of the large dense array
    target = nf.TargetState(200.0, np.pi / 3)
    geom = nf.dense_ula(512, 0.005)
    x = geom.element_positions[:, 0]
    exact = nf.element_delay(target, geom.element_positions)
    planar = target.delay_s - (x / C) * np.cos(np.pi / 3)
    mask = x != 0
    assert np.all(np.abs(exact - planar)[mask] <= 0.002 * np.abs(x[mask]) / C)


def test_doppler_projection_center_sees_only_radial():
    target = nf.TargetState(13.0, 1.0, v_radial=3.5, v_transverse=20.0)
    assert nf.doppler_projection(target, np.zeros(2)) == pytest.approx(3.5, rel=1e-12)
    transverse_only = nf.TargetState(13.0, 1.0, v_radial=0.0, v_transverse=10.0)
    assert nf.doppler_projection(transverse_only, np.zeros(2)) == pytest.approx(0.0, abs=1e-12)


def test_doppler_projection_offset_element_sees_transverse():
    # independent construction: project the velocity vector onto the
    # element-to-target direction built from raw coordinates
    target = nf.TargetState(5.0, np.pi / 2, v_radial=0.0, v_transverse=10.0)
    q = np.array([0.63875, 0.0])
    expected = 10.0 * 0.63875 / np.hypot(5.0, 0.63875)
    got = nf.doppler_projection(target, q)
    assert got == pytest.approx(expected, rel=1e-12)
    assert got == pytest.approx(10.0 * np.sin(np.arctan(0.63875 / 5.0)), rel=1e-12)


def test_planar_wave_limit():
    geom = nf.dense_ula(512, 0.005)
    x = geom.element_positions[:, 0]
    target = nf.TargetState(1e6, np.pi / 3)
    exact = nf.element_delay(target, geom.element_positions)
    planar = target.delay_s - (x / C) * np.cos(np.pi / 3)
    assert np.abs(exact - planar).max() <= 1e-15


def test_uniform_doppler_limit():
    geom = nf.dense_ula(512, 0.005)
    target = nf.TargetState(1e6, np.pi / 3, v_radial=5.0, v_transverse=1.0)
    projections = nf.doppler_projection(target, geom.element_positions)
    assert np.abs(projections - 5.0).max() <= 1e-6


def test_uca_rotational_symmetry():
    n = 64
    geom = nf.uca(n, 0.005)
    pitch = 2 * np.pi / n
    base = nf.TargetState(20.0, 1.0)
    rotated = nf.TargetState(20.0, 1.0 + pitch)
    d0 = np.sort(nf.element_delay(base, geom.element_positions))
    d1 = np.sort(nf.element_delay(rotated, geom.element_positions))
    assert np.allclose(d0, d1, rtol=0, atol=1e-15)


def test_linear_mirror_symmetry():
    geom = nf.sparse_ula(33, 0.005)
    theta = 1.1
    d_fwd = nf.element_delay(nf.TargetState(7.0, theta), geom.element_positions)
    d_mir = nf.element_delay(nf.TargetState(7.0, np.pi - theta), geom.element_positions)
    assert np.allclose(d_fwd, d_mir[::-1], rtol=1e-12, atol=0)
