import numpy as np
import pytest

import nfisac as nf
from nfisac.crb import ChannelModel

C = nf.SPEED_OF_LIGHT


def small_setup(n=64, k=40, distance=4.0):
    carrier = 28e9
    grid = nf.OfdmGrid(carrier, 1, 1e5, k)
    geom = nf.dense_ula(n, C / carrier)
    return grid, geom, (distance, np.pi / 2)


def test_velocity_grid_validation():
    with pytest.raises(ValueError):
        nf.VelocityGrid(np.array([1.0, 2.0]), np.array([-1.0, 0.0, 1.0]))  # no zero
    with pytest.raises(ValueError):
        nf.VelocityGrid(np.array([0.0, 0.0]), np.array([0.0]))  # not increasing
    with pytest.raises(ValueError):
        nf.VelocityGrid(np.array([]), np.array([0.0]))
    grid = nf.VelocityGrid.regular(2.0, 0.5)
    assert grid.v_radial[0] == -2.0 and grid.v_radial[-1] == 2.0
    assert 0.0 in grid.v_radial and grid.v_radial.size == 9


def test_noiseless_matched_peak_is_exact():
    grid, geom, pos = small_setup()
    truth = nf.TargetState(pos[0], pos[1], v_radial=5.0, v_transverse=10.0)
    obs = nf.near_field_channel(grid, geom, truth)
    vgrid = nf.VelocityGrid.regular(20.0, 2.5)
    profile = nf.velocity_profile(obs, pos, vgrid)
    assert profile.peak == (5.0, 10.0)
    assert profile.peak_correlation == pytest.approx(1.0, abs=1e-12)
    assert profile.values.max() == pytest.approx(1.0)
    # Cauchy-Schwarz: strictly below 1 away from the matched cell
    mask = np.ones_like(profile.values, bool)
    i = np.where(vgrid.v_radial == 5.0)[0][0]
    j = np.where(vgrid.v_transverse == 10.0)[0][0]
    mask[i, j] = False
    assert profile.values[mask].max() < 1.0
    assert profile.values.min() >= 0.0
    assert profile.radial_cut[i] == pytest.approx(1.0)
    assert profile.transverse_cut[j] == pytest.approx(1.0)


def test_gain_scaling_cancels_in_normalized_correlation():
    grid, geom, pos = small_setup()
    vgrid = nf.VelocityGrid.regular(10.0, 2.5)
    base = nf.TargetState(pos[0], pos[1], v_radial=5.0, v_transverse=0.0)
    scaled = nf.TargetState(pos[0], pos[1], v_radial=5.0, v_transverse=0.0,
                            gain=2.3 * np.exp(0.8j))
    p0 = nf.velocity_profile(nf.near_field_channel(grid, geom, base), pos, vgrid)
    p1 = nf.velocity_profile(nf.near_field_channel(grid, geom, scaled), pos, vgrid)
    assert np.allclose(p0.values, p1.values, rtol=1e-9)


def test_far_field_observation_is_transverse_blind():
    grid, geom, pos = small_setup()
    truth = nf.TargetState(pos[0], pos[1], v_radial=5.0, v_transverse=10.0)
    obs = nf.far_field_channel(grid, geom, truth)
    vgrid = nf.VelocityGrid.regular(20.0, 2.5)
    profile = nf.velocity_profile(obs, pos, vgrid, model=ChannelModel.FAR_FIELD)
    # constant along the transverse axis after normalization
    assert np.ptp(profile.values, axis=1).max() <= 1e-10


def test_radial_negation_mirrors_peak():
    grid, geom, pos = small_setup()
    vgrid = nf.VelocityGrid.regular(10.0, 2.5)
    fwd = nf.TargetState(pos[0], pos[1], v_radial=5.0, v_transverse=0.0)
    rev = nf.TargetState(pos[0], pos[1], v_radial=-5.0, v_transverse=0.0)
    p_fwd = nf.velocity_profile(nf.near_field_channel(grid, geom, fwd), pos, vgrid)
    p_rev = nf.velocity_profile(nf.near_field_channel(grid, geom, rev), pos, vgrid)
    assert p_fwd.peak[0] == -p_rev.peak[0]


def test_requires_at_least_two_symbols_and_matching_shape():
    grid, geom, pos = small_setup(k=1)
    obs = nf.near_field_channel(grid, geom, nf.TargetState(pos[0], pos[1]))
    with pytest.raises(ValueError):
        nf.velocity_profile(obs, pos, nf.VelocityGrid.regular(5.0, 1.0))
    grid2, geom2, pos2 = small_setup(k=8)
    profiler = nf.VelocityProfiler(grid2, geom2, pos2, nf.VelocityGrid.regular(5.0, 1.0))
    with pytest.raises(ValueError):
        profiler.profile(obs)


def test_profiler_reuse_matches_one_shot():
    grid, geom, pos = small_setup()
    vgrid = nf.VelocityGrid.regular(10.0, 2.5)
    truth = nf.TargetState(pos[0], pos[1], v_radial=2.5, v_transverse=-5.0)
    obs = nf.add_noise(nf.near_field_channel(grid, geom, truth), 10.0, seed=4)
    profiler = nf.VelocityProfiler(grid, geom, pos, vgrid)
    a = profiler.profile(obs)
    b = nf.velocity_profile(obs, pos, vgrid)
    assert np.array_equal(a.values, b.values)
    assert a.peak == b.peak


def test_profile_dynamic_range_conventions():
    delta = np.full(101, 1e-4)
    delta[50] = 1.0
    assert nf.profile_dynamic_range(delta) == pytest.approx(40.0)
    flat = np.ones(11)
    assert nf.profile_dynamic_range(flat) == 0.0
    # guard band excludes the main lobe around the peak
    lobe = np.concatenate([np.full(20, 0.01), [0.5, 0.9, 1.0, 0.9, 0.5], np.full(20, 0.01)])
    assert nf.profile_dynamic_range(lobe) == pytest.approx(20.0)
    with pytest.raises(ValueError):
        nf.profile_dynamic_range(np.array([]))


def test_transverse_dynamic_range_shrinks_with_distance():
    carrier = 28e9
    geom = nf.dense_ula(256, C / carrier)
    grid = nf.OfdmGrid(carrier, 1, 1e5, 100)
    vgrid = nf.VelocityGrid.regular(20.0, 1.0)
    ranges = {}
    for distance in (4.0, 40.0):
        truth = nf.TargetState(distance, np.pi / 2, v_radial=5.0, v_transverse=10.0)
        obs = nf.near_field_channel(grid, geom, truth)
        profile = nf.velocity_profile(obs, (distance, np.pi / 2), vgrid)
        ranges[distance] = nf.profile_dynamic_range(profile.transverse_cut)
    assert ranges[4.0] > ranges[40.0]
