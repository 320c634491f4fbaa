import numpy as np
import pytest

import nfisac as nf
from nfisac.transforms import (
    Domain,
    angle_from_spatial_frequency,
    from_angular_delay,
    heatmap_grid,
    spatial_frequencies,
    write_heatmap_csv,
)


def random_matrix(rng, n=64, m=48):
    return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))


def test_pure_tone_row_maps_to_single_delay_bin():
    m = 32
    p = 7
    h = np.zeros((4, m), dtype=complex)
    h[2] = np.exp(-2j * np.pi * np.arange(m) * p / m)
    out = nf.to_spatial_delay(h).data
    mags = np.abs(out[2])
    assert np.argmax(mags) == p
    assert mags[p] == pytest.approx(np.sqrt(m), rel=1e-12)
    mask = np.ones(m, bool)
    mask[p] = False
    assert np.all(mags[mask] < 1e-10)


def test_all_ones_concentrates_in_delay_bin_zero():
    h = np.ones((3, 16), dtype=complex)
    out = nf.to_spatial_delay(h).data
    assert np.allclose(np.abs(out[:, 0]), 4.0, rtol=1e-12)
    assert np.all(np.abs(out[:, 1:]) < 1e-12)


def test_steering_column_maps_to_single_angle_bin():
    n = 64
    q = 5
    h = np.zeros((n, 3), dtype=complex)
    h[:, 1] = np.exp(-2j * np.pi * np.arange(n) * q / n)
    out = nf.to_angular_frequency(h).data
    assert np.argmax(np.abs(out[:, 1])) == q


def test_rank_one_tone_pair_maps_to_single_cell():
    n, m = 32, 24
    qa, qd = 11, 5
    col = np.exp(-2j * np.pi * np.arange(n) * qa / n)
    row = np.exp(-2j * np.pi * np.arange(m) * qd / m)
    out = nf.to_angular_delay(np.outer(col, row)).data
    idx = np.unravel_index(np.argmax(np.abs(out)), out.shape)
    assert idx == (qa, qd)
    assert np.abs(out[qa, qd]) == pytest.approx(np.sqrt(n * m), rel=1e-12)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_unitarity_and_round_trip(seed):
    rng = np.random.default_rng(seed)
    h = random_matrix(rng)
    norm = np.linalg.norm(h)
    for transform in (nf.to_spatial_delay, nf.to_angular_frequency, nf.to_angular_delay):
        out = transform(h).data
        assert abs(np.linalg.norm(out) - norm) / norm <= 1e-10
    back = from_angular_delay(nf.to_angular_delay(h))
    assert np.linalg.norm(back - h) / norm <= 1e-10


def test_linearity():
    rng = np.random.default_rng(5)
    h1, h2 = random_matrix(rng), random_matrix(rng)
    a, b = 1.3 - 0.2j, -0.7 + 2.1j
    for transform in (nf.to_spatial_delay, nf.to_angular_frequency, nf.to_angular_delay):
        lhs = transform(a * h1 + b * h2).data
        rhs = a * transform(h1).data + b * transform(h2).data
        assert np.allclose(lhs, rhs, rtol=1e-10, atol=1e-10)


def fig1_channels():
    grid = nf.OfdmGrid(60e9, 512, 6e9 / 512, 1)
    geom = nf.dense_ula(512, 0.005)
    far = nf.far_field_channel(grid, geom, nf.TargetState(200.0, np.pi / 3)).data[:, :, 0]
    near = nf.near_field_channel(grid, geom, nf.TargetState(20.0, np.pi / 3)).data[:, :, 0]
    return far, near


def test_far_field_delay_peak_drifts_across_antennas():
    far, _ = fig1_channels()
    out = np.abs(nf.to_spatial_delay(far).data)
    peaks = np.argmax(out, axis=1).astype(float)
    peaks = np.unwrap(peaks, period=out.shape[1])
    drift = peaks[-1] - peaks[0]
    assert abs(drift) > 4  # aperture-induced delay spread spans several bins
    # and the drift is close to linear across the array
    fit = np.polyfit(np.arange(peaks.size), peaks, 1)
    residual = peaks - np.polyval(fit, np.arange(peaks.size))
    assert np.abs(residual).max() <= 1.0


def test_far_field_angle_peak_drifts_across_subcarriers():
    far, _ = fig1_channels()
    out = np.abs(nf.to_angular_frequency(far).data)
    peaks = np.argmax(out, axis=0).astype(float)
    peaks = np.unwrap(peaks, period=out.shape[0])
    assert abs(peaks[-1] - peaks[0]) > 4  # beam squint across the band


def test_near_field_single_subcarrier_angular_spread():
    far, near = fig1_channels()

    def center_width(h):
        col = np.abs(nf.to_angular_frequency(h[:, 256:257]).data[:, 0])
        return np.sum(col >= col.max() * 10 ** (-20 / 20))

    assert center_width(near) >= 2 * center_width(far)


def test_heatmap_grid_normalization_and_floor():
    rng = np.random.default_rng(9)
    h = random_matrix(rng, 16, 8)
    dm = nf.to_angular_delay(h)
    rows, cols, db = heatmap_grid(dm, floor_db=-30.0)
    assert db.max() == pytest.approx(0.0, abs=1e-12)
    assert db.min() >= -30.0
    assert rows.shape == (16,) and cols.shape == (8,)
    assert rows[0] == -8 and cols[0] == -4  # centered signed bins
    with pytest.raises(ValueError):
        heatmap_grid(dm, floor_db=10.0)
    with pytest.raises(ValueError):
        heatmap_grid(nf.DomainMatrix(np.zeros((4, 4)), Domain.ANGULAR_DELAY))


def test_heatmap_axis_labeling_follows_domain():
    h = np.ones((8, 6), dtype=complex)
    rows, cols, _ = heatmap_grid(nf.to_spatial_delay(h))
    assert rows[0] == 1 and rows[-1] == 8       # physical antenna index
    assert cols[0] == -3                         # shifted delay bins
    rows, cols, _ = heatmap_grid(nf.to_angular_frequency(h))
    assert rows[0] == -4                         # shifted angle bins
    assert cols[0] == 1 and cols[-1] == 6        # physical subcarrier index


def test_heatmap_csv_layout(tmp_path):
    h = np.ones((4, 4), dtype=complex)
    path = tmp_path / "map.csv"
    write_heatmap_csv(nf.to_angular_delay(h), path, floor_db=-40.0)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("bin,")
    assert len(lines) == 5
    values = [float(v) for v in lines[1].split(",")[1:]]
    assert all(v >= -40.0 for v in values)


def test_angle_mapping_dense_only():
    nu = spatial_frequencies(8)
    assert nu[0] == -0.5 and 0.0 in nu
    angles = angle_from_spatial_frequency(nu, wavelength=0.01, spacing=0.005)
    assert np.all((angles >= 0) & (angles <= np.pi))
    assert angle_from_spatial_frequency(0.0, 0.01, 0.005) == pytest.approx(np.pi / 2)
    with pytest.raises(ValueError):
        angle_from_spatial_frequency(nu, wavelength=0.01, spacing=0.01)
