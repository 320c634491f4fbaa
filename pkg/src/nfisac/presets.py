"""Built-in experiment presets fig1..fig5.

Each preset is a complete config file for one of the five standard
experiments; they go through the same strict loader as user configs,
so `validate` accepts them by construction.
"""

PRESETS = {
    "fig1": """\
# Wideband channel gallery: planar model at 200 m vs spherical at 20 m,
# 60 GHz carrier, 6 GHz total bandwidth, 512 antennas x 512 subcarriers.
experiment = channel-gallery
seed = 0

[grid]
carrier_hz = 60e9
subcarrier_count = 512
subcarrier_spacing_hz = 11718750
symbol_count = 1

[geometry]
kind = dense-ula
n_elements = 512

[far_target]
range_m = 200.0
angle_rad = 1.0471975511965976
v_radial_mps = 0.0
v_transverse_mps = 0.0
gain_re = 1.0
gain_im = 0.0

[near_target]
range_m = 20.0
angle_rad = 1.0471975511965976
v_radial_mps = 0.0
v_transverse_mps = 0.0
gain_re = 1.0
gain_im = 0.0

[export]
db_floor_db = -60.0
""",
    "fig2": """\
# Distance-sensing CRB sweeps over bandwidth and antenna count:
# 60 GHz, half-wavelength dense array, 1 MHz subcarrier spacing,
# 1 ms sensing duration, 0 dB per-entry SNR, target at 20 m / 60 deg.
experiment = crb-sweep
seed = 0

[grid]
carrier_hz = 60e9
subcarrier_spacing_hz = 1e6

[geometry]
kind = dense-ula

[target]
range_m = 20.0
angle_rad = 1.0471975511965976
v_radial_mps = 0.0
v_transverse_mps = 0.0
gain_re = 1.0
gain_im = 0.0

[sensing]
snr_db = 0.0
duration_s = 1e-3
model = near-field

[sweep]
bandwidths_hz = 1e6, 1e7, 1e8, 1e9
antenna_counts = 64, 128, 256, 512
""",
    "fig3": """\
# Velocity profiles from non-uniform Doppler: 28 GHz, 512 antennas,
# single 100 kHz subcarrier, 2 ms duration, matched-filter grid search
# at a near and a far target distance.
experiment = velocity-profiles
seed = 0

[grid]
carrier_hz = 28e9
subcarrier_count = 1
subcarrier_spacing_hz = 1e5
duration_s = 2e-3

[geometry]
kind = dense-ula
n_elements = 512

[target]
angle_rad = 1.5707963267948966
v_radial_mps = 5.0
v_transverse_mps = 10.0
gain_re = 1.0
gain_im = 0.0
distances_m = 5.0, 50.0

[profile]
v_max_mps = 20.0
v_step_mps = 0.25
snr_db = 0.0
""",
    "fig4": """\
# Distance selectivity comparison: spatial beamfocusing (512 antennas,
# one subcarrier) vs temporal beamforming (one antenna, 512 subcarriers
# at 0.5 MHz spacing), both at 28 GHz, over several focal distances.
experiment = beam-compare
seed = 0

[grid]
carrier_hz = 28e9
subcarrier_count = 512
subcarrier_spacing_hz = 5e5

[geometry]
kind = dense-ula
n_elements = 512

[focal]
distances_m = 5.0, 10.0, 20.0
angle_rad = 1.5707963267948966

[probe]
r_min_m = 1.0
r_max_m = 200.0
n_points = 400
""",
    "fig5": """\
# Distance-sensing CRB maps for three array arrangements at 60 GHz with
# a single subcarrier: dense linear (half wavelength), sparse linear
# (one wavelength) and a circle matching the dense aperture.
experiment = crb-map
seed = 0

[grid]
carrier_hz = 60e9
subcarrier_count = 1
subcarrier_spacing_hz = 1e6
symbol_count = 1

[geometry]
kinds = dense-ula, sparse-ula, uca
n_elements = 512

[target]
v_radial_mps = 0.0
v_transverse_mps = 0.0
gain_re = 1.0
gain_im = 0.0

[sensing]
snr_db = 0.0
model = near-field

[map]
r_min_m = 5.0
r_max_m = 40.0
n_r = 64
theta_min_rad = 0.2617993877991494
theta_max_rad = 2.8797932657906435
n_theta = 64
""",
}
