"""Near-field beamfocusing and wideband temporal beamforming.

Spatial focusing conjugate-matches the per-element delays of a focal
point at a single frequency, so the array gain is selective in distance
as well as angle.  Temporal beamforming applies the analogous conjugate
phases across subcarriers, treating the frequency comb as a virtual
array that selects a delay; its selectivity is set by the bandwidth and
does not depend on the focal distance.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .channel import OfdmGrid
from .geometry import SPEED_OF_LIGHT, ArrayGeometry, TargetState, element_delay

HALF_POWER_DB = 10.0 * math.log10(0.5)


class BeamKind(enum.Enum):
    SPATIAL_FOCUSING = "spatial-focusing"
    TEMPORAL_BEAMFORMING = "temporal-beamforming"


@dataclass(frozen=True)
class BeamWeights:
    """Unit-norm conjugate-matched coefficients plus their focal point.

    Spatial weights carry the geometry and single evaluation frequency;
    temporal weights carry the OFDM grid and the focal delay.
    """

    kind: BeamKind
    coefficients: np.ndarray
    focal_range_m: float
    focal_angle_rad: float | None = None
    freq_hz: float | None = None
    geometry: ArrayGeometry | None = None
    grid: OfdmGrid | None = None

    @property
    def focal_delay_s(self) -> float:
        return self.focal_range_m / SPEED_OF_LIGHT


@dataclass(frozen=True)
class BeamPattern:
    """Gain versus probe distance at a fixed angle, 0 dB at the focal point."""

    kind: BeamKind
    distances_m: np.ndarray
    gain_db: np.ndarray
    gain_abs: np.ndarray
    focal_range_m: float
    focal_gain_abs: float


def focusing_weights(geometry: ArrayGeometry, focal_range_m: float,
                     focal_angle_rad: float, freq_hz: float) -> BeamWeights:
    """Spatial weights that cophase the focal point at one frequency."""
    focal = TargetState(range_m=focal_range_m, angle_rad=focal_angle_rad)
    delays = element_delay(focal, geometry.element_positions)
    w = np.exp(2j * np.pi * freq_hz * delays) / math.sqrt(geometry.n_elements)
    return BeamWeights(BeamKind.SPATIAL_FOCUSING, w, focal_range_m,
                       focal_angle_rad=focal_angle_rad, freq_hz=freq_hz,
                       geometry=geometry)


def temporal_weights(grid: OfdmGrid, focal_delay_s: float) -> BeamWeights:
    """Per-subcarrier weights that cophase a focal delay.

    A single subcarrier is allowed and gives a flat (selectivity-free)
    profile; delay discrimination needs at least two subcarriers.
    """
    f = grid.subcarrier_frequencies()
    w = np.exp(2j * np.pi * f * focal_delay_s) / math.sqrt(grid.n_subcarriers)
    return BeamWeights(BeamKind.TEMPORAL_BEAMFORMING, w,
                       focal_delay_s * SPEED_OF_LIGHT, grid=grid)


def _spatial_response(weights: BeamWeights, distances: np.ndarray,
                      angle_rad: float) -> np.ndarray:
    pos = weights.geometry.element_positions
    out = np.empty(distances.size)
    for i, r in enumerate(distances):
        probe = TargetState(range_m=float(r), angle_rad=angle_rad)
        delays = element_delay(probe, pos)
        out[i] = np.abs(weights.coefficients @ np.exp(-2j * np.pi * weights.freq_hz * delays)) ** 2
    return out


def _temporal_response(weights: BeamWeights, distances: np.ndarray) -> np.ndarray:
    f = weights.grid.subcarrier_frequencies()
    delays = distances / SPEED_OF_LIGHT
    phases = np.exp(-2j * np.pi * np.outer(delays, f))
    return np.abs(phases @ weights.coefficients) ** 2


def gain_profile(weights: BeamWeights, distances_m,
                 angle_rad: float | None = None) -> BeamPattern:
    """Array gain over probe distances, normalized to the focal point.

    For spatial focusing the probe rides the near-field steering vector
    at the focal angle (or an explicit ``angle_rad``); for temporal
    beamforming each distance maps to its delay phasor.
    """
    distances = np.asarray(distances_m, dtype=float)
    if distances.size == 0:
        raise ValueError("probe axis is empty")
    if weights.kind is BeamKind.SPATIAL_FOCUSING:
        theta = weights.focal_angle_rad if angle_rad is None else angle_rad
        gain = _spatial_response(weights, distances, theta)
        focal_gain = float(_spatial_response(
            weights, np.array([weights.focal_range_m]), theta)[0])
    else:
        gain = _temporal_response(weights, distances)
        focal_gain = float(_temporal_response(
            weights, np.array([weights.focal_range_m]))[0])
    gain_db = 10.0 * np.log10(gain / focal_gain)
    return BeamPattern(weights.kind, distances, gain_db, gain,
                       weights.focal_range_m, focal_gain)


def half_power_width(pattern: BeamPattern) -> float:
    """Width of the main lobe around the focal distance at half power.

    Crossings are linearly interpolated between probe samples; a side
    that never drops below half power within the probe axis contributes
    its end point (so a flat profile reports the probe span).
    """
    db = pattern.gain_db
    d = pattern.distances_m
    peak = int(np.argmin(np.abs(d - pattern.focal_range_m)))

    def cross(direction: int) -> float:
        i = peak
        while 0 <= i + direction < db.size and db[i + direction] > HALF_POWER_DB:
            i += direction
        j = i + direction
        if j < 0 or j >= db.size:
            return float(d[i])
        # interpolate the half-power crossing between samples i and j
        frac = (HALF_POWER_DB - db[i]) / (db[j] - db[i])
        return float(d[i] + frac * (d[j] - d[i]))

    return cross(+1) - cross(-1)
