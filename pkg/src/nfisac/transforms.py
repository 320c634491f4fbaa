"""Unitary DFT transforms between spatial/angular and frequency/delay domains.

A per-symbol channel matrix H is (N antennas) x (M subcarriers).  With
F_N and F_M the unitary DFT matrices (1/sqrt scaling), the three derived
views are H F_M^H (spatial-delay), F_N^H H (angular-frequency) and
F_N^H H F_M^H (angular-delay).  All three preserve the Frobenius norm.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np


class Domain(enum.Enum):
    SPATIAL_FREQUENCY = "spatial-frequency"
    SPATIAL_DELAY = "spatial-delay"
    ANGULAR_FREQUENCY = "angular-frequency"
    ANGULAR_DELAY = "angular-delay"


@dataclass(frozen=True)
class DomainMatrix:
    data: np.ndarray
    domain: Domain


def _as_matrix(h) -> np.ndarray:
    h = np.asarray(h)
    if h.ndim != 2:
        raise ValueError("expected a 2-D per-symbol channel matrix")
    return h


def to_spatial_delay(h) -> DomainMatrix:
    """Right-multiply by F_M^H: per-antenna delay profiles."""
    h = _as_matrix(h)
    out = math.sqrt(h.shape[1]) * np.fft.ifft(h, axis=1)
    return DomainMatrix(out, Domain.SPATIAL_DELAY)


def to_angular_frequency(h) -> DomainMatrix:
    """Left-multiply by F_N^H: per-subcarrier angular spectra."""
    h = _as_matrix(h)
    out = math.sqrt(h.shape[0]) * np.fft.ifft(h, axis=0)
    return DomainMatrix(out, Domain.ANGULAR_FREQUENCY)


def to_angular_delay(h) -> DomainMatrix:
    """Two-sided transform F_N^H H F_M^H: joint angle-delay map."""
    h = _as_matrix(h)
    out = math.sqrt(h.shape[0] * h.shape[1]) * np.fft.ifft2(h)
    return DomainMatrix(out, Domain.ANGULAR_DELAY)


def from_angular_delay(dm: DomainMatrix) -> np.ndarray:
    """Inverse of :func:`to_angular_delay`: F_N X F_M."""
    x = _as_matrix(dm.data)
    return np.fft.fft2(x) / math.sqrt(x.shape[0] * x.shape[1])


def spatial_frequencies(n: int) -> np.ndarray:
    """Centered normalized spatial frequencies in [-1/2, 1/2), one per bin."""
    return np.fft.fftshift(np.fft.fftfreq(n))


def angle_from_spatial_frequency(nu, wavelength: float, spacing: float) -> np.ndarray:
    """Map normalized spatial frequency to physical angle (radians).

    Valid only when the spacing is at most half a wavelength; wider
    arrays alias and should be reported in raw bins.
    """
    if spacing > wavelength / 2:
        raise ValueError("angle mapping requires spacing <= wavelength/2")
    cos_theta = np.clip(np.asarray(nu, dtype=float) * wavelength / spacing, -1.0, 1.0)
    return np.arccos(cos_theta)


_SHIFT_AXES = {
    Domain.SPATIAL_FREQUENCY: (),
    Domain.SPATIAL_DELAY: (1,),
    Domain.ANGULAR_FREQUENCY: (0,),
    Domain.ANGULAR_DELAY: (0, 1),
}


def _signed_bins(n: int) -> np.ndarray:
    return np.rint(np.fft.fftshift(np.fft.fftfreq(n)) * n).astype(int)


def heatmap_grid(dm: DomainMatrix, floor_db: float = -60.0):
    """Peak-normalized magnitude map in dB, centered for display.

    Transformed axes are fftshift-centered so zero delay / broadside sit
    mid-axis; untransformed axes keep their 1-based physical indices.
    Returns (row_labels, col_labels, db_matrix).
    """
    if floor_db >= 0:
        raise ValueError("floor_db must be negative")
    mag = np.abs(dm.data)
    peak = mag.max()
    if peak == 0:
        raise ValueError("cannot normalize an identically zero matrix")
    floor_mag = peak * 10.0 ** (floor_db / 20.0)
    db = 20.0 * np.log10(np.maximum(mag, floor_mag) / peak)
    axes = _SHIFT_AXES[dm.domain]
    if axes:
        db = np.fft.fftshift(db, axes=axes)
    rows, cols = dm.data.shape
    row_labels = _signed_bins(rows) if 0 in axes else np.arange(1, rows + 1)
    col_labels = _signed_bins(cols) if 1 in axes else np.arange(1, cols + 1)
    return row_labels, col_labels, db


def write_heatmap_csv(dm: DomainMatrix, path, floor_db: float = -60.0) -> None:
    """CSV heatmap: header row of column bins, then one row per row bin."""
    row_labels, col_labels, db = heatmap_grid(dm, floor_db)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("bin," + ",".join(str(c) for c in col_labels) + "\n")
        for label, row in zip(row_labels, db):
            fh.write(str(label) + "," + ",".join(repr(float(v)) for v in row) + "\n")
