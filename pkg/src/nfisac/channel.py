"""Wideband OFDM channel synthesis for far-field and near-field targets.

Both models produce an (N, M, K) complex tensor over antennas,
subcarriers, and symbols.  The far-field model assumes planar wavefronts
and a single Doppler shared by all antennas; the near-field model uses
exact per-element distances and per-element velocity projections.
"""

import math
import struct
from dataclasses import dataclass

import numpy as np

from .geometry import (
    SPEED_OF_LIGHT,
    ArrayGeometry,
    ArrayKind,
    TargetState,
    doppler_projection,
    element_delay,
)

BINARY_MAGIC = b"NFCH"
BINARY_VERSION = 1


@dataclass(frozen=True)
class OfdmGrid:
    """Sampling lattice of the OFDM frame.

    Subcarrier m (1-based) sits at carrier + (m - 1 - (M-1)/2) * spacing,
    i.e. the comb is centered on the carrier.  The symbol clock is the
    inverse subcarrier spacing; no cyclic prefix is modeled.
    """

    carrier_hz: float
    n_subcarriers: int
    subcarrier_spacing_hz: float
    n_symbols: int = 1

    def __post_init__(self):
        if self.n_subcarriers < 1 or self.n_symbols < 1:
            raise ValueError("subcarrier and symbol counts must be >= 1")
        if self.subcarrier_spacing_hz <= 0:
            raise ValueError("subcarrier spacing must be positive")
        if self.subcarrier_frequencies()[0] <= 0:
            raise ValueError("lowest subcarrier frequency must be positive")

    @property
    def symbol_duration_s(self) -> float:
        return 1.0 / self.subcarrier_spacing_hz

    @property
    def bandwidth_hz(self) -> float:
        return self.n_subcarriers * self.subcarrier_spacing_hz

    def subcarrier_frequencies(self) -> np.ndarray:
        m = np.arange(self.n_subcarriers, dtype=float)
        return self.carrier_hz + (m - (self.n_subcarriers - 1) / 2.0) * self.subcarrier_spacing_hz


@dataclass(frozen=True)
class ChannelTensor:
    """(N, M, K) complex samples with their generating grid and geometry."""

    data: np.ndarray
    grid: OfdmGrid
    geometry: ArrayGeometry

    @property
    def shape(self) -> tuple:
        return self.data.shape


def _synthesize(grid: OfdmGrid, geometry: ArrayGeometry, gain: complex,
                delays: np.ndarray, dopplers: np.ndarray) -> np.ndarray:
    f = grid.subcarrier_frequencies()
    k = np.arange(grid.n_symbols, dtype=float)
    # slow[n, k] is the effective delay at symbol k: static delay plus
    # the per-element range rate integrated over the symbol clock.
    slow = delays[:, None] + (grid.symbol_duration_s / SPEED_OF_LIGHT) * dopplers[:, None] * k[None, :]
    phase = f[None, :, None] * slow[:, None, :]
    return gain * np.exp(-2j * np.pi * phase)


def far_field_channel(grid: OfdmGrid, geometry: ArrayGeometry,
                      target: TargetState) -> ChannelTensor:
    """Planar-wave channel with uniform Doppler (linear arrays only)."""
    if geometry.kind is ArrayKind.UCA:
        raise ValueError("the planar-wave model is defined for linear arrays only")
    x = geometry.element_positions[:, 0]
    delays = (target.range_m - x * math.cos(target.angle_rad)) / SPEED_OF_LIGHT
    dopplers = np.full(geometry.n_elements, target.v_radial)
    data = _synthesize(grid, geometry, target.gain, delays, dopplers)
    return ChannelTensor(data, grid, geometry)


def near_field_channel(grid: OfdmGrid, geometry: ArrayGeometry,
                       target: TargetState) -> ChannelTensor:
    """Spherical-wave channel with per-element Doppler (any geometry)."""
    delays = element_delay(target, geometry.element_positions)
    if np.any(delays <= 0):
        raise ValueError("target coincides with an array element")
    dopplers = doppler_projection(target, geometry.element_positions)
    data = _synthesize(grid, geometry, target.gain, delays, dopplers)
    return ChannelTensor(data, grid, geometry)


def add_noise(tensor: ChannelTensor, snr_db: float, seed: int) -> ChannelTensor:
    """Add circularly-symmetric complex Gaussian noise at a per-entry SNR.

    The noise variance is amplitude^2 / 10^(snr_db/10) per entry, with
    the signal amplitude taken from the tensor itself (all entries of a
    noiseless synthesis share |gain|).  ``snr_db = inf`` returns an
    untouched copy; outputs are deterministic for a fixed seed.
    """
    if math.isinf(snr_db) and snr_db > 0:
        return ChannelTensor(tensor.data.copy(), tensor.grid, tensor.geometry)
    if not math.isfinite(snr_db):
        raise ValueError("snr_db must be finite (or +inf for noiseless)")
    amplitude = float(np.abs(tensor.data).mean())
    variance = amplitude**2 / 10.0 ** (snr_db / 10.0)
    rng = np.random.default_rng(seed)
    scale = math.sqrt(variance / 2.0)
    noise = scale * (rng.standard_normal(tensor.data.shape)
                     + 1j * rng.standard_normal(tensor.data.shape))
    return ChannelTensor(tensor.data + noise, tensor.grid, tensor.geometry)


def write_csv(tensor: ChannelTensor, path) -> None:
    """Long-format dump: one row per (n, m, k) with real/imag parts.

    Antenna and subcarrier indices are 1-based, symbol index 0-based.
    """
    n, m, k = tensor.data.shape
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("n,m,k,re,im\n")
        for ni in range(n):
            for mi in range(m):
                for ki in range(k):
                    v = tensor.data[ni, mi, ki]
                    fh.write(f"{ni + 1},{mi + 1},{ki},"
                             f"{float(v.real)!r},{float(v.imag)!r}\n")


def write_binary(tensor: ChannelTensor, path) -> None:
    """Compact dump: 'NFCH' magic, u32 version and dims, then row-major
    little-endian float64 interleaved re/im."""
    n, m, k = tensor.data.shape
    header = struct.pack("<4sIIII", BINARY_MAGIC, BINARY_VERSION, n, m, k)
    payload = np.ascontiguousarray(tensor.data, dtype="<c16").tobytes()
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload)


def read_binary(path) -> np.ndarray:
    """Read a tensor written by :func:`write_binary`; returns the (N, M, K) data."""
    with open(path, "rb") as fh:
        header = fh.read(20)
        magic, version, n, m, k = struct.unpack("<4sIIII", header)
        if magic != BINARY_MAGIC:
            raise ValueError(f"bad magic {magic!r}")
        if version != BINARY_VERSION:
            raise ValueError(f"unsupported version {version}")
        payload = fh.read(16 * n * m * k)
    data = np.frombuffer(payload, dtype="<c16")
    if data.size != n * m * k:
        raise ValueError("truncated payload")
    return data.reshape(n, m, k).astype(np.complex128)
