"""Antenna array geometries and target kinematics.

Everything lives in the 2-D plane spanned by the array and the target.
Linear arrays sit on the x-axis centered at the origin; circular arrays
are centered at the origin.  The target direction is measured from the
positive x-axis (the array axis), so broadside is pi/2.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0


class ArrayKind(enum.Enum):
    DENSE_ULA = "dense-ula"
    SPARSE_ULA = "sparse-ula"
    UCA = "uca"


def _linear_offsets(n: int, spacing: float) -> np.ndarray:
    idx = np.arange(n, dtype=float)
    return (idx - (n - 1) / 2.0) * spacing


@dataclass(frozen=True)
class ArrayGeometry:
    """Element layout of an antenna array.

    ``element_positions`` is an (N, 2) array in meters.  Dense linear
    arrays use half-wavelength spacing, sparse linear arrays one
    wavelength; both lie on the x-axis centered at the origin.  Circular
    arrays place all elements on a circle around the origin whose
    default diameter matches the dense linear aperture (N-1)*lambda/2.
    """

    kind: ArrayKind
    element_positions: np.ndarray
    wavelength: float
    spacing: float | None = None
    radius: float | None = None

    def __post_init__(self):
        pos = np.asarray(self.element_positions, dtype=float)
        object.__setattr__(self, "element_positions", pos)
        if self.wavelength <= 0:
            raise ValueError("wavelength must be positive")
        if pos.ndim != 2 or pos.shape[1] != 2 or pos.shape[0] < 1:
            raise ValueError("element_positions must be an (N, 2) array with N >= 1")
        if np.unique(pos, axis=0).shape[0] != pos.shape[0]:
            raise ValueError("element positions must be pairwise distinct")
        if self.kind in (ArrayKind.DENSE_ULA, ArrayKind.SPARSE_ULA):
            if self.spacing is None or self.spacing <= 0:
                raise ValueError("linear arrays need a positive spacing")
            required = self.wavelength / 2 if self.kind is ArrayKind.DENSE_ULA else self.wavelength
            if self.spacing != required:
                raise ValueError(
                    f"{self.kind.value} requires spacing {required} m "
                    f"(got {self.spacing} m)"
                )
            if np.any(pos[:, 1] != 0.0):
                raise ValueError("linear array elements must lie on the x-axis")
            expected = _linear_offsets(pos.shape[0], self.spacing)
            if not np.allclose(pos[:, 0], expected, rtol=0, atol=1e-12 * self.spacing):
                raise ValueError("linear array must be centered on the origin")
        elif self.kind is ArrayKind.UCA:
            if self.radius is None or self.radius <= 0:
                raise ValueError("circular arrays need a positive radius")
            dist = np.hypot(pos[:, 0], pos[:, 1])
            if not np.allclose(dist, self.radius, rtol=1e-12, atol=0):
                raise ValueError("circular array elements must be equidistant from the origin")

    @property
    def n_elements(self) -> int:
        return self.element_positions.shape[0]

    @property
    def aperture(self) -> float:
        """Largest pairwise element separation, in meters."""
        pos = self.element_positions
        if self.kind is ArrayKind.UCA:
            return 2.0 * float(self.radius)
        return float(pos[:, 0].max() - pos[:, 0].min())


def dense_ula(n: int, wavelength: float) -> ArrayGeometry:
    """Half-wavelength-spaced linear array on the x-axis."""
    spacing = wavelength / 2
    offsets = _linear_offsets(n, spacing)
    pos = np.column_stack([offsets, np.zeros(n)])
    return ArrayGeometry(ArrayKind.DENSE_ULA, pos, wavelength, spacing=spacing)


def sparse_ula(n: int, wavelength: float) -> ArrayGeometry:
    """One-wavelength-spaced linear array (doubled aperture, same N)."""
    spacing = wavelength
    offsets = _linear_offsets(n, spacing)
    pos = np.column_stack([offsets, np.zeros(n)])
    return ArrayGeometry(ArrayKind.SPARSE_ULA, pos, wavelength, spacing=spacing)


def uca(n: int, wavelength: float, radius: float | None = None,
        orientation: float = 0.0) -> ArrayGeometry:
    """Uniform circular array centered at the origin.

    The default radius makes the diameter equal to the aperture of a
    dense linear array with the same element count.  ``orientation``
    rotates element 0 away from the x-axis.
    """
    if radius is None:
        radius = (n - 1) * wavelength / 4
    angles = orientation + 2.0 * np.pi * np.arange(n) / n
    pos = radius * np.column_stack([np.cos(angles), np.sin(angles)])
    return ArrayGeometry(ArrayKind.UCA, pos, wavelength, radius=radius)


@dataclass(frozen=True)
class TargetState:
    """Polar position and in-plane velocity of a point target.

    ``v_radial`` is the range rate along the line of sight from the
    array center (positive receding); ``v_transverse`` is the component
    along the line of sight rotated by +90 degrees.
    """

    range_m: float
    angle_rad: float
    v_radial: float = 0.0
    v_transverse: float = 0.0
    gain: complex = 1.0 + 0.0j

    def __post_init__(self):
        if not self.range_m > 0:
            raise ValueError("target range must be positive")
        if not 0.0 < self.angle_rad < math.pi:
            raise ValueError("target angle must lie in (0, pi)")

    @property
    def delay_s(self) -> float:
        """One-way propagation delay to the array center."""
        return self.range_m / SPEED_OF_LIGHT

    @property
    def los_unit(self) -> np.ndarray:
        return np.array([math.cos(self.angle_rad), math.sin(self.angle_rad)])

    @property
    def transverse_unit(self) -> np.ndarray:
        return np.array([-math.sin(self.angle_rad), math.cos(self.angle_rad)])

    @property
    def position(self) -> np.ndarray:
        return self.range_m * self.los_unit

    @property
    def velocity(self) -> np.ndarray:
        return self.v_radial * self.los_unit + self.v_transverse * self.transverse_unit


def element_delay(target: TargetState, position) -> np.ndarray:
    """Exact propagation delay (seconds) from the target to a point.

    ``position`` may be a single (2,) point or an (N, 2) stack; the
    result matches the leading shape.
    """
    separation = target.position - np.asarray(position, dtype=float)
    return np.linalg.norm(separation, axis=-1) / SPEED_OF_LIGHT


def doppler_projection(target: TargetState, position) -> np.ndarray:
    """Range rate (m/s) of the target as seen from a point.

    Projects the target velocity onto the unit vector from the point to
    the target; at the array center this is exactly ``v_radial``.
    """
    separation = target.position - np.asarray(position, dtype=float)
    distance = np.linalg.norm(separation, axis=-1)
    return separation @ target.velocity / distance
