"""Fisher information and Cramer-Rao bounds for point-target estimation.

The observation is the noiseless channel tensor mu(eta) plus white
circularly-symmetric complex Gaussian noise of per-entry variance
sigma^2.  For that model the Fisher information matrix is

    FIM_ij = (2 / sigma^2) * Re sum_{n,m,k} conj(d mu / d eta_i) * (d mu / d eta_j).

Every entry of mu is a pure phase ramp scaled by the gain, so all the
derivatives reduce to per-element delay and Doppler sensitivities that
are affine in the symbol index.  ``fisher_information`` exploits that to
sum the symbol axis in closed form; ``fisher_information_direct`` keeps
the naive tensor sum as an independent cross-check.
"""

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .channel import ChannelTensor, OfdmGrid, far_field_channel, near_field_channel
from .geometry import SPEED_OF_LIGHT, ArrayGeometry, ArrayKind, TargetState

COND_LIMIT = 1e12

WORKERS_ENV = "NFISAC_MAX_WORKERS"


class ChannelModel(enum.Enum):
    FAR_FIELD = "far-field"
    NEAR_FIELD = "near-field"


#: Estimable parameter names.  "range" and "delay" are the same physical
#: unknown in meters vs seconds; "gain_re"/"gain_im" are the real and
#: imaginary parts of the complex path gain.
GEOMETRIC_UNKNOWNS = ("range", "delay", "angle", "v_radial", "v_transverse")
GAIN_UNKNOWNS = ("gain_re", "gain_im")
ALL_UNKNOWNS = GEOMETRIC_UNKNOWNS + GAIN_UNKNOWNS


@dataclass(frozen=True)
class EstimationScenario:
    grid: OfdmGrid
    geometry: ArrayGeometry
    target: TargetState
    snr_db: float
    model: ChannelModel
    unknowns: tuple = ("range", "angle", "gain_re", "gain_im")

    def __post_init__(self):
        for name in self.unknowns:
            if name not in ALL_UNKNOWNS:
                raise ValueError(f"unknown parameter name {name!r}")
        if "gain_re" not in self.unknowns or "gain_im" not in self.unknowns:
            raise ValueError("the complex gain is never known a priori; "
                             "unknowns must include gain_re and gain_im")
        if "range" in self.unknowns and "delay" in self.unknowns:
            raise ValueError("range and delay parameterize the same unknown")
        if len(set(self.unknowns)) != len(self.unknowns):
            raise ValueError("unknowns must be distinct")

    @property
    def noise_variance(self) -> float:
        return abs(self.target.gain) ** 2 / 10.0 ** (self.snr_db / 10.0)


@dataclass(frozen=True)
class CrbReport:
    unknowns: tuple
    fim: np.ndarray
    crb: np.ndarray
    condition_number: float
    identifiable: bool

    def crb_of(self, name: str) -> float:
        return float(self.crb[self.unknowns.index(name)])


def mean_signal(scenario: EstimationScenario) -> np.ndarray:
    """Noiseless observation tensor for the scenario's model."""
    synth = far_field_channel if scenario.model is ChannelModel.FAR_FIELD else near_field_channel
    return synth(scenario.grid, scenario.geometry, scenario.target).data


def _sensitivities(scenario: EstimationScenario):
    """Per-element delay/Doppler values and their parameter derivatives.

    Returns (delays, dopplers, dt, dv) where dt[name] and dv[name] are
    (N,)-arrays holding d(delay)/d(name) in s/unit and
    d(doppler)/d(name) in (m/s)/unit for the geometric unknowns.
    """
    target = scenario.target
    pos = scenario.geometry.element_positions
    r = target.range_m
    vr, vt = target.v_radial, target.v_transverse
    u = target.los_unit
    u_perp = target.transverse_unit

    if scenario.model is ChannelModel.FAR_FIELD:
        if scenario.geometry.kind is ArrayKind.UCA:
            raise ValueError("the planar-wave model is defined for linear arrays only")
        x = pos[:, 0]
        n = x.size
        cos_t, sin_t = math.cos(target.angle_rad), math.sin(target.angle_rad)
        delays = (r - x * cos_t) / SPEED_OF_LIGHT
        dopplers = np.full(n, vr)
        dt = {
            "range": np.full(n, 1.0 / SPEED_OF_LIGHT),
            "angle": x * sin_t / SPEED_OF_LIGHT,
            "v_radial": np.zeros(n),
            "v_transverse": np.zeros(n),
        }
        dv = {
            "range": np.zeros(n),
            "angle": np.zeros(n),
            "v_radial": np.ones(n),
            "v_transverse": np.zeros(n),
        }
        return delays, dopplers, dt, dv

    separation = target.position - pos          # w_n = p - q_n
    dist = np.linalg.norm(separation, axis=1)   # R_n
    if np.any(dist <= 0):
        raise ValueError("target coincides with an array element")
    w_hat = separation / dist[:, None]
    alpha = w_hat @ u                            # LoS projection per element
    gamma = w_hat @ u_perp                       # transverse projection per element
    delays = dist / SPEED_OF_LIGHT
    dopplers = vr * alpha + vt * gamma
    dt = {
        "range": alpha / SPEED_OF_LIGHT,
        "angle": r * gamma / SPEED_OF_LIGHT,
        "v_radial": np.zeros_like(alpha),
        "v_transverse": np.zeros_like(alpha),
    }
    # d(doppler)/d(position parameters): the unit vectors w_hat rotate with
    # the target, and for the angle the velocity basis rotates as well.
    dv = {
        "range": (vr - dopplers * alpha) / dist,
        "angle": (vr * gamma - vt * alpha) + r * (vt - dopplers * gamma) / dist,
        "v_radial": alpha,
        "v_transverse": gamma,
    }
    return delays, dopplers, dt, dv


def _phase_coefficients(scenario: EstimationScenario):
    """Affine-in-k phase sensitivities a_n + k * b_n per geometric unknown.

    d mu / d eta = mu * (-2j pi f_m) * (a_n + k b_n) for each geometric
    unknown; gain derivatives are handled separately.
    """
    _, _, dt, dv = _sensitivities(scenario)
    ts_over_c = scenario.grid.symbol_duration_s / SPEED_OF_LIGHT
    coeffs = {}
    for name in ("range", "angle", "v_radial", "v_transverse"):
        coeffs[name] = (dt[name], ts_over_c * dv[name])
    # Delay in seconds is range/c, so d/d(delay) = c * d/d(range).
    coeffs["delay"] = (SPEED_OF_LIGHT * dt["range"], SPEED_OF_LIGHT * ts_over_c * dv["range"])
    return coeffs


def mean_signal_gradient(scenario: EstimationScenario) -> np.ndarray:
    """Analytic gradient of the mean tensor, shape (N, M, K, p).

    Column order follows ``scenario.unknowns``.  Intended for
    moderate-size grids; the Fisher computation itself never
    materializes this tensor.
    """
    mu = mean_signal(scenario)
    coeffs = _phase_coefficients(scenario)
    f = scenario.grid.subcarrier_frequencies()
    k = np.arange(scenario.grid.n_symbols, dtype=float)
    beta = scenario.target.gain
    n, m, kk = mu.shape
    out = np.empty((n, m, kk, len(scenario.unknowns)), dtype=np.complex128)
    for i, name in enumerate(scenario.unknowns):
        if name == "gain_re":
            out[..., i] = mu / beta
        elif name == "gain_im":
            out[..., i] = 1j * mu / beta
        else:
            a, b = coeffs[name]
            g = a[:, None] + np.outer(b, k)                   # (N, K)
            out[..., i] = mu * (-2j * np.pi) * f[None, :, None] * g[:, None, :]
    return out


def fisher_information_direct(scenario: EstimationScenario) -> np.ndarray:
    """FIM by brute-force summation over the full gradient tensor."""
    grad = mean_signal_gradient(scenario)
    p = grad.shape[-1]
    flat = grad.reshape(-1, p)
    fim = (2.0 / scenario.noise_variance) * np.real(flat.conj().T @ flat)
    return fim


def _fim_closed_form(scenario: EstimationScenario) -> np.ndarray:
    """FIM with the subcarrier and symbol sums done analytically.

    Writing the phase sensitivity of unknown i as f_m * (a_i + k b_i),
    every entry factorizes into sums of f_m, f_m^2 and k^0, k^1, k^2,
    so the cost is O(N p^2) independent of M and K.
    """
    grid = scenario.grid
    beta = scenario.target.gain
    sigma2 = scenario.noise_variance
    coeffs = _phase_coefficients(scenario)

    f = 2.0 * np.pi * grid.subcarrier_frequencies()
    sum_f1 = float(f.sum())
    sum_f2 = float((f**2).sum())
    kk = grid.n_symbols
    sum_k0 = float(kk)
    sum_k1 = kk * (kk - 1) / 2.0
    sum_k2 = (kk - 1) * kk * (2 * kk - 1) / 6.0

    names = scenario.unknowns
    p = len(names)
    fim = np.zeros((p, p))
    n_elems = scenario.geometry.n_elements
    abs_beta2 = abs(beta) ** 2

    for i in range(p):
        for j in range(i, p):
            ni, nj = names[i], names[j]
            gi, gj = ni in GAIN_UNKNOWNS, nj in GAIN_UNKNOWNS
            if gi and gj:
                val = n_elems * grid.n_subcarriers * sum_k0 if ni == nj else 0.0
            elif gi or gj:
                geo = nj if gi else ni
                a, b = coeffs[geo]
                s = float(a.sum()) * sum_k0 + float(b.sum()) * sum_k1
                gain_name = ni if gi else nj
                sign = beta.imag if gain_name == "gain_re" else -beta.real
                val = sign * sum_f1 * s
            else:
                ai, bi = coeffs[ni]
                aj, bj = coeffs[nj]
                s = (float((ai * aj).sum()) * sum_k0
                     + float((ai * bj + aj * bi).sum()) * sum_k1
                     + float((bi * bj).sum()) * sum_k2)
                val = abs_beta2 * sum_f2 * s
            fim[i, j] = fim[j, i] = (2.0 / sigma2) * val
    return fim


def fisher_information(scenario: EstimationScenario) -> CrbReport:
    """FIM and CRB for the scenario's unknowns.

    Identifiability is judged on the unit-diagonal-scaled FIM (its
    correlation form): the unknowns carry wildly different units, so the
    raw condition number says nothing about parameter coupling.  A zero
    diagonal or a scaled condition number above ``COND_LIMIT`` is
    reported as unidentifiable with infinite CRBs rather than raised.
    """
    fim = _fim_closed_form(scenario)
    p = fim.shape[0]
    diag = np.diag(fim)
    if np.any(diag <= 0):
        return CrbReport(scenario.unknowns, fim, np.full(p, math.inf), math.inf, False)
    d = np.sqrt(diag)
    scaled = fim / np.outer(d, d)
    eigvals = np.linalg.eigvalsh(scaled)
    lo, hi = float(eigvals[0]), float(eigvals[-1])
    cond = hi / lo if lo > 0 else math.inf
    identifiable = cond <= COND_LIMIT
    if identifiable:
        crb = np.diag(np.linalg.inv(scaled)).copy() / diag
    else:
        crb = np.full(p, math.inf)
    return CrbReport(scenario.unknowns, fim, crb, cond, identifiable)


def _max_workers() -> int:
    cap = os.environ.get(WORKERS_ENV)
    if cap:
        return max(1, int(cap))
    return min(4, os.cpu_count() or 1)


def crb_map(scenario: EstimationScenario, r_values, theta_values,
            max_workers: int | None = None) -> np.ndarray:
    """Range CRB over a polar grid of target positions, geometry fixed.

    Returns a (len(r_values), len(theta_values)) array; unidentifiable
    cells hold +inf.  Cells are independent and evaluated on a small
    thread pool (capped by the ``NFISAC_MAX_WORKERS`` environment
    variable when ``max_workers`` is not given).
    """
    if "range" not in scenario.unknowns:
        raise ValueError("the map reports the range CRB; add 'range' to the unknowns")
    r_values = np.asarray(r_values, dtype=float)
    theta_values = np.asarray(theta_values, dtype=float)
    idx = scenario.unknowns.index("range")
    out = np.empty((r_values.size, theta_values.size))

    def fill_row(i: int) -> None:
        for j, theta in enumerate(theta_values):
            target = replace(scenario.target, range_m=float(r_values[i]),
                             angle_rad=float(theta))
            cell = replace(scenario, target=target)
            out[i, j] = fisher_information(cell).crb[idx]

    workers = max_workers if max_workers is not None else _max_workers()
    if workers <= 1:
        for i in range(r_values.size):
            fill_row(i)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill_row, range(r_values.size)))
    return out
