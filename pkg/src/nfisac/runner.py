"""Experiment orchestration: runs a validated config, writes CSVs and a manifest.

All delimited output uses '.' decimals, '\\n' line endings, a header row
and UTF-8, with floats rendered by Python's shortest round-trip repr, so
a fixed (config, seed) pair yields byte-identical files.
"""

import hashlib
import json
import math
import os
import time
from dataclasses import dataclass

import numpy as np

from . import __version__
from .beams import focusing_weights, gain_profile, temporal_weights
from .channel import OfdmGrid, add_noise, far_field_channel, near_field_channel
from .config import (
    ChannelGalleryConfig,
    BeamCompareConfig,
    CrbMapConfig,
    CrbSweepConfig,
    Experiment,
    ExperimentConfig,
    VelocityProfilesConfig,
    symbol_count_for,
)
from .crb import ChannelModel, EstimationScenario, crb_map, fisher_information
from .geometry import SPEED_OF_LIGHT, TargetState
from .transforms import to_angular_delay, to_angular_frequency, to_spatial_delay, write_heatmap_csv
from .velocity import VelocityGrid, VelocityProfiler

WORKERS_ENV = "NFISAC_MAX_WORKERS"


class NumericalFailure(Exception):
    """The experiment produced no usable numbers (e.g. nothing identifiable)."""


@dataclass(frozen=True)
class RunManifest:
    experiment: str
    seed: int
    tool_version: str
    duration_s: float
    outputs: tuple          # ((name, sha256), ...)
    config_text: str

    def to_json(self) -> str:
        return json.dumps({
            "experiment": self.experiment,
            "seed": self.seed,
            "tool_version": self.tool_version,
            "duration_s": self.duration_s,
            "outputs": [{"name": n, "sha256": h} for n, h in self.outputs],
            "config": self.config_text,
        }, indent=2)


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _sha256(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def _distance_tag(value: float) -> str:
    return ("%g" % value).replace(".", "p").replace("-", "m")


def _map_workers() -> int | None:
    cap = os.environ.get(WORKERS_ENV)
    return max(1, int(cap)) if cap else None


# ---------------------------------------------------------------------------
# experiment implementations; each returns the list of files written

def _run_channel_gallery(cfg: ChannelGalleryConfig, seed: int, out_dir) -> list:
    geometry = cfg.geometry.build()
    outputs = []
    cases = (("far", far_field_channel, cfg.far_target),
             ("near", near_field_channel, cfg.near_target))
    views = (("spatial-delay", to_spatial_delay),
             ("angular-frequency", to_angular_frequency),
             ("angular-delay", to_angular_delay))
    for label, synthesize, target in cases:
        tensor = synthesize(cfg.grid, geometry, target)
        h = tensor.data[:, :, 0]
        for view_label, transform in views:
            name = f"{label}-{view_label}.csv"
            write_heatmap_csv(transform(h), os.path.join(out_dir, name), cfg.db_floor)
            outputs.append(name)
    return outputs


def _run_crb_sweep(cfg: CrbSweepConfig, seed: int, out_dir) -> list:
    n_symbols = symbol_count_for(cfg.duration_s, cfg.spacing_hz)
    rows = []
    finite = 0
    for bandwidth in cfg.bandwidths_hz:
        n_subcarriers = max(1, int(round(bandwidth / cfg.spacing_hz)))
        grid = OfdmGrid(cfg.carrier_hz, n_subcarriers, cfg.spacing_hz, n_symbols)
        for n_antennas in cfg.antenna_counts:
            scenario = EstimationScenario(
                grid, cfg.geometry.build(n_antennas), cfg.target,
                cfg.snr_db, cfg.model)
            crb_r = fisher_information(scenario).crb_of("range")
            finite += math.isfinite(crb_r)
            rows.append((bandwidth, n_antennas, crb_r, math.sqrt(crb_r)))
    if finite == 0:
        raise NumericalFailure("no sweep point is identifiable")
    _write_csv(os.path.join(out_dir, "crb_sweep.csv"),
               ("bandwidth_hz", "n_antennas", "crb_r_m2", "sqrt_crb_m"), rows)
    return ["crb_sweep.csv"]


def _run_velocity_profiles(cfg: VelocityProfilesConfig, seed: int, out_dir) -> list:
    n_symbols = symbol_count_for(cfg.duration_s, cfg.spacing_hz)
    grid = OfdmGrid(cfg.carrier_hz, cfg.n_subcarriers, cfg.spacing_hz, n_symbols)
    geometry = cfg.geometry.build()
    vgrid = VelocityGrid.regular(cfg.v_max_mps, cfg.v_step_mps)
    outputs = []
    for distance in cfg.distances_m:
        target = TargetState(distance, cfg.angle_rad, cfg.v_radial,
                             cfg.v_transverse, cfg.gain)
        observation = add_noise(near_field_channel(grid, geometry, target),
                                cfg.snr_db, seed)
        profiler = VelocityProfiler(grid, geometry, (distance, cfg.angle_rad), vgrid)
        profile = profiler.profile(observation)
        tag = _distance_tag(distance)

        name = f"velocity_surface_r{tag}.csv"
        rows = ((vr, vt, profile.values[i, j])
                for i, vr in enumerate(vgrid.v_radial)
                for j, vt in enumerate(vgrid.v_transverse))
        _write_csv(os.path.join(out_dir, name), ("v_radial_mps", "v_transverse_mps", "value"), rows)
        outputs.append(name)

        name = f"velocity_cut_radial_r{tag}.csv"
        _write_csv(os.path.join(out_dir, name), ("v_radial_mps", "value"),
                   zip(vgrid.v_radial, profile.radial_cut))
        outputs.append(name)

        name = f"velocity_cut_transverse_r{tag}.csv"
        _write_csv(os.path.join(out_dir, name), ("v_transverse_mps", "value"),
                   zip(vgrid.v_transverse, profile.transverse_cut))
        outputs.append(name)
    return outputs


def _run_beam_compare(cfg: BeamCompareConfig, seed: int, out_dir) -> list:
    geometry = cfg.geometry.build()
    grid = OfdmGrid(cfg.carrier_hz, cfg.n_subcarriers, cfg.spacing_hz, 1)
    probe = np.geomspace(cfg.probe_min_m, cfg.probe_max_m, cfg.probe_points)
    rows = []
    for focal in cfg.focal_distances_m:
        spatial = gain_profile(
            focusing_weights(geometry, focal, cfg.focal_angle_rad, cfg.carrier_hz), probe)
        temporal = gain_profile(
            temporal_weights(grid, focal / SPEED_OF_LIGHT), probe)
        for pattern, kind in ((spatial, "spatial-focusing"),
                              (temporal, "temporal-beamforming")):
            rows.extend((d, g, kind, focal)
                        for d, g in zip(pattern.distances_m, pattern.gain_db))
    _write_csv(os.path.join(out_dir, "beam_profiles.csv"),
               ("distance_m", "gain_db", "kind", "focal_distance_m"), rows)
    return ["beam_profiles.csv"]


def _run_crb_map(cfg: CrbMapConfig, seed: int, out_dir) -> list:
    from .config import GeometrySpec

    r_values = np.linspace(cfg.r_min_m, cfg.r_max_m, cfg.n_r)
    theta_values = np.linspace(cfg.theta_min_rad, cfg.theta_max_rad, cfg.n_theta)
    outputs = []
    identifiable_cells = 0
    for kind in cfg.kinds:
        spec = GeometrySpec(kind, cfg.n_elements, cfg.wavelength_m)
        template_target = TargetState(cfg.r_min_m, cfg.theta_min_rad,
                                      cfg.v_radial, cfg.v_transverse, cfg.gain)
        scenario = EstimationScenario(cfg.grid, spec.build(), template_target,
                                      cfg.snr_db, cfg.model)
        grid_crb = crb_map(scenario, r_values, theta_values,
                           max_workers=_map_workers())
        identifiable_cells += int(np.isfinite(grid_crb).sum())
        name = f"crb_map_{kind.value}.csv"
        rows = ((r, theta, grid_crb[i, j])
                for i, r in enumerate(r_values)
                for j, theta in enumerate(theta_values))
        _write_csv(os.path.join(out_dir, name), ("r_m", "theta_rad", "crb_r_m2"), rows)
        outputs.append(name)
    if identifiable_cells == 0:
        raise NumericalFailure("every map cell is unidentifiable")
    return outputs


_RUNNERS = {
    Experiment.CHANNEL_GALLERY: _run_channel_gallery,
    Experiment.CRB_SWEEP: _run_crb_sweep,
    Experiment.VELOCITY_PROFILES: _run_velocity_profiles,
    Experiment.BEAM_COMPARE: _run_beam_compare,
    Experiment.CRB_MAP: _run_crb_map,
}

# Far-field maps with one subcarrier leave distance unobservable; the
# runner reports that as a numerical failure rather than a config error.


def run(config: ExperimentConfig, out_dir, seed: int | None = None) -> RunManifest:
    """Execute the experiment and write its CSVs plus manifest.json.

    ``seed`` overrides the config's seed (the CLI --seed flag).  Raises
    OSError for unusable output locations and NumericalFailure when an
    experiment yields nothing usable.
    """
    effective_seed = config.seed if seed is None else seed
    os.makedirs(out_dir, exist_ok=True)
    started = time.monotonic()
    names = _RUNNERS[config.experiment](config.payload, effective_seed, out_dir)
    duration = time.monotonic() - started
    outputs = tuple((name, _sha256(os.path.join(out_dir, name))) for name in names)
    manifest = RunManifest(config.experiment.value, effective_seed, __version__,
                           duration, outputs, config.text)
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8",
              newline="\n") as fh:
        fh.write(manifest.to_json())
        fh.write("\n")
    return manifest
