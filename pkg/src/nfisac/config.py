"""Strict experiment configuration: parsing, validation, typed payloads.

The format is a flat key-value file with one level of [section] nesting,
'#' comments and '=' assignments.  Parsing is strict: unknown keys or
sections, duplicates, type errors and physics-invariant violations are
all reported as line-numbered diagnostics, and all violations are
collected rather than stopping at the first.  Only the seed and export
cosmetics have defaults; every physics parameter must be spelled out.
"""

import enum
import math
from dataclasses import dataclass, field

from .channel import OfdmGrid
from .crb import ChannelModel
from .geometry import ArrayGeometry, ArrayKind, TargetState, dense_ula, sparse_ula, uca


class Experiment(enum.Enum):
    CHANNEL_GALLERY = "channel-gallery"
    CRB_SWEEP = "crb-sweep"
    VELOCITY_PROFILES = "velocity-profiles"
    BEAM_COMPARE = "beam-compare"
    CRB_MAP = "crb-map"


@dataclass(frozen=True)
class Diagnostic:
    line: int
    message: str

    def __str__(self):
        return f"line {self.line}: {self.message}"


class ConfigError(Exception):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


# ---------------------------------------------------------------------------
# raw key-value parsing

def _parse_raw(text):
    """Split into sections of (key -> (raw value, line)); '' is the top level."""
    sections = {"": ({}, 0)}
    order = [""]
    current = ""
    diags = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]") or len(line) < 3:
                diags.append(Diagnostic(lineno, "malformed section header"))
                continue
            name = line[1:-1].strip()
            if name in sections:
                diags.append(Diagnostic(lineno, f"duplicate section [{name}]"))
                continue
            sections[name] = ({}, lineno)
            order.append(name)
            current = name
        elif "=" in line:
            key, value = line.split("=", 1)
            key = key.strip()
            value = value.strip()
            if not key:
                diags.append(Diagnostic(lineno, "missing key before '='"))
                continue
            entries = sections[current][0]
            if key in entries:
                diags.append(Diagnostic(lineno, f"duplicate key '{key}'"))
                continue
            entries[key] = (value, lineno)
        else:
            diags.append(Diagnostic(lineno, "expected 'key = value' or '[section]'"))
    return sections, diags


def _to_float(raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"expected a number, got {raw!r}")
    if math.isnan(value):
        raise ValueError("NaN is not a valid value")
    return value


def _to_int(raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"expected an integer, got {raw!r}")


def _to_float_list(raw: str):
    parts = [p.strip() for p in raw.split(",")]
    if not parts or any(not p for p in parts):
        raise ValueError("expected a comma-separated list of numbers")
    return tuple(_to_float(p) for p in parts)


def _to_str_list(raw: str):
    parts = [p.strip() for p in raw.split(",")]
    if not parts or any(not p for p in parts):
        raise ValueError("expected a comma-separated list")
    return tuple(parts)


class _Reader:
    """Typed access to one section with diagnostic collection."""

    def __init__(self, name, sections, diags):
        self.name = name
        self.diags = diags
        if name in sections:
            self.entries, self.header_line = sections[name]
            self.present = True
        else:
            self.entries, self.header_line = {}, 0
            self.present = False
            diags.append(Diagnostic(0, f"missing required section [{name}]"))
        self.used = set()

    def _label(self, key):
        return f"[{self.name}] {key}" if self.name else key

    def get(self, key, conv, required=True, default=None, check=None):
        if key not in self.entries:
            if required and self.present:
                self.diags.append(Diagnostic(
                    self.header_line, f"{self._label(key)}: required key is missing"))
            return default
        raw, line = self.entries[key]
        self.used.add(key)
        try:
            value = conv(raw)
        except ValueError as exc:
            self.diags.append(Diagnostic(line, f"{self._label(key)}: {exc}"))
            return default
        if check is not None:
            problem = check(value)
            if problem:
                self.diags.append(Diagnostic(line, f"{self._label(key)}: {problem}"))
                return default
        return value

    def line_of(self, key):
        return self.entries[key][1] if key in self.entries else self.header_line

    def close(self):
        for key, (_, line) in self.entries.items():
            if key not in self.used:
                self.diags.append(Diagnostic(line, f"{self._label(key)}: unknown key"))


def _positive(label):
    return lambda v: None if v > 0 else f"{label} must be positive"


def _at_least(n, label):
    return lambda v: None if v >= n else f"{label} must be >= {n}"


# ---------------------------------------------------------------------------
# shared block builders

_KINDS = {k.value: k for k in ArrayKind}


@dataclass(frozen=True)
class GeometrySpec:
    kind: ArrayKind
    n_elements: int
    wavelength_m: float
    radius_m: float | None = None
    orientation_rad: float = 0.0

    def build(self, n_elements: int | None = None) -> ArrayGeometry:
        n = self.n_elements if n_elements is None else n_elements
        if self.kind is ArrayKind.DENSE_ULA:
            return dense_ula(n, self.wavelength_m)
        if self.kind is ArrayKind.SPARSE_ULA:
            return sparse_ula(n, self.wavelength_m)
        return uca(n, self.wavelength_m, radius=self.radius_m,
                   orientation=self.orientation_rad)


def _read_kind(reader):
    def conv(raw):
        if raw not in _KINDS:
            raise ValueError(f"expected one of {sorted(_KINDS)}, got {raw!r}")
        return _KINDS[raw]
    return reader.get("kind", conv)


def _read_geometry(sections, diags, carrier_hz, section="geometry",
                   need_elements=True):
    from .geometry import SPEED_OF_LIGHT

    reader = _Reader(section, sections, diags)
    kind = _read_kind(reader)
    n = reader.get("n_elements", _to_int, required=need_elements,
                   check=_at_least(1, "element count")) if need_elements else None
    default_lambda = SPEED_OF_LIGHT / carrier_hz if carrier_hz and carrier_hz > 0 else None
    wavelength = reader.get("wavelength_m", _to_float, required=False,
                            default=default_lambda,
                            check=_positive("wavelength"))
    spacing = reader.get("spacing_m", _to_float, required=False,
                         check=_positive("spacing"))
    radius = reader.get("radius_m", _to_float, required=False,
                        check=_positive("radius"))
    orientation = reader.get("orientation_rad", _to_float, required=False, default=0.0)
    reader.close()
    if wavelength is None or kind is None:
        return None
    if spacing is not None and kind in (ArrayKind.DENSE_ULA, ArrayKind.SPARSE_ULA):
        required = wavelength / 2 if kind is ArrayKind.DENSE_ULA else wavelength
        if spacing != required:
            diags.append(Diagnostic(
                reader.line_of("spacing_m"),
                f"[{section}] spacing_m: {kind.value} requires spacing = "
                f"{'wavelength/2' if kind is ArrayKind.DENSE_ULA else 'wavelength'} "
                f"({required} m), got {spacing} m"))
    if radius is not None and kind is not ArrayKind.UCA:
        diags.append(Diagnostic(reader.line_of("radius_m"),
                                f"[{section}] radius_m: only valid for uca geometry"))
    return GeometrySpec(kind, n if n is not None else 0, wavelength, radius, orientation)


def _read_target(sections, diags, section, with_position=True,
                 with_distances=False):
    reader = _Reader(section, sections, diags)
    out = {}
    if with_position:
        out["range_m"] = reader.get("range_m", _to_float, check=_positive("range"))
        out["angle_rad"] = reader.get(
            "angle_rad", _to_float,
            check=lambda v: None if 0 < v < math.pi else "angle must lie in (0, pi)")
    else:
        out["angle_rad"] = reader.get(
            "angle_rad", _to_float, required=with_distances,
            check=lambda v: None if 0 < v < math.pi else "angle must lie in (0, pi)")
    out["v_radial"] = reader.get("v_radial_mps", _to_float)
    out["v_transverse"] = reader.get("v_transverse_mps", _to_float)
    gain_re = reader.get("gain_re", _to_float)
    gain_im = reader.get("gain_im", _to_float)
    if with_distances:
        out["distances_m"] = reader.get(
            "distances_m", _to_float_list,
            check=lambda vs: None if all(v > 0 for v in vs) else "distances must be positive")
    reader.close()
    if gain_re is not None and gain_im is not None:
        gain = complex(gain_re, gain_im)
        if gain == 0:
            diags.append(Diagnostic(reader.line_of("gain_re"),
                                    f"[{section}] gain must be nonzero"))
        out["gain"] = gain
    else:
        out["gain"] = None
    return out


def _read_grid(sections, diags, *, count_key="subcarrier_count",
               symbols=True, duration=False):
    reader = _Reader("grid", sections, diags)
    out = {
        "carrier_hz": reader.get("carrier_hz", _to_float,
                                 check=_positive("carrier frequency")),
        "spacing_hz": reader.get("subcarrier_spacing_hz", _to_float,
                                 check=_positive("subcarrier spacing")),
    }
    if count_key:
        out["n_subcarriers"] = reader.get(count_key, _to_int,
                                          check=_at_least(1, "subcarrier count"))
    if symbols:
        out["n_symbols"] = reader.get("symbol_count", _to_int,
                                      check=_at_least(1, "symbol count"))
    if duration:
        out["duration_s"] = reader.get("duration_s", _to_float,
                                       check=_positive("duration"))
    reader.close()
    return out


def symbol_count_for(duration_s: float, spacing_hz: float) -> int:
    """Symbols fitting the duration (floor, with an epsilon guard against
    binary-fraction artifacts like 0.002 * 1e5 = 199.999...)."""
    return int(duration_s * spacing_hz + 1e-9)


_MODELS = {m.value: m for m in ChannelModel}


def _read_model(reader):
    def conv(raw):
        if raw not in _MODELS:
            raise ValueError(f"expected one of {sorted(_MODELS)}, got {raw!r}")
        return _MODELS[raw]
    return reader.get("model", conv)


# ---------------------------------------------------------------------------
# experiment payloads

@dataclass(frozen=True)
class ChannelGalleryConfig:
    grid: OfdmGrid
    geometry: GeometrySpec
    far_target: TargetState
    near_target: TargetState
    db_floor: float


@dataclass(frozen=True)
class CrbSweepConfig:
    carrier_hz: float
    spacing_hz: float
    geometry: GeometrySpec
    target: TargetState
    snr_db: float
    duration_s: float
    model: ChannelModel
    bandwidths_hz: tuple
    antenna_counts: tuple


@dataclass(frozen=True)
class VelocityProfilesConfig:
    carrier_hz: float
    spacing_hz: float
    n_subcarriers: int
    duration_s: float
    geometry: GeometrySpec
    angle_rad: float
    v_radial: float
    v_transverse: float
    gain: complex
    distances_m: tuple
    v_max_mps: float
    v_step_mps: float
    snr_db: float


@dataclass(frozen=True)
class BeamCompareConfig:
    carrier_hz: float
    spacing_hz: float
    n_subcarriers: int
    geometry: GeometrySpec
    focal_distances_m: tuple
    focal_angle_rad: float
    probe_min_m: float
    probe_max_m: float
    probe_points: int


@dataclass(frozen=True)
class CrbMapConfig:
    grid: OfdmGrid
    kinds: tuple
    n_elements: int
    wavelength_m: float
    snr_db: float
    model: ChannelModel
    gain: complex
    v_radial: float
    v_transverse: float
    r_min_m: float
    r_max_m: float
    n_r: int
    theta_min_rad: float
    theta_max_rad: float
    n_theta: int


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: Experiment
    seed: int
    payload: object
    text: str


# ---------------------------------------------------------------------------
# per-experiment builders

def _try_grid(diags, line, **kwargs):
    try:
        return OfdmGrid(**kwargs)
    except (ValueError, TypeError) as exc:
        diags.append(Diagnostic(line, f"[grid] {exc}"))
        return None


def _try_target(diags, line, section, fields):
    if any(v is None for v in fields.values()):
        return None
    try:
        return TargetState(range_m=fields["range_m"], angle_rad=fields["angle_rad"],
                           v_radial=fields["v_radial"],
                           v_transverse=fields["v_transverse"], gain=fields["gain"])
    except ValueError as exc:
        diags.append(Diagnostic(line, f"[{section}] {exc}"))
        return None


def _build_channel_gallery(sections, diags):
    g = _read_grid(sections, diags)
    geometry = _read_geometry(sections, diags, g.get("carrier_hz"))
    far = _read_target(sections, diags, "far_target")
    near = _read_target(sections, diags, "near_target")
    export = _Reader("export", sections, diags) if "export" in sections else None
    db_floor = -60.0
    if export is not None:
        db_floor = export.get("db_floor_db", _to_float, required=False, default=-60.0,
                              check=lambda v: None if v < 0 else "dB floor must be negative")
        export.close()
    grid = None
    if all(g.get(k) is not None for k in ("carrier_hz", "spacing_hz", "n_subcarriers", "n_symbols")):
        grid = _try_grid(diags, sections["grid"][1], carrier_hz=g["carrier_hz"],
                         n_subcarriers=g["n_subcarriers"],
                         subcarrier_spacing_hz=g["spacing_hz"],
                         n_symbols=g["n_symbols"])
    far_t = _try_target(diags, sections.get("far_target", ({}, 0))[1], "far_target", far) if far else None
    near_t = _try_target(diags, sections.get("near_target", ({}, 0))[1], "near_target", near) if near else None
    if diags or grid is None or geometry is None or far_t is None or near_t is None:
        return None
    return ChannelGalleryConfig(grid, geometry, far_t, near_t, db_floor)


def _build_crb_sweep(sections, diags):
    g = _read_grid(sections, diags, count_key=None, symbols=False)
    geometry = _read_geometry(sections, diags, g.get("carrier_hz"), need_elements=False)
    target_fields = _read_target(sections, diags, "target")
    sensing = _Reader("sensing", sections, diags)
    snr_db = sensing.get("snr_db", _to_float)
    duration = sensing.get("duration_s", _to_float, check=_positive("duration"))
    model = _read_model(sensing)
    sensing.close()
    sweep = _Reader("sweep", sections, diags)
    bandwidths = sweep.get("bandwidths_hz", _to_float_list,
                           check=lambda vs: None if all(v > 0 for v in vs) else "bandwidths must be positive")
    antennas = sweep.get("antenna_counts", _to_str_list,
                         check=lambda vs: None if all(v.isdigit() and int(v) >= 1 for v in vs)
                         else "antenna counts must be positive integers")
    sweep.close()
    target = _try_target(diags, sections.get("target", ({}, 0))[1], "target", target_fields) if target_fields else None
    if bandwidths is not None and g.get("spacing_hz"):
        for bw in bandwidths:
            if bw < g["spacing_hz"]:
                diags.append(Diagnostic(sweep.line_of("bandwidths_hz"),
                                        "[sweep] bandwidths_hz: bandwidth below one subcarrier spacing"))
                break
    if diags or geometry is None or target is None or bandwidths is None or antennas is None \
            or snr_db is None or duration is None or model is None:
        return None
    return CrbSweepConfig(g["carrier_hz"], g["spacing_hz"], geometry, target,
                          snr_db, duration, model, tuple(bandwidths),
                          tuple(int(a) for a in antennas))


def _build_velocity_profiles(sections, diags):
    g = _read_grid(sections, diags, symbols=False, duration=True)
    geometry = _read_geometry(sections, diags, g.get("carrier_hz"))
    target = _read_target(sections, diags, "target", with_position=False,
                          with_distances=True)
    profile = _Reader("profile", sections, diags)
    v_max = profile.get("v_max_mps", _to_float, check=_positive("grid half-span"))
    v_step = profile.get("v_step_mps", _to_float, check=_positive("grid step"))
    snr_db = profile.get("snr_db", _to_float)
    profile.close()
    if g.get("duration_s") and g.get("spacing_hz"):
        if symbol_count_for(g["duration_s"], g["spacing_hz"]) < 2:
            diags.append(Diagnostic(
                sections["grid"][1],
                "[grid] duration_s: too short for Doppler sensing (needs >= 2 symbols)"))
    if diags or geometry is None or target.get("gain") is None \
            or target.get("distances_m") is None or target.get("angle_rad") is None \
            or v_max is None or v_step is None or snr_db is None:
        return None
    return VelocityProfilesConfig(g["carrier_hz"], g["spacing_hz"], g["n_subcarriers"],
                                  g["duration_s"], geometry, target["angle_rad"],
                                  target["v_radial"], target["v_transverse"],
                                  target["gain"], target["distances_m"],
                                  v_max, v_step, snr_db)


def _build_beam_compare(sections, diags):
    g = _read_grid(sections, diags, symbols=False)
    geometry = _read_geometry(sections, diags, g.get("carrier_hz"))
    focal = _Reader("focal", sections, diags)
    distances = focal.get("distances_m", _to_float_list,
                          check=lambda vs: None if all(v > 0 for v in vs) else "focal distances must be positive")
    angle = focal.get("angle_rad", _to_float,
                      check=lambda v: None if 0 < v < math.pi else "angle must lie in (0, pi)")
    focal.close()
    probe = _Reader("probe", sections, diags)
    r_min = probe.get("r_min_m", _to_float, check=_positive("probe start"))
    r_max = probe.get("r_max_m", _to_float, check=_positive("probe end"))
    n_pts = probe.get("n_points", _to_int, check=_at_least(2, "probe point count"))
    probe.close()
    if r_min is not None and r_max is not None and r_min >= r_max:
        diags.append(Diagnostic(probe.line_of("r_min_m"),
                                "[probe] r_min_m: probe start must be below probe end"))
    if g.get("n_subcarriers") is not None and g["n_subcarriers"] < 2:
        diags.append(Diagnostic(sections["grid"][1],
                                "[grid] subcarrier_count: temporal beamforming needs >= 2 subcarriers"))
    if diags or geometry is None or distances is None or angle is None \
            or r_min is None or r_max is None or n_pts is None:
        return None
    return BeamCompareConfig(g["carrier_hz"], g["spacing_hz"], g["n_subcarriers"],
                             geometry, distances, angle, r_min, r_max, n_pts)


def _build_crb_map(sections, diags):
    g = _read_grid(sections, diags)
    reader = _Reader("geometry", sections, diags)

    def conv_kinds(raw):
        parts = _to_str_list(raw)
        bad = [p for p in parts if p not in _KINDS]
        if bad:
            raise ValueError(f"unknown geometry kind(s) {bad}")
        return tuple(_KINDS[p] for p in parts)

    kinds = reader.get("kinds", conv_kinds)
    n = reader.get("n_elements", _to_int, check=_at_least(1, "element count"))
    from .geometry import SPEED_OF_LIGHT
    wavelength = reader.get("wavelength_m", _to_float, required=False,
                            default=SPEED_OF_LIGHT / g["carrier_hz"] if g.get("carrier_hz") else None,
                            check=_positive("wavelength"))
    reader.close()
    target = _read_target(sections, diags, "target", with_position=False)
    sensing = _Reader("sensing", sections, diags)
    snr_db = sensing.get("snr_db", _to_float)
    model = _read_model(sensing)
    sensing.close()
    region = _Reader("map", sections, diags)
    r_min = region.get("r_min_m", _to_float, check=_positive("map range start"))
    r_max = region.get("r_max_m", _to_float, check=_positive("map range end"))
    n_r = region.get("n_r", _to_int, check=_at_least(2, "range cell count"))
    t_min = region.get("theta_min_rad", _to_float,
                       check=lambda v: None if 0 < v < math.pi else "angle must lie in (0, pi)")
    t_max = region.get("theta_max_rad", _to_float,
                       check=lambda v: None if 0 < v < math.pi else "angle must lie in (0, pi)")
    n_t = region.get("n_theta", _to_int, check=_at_least(2, "angle cell count"))
    region.close()
    if r_min is not None and r_max is not None and r_min >= r_max:
        diags.append(Diagnostic(region.line_of("r_min_m"),
                                "[map] r_min_m: range start must be below range end"))
    if t_min is not None and t_max is not None and t_min >= t_max:
        diags.append(Diagnostic(region.line_of("theta_min_rad"),
                                "[map] theta_min_rad: angle start must be below angle end"))
    grid = None
    if all(g.get(k) is not None for k in ("carrier_hz", "spacing_hz", "n_subcarriers", "n_symbols")):
        grid = _try_grid(diags, sections["grid"][1], carrier_hz=g["carrier_hz"],
                         n_subcarriers=g["n_subcarriers"],
                         subcarrier_spacing_hz=g["spacing_hz"], n_symbols=g["n_symbols"])
    if diags or grid is None or kinds is None or n is None or wavelength is None \
            or target.get("gain") is None or snr_db is None or model is None \
            or None in (r_min, r_max, n_r, t_min, t_max, n_t):
        return None
    return CrbMapConfig(grid, kinds, n, wavelength, snr_db, model, target["gain"],
                        target["v_radial"], target["v_transverse"],
                        r_min, r_max, n_r, t_min, t_max, n_t)


_BUILDERS = {
    Experiment.CHANNEL_GALLERY: (_build_channel_gallery,
                                 ("grid", "geometry", "far_target", "near_target", "export")),
    Experiment.CRB_SWEEP: (_build_crb_sweep,
                           ("grid", "geometry", "target", "sensing", "sweep")),
    Experiment.VELOCITY_PROFILES: (_build_velocity_profiles,
                                   ("grid", "geometry", "target", "profile")),
    Experiment.BEAM_COMPARE: (_build_beam_compare,
                              ("grid", "geometry", "focal", "probe")),
    Experiment.CRB_MAP: (_build_crb_map,
                         ("grid", "geometry", "target", "sensing", "map")),
}

_EXPERIMENTS = {e.value: e for e in Experiment}


def _build(text: str):
    sections, diags = _parse_raw(text)
    top_entries, _ = sections[""]
    top = _Reader("", sections, diags)

    def conv_experiment(raw):
        if raw not in _EXPERIMENTS:
            raise ValueError(f"expected one of {sorted(_EXPERIMENTS)}, got {raw!r}")
        return _EXPERIMENTS[raw]

    experiment = top.get("experiment", conv_experiment)
    seed = top.get("seed", _to_int, required=False, default=0)
    top.close()
    if experiment is None:
        return None, diags
    builder, allowed = _BUILDERS[experiment]
    for name, (_, line) in sections.items():
        if name and name not in allowed:
            diags.append(Diagnostic(line, f"unknown section [{name}] for {experiment.value}"))
    payload = builder(sections, diags)
    if diags or payload is None:
        return None, diags
    return ExperimentConfig(experiment, seed, payload, text), diags


def load_config(text: str) -> ExperimentConfig:
    """Parse and validate; raises ConfigError carrying all diagnostics."""
    config, diags = _build(text)
    if config is None:
        if not diags:
            diags = [Diagnostic(0, "configuration is incomplete")]
        raise ConfigError(diags)
    return config


def validate_text(text: str):
    """All violations found in the text; empty list means run() would accept."""
    _, diags = _build(text)
    return sorted(diags, key=lambda d: d.line)


def validate_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return validate_text(fh.read())
