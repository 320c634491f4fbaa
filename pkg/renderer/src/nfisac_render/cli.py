"""Batch figure rendering from simulator CSV directories.

Two entry styles: ``--spec plot.json`` describing one figure, or
``--preset fig1..fig5 --in DIR --out DIR`` which knows the standard
file layout each experiment writes.
"""

import argparse
import glob
import json
import os
import sys
from dataclasses import dataclass

from . import figures
from .readers import SchemaError

KINDS = ("heatmap-panel", "line-sweep", "profile-cuts", "beam-profiles", "crb-map")


@dataclass(frozen=True)
class PlotSpec:
    kind: str
    inputs: tuple
    out: str
    db_floor: float = -60.0
    title: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; expected one of {KINDS}")
        if not self.inputs:
            raise ValueError("spec lists no input files")
        if self.db_floor >= 0:
            raise ValueError("db_floor must be negative")


def load_spec(path) -> PlotSpec:
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    unknown = set(raw) - {"kind", "inputs", "out", "db_floor", "title"}
    if unknown:
        raise ValueError(f"unknown spec field(s): {', '.join(sorted(unknown))}")
    return PlotSpec(kind=raw.get("kind", ""), inputs=tuple(raw.get("inputs", ())),
                    out=raw.get("out", "figure.png"),
                    db_floor=raw.get("db_floor", -60.0), title=raw.get("title"))


def render(spec: PlotSpec):
    """Build the figure described by the spec; returns the Figure."""
    if spec.kind == "heatmap-panel":
        return figures.heatmap_panel(spec.inputs, spec.db_floor, spec.title)
    if spec.kind == "line-sweep":
        return figures.line_sweep(spec.inputs[0], spec.title)
    if spec.kind == "profile-cuts":
        return figures.profile_cuts(spec.inputs, spec.title)
    if spec.kind == "beam-profiles":
        return figures.beam_profiles(spec.inputs[0], spec.title)
    return figures.crb_maps(spec.inputs, spec.title)


def _gallery_inputs(in_dir):
    names = [f"{model}-{view}.csv"
             for model in ("far", "near")
             for view in ("spatial-delay", "angular-frequency", "angular-delay")]
    return tuple(os.path.join(in_dir, n) for n in names)


def preset_spec(name: str, in_dir: str, out_dir: str) -> PlotSpec:
    """Standard figure for one experiment preset's output directory."""
    out = os.path.join(out_dir, f"{name}.png")
    if name == "fig1":
        return PlotSpec("heatmap-panel", _gallery_inputs(in_dir), out,
                        title="wideband channel views, planar vs spherical model")
    if name == "fig2":
        return PlotSpec("line-sweep", (os.path.join(in_dir, "crb_sweep.csv"),), out,
                        title="distance CRB vs bandwidth and array size")
    if name == "fig3":
        cuts = tuple(sorted(glob.glob(os.path.join(in_dir, "velocity_cut_*.csv"))))
        return PlotSpec("profile-cuts", cuts, out, title="velocity profiles")
    if name == "fig4":
        return PlotSpec("beam-profiles", (os.path.join(in_dir, "beam_profiles.csv"),),
                        out, title="beamfocusing vs temporal beamforming")
    if name == "fig5":
        maps = tuple(sorted(glob.glob(os.path.join(in_dir, "crb_map_*.csv"))))
        return PlotSpec("crb-map", maps, out, title="distance CRB by array arrangement")
    raise ValueError(f"unknown preset {name!r}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="nfisac-render",
        description="Render figures from nfisac CSV outputs.")
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--spec", metavar="PATH", help="JSON figure description")
    group.add_argument("--preset", metavar="NAME",
                       choices=("fig1", "fig2", "fig3", "fig4", "fig5"),
                       help="standard figure for an experiment preset")
    parser.add_argument("--in", dest="in_dir", metavar="DIR",
                        help="directory holding the experiment's CSVs (preset mode)")
    parser.add_argument("--out", metavar="DIR", default=".",
                        help="output directory (preset mode) or ignored with --spec")
    args = parser.parse_args(argv)

    try:
        if args.spec:
            spec = load_spec(args.spec)
        else:
            if not args.in_dir:
                parser.error("--preset requires --in DIR")
            spec = preset_spec(args.preset, args.in_dir, args.out)
        os.makedirs(os.path.dirname(spec.out) or ".", exist_ok=True)
        figures.save(render(spec), spec.out)
    except (SchemaError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {spec.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
