"""Figure builders: each takes CSV paths and returns a matplotlib Figure.

The renderer plots CSV values verbatim; the only transforms applied are
axis/color scalings (log axes, LogNorm color maps).  Non-finite rows
(unidentifiable sentinel values) are dropped from log-scaled plots, not
remapped.  Layout is fixed for fixed inputs: one colormap, one DPI.
"""

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import LogNorm

from .readers import read_heatmap, read_table

DPI = 150
COLORMAP = "viridis"


def heatmap_panel(csv_paths, db_floor=-60.0, title=None):
    """Grid of dB heatmaps, one panel per file, shared color scale."""
    if db_floor >= 0:
        raise ValueError("dB floor must be negative")
    n = len(csv_paths)
    if n == 0:
        raise ValueError("no input files")
    ncols = 3 if n % 3 == 0 else min(n, 3)
    nrows = (n + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, figsize=(4.2 * ncols, 3.6 * nrows),
                             squeeze=False)
    image = None
    for ax, path in zip(axes.flat, csv_paths):
        rows, cols, values = read_heatmap(path)
        image = ax.imshow(values, aspect="auto", origin="lower", cmap=COLORMAP,
                          vmin=db_floor, vmax=0.0,
                          extent=(cols[0], cols[-1], rows[0], rows[-1]))
        ax.set_title(os.path.splitext(os.path.basename(path))[0], fontsize=9)
        ax.set_xlabel("column bin")
        ax.set_ylabel("row bin")
    for ax in axes.flat[n:]:
        ax.axis("off")
    fig.colorbar(image, ax=axes, shrink=0.85, label="dB")
    if title:
        fig.suptitle(title)
    return fig


def line_sweep(csv_path, title=None):
    """Sweep curves: sqrt-CRB vs bandwidth, one line per antenna count."""
    table = read_table(csv_path, ("bandwidth_hz", "n_antennas", "sqrt_crb_m"))
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    for count in np.unique(table["n_antennas"]):
        sel = table["n_antennas"] == count
        x = table["bandwidth_hz"][sel]
        y = table["sqrt_crb_m"][sel]
        finite = np.isfinite(y)
        ax.plot(x[finite], y[finite], marker="o", label=f"{int(count)} antennas")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("bandwidth (Hz)")
    ax.set_ylabel("sqrt CRB (m)")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def profile_cuts(csv_paths, title=None):
    """1-D velocity profile cuts, radial and transverse side by side."""
    if not csv_paths:
        raise ValueError("no input files")
    fig, (ax_r, ax_t) = plt.subplots(1, 2, figsize=(9.5, 4.0))
    for path in csv_paths:
        name = os.path.splitext(os.path.basename(path))[0]
        if "radial" in name:
            table = read_table(path, ("v_radial_mps", "value"))
            ax_r.plot(table["v_radial_mps"], table["value"], label=name)
        else:
            table = read_table(path, ("v_transverse_mps", "value"))
            ax_t.plot(table["v_transverse_mps"], table["value"], label=name)
    ax_r.set_xlabel("radial velocity (m/s)")
    ax_t.set_xlabel("transverse velocity (m/s)")
    for ax in (ax_r, ax_t):
        ax.set_ylabel("normalized correlation")
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize=7)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    return fig


def beam_profiles(csv_path, title=None):
    """Gain vs distance for every (kind, focal distance) pair."""
    table = read_table(csv_path, ("distance_m", "gain_db", "focal_distance_m"),
                       string_columns=("kind",))
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    styles = {"spatial-focusing": "-", "temporal-beamforming": "--"}
    for kind in np.unique(table["kind"]):
        for focal in np.unique(table["focal_distance_m"]):
            sel = (table["kind"] == kind) & (table["focal_distance_m"] == focal)
            if not np.any(sel):
                continue
            ax.plot(table["distance_m"][sel], table["gain_db"][sel],
                    styles.get(str(kind), "-"),
                    label=f"{kind} @ {focal:g} m")
    ax.set_xscale("log")
    ax.set_xlabel("distance (m)")
    ax.set_ylabel("normalized gain (dB)")
    ax.set_ylim(-40, 2)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=7)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def crb_maps(csv_paths, title=None):
    """Polar-region CRB maps, one panel per geometry, shared log scale."""
    if not csv_paths:
        raise ValueError("no input files")
    tables = [read_table(p, ("r_m", "theta_rad", "crb_r_m2")) for p in csv_paths]
    finite = np.concatenate([t["crb_r_m2"][np.isfinite(t["crb_r_m2"])] for t in tables])
    if finite.size == 0:
        raise ValueError("all map cells are unidentifiable")
    norm = LogNorm(vmin=finite.min(), vmax=finite.max())
    fig, axes = plt.subplots(1, len(csv_paths), figsize=(4.2 * len(csv_paths), 3.8),
                             squeeze=False)
    mesh = None
    for ax, path, table in zip(axes.flat, csv_paths, tables):
        r = np.unique(table["r_m"])
        theta = np.unique(table["theta_rad"])
        grid = table["crb_r_m2"].reshape(r.size, theta.size)
        mesh = ax.pcolormesh(theta, r, grid, norm=norm, cmap=COLORMAP)
        ax.set_title(os.path.splitext(os.path.basename(path))[0], fontsize=9)
        ax.set_xlabel("angle (rad)")
        ax.set_ylabel("range (m)")
    fig.colorbar(mesh, ax=axes, shrink=0.85, label="CRB (m$^2$)")
    if title:
        fig.suptitle(title)
    return fig


def save(fig, out_path) -> None:
    fig.savefig(out_path, dpi=DPI)
    plt.close(fig)
