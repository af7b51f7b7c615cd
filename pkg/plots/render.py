#!/usr/bin/env python3
"""Render figures from tabsig CSV output.

Usage: render.py <csv> <outdir>

Detects the CSV kind by header. Index sweeps (cells;lambda;...) become one
scatter per index pair with a gray identity line; power grids
(theta1;theta2;test;power;reps) become one heatmap surface per test plus
pairwise power scatters. All index axes are fixed to [0,1] x [0,1] so plots
are comparable across scenarios.
"""

from __future__ import annotations

import sys
from itertools import combinations
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

INDEX_COLUMNS = ["p_exact", "p_lrt_asym", "p_chi2", "p_fisher", "ev_mc", "ev_asym"]
SWEEP_REQUIRED = {"cells", "lambda", "p_exact", "p_lrt_asym", "p_chi2", "ev_mc", "ev_asym"}
POWER_REQUIRED = {"theta1", "theta2", "test", "power", "reps"}

DOT_STYLE = dict(s=6, color="black", alpha=0.6, linewidths=0)
IDENTITY_STYLE = dict(color="0.6", linewidth=1.2, zorder=1)


def load_frame(csv_path) -> pd.DataFrame:
    frame = pd.read_csv(csv_path, sep=";")
    if frame.empty:
        raise ValueError(f"{csv_path}: no data rows")
    return frame


def detect_kind(frame: pd.DataFrame) -> str:
    columns = set(frame.columns)
    if SWEEP_REQUIRED <= columns:
        return "sweep"
    if POWER_REQUIRED <= columns:
        return "power"
    raise ValueError(f"unrecognized CSV header: {sorted(columns)}")


def pair_figure(x, y, xlabel: str, ylabel: str):
    """Scatter of one index against another over the gray identity line."""
    fig, ax = plt.subplots(figsize=(3.2, 3.2))
    ax.plot([0, 1], [0, 1], **IDENTITY_STYLE)
    ax.scatter(x, y, **DOT_STYLE, zorder=2)
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_aspect("equal")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    fig.tight_layout()
    return fig, ax


def _save(fig, path: Path):
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_index_pairs(csv_path, out_dir) -> list[Path]:
    """One scatter per pair of index columns present in the sweep CSV."""
    frame = load_frame(csv_path)
    if detect_kind(frame) != "sweep":
        raise ValueError(f"{csv_path}: not an index sweep CSV")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    present = [
        c for c in INDEX_COLUMNS if c in frame.columns and frame[c].notna().any()
    ]
    written = []
    for a, b in combinations(present, 2):
        sub = frame[[a, b]].dropna()
        fig, _ = pair_figure(sub[a], sub[b], a, b)
        path = out_dir / f"pair_{a}_{b}.png"
        _save(fig, path)
        written.append(path)
    return written


def _power_grid(sub: pd.DataFrame):
    """Dense theta1 x theta2 matrix with NaN outside the estimated cells."""
    t1 = np.sort(sub["theta1"].unique())
    t2 = np.sort(sub["theta2"].unique())
    index1 = {v: i for i, v in enumerate(t1)}
    index2 = {v: i for i, v in enumerate(t2)}
    grid = np.full((t2.size, t1.size), np.nan)
    for row in sub.itertuples():
        grid[index2[row.theta2], index1[row.theta1]] = row.power
    return t1, t2, grid


def surface_figure(sub: pd.DataFrame, title: str):
    """Heatmap of one test's power over the parameter lattice."""
    t1, t2, grid = _power_grid(sub)
    fig, ax = plt.subplots(figsize=(4.2, 3.6))
    mesh = ax.pcolormesh(t1, t2, np.ma.masked_invalid(grid), vmin=0, vmax=1, cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="power")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_xlabel("theta1")
    ax.set_ylabel("theta2")
    ax.set_title(title)
    fig.tight_layout()
    return fig, ax


def plot_power(csv_path, out_dir) -> list[Path]:
    """One surface per test plus pairwise power scatters with identity line."""
    frame = load_frame(csv_path)
    if detect_kind(frame) != "power":
        raise ValueError(f"{csv_path}: not a power CSV")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    tests = list(dict.fromkeys(frame["test"]))
    written = []
    for test in tests:
        fig, _ = surface_figure(frame[frame["test"] == test], test)
        path = out_dir / f"surface_{test}.png"
        _save(fig, path)
        written.append(path)
    wide = frame.pivot_table(index=["theta1", "theta2"], columns="test", values="power")
    for a, b in combinations(tests, 2):
        sub = wide[[a, b]].dropna()
        fig, _ = pair_figure(sub[a], sub[b], f"power {a}", f"power {b}")
        path = out_dir / f"pair_power_{a}_{b}.png"
        _save(fig, path)
        written.append(path)
    return written


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 2:
        print("usage: render.py <csv> <outdir>", file=sys.stderr)
        return 1
    csv_path, out_dir = argv
    try:
        frame = load_frame(csv_path)
        kind = detect_kind(frame)
        if kind == "sweep":
            written = plot_index_pairs(csv_path, out_dir)
        else:
            written = plot_power(csv_path, out_dir)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
