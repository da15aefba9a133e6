#!/usr/bin/env python3
"""Render a two-player payoff matrix JSON as an annotated heatmap.

Reads ``{"row_strategies": [...], "col_strategies": [...], "cells":
[[[p1, p2], ...], ...]}``, colors cells by the row player's payoff,
annotates both payoffs, and outlines every pure Nash equilibrium cell
(both entries simultaneous weak best responses).

This is a pure view over an emitted file: equilibria are re-derived from
the stored payoffs alone, with no dependency on the simulation engine.

Usage:
    plot_matrix.py --input matrix.json --output matrix.png [--title TEXT]
"""

import argparse
import json
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.patches as patches
import matplotlib.pyplot as plt
import numpy as np

DPI = 150


class MatrixError(ValueError):
    pass


def load_matrix(path):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    for key in ("row_strategies", "col_strategies", "cells"):
        if key not in data:
            raise MatrixError(f"{path}: missing key {key!r}")
    rows, cols = list(data["row_strategies"]), list(data["col_strategies"])
    cells = np.asarray(data["cells"], dtype=float)
    if cells.shape != (len(rows), len(cols), 2):
        raise MatrixError(
            f"{path}: cells shape {cells.shape} does not match "
            f"{len(rows)}x{len(cols)} strategies with 2 payoffs per cell"
        )
    return rows, cols, cells


def pure_nash_cells(cells):
    """Cells where both payoffs are simultaneous weak best responses."""
    row_best = cells[:, :, 0] == cells[:, :, 0].max(axis=0, keepdims=True)
    col_best = cells[:, :, 1] == cells[:, :, 1].max(axis=1, keepdims=True)
    return {(int(r), int(c)) for r, c in np.argwhere(row_best & col_best)}


def build_figure(rows, cols, cells, title=None):
    """Return (figure, equilibrium cells)."""
    equilibria = pure_nash_cells(cells)
    fig, ax = plt.subplots(figsize=(1.8 * len(cols) + 2.5, 1.2 * len(rows) + 2))
    ax.imshow(cells[:, :, 0], cmap="YlGnBu", aspect="auto")
    ax.set_xticks(range(len(cols)), cols, rotation=20)
    ax.set_yticks(range(len(rows)), rows)
    ax.set_xlabel("column player strategy")
    ax.set_ylabel("row player strategy")
    ax.set_title(title or "strategy payoffs (row, column); equilibria outlined")
    for r in range(len(rows)):
        for c in range(len(cols)):
            ax.text(
                c, r, f"{cells[r, c, 0]:.0f}, {cells[r, c, 1]:.0f}",
                ha="center", va="center", fontsize=9,
            )
    for r, c in equilibria:
        ax.add_patch(
            patches.Rectangle(
                (c - 0.5, r - 0.5), 1.0, 1.0,
                fill=False, edgecolor="crimson", linewidth=2.5,
            )
        )
    fig.tight_layout()
    return fig, equilibria


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--input", required=True, help="payoff matrix JSON")
    parser.add_argument("--output", required=True, help="image path (.png or .svg)")
    parser.add_argument("--title", default=None)
    args = parser.parse_args(argv)
    try:
        rows, cols, cells = load_matrix(args.input)
    except (MatrixError, json.JSONDecodeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    fig, equilibria = build_figure(rows, cols, cells)
    try:
        fig.savefig(args.output, dpi=DPI)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.output}: {len(equilibria)} equilibrium cell(s) outlined")
    return 0


if __name__ == "__main__":
    sys.exit(main())
