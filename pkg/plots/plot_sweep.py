#!/usr/bin/env python3
"""Render a sweep chart from aggregated sweep CSV output.

Reads the aggregated schema ``size,player,mean_influenced`` (one row per
graph size and player) plus an optional fits JSON mapping each player label
to ``{"slope": ..., "intercept": ..., "r_squared": ...}`` (or null), and
draws one line+scatter series per player with dashed fit lines and their
R² in the legend.

This is a pure view over emitted files: it never imports or re-runs the
simulation engine.

Usage:
    plot_sweep.py --input sweep_means.csv [--fits sweep_fits.json]
                  --output sweep.png [--title TEXT]
"""

import argparse
import csv
import json
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

EXPECTED_HEADER = ["size", "player", "mean_influenced"]
DPI = 150


class SchemaError(ValueError):
    pass


def load_rows(path):
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: file is empty") from None
        if header != EXPECTED_HEADER:
            raise SchemaError(
                f"{path}: schema mismatch: expected columns {EXPECTED_HEADER}, "
                f"found {header}"
            )
        rows = []
        for i, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise SchemaError(f"{path}: line {i}: expected 3 fields, got {len(row)}")
            try:
                rows.append((int(row[0]), row[1], float(row[2])))
            except ValueError:
                raise SchemaError(f"{path}: line {i}: non-numeric value in {row}") from None
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def load_fits(path):
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: fits file must be a JSON object keyed by player")
    return {label: fit for label, fit in data.items() if fit}


def build_figure(rows, fits, title=None):
    """Return (figure, info); info counts the drawn series and fit lines."""
    by_player = {}
    for size, player, mean in rows:
        by_player.setdefault(player, []).append((size, mean))
    sizes = sorted({size for size, _, _ in rows})

    fig, ax = plt.subplots(figsize=(7, 4.5))
    info = {"series": 0, "fit_lines": 0, "fit_labels": []}
    for player, points in by_player.items():
        points.sort()
        xs = np.array([p[0] for p in points], dtype=float)
        ys = np.array([p[1] for p in points])
        ax.plot(xs, ys, marker="o", label=player)
        info["series"] += 1
        fit = fits.get(player)
        if fit and len(sizes) > 1:
            grid = np.linspace(min(sizes), max(sizes), 50)
            label = f"{player} fit (R²={fit['r_squared']:.3f})"
            ax.plot(grid, fit["slope"] * grid + fit["intercept"], linestyle="--", label=label)
            info["fit_lines"] += 1
            info["fit_labels"].append(label)
    if len(sizes) == 1:
        print("warning: single graph size; drawing scatter only, fits skipped", file=sys.stderr)
    ax.set_xlabel("graph size (nodes)")
    ax.set_ylabel("mean influenced nodes")
    ax.set_title(title or "influenced nodes vs graph size")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    return fig, info


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--input", required=True, help="aggregated sweep CSV")
    parser.add_argument("--fits", default=None, help="fits JSON emitted next to the CSV")
    parser.add_argument("--output", required=True, help="image path (.png or .svg)")
    parser.add_argument("--title", default=None)
    args = parser.parse_args(argv)
    try:
        rows = load_rows(args.input)
        fits = load_fits(args.fits)
    except (SchemaError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    fig, info = build_figure(rows, fits, title=args.title)
    try:
        fig.savefig(args.output, dpi=DPI)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.output}: {info['series']} series, {info['fit_lines']} fit lines")
    return 0


if __name__ == "__main__":
    sys.exit(main())
