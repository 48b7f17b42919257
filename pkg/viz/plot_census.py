#!/usr/bin/env python3
"""Stacked-bar census of shared and specific structures per comparison.

Usage: plot_census.py <description.json> [more.json ...] <out.(png|svg)>

One row per description JSON; the three panels juxtapose shared
structures with those specific to either graph, stacked by kind.
"""

import sys

import matplotlib.pyplot as plt
from matplotlib.patches import Patch

from common import KIND_COLORS, die, load_json, save

KINDS = ("clique", "star", "biclique", "starclique")


def census(entries):
    counts = dict.fromkeys(KINDS, 0)
    for entry in entries:
        kind = entry["kind"]
        if kind not in counts:
            die(f"unknown structure kind {kind!r}")
        counts[kind] += 1
    return counts


def main(argv):
    if len(argv) < 3:
        die("usage: plot_census.py <description.json> [...] <out.(png|svg)>")
    inputs, out_path = argv[1:-1], argv[-1]
    rows = []
    for path in inputs:
        payload = load_json(path)
        if "shared" not in payload or "header" not in payload:
            die(f"{path} is not a description JSON")
        label = f'{payload["header"].get("graph1", "g1")} vs ' \
                f'{payload["header"].get("graph2", "g2")}'
        rows.append((
            label,
            census(payload["shared"]),
            census(payload["unmatched_1"]),
            census(payload["unmatched_2"]),
        ))

    fig, axes = plt.subplots(1, 3, figsize=(11, 1.2 + 0.6 * len(rows)),
                             sharey=True)
    titles = ("shared", "specific to graph 1", "specific to graph 2")
    ys = range(len(rows))
    for ax, title, column in zip(axes, titles, (1, 2, 3)):
        left = [0.0] * len(rows)
        for kind in KINDS:
            widths = [rows[i][column][kind] for i in ys]
            ax.barh(list(ys), widths, left=left, color=KIND_COLORS[kind])
            left = [l + w for l, w in zip(left, widths)]
        ax.set_title(title, fontsize=10)
        ax.set_xlabel("structures")
    axes[0].set_yticks(list(ys))
    axes[0].set_yticklabels([r[0] for r in rows], fontsize=8)
    handles = [Patch(color=KIND_COLORS[k], label=k) for k in KINDS]
    axes[2].legend(handles=handles, fontsize=7, loc="lower right")
    save(fig, out_path)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
