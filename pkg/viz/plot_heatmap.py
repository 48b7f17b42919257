#!/usr/bin/env python3
"""Heatmap of a pairwise NMD matrix CSV.

Usage: plot_heatmap.py <matrix.csv> <out.(png|svg)>

Color scale is fixed to [0, 1] with the viridis map, so heatmaps from
different collections are directly comparable.
"""

import sys

import matplotlib.pyplot as plt

from common import die, load_matrix_csv, save


def main(argv):
    if len(argv) != 3:
        die("usage: plot_heatmap.py <matrix.csv> <out.(png|svg)>")
    names, rows = load_matrix_csv(argv[1])
    fig, ax = plt.subplots(figsize=(0.5 * len(names) + 2.5,
                                    0.5 * len(names) + 2))
    image = ax.imshow(rows, cmap="viridis", vmin=0.0, vmax=1.0)
    ax.set_xticks(range(len(names)))
    ax.set_yticks(range(len(names)))
    ax.set_xticklabels(names, rotation=90, fontsize=7)
    ax.set_yticklabels(names, fontsize=7)
    fig.colorbar(image, ax=ax, label="NMD", shrink=0.85)
    save(fig, argv[2])
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
