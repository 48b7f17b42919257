#!/usr/bin/env python3
"""Distribution strips of off-diagonal NMDs, one row per matrix CSV.

Usage: plot_strip.py <matrix.csv> [more.csv ...] <out.(png|svg)>

Jitter is seeded, so repeated runs render identical images.
"""

import os
import sys

import numpy as np
import matplotlib.pyplot as plt

from common import die, load_matrix_csv, save


def main(argv):
    if len(argv) < 3:
        die("usage: plot_strip.py <matrix.csv> [...] <out.(png|svg)>")
    inputs, out_path = argv[1:-1], argv[-1]
    rng = np.random.default_rng(0)
    fig, ax = plt.subplots(figsize=(7, 0.8 + 0.55 * len(inputs)))
    labels = []
    for row, path in enumerate(inputs):
        names, rows = load_matrix_csv(path)
        values = [
            rows[i][j]
            for i in range(len(names))
            for j in range(i + 1, len(names))
        ]
        jitter = rng.uniform(-0.18, 0.18, size=len(values))
        ax.scatter(values, row + jitter, s=14, alpha=0.65, edgecolor="none")
        labels.append(os.path.splitext(os.path.basename(path))[0])
    ax.set_yticks(range(len(inputs)))
    ax.set_yticklabels(labels, fontsize=8)
    ax.set_xlim(-0.02, 1.02)
    ax.set_xlabel("NMD")
    ax.invert_yaxis()
    save(fig, out_path)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
