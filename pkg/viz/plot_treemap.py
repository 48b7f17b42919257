#!/usr/bin/env python3
"""Three-panel treemap of a similarity description JSON.

Usage: plot_treemap.py <description.json> <out.(png|svg)>

Left panel shows the common model, middle and right the two individual
models; rectangle area is proportional to structure node count, shared
structures are greyed out in the individual panels, and shared
rectangles carry aligned-Jaccard annotations when an alignment was used.
"""

import sys

import matplotlib.pyplot as plt
from matplotlib.patches import Rectangle

from common import KIND_COLORS, SHARED_GREY, die, load_json, save, squarify


def panel(ax, title, items):
    """items: list of (size, color, label) tuples."""
    ax.set_title(title, fontsize=10)
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_xticks([])
    ax.set_yticks([])
    drawable = [(s, c, lab) for s, c, lab in items if s > 0]
    if not drawable:
        return
    rects = squarify([s for s, _, _ in drawable], 0.0, 0.0, 1.0, 1.0)
    for (size, color, label), rect in zip(drawable, rects):
        if rect is None:
            continue
        x, y, w, h = rect
        ax.add_patch(Rectangle((x, y), w, h, facecolor=color,
                               edgecolor="white", linewidth=1.5))
        if label and w > 0.08 and h > 0.05:
            ax.text(x + w / 2, y + h / 2, label, ha="center", va="center",
                    fontsize=7, color="black")


def main(argv):
    if len(argv) != 3:
        die("usage: plot_treemap.py <description.json> <out.(png|svg)>")
    payload = load_json(argv[1])
    for key in ("header", "shared", "unmatched_1", "unmatched_2"):
        if key not in payload:
            die(f"description JSON is missing {key!r}")
    header = payload["header"]
    shared = payload["shared"]

    def structure_size(obj):
        if "nodes" in obj:
            return len(obj["nodes"])
        if "spokes" in obj:
            return 1 + len(obj["spokes"])
        return len(obj.get("left", [])) + len(obj.get("right", []))

    common_items = []
    for entry in shared:
        label = entry["kind"]
        if "aligned_jaccard" in entry:
            label += f'\n{entry["aligned_jaccard"]:.2f}'
        common_items.append(
            (entry.get("n_s_common", 1), KIND_COLORS[entry["kind"]], label)
        )

    def side_items(side):
        items = [
            (entry.get(f"n_s_{side}", 1), SHARED_GREY, entry["kind"])
            for entry in shared
        ]
        items += [
            (structure_size(obj), KIND_COLORS[obj["kind"]], obj["kind"])
            for obj in payload[f"unmatched_{side}"]
        ]
        return items

    fig, axes = plt.subplots(1, 3, figsize=(12, 4.2))
    panel(axes[0], "common model", common_items)
    panel(axes[1], header.get("graph1", "graph 1"), side_items(1))
    panel(axes[2], header.get("graph2", "graph 2"), side_items(2))
    fig.suptitle("structure treemaps (area = node count, grey = shared)",
                 fontsize=11)
    save(fig, argv[2])
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
