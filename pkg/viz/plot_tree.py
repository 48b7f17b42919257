#!/usr/bin/env python3
"""Render a node overlap tree from its DOT or JSON export.

Usage: plot_tree.py <tree.(dot|json)> <out.(png|svg)>

Vertex glyphs follow the kind legend (circle=clique, triangle=star,
square=biclique, diamond=starclique); larger shapes mean larger
structures and thicker edges mean higher Jaccard similarity.
"""

import math
import re
import sys

import matplotlib.pyplot as plt
from matplotlib.lines import Line2D

from common import KIND_COLORS, KIND_MARKERS, die, load_json, save

NODE_RE = re.compile(
    r'^\s*s(\d+)\s*\[label="[^"]*",\s*kind="(\w+)",\s*n_s=(\d+),\s*m_s=(\d+)\];'
)
ROOT_EDGE_RE = re.compile(r"^\s*root -- s(\d+);")
EDGE_RE = re.compile(r"^\s*s(\d+) -- s(\d+)\s*\[weight=([0-9.]+)")


def parse_dot(path):
    nodes, edges, root_links = [], [], []
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        die(f"cannot read {path}: {exc}")
    if not text.lstrip().startswith("graph"):
        die(f"{path} is not a DOT graph")
    for line in text.splitlines():
        m = NODE_RE.match(line)
        if m:
            nodes.append({"id": int(m.group(1)), "kind": m.group(2),
                          "n_s": int(m.group(3)), "m_s": int(m.group(4))})
            continue
        m = ROOT_EDGE_RE.match(line)
        if m:
            root_links.append(int(m.group(1)))
            continue
        m = EDGE_RE.match(line)
        if m:
            edges.append({"u": int(m.group(1)), "v": int(m.group(2)),
                          "w": float(m.group(3))})
    return {"nodes": nodes, "edges": edges, "root_links": root_links}


def layout(tree):
    """Radial layout: root at the origin, subtrees in angular wedges."""
    children = {n["id"]: [] for n in tree["nodes"]}
    for e in tree["edges"]:
        children[e["u"]].append(e["v"])
        children[e["v"]].append(e["u"])
    pos = {"root": (0.0, 0.0)}
    seen = set()

    def subtree_size(node, parent):
        return 1 + sum(subtree_size(c, node)
                       for c in children[node] if c != parent)

    def place(node, parent, radius, a0, a1):
        angle = (a0 + a1) / 2
        pos[node] = (radius * math.cos(angle), radius * math.sin(angle))
        seen.add(node)
        kids = [c for c in children[node] if c != parent and c not in seen]
        if not kids:
            return
        sizes = [subtree_size(c, node) for c in kids]
        total = sum(sizes)
        cursor = a0
        for child, size in zip(kids, sizes):
            span = (a1 - a0) * size / total
            place(child, node, radius + 1.0, cursor, cursor + span)
            cursor += span

    anchors = tree["root_links"]
    if anchors:
        sizes = [subtree_size(a, None) for a in anchors]
        total = sum(sizes)
        cursor = 0.0
        for anchor, size in zip(anchors, sizes):
            span = 2 * math.pi * size / total
            place(anchor, None, 1.0, cursor, cursor + span)
            cursor += span
    return pos


def main(argv):
    if len(argv) != 3:
        die("usage: plot_tree.py <tree.(dot|json)> <out.(png|svg)>")
    path = argv[1]
    if path.endswith(".json"):
        tree = load_json(path)
        if not isinstance(tree, dict) or "nodes" not in tree:
            die(f"{path} is not a tree JSON")
    else:
        tree = parse_dot(path)
    pos = layout(tree)
    meta = {n["id"]: n for n in tree["nodes"]}
    sizes = [n["n_s"] for n in tree["nodes"]] or [1]
    top = max(sizes)

    fig, ax = plt.subplots(figsize=(6, 6))
    ax.set_aspect("equal")
    ax.axis("off")
    for anchor in tree["root_links"]:
        x, y = pos[anchor]
        ax.plot([0, x], [0, y], color="#cccccc", linewidth=0.8, zorder=1)
    for e in tree["edges"]:
        (x1, y1), (x2, y2) = pos[e["u"]], pos[e["v"]]
        ax.plot([x1, x2], [y1, y2], color="#666666",
                linewidth=0.5 + 4.0 * e["w"], zorder=2)
    ax.scatter([0], [0], s=18, color="black", zorder=3)
    for nid, (x, y) in pos.items():
        if nid == "root":
            continue
        info = meta[nid]
        area = 60 + 540 * info["n_s"] / top
        ax.scatter([x], [y], s=area, marker=KIND_MARKERS[info["kind"]],
                   color=KIND_COLORS[info["kind"]], edgecolor="black",
                   linewidth=0.5, zorder=3)
    handles = [
        Line2D([], [], marker=m, linestyle="", color=KIND_COLORS[k], label=k)
        for k, m in KIND_MARKERS.items()
    ]
    ax.legend(handles=handles, loc="upper right", fontsize=7)
    save(fig, argv[2])
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
