"""Shared helpers for the plot scripts: input loading, layout, styling.

These scripts are read-only consumers of the analysis outputs; nothing in
here recomputes lengths, matchings, or distances. All scripts run
headless and exit nonzero on malformed input.
"""

import json
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

# shape/color legend: triangle star, circle clique, square biclique,
# diamond starclique
KIND_MARKERS = {
    "clique": "o",
    "star": "^",
    "biclique": "s",
    "starclique": "D",
}
KIND_COLORS = {
    "clique": "#4c72b0",
    "star": "#dd8452",
    "biclique": "#c44e52",
    "starclique": "#cc78bc",
}
SHARED_GREY = "#b0b0b0"


def die(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)
    sys.exit(1)


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        die(f"cannot read JSON from {path}: {exc}")


def load_matrix_csv(path: str):
    """Read a square NMD matrix CSV: header 'id,<names...>', one row each."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [line.strip() for line in fh if line.strip()]
        header = lines[0].split(",")
        if header[0] != "id" or len(lines) != len(header):
            raise ValueError("not a matrix CSV")
        names = header[1:]
        rows = []
        for line in lines[1:]:
            cells = line.split(",")
            rows.append([float(x) for x in cells[1:]])
        if any(len(row) != len(names) for row in rows):
            raise ValueError("ragged matrix")
        return names, rows
    except (OSError, ValueError, IndexError) as exc:
        die(f"cannot read matrix CSV from {path}: {exc}")


def save(fig, out_path: str) -> None:
    try:
        fig.savefig(out_path, bbox_inches="tight", dpi=120)
    except OSError as exc:
        die(f"cannot write {out_path}: {exc}")
    plt.close(fig)


def squarify(values, x, y, width, height):
    """Squarified treemap layout: rectangles (x, y, w, h) per value.

    Values must be positive; output order matches input order.
    """
    if not values:
        return []
    total = float(sum(values))
    if total <= 0:
        return []
    scale = width * height / total
    areas = [v * scale for v in values]
    rects = [None] * len(values)
    order = sorted(range(len(values)), key=lambda i: -areas[i])

    def worst(row, side):
        s = sum(row)
        mx, mn = max(row), min(row)
        return max(side * side * mx / (s * s), s * s / (side * side * mn))

    def layout_row(row_ids, xx, yy, ww, hh):
        s = sum(areas[i] for i in row_ids)
        if ww >= hh:  # vertical strip on the left
            strip_w = s / hh
            cy = yy
            for i in row_ids:
                h = areas[i] / strip_w
                rects[i] = (xx, cy, strip_w, h)
                cy += h
            return xx + strip_w, yy, ww - strip_w, hh
        strip_h = s / ww
        cx = xx
        for i in row_ids:
            w = areas[i] / strip_h
            rects[i] = (cx, yy, w, strip_h)
            cx += w
        return xx, yy + strip_h, ww, hh - strip_h

    row: list = []
    xx, yy, ww, hh = x, y, width, height
    for i in order:
        side = min(ww, hh)
        if side <= 0:
            rects[i] = (xx, yy, max(ww, 0), max(hh, 0))
            continue
        candidate = [areas[j] for j in row] + [areas[i]]
        if not row or worst(candidate, side) <= worst(
            [areas[j] for j in row], side
        ):
            row.append(i)
        else:
            xx, yy, ww, hh = layout_row(row, xx, yy, ww, hh)
            row = [i]
    if row:
        layout_row(row, xx, yy, ww, hh)
    return rects
