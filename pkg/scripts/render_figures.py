"""Render the full parameter plane and the zoom window next to the golden-ratio corner."""

import argparse
import time
from pathlib import Path

import numpy as np

from locuskit.corners import CORNER_WITNESSES, envelope_from_series
from locuskit.io import write_pgm
from locuskit.membership import DEFAULT_RENDER_DEPTH, ZOOM_RENDER_DEPTH, GridSpec, render

VIEWS = {
    "plane": ((0.5, 0.999), (0.5, 0.999), DEFAULT_RENDER_DEPTH),
    "zoom": ((0.647, 0.661), (0.677, 0.691), ZOOM_RENDER_DEPTH),
}


def mark(img, grid, points):
    """Draw small grey crosses at the given parameter points."""
    g0, g1 = grid.gamma_range
    l0, l1 = grid.lambda_range
    out = img.copy()
    for g, l in points:
        j = int((g - g0) / (g1 - g0) * grid.width)
        i = int((l1 - l) / (l1 - l0) * grid.height)
        for di, dj in ((0, -2), (0, -1), (0, 1), (0, 2), (-2, 0), (-1, 0), (1, 0), (2, 0)):
            if 0 <= i + di < grid.height and 0 <= j + dj < grid.width:
                out[i + di, j + dj] = 192
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=512)
    ap.add_argument("--conservative", action="store_true")
    ap.add_argument("--out", type=Path, default=Path("out"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    corners = [(e.gamma0, e.lambda0) for e in map(envelope_from_series, CORNER_WITNESSES.values())]
    for name, (gr, lr, depth) in VIEWS.items():
        grid = GridSpec(gr, lr, args.size, args.size, depth=depth, conservative=args.conservative)
        t = time.perf_counter()
        res = render(grid)
        img = res.image()
        counts = {v: int(np.sum(img == v)) for v in (0, 128, 255)}
        print(f"{name}: {args.size}x{args.size} depth {depth} in {time.perf_counter() - t:.1f}s, "
              f"black {counts[0]} grey {counts[128]} white {counts[255]}")
        write_pgm(args.out / f"locus_{name}.pgm", img)
        write_pgm(args.out / f"locus_{name}_marked.pgm", mark(img, grid, corners))


if __name__ == "__main__":
    main()
