"""Axis-aligned rectangle helpers shared by the metrics, raster and attention code.

Rectangles are (x0, y0, x1, y1) tuples with x0 <= x1 and y0 <= y1, in canvas
pixels.  Grids are numpy arrays indexed [row, col] where row 0 is the top of
the canvas.
"""

from __future__ import annotations

import numpy as np


def rect_union_pieces(rects: list[tuple[float, float, float, float]]) -> list[tuple[float, float, float, float]]:
    """Decompose the union of rectangles into disjoint rectangles.

    Classic coordinate compression: sweep the distinct x edges left to right;
    inside each vertical slab, merge the y intervals of every rectangle that
    spans the slab.  The returned pieces are pairwise disjoint and cover
    exactly the union, so their areas (and their per-cell coverage) can be
    summed without double counting.
    """
    rects = [r for r in rects if r[2] > r[0] and r[3] > r[1]]
    if not rects:
        return []
    xs = sorted({x for r in rects for x in (r[0], r[2])})
    pieces = []
    for xa, xb in zip(xs, xs[1:]):
        spans = sorted((r[1], r[3]) for r in rects if r[0] <= xa and r[2] >= xb)
        if not spans:
            continue
        cur_lo, cur_hi = spans[0]
        for lo, hi in spans[1:]:
            if lo > cur_hi:
                pieces.append((xa, cur_lo, xb, cur_hi))
                cur_lo, cur_hi = lo, hi
            else:
                cur_hi = max(cur_hi, hi)
        pieces.append((xa, cur_lo, xb, cur_hi))
    return pieces


def rect_union_area(rects: list[tuple[float, float, float, float]]) -> float:
    """Exact area of the union of axis-aligned rectangles."""
    return sum((x1 - x0) * (y1 - y0) for x0, y0, x1, y1 in rect_union_pieces(rects))


def add_rect_coverage(grid: np.ndarray, rect: tuple[float, float, float, float],
                      canvas_w: float, canvas_h: float, scale: float = 1.0) -> None:
    """Accumulate the fractional cell coverage of one rectangle into ``grid``.

    The canvas [0, canvas_w] x [0, canvas_h] is mapped affinely onto the grid.
    Each touched cell receives ``scale`` times the fraction of its own area
    that the rectangle covers (the x and y overlaps factorize, so the patch is
    an outer product).
    """
    rows, cols = grid.shape
    x0, y0, x1, y1 = rect
    x0 = max(x0, 0.0)
    y0 = max(y0, 0.0)
    x1 = min(x1, canvas_w)
    y1 = min(y1, canvas_h)
    if x1 <= x0 or y1 <= y0:
        return
    # Multiply before dividing so pixel-aligned edges stay exact, and
    # normalize by the actual edge difference so full cells are exactly 1.
    c0 = int(x0 * cols / canvas_w)
    c1 = min(int(np.ceil(x1 * cols / canvas_w)), cols)
    r0 = int(y0 * rows / canvas_h)
    r1 = min(int(np.ceil(y1 * rows / canvas_h)), rows)
    if c0 >= c1 or r0 >= r1:
        return
    col_edges = np.arange(c0, c1 + 1, dtype=np.float64) * canvas_w / cols
    row_edges = np.arange(r0, r1 + 1, dtype=np.float64) * canvas_h / rows
    fx = ((np.minimum(col_edges[1:], x1) - np.maximum(col_edges[:-1], x0))
          / (col_edges[1:] - col_edges[:-1]))
    fy = ((np.minimum(row_edges[1:], y1) - np.maximum(row_edges[:-1], y0))
          / (row_edges[1:] - row_edges[:-1]))
    np.clip(fx, 0.0, 1.0, out=fx)
    np.clip(fy, 0.0, 1.0, out=fy)
    grid[r0:r1, c0:c1] += scale * np.outer(fy, fx)
