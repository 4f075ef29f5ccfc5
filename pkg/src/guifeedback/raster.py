"""Coverage rasterization of a layout onto the shared 90x50x3 grid.

Each channel holds the fraction of every cell covered by at least one leaf of
its semantic group: 0 = text kinds, 1 = image kinds, 2 = interactive/other
kinds.  Flattened row-major (row, col, channel) this is the 13,500-value input
of the embedding autoencoder.
"""

from __future__ import annotations

import numpy as np

from .geometry import add_rect_coverage, rect_union_pieces
from .layout import LayoutDocument, leaves

RASTER_ROWS = 90
RASTER_COLS = 50
RASTER_CHANNELS = 3
RASTER_SIZE = RASTER_ROWS * RASTER_COLS * RASTER_CHANNELS

_TEXT_GROUP = frozenset({"text", "edit_text"})
_IMAGE_GROUP = frozenset({"image", "image_button", "icon"})


def channel_of(kind: str) -> int:
    if kind in _TEXT_GROUP:
        return 0
    if kind in _IMAGE_GROUP:
        return 1
    return 2


def rasterize(doc: LayoutDocument) -> np.ndarray:
    """Coverage tensor of shape (90, 50, 3) with values in [0, 1].

    Overlapping leaves within one group are counted once (the disjoint union
    decomposition is accumulated, so a cell's value is exactly the fraction of
    its area covered by the group's union).
    """
    tensor = np.zeros((RASTER_ROWS, RASTER_COLS, RASTER_CHANNELS), dtype=np.float64)
    groups: dict[int, list] = {0: [], 1: [], 2: []}
    for e in leaves(doc):
        if e.bounds.area > 0:
            groups[channel_of(e.kind)].append(tuple(float(v) for v in e.bounds.as_tuple()))
    for ch, rects in groups.items():
        grid = tensor[:, :, ch]
        for piece in rect_union_pieces(rects):
            add_rect_coverage(grid, piece, doc.canvas_width, doc.canvas_height)
    np.clip(tensor, 0.0, 1.0, out=tensor)
    return tensor


def validate_raster(tensor: np.ndarray) -> None:
    if tensor.shape != (RASTER_ROWS, RASTER_COLS, RASTER_CHANNELS):
        raise ValueError(f"raster must be {RASTER_ROWS}x{RASTER_COLS}x{RASTER_CHANNELS}, "
                         f"got {tensor.shape}")
    if not np.all((tensor >= 0.0) & (tensor <= 1.0)):
        raise ValueError("raster values must lie in [0, 1]")


def flatten_raster(tensor: np.ndarray) -> np.ndarray:
    """Row-major 13,500-value vector used as the autoencoder input."""
    return np.ascontiguousarray(tensor, dtype=np.float32).reshape(-1)
