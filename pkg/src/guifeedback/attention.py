"""Attention heatmaps: a pluggable model interface with a deterministic baseline.

The baseline scores each grid cell from the leaves covering it, weighted by
element kind, relative size and vertical position (viewers scan from the top),
blurs the field and normalizes the peak to 255.  Any object with a
``predict(doc) -> AttentionMap`` method can replace it, e.g. a learned model
fed by a rasterized screenshot.
"""

from __future__ import annotations

import base64
import io
import math
from dataclasses import dataclass

import numpy as np
from PIL import Image
from scipy.ndimage import gaussian_filter

from .geometry import add_rect_coverage
from .layout import LayoutDocument, leaves
from .raster import RASTER_COLS, RASTER_ROWS

ATTENTION_COLS = RASTER_COLS   # map width in cells
ATTENTION_ROWS = RASTER_ROWS   # map height in cells

# value -> color anchors of the blue-green-yellow-red map
COLORMAP_ANCHORS = ((0, (0, 0, 255)), (85, (0, 255, 0)),
                    (170, (255, 255, 0)), (255, (255, 0, 0)))


class AttentionUnavailableError(Exception):
    """The attention model failed; the rest of a feedback bundle still stands."""


@dataclass(frozen=True, eq=False)
class AttentionMap:
    width: int
    height: int
    values: np.ndarray  # uint8, shape (height, width), row-major

    def __eq__(self, other) -> bool:
        return (isinstance(other, AttentionMap)
                and self.width == other.width and self.height == other.height
                and np.array_equal(self.values, other.values))

    def to_dict(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "values": base64.b64encode(self.values.tobytes()).decode("ascii"),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "AttentionMap":
        raw = base64.b64decode(obj["values"])
        values = np.frombuffer(raw, dtype=np.uint8).reshape(obj["height"], obj["width"])
        return cls(width=obj["width"], height=obj["height"], values=values)


def _zero_map() -> AttentionMap:
    return AttentionMap(width=ATTENTION_COLS, height=ATTENTION_ROWS,
                        values=np.zeros((ATTENTION_ROWS, ATTENTION_COLS), dtype=np.uint8))


@dataclass(frozen=True)
class SaliencyConfig:
    """Baseline weights and priors; overridable, defaults chosen for face
    validity (images draw more attention than buttons, buttons more than
    shapes, the top of the screen more than the bottom)."""
    image_weight: float = 1.0
    text_weight: float = 0.9
    text_reference_font_size: float = 24.0
    button_weight: float = 0.8
    shape_weight: float = 0.4
    top_prior_max: float = 1.2
    top_prior_slope: float = 0.4
    blur_sigma_cells: float = 2.5
    default_font_size: float = 14.0

    def kind_weight(self, kind: str, font_size: float) -> float:
        if kind in ("image", "image_button", "icon"):
            return self.image_weight
        if kind in ("text", "edit_text"):
            return self.text_weight * min(1.0, font_size / self.text_reference_font_size)
        if kind in ("button", "pagination"):
            return self.button_weight
        return self.shape_weight


def baseline_saliency(doc: LayoutDocument, config: SaliencyConfig = SaliencyConfig()) -> AttentionMap:
    """Deterministic layout-driven saliency on the 90x50 grid.

    raw(cell) = sum over leaves covering the cell of
    kind_weight x sqrt(leaf area / canvas area) x top prior, Gaussian-blurred
    and peak-normalized to 255.  An empty layout maps to all zeros.
    """
    leafs = leaves(doc)
    if not leafs:
        return _zero_map()
    raw = np.zeros((ATTENTION_ROWS, ATTENTION_COLS), dtype=np.float64)
    canvas_area = float(doc.canvas_width * doc.canvas_height)
    for e in leafs:
        b = e.bounds
        # A degenerate (zero-area) leaf still marks its location with a 1 px
        # footprint so that any non-empty layout produces a peak.
        w = max(b.w, 1)
        h = max(b.h, 1)
        x0 = min(b.x, doc.canvas_width - 1)
        y0 = min(b.y, doc.canvas_height - 1)
        font_size = e.text.font_size if e.text is not None else config.default_font_size
        size_prior = math.sqrt((w * h) / canvas_area)
        top_prior = config.top_prior_max - config.top_prior_slope * ((y0 + h / 2.0) / doc.canvas_height)
        factor = config.kind_weight(e.kind, font_size) * size_prior * top_prior
        add_rect_coverage(raw, (float(x0), float(y0), float(x0 + w), float(y0 + h)),
                          doc.canvas_width, doc.canvas_height, scale=factor)
    blurred = gaussian_filter(raw, sigma=config.blur_sigma_cells, mode="reflect")
    peak = blurred.max()
    if peak <= 0.0:
        return _zero_map()
    values = np.rint(blurred / peak * 255.0).astype(np.uint8)
    return AttentionMap(width=ATTENTION_COLS, height=ATTENTION_ROWS, values=values)


class BaselineSaliencyModel:
    """Default AttentionModel: pure, deterministic, safe for concurrent calls."""

    def __init__(self, config: SaliencyConfig = SaliencyConfig()):
        self.config = config

    def predict(self, doc: LayoutDocument) -> AttentionMap:
        return baseline_saliency(doc, self.config)


def attention_map(doc: LayoutDocument, model) -> AttentionMap:
    """Run an attention model over a document, enforcing the map contract.

    An empty layout short-circuits to the all-zero map.  A model failure (or
    an out-of-contract output) raises AttentionUnavailableError so the service
    can degrade gracefully.
    """
    if not leaves(doc):
        return _zero_map()
    try:
        result = model.predict(doc)
    except Exception as exc:
        raise AttentionUnavailableError(f"attention model failed: {exc}") from exc
    values = np.asarray(result.values)
    if values.shape != (ATTENTION_ROWS, ATTENTION_COLS) or values.dtype != np.uint8:
        raise AttentionUnavailableError(
            f"attention model returned a malformed map: shape {values.shape}, dtype {values.dtype}")
    return result


def _build_colormap_lut() -> np.ndarray:
    lut = np.zeros((256, 3), dtype=np.uint8)
    for (v0, c0), (v1, c1) in zip(COLORMAP_ANCHORS, COLORMAP_ANCHORS[1:]):
        for v in range(v0, v1 + 1):
            t = (v - v0) / (v1 - v0)
            lut[v] = [int(round(a + t * (b - a))) for a, b in zip(c0, c1)]
    return lut


_COLORMAP_LUT = _build_colormap_lut()


def colormap_rgb(value: int) -> tuple[int, int, int]:
    """Blue-green-yellow-red colormap for one attention value."""
    if not 0 <= value <= 255:
        raise ValueError(f"attention value must be in [0, 255], got {value}")
    return tuple(int(c) for c in _COLORMAP_LUT[value])


def render_heatmap_png(amap: AttentionMap) -> bytes:
    """PNG with one pixel per cell, colored through the colormap."""
    rgb = _COLORMAP_LUT[amap.values]
    image = Image.fromarray(rgb, mode="RGB")
    buf = io.BytesIO()
    image.save(buf, format="PNG")
    return buf.getvalue()
