"""The six visual-complexity scores and the overall rating.

All metrics map a layout document to [0, 1].  For element_balance, alignment,
color_unity and font_unity, 1.0 is the best score (the raw complexity scale is
reversed).  For element_size and density, 0.5 is the best score: below means
small/sparse, above means large/crowded.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .geometry import rect_union_area
from .layout import LayoutDocument, leaves
from .palette import color_weight_pairs

METRIC_NAMES = ("element_balance", "alignment", "color_unity",
                "font_unity", "element_size", "density")

# Metrics where 0.5 is the best score instead of 1.0.
MIDPOINT_BEST = frozenset({"element_size", "density"})

ALIGNMENT_TOLERANCE_PX = 4.0

# 44x44 px touch-target reference, in a canvas-normalized 360 px wide space.
REFERENCE_WIDTH = 360.0
REFERENCE_AREA = 44.0 * 44.0

DOMINANT_SHARE = 0.05

_EPS = 1e-9


@dataclass(frozen=True)
class MetricReport:
    element_balance: float
    alignment: float
    color_unity: float
    font_unity: float
    element_size: float
    density: float
    overall: float

    def score(self, metric: str) -> float:
        if metric not in METRIC_NAMES and metric != "overall":
            raise ValueError(f"unknown metric {metric!r}")
        return getattr(self, metric)

    def to_dict(self) -> dict:
        """Wire form: the seven fixed keys, rounded to 4 decimal places."""
        out = {name: round(getattr(self, name), 4) for name in METRIC_NAMES}
        out["overall"] = round(self.overall, 4)
        return out


def _split_area(lo: float, hi: float, cut: float) -> tuple[float, float]:
    """Lengths of [lo, hi] falling below/above a cut line."""
    below = max(min(hi, cut) - lo, 0.0)
    return below, max(hi - lo - below, 0.0)


def element_balance(doc: LayoutDocument) -> float:
    """Symmetry of leaf area about the two canvas center lines.

    An element straddling a center line contributes its area split exactly at
    the line.  1.0 means perfectly balanced; an empty layout is balanced.
    """
    leafs = leaves(doc)
    if not leafs:
        return 1.0
    cx = doc.canvas_width / 2.0
    cy = doc.canvas_height / 2.0
    left = right = top = bottom = 0.0
    for e in leafs:
        b = e.bounds
        if b.area == 0:
            continue
        wl, wr = _split_area(b.x, b.x2, cx)
        ht, hb = _split_area(b.y, b.y2, cy)
        left += wl * b.h
        right += wr * b.h
        top += ht * b.w
        bottom += hb * b.w
    imbalance = (abs(left - right) / max(left + right, _EPS)
                 + abs(top - bottom) / max(top + bottom, _EPS)) / 2.0
    return 1.0 - imbalance


def _cluster_count(values: list[float], tol: float) -> int:
    """Greedy ascending sweep: a value joins the open cluster iff it is within
    ``tol`` of that cluster's seed (its smallest member)."""
    if not values:
        return 0
    values = sorted(values)
    count = 1
    seed = values[0]
    for v in values[1:]:
        if v - seed > tol:
            count += 1
            seed = v
    return count


def alignment(doc: LayoutDocument) -> float:
    """Guide-line sharing across leaves.

    Each leaf projects three vertical guides (left, horizontal center, right)
    and three horizontal ones (top, vertical middle, bottom).  Fewer distinct
    guide lines (clustered at 4 px tolerance) means better alignment.
    """
    leafs = leaves(doc)
    n = len(leafs)
    if n <= 1:
        return 1.0
    lefts, centers, rights = [], [], []
    tops, middles, bottoms = [], [], []
    for e in leafs:
        b = e.bounds
        lefts.append(float(b.x))
        centers.append(b.center_x)
        rights.append(float(b.x2))
        tops.append(float(b.y))
        middles.append(b.center_y)
        bottoms.append(float(b.y2))
    tol = ALIGNMENT_TOLERANCE_PX
    vx = sum(_cluster_count(vals, tol) for vals in (lefts, centers, rights))
    vy = sum(_cluster_count(vals, tol) for vals in (tops, middles, bottoms))
    score = 1.0 - (vx + vy - 6) / (6 * n - 6)
    return min(max(score, 0.0), 1.0)


def _quantize(rgb: tuple[int, int, int]) -> tuple[int, int, int]:
    return (rgb[0] >> 4, rgb[1] >> 4, rgb[2] >> 4)


def color_unity(doc: LayoutDocument) -> float:
    """Share of colored area held by dominant colors.

    Colors are quantized to 4 bits per channel; a bucket is dominant when it
    holds at least 5% of the total color weight.  A layout with no colored
    leaf scores 1.0.
    """
    pairs = color_weight_pairs(doc)
    total = sum(w for _, w in pairs)
    if total <= 0.0:
        return 1.0
    buckets: dict[tuple[int, int, int], float] = {}
    for rgb, w in pairs:
        q = _quantize(rgb)
        buckets[q] = buckets.get(q, 0.0) + w
    dominant = sum(w for w in buckets.values() if w / total >= DOMINANT_SHARE)
    return dominant / total


def font_unity(doc: LayoutDocument) -> float:
    """Consistency of (font_family, font_size) pairs across text leaves."""
    styles = [e.text for e in leaves(doc) if e.text is not None]
    t = len(styles)
    if t <= 1:
        return 1.0
    p = len({(s.font_family, s.font_size) for s in styles})
    score = 1.0 - (p - 1) / (t - 1)
    return min(max(score, 0.0), 1.0)


def element_size(doc: LayoutDocument) -> float:
    """Mean leaf area against the 44 px touch-target reference.

    Areas are normalized to a 360 px wide logical canvas so the reference is
    resolution independent.  0.5 means the mean leaf is exactly the reference
    size; an empty layout scores the neutral 0.5.
    """
    leafs = leaves(doc)
    if not leafs:
        return 0.5
    scale = (REFERENCE_WIDTH / doc.canvas_width) ** 2
    mean_area = sum(e.bounds.area * scale for e in leafs) / len(leafs)
    return mean_area / (mean_area + REFERENCE_AREA)


def density(doc: LayoutDocument) -> float:
    """Fraction of the canvas covered by the union of leaf rectangles."""
    rects = [e.bounds.as_tuple() for e in leaves(doc) if e.bounds.area > 0]
    if not rects:
        return 0.0
    covered = rect_union_area([(float(x0), float(y0), float(x1), float(y1))
                               for x0, y0, x1, y1 in rects])
    return covered / (doc.canvas_width * doc.canvas_height)


def _goodness(name: str, score: float) -> float:
    if name in MIDPOINT_BEST:
        return 1.0 - 2.0 * abs(score - 0.5)
    return score


def overall_rating(report: "MetricReport") -> float:
    """Mean goodness across the six metrics.

    1-best metrics contribute their score directly; midpoint-best metrics
    contribute 1 - 2|score - 0.5| so that 0.5 maps to a perfect 1.0.
    """
    return sum(_goodness(name, getattr(report, name)) for name in METRIC_NAMES) / len(METRIC_NAMES)


def evaluate(doc: LayoutDocument) -> MetricReport:
    """All six metrics plus the overall rating for one document."""
    partial = MetricReport(
        element_balance=element_balance(doc),
        alignment=alignment(doc),
        color_unity=color_unity(doc),
        font_unity=font_unity(doc),
        element_size=element_size(doc),
        density=density(doc),
        overall=0.0,
    )
    return replace(partial, overall=overall_rating(partial))
