"""Dominant color palette extraction.

Leaf fill colors are weighted by the area they cover; text colors count at a
fifth of the box area since glyph coverage is a small fraction of it.  The
same color-weight table feeds the color_unity metric.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .layout import LayoutDocument, leaves

TEXT_COLOR_WEIGHT = 0.2

KMEANS_SEED = 42
KMEANS_ITERATIONS = 20


@dataclass(frozen=True)
class ColorSwatch:
    rgb: tuple[int, int, int]
    weight: float

    def to_dict(self) -> dict:
        return {"rgb": list(self.rgb), "weight": round(self.weight, 6)}


def color_weight_pairs(doc: LayoutDocument) -> list[tuple[tuple[int, int, int], float]]:
    """(color, weight) contributions of every leaf: fill at full area, text
    color at TEXT_COLOR_WEIGHT x area."""
    pairs = []
    for e in leaves(doc):
        area = float(e.bounds.area)
        if area <= 0:
            continue
        if e.fill_color is not None:
            pairs.append((e.fill_color, area))
        if e.text is not None:
            pairs.append((e.text.color, TEXT_COLOR_WEIGHT * area))
    return pairs


def _weighted_kmeans(points: np.ndarray, weights: np.ndarray, k: int,
                     seed: int, iterations: int) -> tuple[np.ndarray, np.ndarray]:
    """Lloyd iterations over weighted points; returns (centroids, cluster weights)."""
    rng = np.random.default_rng(seed)
    probs = weights / weights.sum()
    centroids = points[rng.choice(len(points), size=k, replace=False, p=probs)].copy()
    assign = np.zeros(len(points), dtype=np.int64)
    for _ in range(iterations):
        d2 = ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        assign = d2.argmin(axis=1)
        for j in range(k):
            mask = assign == j
            wsum = weights[mask].sum()
            if wsum > 0:
                centroids[j] = (points[mask] * weights[mask, None]).sum(axis=0) / wsum
    cluster_w = np.zeros(k)
    np.add.at(cluster_w, assign, weights)
    return centroids, cluster_w


def dominant_palette(doc: LayoutDocument, k: int, *, seed: int = KMEANS_SEED,
                     iterations: int = KMEANS_ITERATIONS) -> list[ColorSwatch]:
    """Area-weighted k-means palette in RGB space, deterministic under the
    fixed seed.  Swatches come back ordered by descending weight and their
    weights sum to 1.  Fewer than k swatches are returned when the layout has
    fewer distinct colors."""
    if k < 1:
        raise ValueError(f"palette size must be >= 1, got {k}")
    merged: dict[tuple[int, int, int], float] = {}
    for rgb, w in color_weight_pairs(doc):
        merged[rgb] = merged.get(rgb, 0.0) + w
    if not merged:
        return []
    total = sum(merged.values())

    colors = sorted(merged)
    if len(colors) <= k:
        swatches = [ColorSwatch(rgb=c, weight=merged[c] / total) for c in colors]
        return sorted(swatches, key=lambda s: (-s.weight, s.rgb))

    points = np.array(colors, dtype=np.float64)
    weights = np.array([merged[c] for c in colors], dtype=np.float64)
    centroids, cluster_w = _weighted_kmeans(points, weights, k, seed, iterations)
    swatches = []
    for centroid, w in zip(centroids, cluster_w):
        if w <= 0:
            continue
        rgb = tuple(int(v) for v in np.clip(np.rint(centroid), 0, 255))
        swatches.append(ColorSwatch(rgb=rgb, weight=w / total))
    return sorted(swatches, key=lambda s: (-s.weight, s.rgb))
