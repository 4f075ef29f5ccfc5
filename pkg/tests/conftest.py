"""Shared builders and independent oracles used across the test modules."""

from __future__ import annotations

import math

import numpy as np
import pytest

from guifeedback.layout import LayoutDocument, document_from_dict, leaves


def el(elem_id: str, kind: str, x: int, y: int, w: int, h: int,
       fill: str | None = None, text: dict | None = None,
       children: list | None = None) -> dict:
    out: dict = {"id": elem_id, "kind": kind, "bounds": {"x": x, "y": y, "w": w, "h": h}}
    if fill is not None:
        out["fill_color"] = fill
    if text is not None:
        out["text"] = text
    if children is not None:
        out["children"] = children
    return out


def txt(content: str = "hi", family: str = "Roboto", size: float = 14,
        color: str = "#222222") -> dict:
    return {"content": content, "font_family": family, "font_size": size, "color": color}


def make_doc(elements: list | None = None, width: int = 360, height: int = 640,
             meta: dict | None = None) -> LayoutDocument:
    obj: dict = {"schema_version": 1, "canvas": {"width": width, "height": height},
                 "elements": elements or []}
    if meta is not None:
        obj["meta"] = meta
    return document_from_dict(obj)


@pytest.fixture
def empty_doc() -> LayoutDocument:
    return make_doc([])


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------

def raster_density_oracle(doc: LayoutDocument) -> float:
    """Brute-force 1 px raster count of the leaf union coverage."""
    grid = np.zeros((doc.canvas_height, doc.canvas_width), dtype=bool)
    for e in leaves(doc):
        b = e.bounds
        grid[b.y:b.y2, b.x:b.x2] = True
    return float(grid.sum()) / (doc.canvas_width * doc.canvas_height)


def naive_knn_oracle(query, index, k):
    """Pure-python double-loop cosine kNN, independent of the numpy path."""
    qnorm = math.sqrt(sum(float(v) * float(v) for v in query))
    scored = []
    for entry_id, vec in index:
        vnorm = math.sqrt(sum(float(v) * float(v) for v in vec))
        if qnorm == 0.0 or vnorm == 0.0:
            dist = 1.0
        else:
            dot = sum(float(a) * float(b) for a, b in zip(query, vec))
            dist = 1.0 - dot / (qnorm * vnorm)
        scored.append((entry_id, dist))
    scored.sort(key=lambda p: (p[1], p[0]))
    return scored[:k]


def finite_difference_grads(x, model, h=1e-5):
    """Central-difference gradients of the minibatch MSE for every parameter."""
    from guifeedback.autoencoder import mse_loss

    grads_w = [np.zeros_like(w) for w in model.weights]
    grads_b = [np.zeros_like(b) for b in model.biases]
    for grads, params in ((grads_w, model.weights), (grads_b, model.biases)):
        for g, p in zip(grads, params):
            flat_p = p.reshape(-1)
            flat_g = g.reshape(-1)
            for i in range(flat_p.size):
                orig = flat_p[i]
                flat_p[i] = orig + h
                up = mse_loss(x, model)
                flat_p[i] = orig - h
                down = mse_loss(x, model)
                flat_p[i] = orig
                flat_g[i] = (up - down) / (2 * h)
    return grads_w, grads_b
