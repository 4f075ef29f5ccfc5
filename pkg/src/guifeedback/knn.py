"""Brute-force cosine k-nearest-neighbor queries over embedding vectors."""

from __future__ import annotations

import numpy as np


def cosine_distance(a: np.ndarray, b: np.ndarray) -> float:
    """1 - cos(a, b); by convention 1.0 when either vector has zero norm."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 1.0
    return float(1.0 - np.dot(a, b) / (na * nb))


def cosine_distances(query: np.ndarray, matrix: np.ndarray,
                     norms: np.ndarray | None = None) -> np.ndarray:
    """Cosine distance of one query against every row of a matrix.

    ``norms`` may carry precomputed row norms (an index over an immutable
    corpus computes them once instead of per query).
    """
    q = np.asarray(query, dtype=np.float64)
    qnorm = np.linalg.norm(q)
    if norms is None:
        norms = np.linalg.norm(matrix, axis=1)
    distances = np.ones(matrix.shape[0], dtype=np.float64)
    if qnorm > 0.0:
        valid = norms > 0.0
        distances[valid] = 1.0 - (matrix[valid] @ q) / (norms[valid] * qnorm)
    return distances


def rank_by_distance(ids: list[str], distances: np.ndarray, k: int) -> list[tuple[str, float]]:
    """Ascending distance, ties broken by ascending id, truncated to k."""
    ranked = sorted(zip(ids, distances), key=lambda p: (p[1], p[0]))
    return [(entry_id, float(d)) for entry_id, d in ranked[:k]]


def knn_query(query: np.ndarray, index: list[tuple[str, np.ndarray]], k: int
              ) -> list[tuple[str, float]]:
    """The min(k, len(index)) nearest entries by cosine distance.

    Results are sorted by ascending distance with ties broken by ascending id,
    which keeps the ordering deterministic.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k == 0 or not index:
        return []
    ids = [entry_id for entry_id, _ in index]
    matrix = np.stack([np.asarray(v, dtype=np.float64) for _, v in index])
    return rank_by_distance(ids, cosine_distances(query, matrix), k)
