"""Template recommendation: similar corpus entries by embedding plus seeded
random examples for diversity, with optional rating/category filters."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .autoencoder import AutoencoderWeights, embed
from .corpus import Corpus, CorpusEntry
from .knn import cosine_distances, rank_by_distance
from .layout import LayoutDocument, leaves
from .metrics import MetricReport
from .palette import ColorSwatch, dominant_palette
from .raster import flatten_raster, rasterize

DEFAULT_K_SIMILAR = 8
DEFAULT_N_RANDOM = 4
PALETTE_SIZE = 5


@dataclass(frozen=True)
class Recommendation:
    entry_id: str
    distance: float
    is_random: bool
    palette: tuple[ColorSwatch, ...]
    report: MetricReport

    def to_dict(self) -> dict:
        return {
            "entry_id": self.entry_id,
            "distance": round(self.distance, 6),
            "is_random": self.is_random,
            "palette": [s.to_dict() for s in self.palette],
            "report": self.report.to_dict(),
        }


def query_vector(doc: LayoutDocument, corpus: Corpus,
                 weights: Optional[AutoencoderWeights] = None) -> np.ndarray:
    """Embed a document the same way the corpus entries were embedded."""
    raster = rasterize(doc)
    if corpus.embedding_mode == "trained":
        if weights is None:
            raise ValueError("corpus was embedded with trained weights; pass the weights")
        return embed(raster, weights)
    return flatten_raster(raster)


def _build(entry: CorpusEntry, distance: float, is_random: bool) -> Recommendation:
    return Recommendation(
        entry_id=entry.id,
        distance=distance,
        is_random=is_random,
        palette=tuple(dominant_palette(entry.doc, PALETTE_SIZE)),
        report=entry.report,
    )


def recommend(doc: LayoutDocument, corpus: Corpus,
              k_similar: int = DEFAULT_K_SIMILAR, n_random: int = DEFAULT_N_RANDOM,
              seed: int = 0, min_rating: Optional[float] = None,
              category: Optional[str] = None,
              weights: Optional[AutoencoderWeights] = None) -> list[Recommendation]:
    """Top k_similar entries by cosine kNN plus n_random seeded draws.

    The candidate pool is the corpus filtered by the optional rating/category
    constraints; an empty pool yields an empty list.  An empty-canvas document
    fills every slot with random examples.  No id appears twice.
    """
    if k_similar < 0 or n_random < 0:
        raise ValueError("k_similar and n_random must be >= 0")
    if k_similar + n_random < 1:
        raise ValueError("k_similar + n_random must be >= 1")

    all_ids, matrix, norms = corpus.knn_index()
    keep = [i for i, entry_id in enumerate(all_ids)
            if (min_rating is None or corpus.entries[entry_id].meta.rating >= min_rating)
            and (category is None or corpus.entries[entry_id].meta.category == category)]
    if not keep:
        return []
    if len(keep) < len(all_ids):
        all_ids = [all_ids[i] for i in keep]
        matrix = matrix[keep]
        norms = norms[keep]

    query = query_vector(doc, corpus, weights)
    distances = cosine_distances(query, matrix, norms)
    by_id = corpus.entries
    rng = np.random.default_rng(seed)

    results: list[Recommendation] = []
    if not leaves(doc):
        # Nothing on the canvas yet: populate every slot with random examples.
        count = min(k_similar + n_random, len(all_ids))
        for idx in rng.choice(len(all_ids), size=count, replace=False):
            results.append(_build(by_id[all_ids[idx]], float(distances[idx]), True))
        return results

    for entry_id, dist in rank_by_distance(all_ids, distances, k_similar):
        results.append(_build(by_id[entry_id], dist, False))

    chosen = {r.entry_id for r in results}
    remaining = [i for i, entry_id in enumerate(all_ids) if entry_id not in chosen]
    count = min(n_random, len(remaining))
    if count > 0:
        for pick in rng.choice(len(remaining), size=count, replace=False):
            idx = remaining[pick]
            results.append(_build(by_id[all_ids[idx]], float(distances[idx]), True))
    return results
