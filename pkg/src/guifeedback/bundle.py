"""Feedback bundle assembly: the complete per-edit response.

Everything a design studio needs after one edit: the metric report with
corpus percentiles and histograms, similar/random template recommendations,
the dominant palette and the attention map.  A failing attention model
degrades to an absent map with a machine-readable reason; only layout
validation can fail the whole bundle.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .attention import (AttentionMap, AttentionUnavailableError,
                        BaselineSaliencyModel, attention_map)
from .autoencoder import AutoencoderWeights
from .corpus import Corpus, Histogram, percentile
from .layout import LayoutDocument
from .metrics import METRIC_NAMES, MetricReport, evaluate
from .palette import ColorSwatch, dominant_palette
from .recommend import (DEFAULT_K_SIMILAR, DEFAULT_N_RANDOM, PALETTE_SIZE,
                        Recommendation, recommend)


@dataclass
class FeedbackOptions:
    k_similar: int = DEFAULT_K_SIMILAR
    n_random: int = DEFAULT_N_RANDOM
    seed: Optional[int] = None  # None -> time-derived, echoed in the bundle
    min_rating: Optional[float] = None
    category: Optional[str] = None

    @classmethod
    def from_dict(cls, obj: Optional[dict]) -> "FeedbackOptions":
        obj = obj or {}
        return cls(
            k_similar=int(obj.get("k_similar", DEFAULT_K_SIMILAR)),
            n_random=int(obj.get("n_random", DEFAULT_N_RANDOM)),
            seed=None if obj.get("seed") is None else int(obj["seed"]),
            min_rating=None if obj.get("min_rating") is None else float(obj["min_rating"]),
            category=obj.get("category"),
        )


@dataclass
class FeedbackBundle:
    report: MetricReport
    percentiles: dict[str, float]
    histograms: dict[str, Histogram]
    recommendations: list[Recommendation]
    palette: list[ColorSwatch]
    attention: Optional[AttentionMap]
    attention_error: Optional[dict]
    seed: int
    embedding_mode: str
    timing: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "report": self.report.to_dict(),
            "percentiles": {k: round(v, 4) for k, v in self.percentiles.items()},
            "histograms": {k: h.to_dict() for k, h in self.histograms.items()},
            "recommendations": [r.to_dict() for r in self.recommendations],
            "palette": [s.to_dict() for s in self.palette],
            "attention": self.attention.to_dict() if self.attention is not None else None,
            "attention_error": self.attention_error,
            "seed": self.seed,
            "embedding_mode": self.embedding_mode,
            "timing": {k: round(v, 3) for k, v in self.timing.items()},
        }


def assemble_feedback(doc: LayoutDocument, corpus: Corpus,
                      options: Optional[FeedbackOptions] = None,
                      weights: Optional[AutoencoderWeights] = None,
                      attention_model=None) -> FeedbackBundle:
    """Evaluate, recommend and predict attention for one document."""
    options = options or FeedbackOptions()
    seed = options.seed if options.seed is not None else time.time_ns() % (2 ** 31)
    timing: dict[str, float] = {}

    t0 = time.perf_counter()
    report = evaluate(doc)
    if corpus.entries:
        percentiles = {name: percentile(corpus, name, report.score(name))
                       for name in METRIC_NAMES}
    else:
        percentiles = {name: 0.0 for name in METRIC_NAMES}
    timing["evaluate_ms"] = (time.perf_counter() - t0) * 1000

    t0 = time.perf_counter()
    recommendations = recommend(
        doc, corpus,
        k_similar=options.k_similar, n_random=options.n_random, seed=seed,
        min_rating=options.min_rating, category=options.category, weights=weights,
    ) if corpus.entries else []
    palette = dominant_palette(doc, PALETTE_SIZE)
    timing["recommend_ms"] = (time.perf_counter() - t0) * 1000

    t0 = time.perf_counter()
    model = attention_model if attention_model is not None else BaselineSaliencyModel()
    attention: Optional[AttentionMap] = None
    attention_error: Optional[dict] = None
    try:
        attention = attention_map(doc, model)
    except AttentionUnavailableError as exc:
        attention_error = {"code": "attention_unavailable", "message": str(exc)}
    timing["attention_ms"] = (time.perf_counter() - t0) * 1000

    return FeedbackBundle(
        report=report,
        percentiles=percentiles,
        histograms=dict(corpus.distributions),
        recommendations=recommendations,
        palette=palette,
        attention=attention,
        attention_error=attention_error,
        seed=seed,
        embedding_mode=corpus.embedding_mode,
        timing=timing,
    )
