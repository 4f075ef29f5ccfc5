"""Acceptance suite: one test per release criterion, at its stated tolerance.

Each test prints a single PASS line on success (run with ``pytest -s`` to see
them; any failure shows up as a normal pytest failure).  The slowest
criterion, the full-scale training property, runs last.
"""

import time

import numpy as np
import pytest
from fastapi.testclient import TestClient

from guifeedback.attention import baseline_saliency, colormap_rgb
from guifeedback.autoencoder import TrainConfig, init_weights, loss_and_grads, train_autoencoder
from guifeedback.corpus import build_corpus, load_index, save_index
from guifeedback.knn import cosine_distance, knn_query
from guifeedback.layout import document_to_dict, leaves
from guifeedback.metrics import METRIC_NAMES, alignment, element_balance, evaluate
from guifeedback.raster import rasterize
from guifeedback.recommend import recommend
from guifeedback.service import create_app
from guifeedback.synth import random_document, synthetic_document

from conftest import el, finite_difference_grads, make_doc, naive_knn_oracle, raster_density_oracle


def _passed(name: str, detail: str = "") -> None:
    suffix = f"  ({detail})" if detail else ""
    print(f"\nACCEPTANCE PASS: {name}{suffix}")


def _mirror_doc(rng: np.random.Generator, width=360, height=640):
    """Layout mirror-symmetric about both canvas center lines."""
    elements = []
    for i in range(int(rng.integers(1, 6))):
        w = int(rng.integers(1, width // 2))
        h = int(rng.integers(1, height // 2))
        x = int(rng.integers(0, width // 2 - w + 1)) if width // 2 - w > 0 else 0
        y = int(rng.integers(0, height // 2 - h + 1)) if height // 2 - h > 0 else 0
        for j, (ex, ey) in enumerate([(x, y), (width - x - w, y),
                                      (x, height - y - h), (width - x - w, height - y - h)]):
            elements.append(el(f"m{i}_{j}", "shape", ex, ey, w, h))
    return make_doc(elements, width=width, height=height)


def _translated(doc, rng: np.random.Generator):
    leafs = leaves(doc)
    if not leafs:
        return None
    slack_x = doc.canvas_width - max(e.bounds.x2 for e in leafs)
    slack_y = doc.canvas_height - max(e.bounds.y2 for e in leafs)
    min_x = min(e.bounds.x for e in leafs)
    min_y = min(e.bounds.y for e in leafs)
    dx = int(rng.integers(-min_x, slack_x + 1))
    dy = int(rng.integers(-min_y, slack_y + 1))
    return make_doc(
        [el(e.id, e.kind, e.bounds.x + dx, e.bounds.y + dy, e.bounds.w, e.bounds.h)
         for e in leafs],
        width=doc.canvas_width, height=doc.canvas_height)


def test_metric_invariant_suite():
    """1,000 random layouts: scores bounded, alignment translation-invariant,
    mirror symmetry scores perfect balance; all inside 30 s."""
    start = time.perf_counter()
    rng = np.random.default_rng(1234)
    for i in range(1000):
        doc = random_document(rng)
        report = evaluate(doc)
        for name in METRIC_NAMES + ("overall",):
            value = report.score(name)
            assert 0.0 <= value <= 1.0, f"{name}={value} out of range on layout {i}"
        shifted = _translated(doc, rng)
        if shifted is not None:
            assert alignment(shifted) == report.alignment, f"translation changed alignment on {i}"
    for i in range(100):
        doc = _mirror_doc(np.random.default_rng(5000 + i))
        assert abs(element_balance(doc) - 1.0) <= 1e-9
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, f"metric invariant suite took {elapsed:.1f}s"
    _passed("metric invariant suite", f"{elapsed:.1f}s")


def test_density_oracle():
    """Exact rectangle-union density vs 1 px raster counting on 200 layouts."""
    start = time.perf_counter()
    rng = np.random.default_rng(77)
    worst = 0.0
    for _ in range(200):
        doc = random_document(rng, canvas_w=360, canvas_h=640)
        exact = evaluate(doc).density
        brute = raster_density_oracle(doc)
        worst = max(worst, abs(exact - brute))
        assert abs(exact - brute) <= 0.005
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"density oracle took {elapsed:.1f}s"
    _passed("density oracle", f"max |exact - raster| = {worst:.2e}, {elapsed:.1f}s")


def test_autoencoder_gradient_check():
    """Analytic vs central finite-difference gradients on a 12-6-3-6-12 net."""
    rng = np.random.default_rng(42)
    model = init_weights((12, 6, 3), seed=42, dtype=np.float64)
    x = rng.uniform(0.0, 1.0, size=(5, 12))
    _, grads_w, grads_b = loss_and_grads(x, model)
    fd_w, fd_b = finite_difference_grads(x, model)
    probed = 0
    worst = 0.0
    for analytic, numeric in zip(grads_w + grads_b, fd_w + fd_b):
        rel = np.abs(analytic - numeric) / np.maximum(np.abs(numeric), 1e-8)
        worst = max(worst, float(rel.max()))
        probed += analytic.size
        assert rel.max() < 1e-4
    assert probed >= 10
    _passed("autoencoder gradient check", f"{probed} parameters, max rel err {worst:.2e}")


def test_knn_oracle_equivalence():
    """Vectorized cosine kNN identical (ids and order) to the naive oracle on
    100 queries x 1,000 indexed 64-d vectors; self-distance <= 1e-9."""
    rng = np.random.default_rng(99)
    index = [(f"v{i:04d}", rng.standard_normal(64)) for i in range(1000)]
    for q in range(100):
        query = rng.standard_normal(64)
        fast = knn_query(query, index, 10)
        slow = naive_knn_oracle(query, index, 10)
        assert [f[0] for f in fast] == [s[0] for s in slow], f"query {q} ordering differs"
    for _ in range(20):
        v = rng.standard_normal(64)
        assert cosine_distance(v, v) <= 1e-9
    _passed("kNN oracle equivalence", "100 queries x 1000 vectors")


@pytest.fixture(scope="module")
def corpus_50():
    rng = np.random.default_rng(11)
    return build_corpus([(f"c{i:03d}", synthetic_document(rng, i)) for i in range(50)])


def test_recommendation_composition(corpus_50):
    """Exactly k_similar + 4 unique entries with 4 random flags; the empty
    layout yields random-only slots."""
    doc = make_doc([el("a", "image", 20, 30, 150, 120),
                    el("b", "button", 20, 200, 100, 40)])
    results = recommend(doc, corpus_50, k_similar=8, n_random=4, seed=3)
    assert len(results) == 12
    assert sum(r.is_random for r in results) == 4
    assert len({r.entry_id for r in results}) == 12

    empty = make_doc([])
    randoms = recommend(empty, corpus_50, k_similar=8, n_random=4, seed=3)
    assert randoms and all(r.is_random for r in randoms)
    _passed("recommendation composition")


def test_attention_contract():
    """Value bounds, peak normalization, empty-map zeros and exact colormap
    anchors over 1,000 random layouts."""
    rng = np.random.default_rng(7)
    for _ in range(1000):
        doc = random_document(rng)
        amap = baseline_saliency(doc)
        values = amap.values
        assert values.min() >= 0 and values.max() <= 255
        if leaves(doc):
            assert values.max() == 255
        else:
            assert not values.any()
    assert not baseline_saliency(make_doc([])).values.any()
    assert colormap_rgb(0) == (0, 0, 255)
    assert colormap_rgb(255) == (255, 0, 0)
    _passed("attention contract")


def test_corpus_round_trip():
    """save_index/load_index structural equality on a 100-entry corpus."""
    rng = np.random.default_rng(8)
    corpus = build_corpus([(f"rt{i:03d}", synthetic_document(rng, i)) for i in range(100)])
    loaded = load_index(save_index(corpus))
    assert loaded == corpus
    assert list(loaded.entries) == list(corpus.entries)
    for entry_id in corpus.entries:
        assert np.array_equal(loaded.entries[entry_id].embedding,
                              corpus.entries[entry_id].embedding)
    for name in METRIC_NAMES:
        assert loaded.distributions[name] == corpus.distributions[name]
        assert loaded.distributions[name].total == 100
    _passed("corpus round-trip", "100 entries")


def test_end_to_end_latency():
    """POST /v1/feedback for a 100-leaf layout against a 1,000-entry corpus:
    95th percentile of 50 warm requests below 750 ms."""
    rng = np.random.default_rng(202)
    corpus = build_corpus([(f"L{i:04d}", synthetic_document(rng, i)) for i in range(1000)])
    elements = []
    for i in range(100):
        kind = ["text", "image", "button", "icon"][i % 4]
        x = (i % 10) * 36
        y = (i // 10) * 62
        extra = {"text": {"content": f"t{i}", "font_family": "Roboto",
                          "font_size": 13, "color": "#222222"}} if kind in ("text", "button") else {}
        elements.append({"id": f"leaf{i}", "kind": kind,
                         "bounds": {"x": x, "y": y, "w": 34, "h": 56},
                         "fill_color": "#4488CC", **extra})
    doc = make_doc(elements)
    assert len(leaves(doc)) == 100

    client = TestClient(create_app(corpus))
    body = {"layout": document_to_dict(doc), "options": {"seed": 9}}
    for _ in range(3):  # warm-up
        assert client.post("/v1/feedback", json=body).status_code == 200
    samples = []
    for _ in range(50):
        t0 = time.perf_counter()
        res = client.post("/v1/feedback", json=body)
        samples.append((time.perf_counter() - t0) * 1000)
        assert res.status_code == 200
    p95 = sorted(samples)[47]
    assert p95 < 750.0, f"p95 latency {p95:.0f} ms"
    _passed("end-to-end latency", f"p95 {p95:.0f} ms over 50 warm requests")


def test_training_property():
    """Full-scale training on 500 synthetic rasters (seed 7, batch 512, split
    90/10, 200 epochs): final train MSE <= 50% of epoch-1 MSE, bit-reproducible,
    each run under 10 minutes."""
    rng = np.random.default_rng(7)
    rasters = [rasterize(synthetic_document(rng, i)) for i in range(500)]
    config = TrainConfig(max_epochs=200, batch_size=512, validation_fraction=0.1, seed=7)

    start = time.perf_counter()
    model_a, report_a = train_autoencoder(rasters, config)
    elapsed = time.perf_counter() - start
    assert elapsed < 600.0, f"training took {elapsed:.0f}s"

    first = report_a.epochs[0].train_mse
    final = report_a.epochs[-1].train_mse
    assert final <= 0.5 * first, f"MSE only fell {first:.4f} -> {final:.4f}"

    model_b, report_b = train_autoencoder(rasters, config)
    for a, b in zip(model_a.weights + model_a.biases, model_b.weights + model_b.biases):
        assert a.tobytes() == b.tobytes()
    assert [e.train_mse for e in report_a.epochs] == [e.train_mse for e in report_b.epochs]
    assert [e.val_mse for e in report_a.epochs] == [e.val_mse for e in report_b.epochs]
    _passed("training property",
            f"MSE {first:.4f} -> {final:.4f} ({final / first:.1%}), {elapsed:.0f}s, bit-reproducible")
