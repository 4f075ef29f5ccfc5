"""HTTP/JSON API v1 around the feedback engine.

All shared state (corpus, weights, attention model) is immutable while
serving, so concurrent requests need no locks.  Identical request bodies with
the same seed produce identical responses.
"""

from __future__ import annotations

import io
import logging
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from PIL import Image, ImageDraw
from starlette.exceptions import HTTPException as StarletteHTTPException

from .attention import AttentionUnavailableError, BaselineSaliencyModel, attention_map, render_heatmap_png
from .autoencoder import AutoencoderWeights
from .bundle import FeedbackOptions, assemble_feedback
from .corpus import Corpus
from .layout import LayoutDocument, LayoutError, document_from_dict, document_to_dict, leaves, scale_to_canvas

logger = logging.getLogger(__name__)

THUMBNAIL_MAX_EDGE = 160

# Flat wireframe colors for leaves without an explicit fill.
KIND_COLORS = {
    "text": (97, 97, 97), "edit_text": (207, 216, 220), "button": (66, 133, 244),
    "image_button": (121, 134, 203), "image": (144, 164, 174), "icon": (255, 167, 38),
    "shape": (224, 224, 224), "pagination": (158, 158, 158), "container": (238, 238, 238),
}


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": {"code": code, "message": message}})


def render_thumbnail_png(doc: LayoutDocument, max_edge: int = THUMBNAIL_MAX_EDGE) -> bytes:
    """Flat-color wireframe of a layout, longest edge scaled to ``max_edge``."""
    scale = max_edge / max(doc.canvas_width, doc.canvas_height)
    width = max(int(round(doc.canvas_width * scale)), 1)
    height = max(int(round(doc.canvas_height * scale)), 1)
    image = Image.new("RGB", (width, height), (250, 250, 250))
    draw = ImageDraw.Draw(image)
    for leaf in leaves(doc):
        b = leaf.bounds
        if b.area == 0:
            continue
        color = leaf.fill_color or KIND_COLORS[leaf.kind]
        x0, y0 = int(b.x * scale), int(b.y * scale)
        x1 = max(int(b.x2 * scale) - 1, x0)
        y1 = max(int(b.y2 * scale) - 1, y0)
        draw.rectangle([x0, y0, x1, y1], fill=color, outline=(120, 120, 120))
    buf = io.BytesIO()
    image.save(buf, format="PNG")
    return buf.getvalue()


def create_app(corpus: Corpus, weights: Optional[AutoencoderWeights] = None,
               attention_model=None) -> FastAPI:
    app = FastAPI(title="guifeedback", version="1.0")
    # The design studio is served separately (static files), so the API
    # answers cross-origin requests.
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])
    model = attention_model if attention_model is not None else BaselineSaliencyModel()

    @app.exception_handler(Exception)
    async def unhandled(request: Request, exc: Exception):
        logger.exception("unhandled error on %s", request.url.path)
        return _error(500, "internal", str(exc))

    @app.exception_handler(StarletteHTTPException)
    async def http_error(request: Request, exc: StarletteHTTPException):
        return _error(exc.status_code, "http_error", str(exc.detail))

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        return _error(400, "invalid_request", str(exc.errors()))

    @app.get("/v1/health")
    def health():
        return {"status": "ok", "corpus_size": len(corpus),
                "embedding_mode": corpus.embedding_mode}

    @app.post("/v1/feedback")
    async def feedback(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "invalid_json", "request body is not valid JSON")
        if not isinstance(body, dict) or "layout" not in body:
            return _error(400, "invalid_request", "body must be {layout, options?}")
        try:
            doc = document_from_dict(body["layout"])
            options = FeedbackOptions.from_dict(body.get("options"))
            bundle = assemble_feedback(doc, corpus, options, weights=weights,
                                       attention_model=model)
        except LayoutError as exc:
            return _error(400, "invalid_layout", str(exc))
        except ValueError as exc:
            return _error(400, "invalid_options", str(exc))
        return bundle.to_dict()

    @app.get("/v1/corpus/{entry_id}/layout")
    def corpus_layout(entry_id: str, canvas_w: Optional[int] = None,
                      canvas_h: Optional[int] = None):
        entry = corpus.entries.get(entry_id)
        if entry is None:
            return _error(404, "unknown_entry", f"no corpus entry '{entry_id}'")
        doc = entry.doc
        if canvas_w is not None and canvas_h is not None:
            if canvas_w <= 0 or canvas_h <= 0:
                return _error(400, "invalid_canvas", "canvas_w and canvas_h must be positive")
            doc = scale_to_canvas(doc, canvas_w, canvas_h)
        return document_to_dict(doc)

    @app.get("/v1/corpus/{entry_id}/thumbnail.png")
    def corpus_thumbnail(entry_id: str):
        entry = corpus.entries.get(entry_id)
        if entry is None:
            return _error(404, "unknown_entry", f"no corpus entry '{entry_id}'")
        return Response(content=render_thumbnail_png(entry.doc), media_type="image/png")

    @app.post("/v1/attention.png")
    async def attention_png(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "invalid_json", "request body is not valid JSON")
        try:
            doc = document_from_dict(body)
            amap = attention_map(doc, model)
        except LayoutError as exc:
            return _error(400, "invalid_layout", str(exc))
        except AttentionUnavailableError as exc:
            return _error(503, "attention_unavailable", str(exc))
        return Response(content=render_heatmap_png(amap), media_type="image/png")

    return app


def serve(corpus: Corpus, weights: Optional[AutoencoderWeights] = None,
          host: str = "127.0.0.1", port: int = 8080) -> None:
    import uvicorn

    app = create_app(corpus, weights=weights)
    uvicorn.run(app, host=host, port=port, log_level="info")
