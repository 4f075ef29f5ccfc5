"""Seeded synthetic layout corpus.

Stands in for a real mobile-app template pool at desk scale: a handful of
archetypes (list, gallery, form, article, profile, dashboard) with jittered
geometry, themed colors, plausible categories and ratings.  Also provides an
unstructured random-document generator for fuzz/property tests.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .layout import LayoutDocument, document_from_dict

CANVAS_W = 360
CANVAS_H = 640

THEMES = [
    {"primary": "#3F51B5", "accent": "#FF4081", "bg": "#FAFAFA", "card": "#FFFFFF", "text": "#212121"},
    {"primary": "#00796B", "accent": "#FFC107", "bg": "#F5F5F5", "card": "#FFFFFF", "text": "#263238"},
    {"primary": "#E64A19", "accent": "#29B6F6", "bg": "#FFF8F0", "card": "#FFFFFF", "text": "#3E2723"},
    {"primary": "#512DA8", "accent": "#4CAF50", "bg": "#F3F0FA", "card": "#FFFFFF", "text": "#1A1A2E"},
    {"primary": "#0288D1", "accent": "#FF7043", "bg": "#F0F7FB", "card": "#FFFFFF", "text": "#102027"},
]

FONTS = [("Roboto", 14), ("Roboto", 16), ("Open Sans", 14), ("Lato", 15), ("Noto Sans", 13)]

ARCHETYPE_CATEGORIES = {
    "list": ["shopping", "news", "music"],
    "gallery": ["travel", "social"],
    "form": ["finance", "productivity"],
    "article": ["news", "social"],
    "profile": ["social", "health"],
    "dashboard": ["finance", "productivity"],
}

WORDS = ["Home", "Profile", "Cart", "Orders", "Search", "Deals", "Settings",
         "Messages", "Explore", "Saved", "Trending", "Nearby", "Account", "Pay"]


class _Builder:
    def __init__(self, rng: np.random.Generator, theme: dict, font: tuple):
        self.rng = rng
        self.theme = theme
        self.font = font
        self.elements: list[dict] = []
        self._next_id = 0

    def add(self, kind: str, x: int, y: int, w: int, h: int,
            fill: str | None = None, text: str | None = None,
            font_size: float | None = None, text_color: str | None = None) -> None:
        self._next_id += 1
        elem: dict = {"id": f"e{self._next_id}", "kind": kind,
                      "bounds": {"x": int(x), "y": int(y), "w": int(w), "h": int(h)}}
        if fill is not None:
            elem["fill_color"] = fill
        if text is not None:
            elem["text"] = {"content": text, "font_family": self.font[0],
                            "font_size": float(font_size or self.font[1]),
                            "color": text_color or self.theme["text"]}
        self.elements.append(elem)

    def word(self) -> str:
        return WORDS[int(self.rng.integers(0, len(WORDS)))]

    def jitter(self, base: int, spread: int) -> int:
        return int(base + self.rng.integers(-spread, spread + 1))


def _header(b: _Builder) -> int:
    h = b.jitter(56, 6)
    b.add("shape", 0, 0, CANVAS_W, h, fill=b.theme["primary"])
    b.add("text", b.jitter(16, 4), h // 2 - 10, 140, 22, text=b.word(),
          font_size=b.font[1] + 4, text_color="#FFFFFF")
    b.add("icon", CANVAS_W - 44, h // 2 - 14, 28, 28, fill="#FFFFFF")
    return h + b.jitter(10, 4)


def _bottom_nav(b: _Builder) -> None:
    h = 52
    b.add("shape", 0, CANVAS_H - h, CANVAS_W, h, fill=b.theme["card"])
    b.add("pagination", CANVAS_W // 2 - 40, CANVAS_H - h + 20, 80, 12,
          text=". . .", font_size=10)


def _list_screen(b: _Builder) -> None:
    y = _header(b)
    rows = int(b.rng.integers(4, 7))
    row_h = b.jitter(64, 8)
    margin = b.jitter(12, 4)
    for _ in range(rows):
        if y + row_h > CANVAS_H - 70:
            break
        b.add("icon", margin, y + 8, row_h - 16, row_h - 16, fill=b.theme["accent"])
        b.add("text", margin + row_h, y + 10, 180, 18, text=b.word())
        b.add("text", margin + row_h, y + 34, 140, 14, text=b.word(), font_size=b.font[1] - 3)
        b.add("button", CANVAS_W - 84, y + row_h // 2 - 14, 68, 28,
              fill=b.theme["primary"], text="Add", font_size=12, text_color="#FFFFFF")
        y += row_h + 6
    _bottom_nav(b)


def _gallery_screen(b: _Builder) -> None:
    y = _header(b)
    margin = b.jitter(10, 3)
    tile = (CANVAS_W - 3 * margin) // 2
    rows = int(b.rng.integers(2, 4))
    for _ in range(rows):
        if y + tile > CANVAS_H - 70:
            break
        b.add("image", margin, y, tile, tile, fill="#B0BEC5")
        b.add("image", 2 * margin + tile, y, tile, tile, fill="#90A4AE")
        y += tile + margin
    _bottom_nav(b)


def _form_screen(b: _Builder) -> None:
    y = _header(b) + 8
    margin = b.jitter(20, 6)
    width = CANVAS_W - 2 * margin
    b.add("text", margin, y, width, 24, text=b.word(), font_size=b.font[1] + 6)
    y += 40
    fields = int(b.rng.integers(3, 6))
    for _ in range(fields):
        if y + 48 > CANVAS_H - 120:
            break
        b.add("edit_text", margin, y, width, 40, fill="#ECEFF1", text=b.word(), font_size=b.font[1])
        y += b.jitter(52, 4)
    b.add("button", margin, y + 12, width, 44, fill=b.theme["accent"],
          text="Submit", font_size=b.font[1] + 2, text_color="#FFFFFF")


def _article_screen(b: _Builder) -> None:
    y = _header(b)
    margin = b.jitter(16, 4)
    width = CANVAS_W - 2 * margin
    b.add("image", 0, y, CANVAS_W, b.jitter(170, 20), fill="#78909C")
    y += 190
    b.add("text", margin, y, width, 26, text=b.word(), font_size=b.font[1] + 6)
    y += 38
    lines = int(b.rng.integers(3, 6))
    for _ in range(lines):
        if y + 18 > CANVAS_H - 80:
            break
        b.add("text", margin, y, width - b.jitter(10, 8), 14, text=b.word(),
              font_size=b.font[1] - 2)
        y += 22
    b.add("button", margin, CANVAS_H - 64, 120, 36, fill=b.theme["primary"],
          text="More", font_size=12, text_color="#FFFFFF")


def _profile_screen(b: _Builder) -> None:
    y = _header(b) + 10
    size = b.jitter(96, 10)
    b.add("image", (CANVAS_W - size) // 2, y, size, size, fill="#CFD8DC")
    y += size + 14
    b.add("text", CANVAS_W // 2 - 70, y, 140, 20, text=b.word(), font_size=b.font[1] + 3)
    y += 36
    rows = int(b.rng.integers(2, 5))
    margin = 24
    for _ in range(rows):
        if y + 44 > CANVAS_H - 80:
            break
        b.add("text", margin, y + 6, 160, 16, text=b.word())
        b.add("icon", CANVAS_W - margin - 24, y + 6, 22, 22, fill=b.theme["accent"])
        y += 46
    b.add("button", margin, CANVAS_H - 70, CANVAS_W - 2 * margin, 42,
          fill=b.theme["primary"], text="Edit", font_size=13, text_color="#FFFFFF")


def _dashboard_screen(b: _Builder) -> None:
    y = _header(b)
    margin = b.jitter(12, 3)
    card_w = (CANVAS_W - 3 * margin) // 2
    card_h = b.jitter(110, 12)
    for row in range(2):
        for col in range(2):
            x = margin + col * (card_w + margin)
            cy = y + row * (card_h + margin)
            b.add("shape", x, cy, card_w, card_h, fill=b.theme["card"])
            b.add("text", x + 10, cy + 10, card_w - 20, 14, text=b.word(), font_size=b.font[1] - 2)
            b.add("text", x + 10, cy + card_h - 34, card_w - 20, 22,
                  text=str(int(b.rng.integers(10, 999))), font_size=b.font[1] + 6)
    _bottom_nav(b)


_ARCHETYPES = {
    "list": _list_screen,
    "gallery": _gallery_screen,
    "form": _form_screen,
    "article": _article_screen,
    "profile": _profile_screen,
    "dashboard": _dashboard_screen,
}


def synthetic_document(rng: np.random.Generator, app_index: int = 0) -> LayoutDocument:
    """One archetype-structured layout with meta, drawn from ``rng``."""
    name = list(_ARCHETYPES)[int(rng.integers(0, len(_ARCHETYPES)))]
    theme = THEMES[int(rng.integers(0, len(THEMES)))]
    font = FONTS[int(rng.integers(0, len(FONTS)))]
    builder = _Builder(rng, theme, font)
    _ARCHETYPES[name](builder)
    category = ARCHETYPE_CATEGORIES[name][int(rng.integers(0, len(ARCHETYPE_CATEGORIES[name])))]
    rating = round(float(rng.uniform(2.0, 5.0)), 1)
    return document_from_dict({
        "schema_version": 1,
        "canvas": {"width": CANVAS_W, "height": CANVAS_H},
        "elements": builder.elements,
        "meta": {"app_id": f"app.{name}.{app_index}", "category": category, "rating": rating},
    })


def generate_corpus_files(out_dir, count: int, seed: int = 0) -> list[Path]:
    """Write ``count`` synthetic layout JSON files into a directory."""
    from .layout import document_to_dict

    rng = np.random.default_rng(seed)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for i in range(count):
        doc = synthetic_document(rng, app_index=i)
        path = out_dir / f"tpl{i:05d}.json"
        path.write_text(json.dumps(document_to_dict(doc)), encoding="utf-8")
        paths.append(path)
    return paths


def random_document(rng: np.random.Generator, max_elements: int = 25,
                    canvas_w: int = CANVAS_W, canvas_h: int = CANVAS_H) -> LayoutDocument:
    """Unstructured random layout for fuzzing: arbitrary kinds, colors and
    geometry, occasionally nested containers and degenerate (zero-area)
    elements, always within the canvas."""
    kinds = ["text", "edit_text", "button", "image_button", "image",
             "icon", "shape", "pagination", "container"]
    counter = [0]

    def random_element(depth: int) -> dict:
        counter[0] += 1
        kind = kinds[int(rng.integers(0, len(kinds)))]
        x = int(rng.integers(0, canvas_w))
        y = int(rng.integers(0, canvas_h))
        if rng.random() < 0.05:
            w, h = 0, 0
        else:
            w = int(rng.integers(1, max(canvas_w - x, 2)))
            h = int(rng.integers(1, max(canvas_h - y, 2)))
        elem: dict = {"id": f"r{counter[0]}", "kind": kind,
                      "bounds": {"x": x, "y": y, "w": w, "h": h}}
        if rng.random() < 0.7:
            elem["fill_color"] = "#{:06X}".format(int(rng.integers(0, 1 << 24)))
        if kind in ("text", "edit_text", "button", "pagination") and rng.random() < 0.8:
            elem["text"] = {
                "content": WORDS[int(rng.integers(0, len(WORDS)))],
                "font_family": FONTS[int(rng.integers(0, len(FONTS)))][0],
                "font_size": float(rng.integers(8, 33)),
                "color": "#{:06X}".format(int(rng.integers(0, 1 << 24))),
            }
        if kind == "container" and depth == 0 and rng.random() < 0.5:
            elem["children"] = [random_element(depth + 1)
                                for _ in range(int(rng.integers(1, 4)))]
        return elem

    n = int(rng.integers(0, max_elements + 1))
    return document_from_dict({
        "schema_version": 1,
        "canvas": {"width": canvas_w, "height": canvas_h},
        "elements": [random_element(0) for _ in range(n)],
    })
