"""Layout document model: parsing, validation and geometry utilities.

The on-disk format is the layout JSON schema v1: a ``canvas`` size, a tree of
typed elements and optional app ``meta``.  Everything downstream (metrics,
rasterization, recommendation) consumes the parsed, validated document.
All types are immutable; every operation here is a pure function.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Any, Iterator, Optional

SCHEMA_VERSION = 1

KINDS = frozenset({
    "text", "edit_text", "button", "image_button", "image",
    "icon", "shape", "pagination", "container",
})

# Kinds whose elements may carry a text style.
TEXT_KINDS = frozenset({"text", "edit_text", "button", "pagination"})

# RICO Android class name -> element kind.  Anything unlisted becomes a
# container (if it has children) or a shape (if it is a leaf).
RICO_CLASS_MAP = {
    "ImageButton": "image_button",
    "EditText": "edit_text",
    "TextView": "text",
    "Button": "button",
    "ImageView": "image",
}


class LayoutError(Exception):
    """Base class for layout parsing/validation failures."""


class LayoutParseError(LayoutError):
    """Malformed JSON; carries the byte offset of the failure."""

    def __init__(self, message: str, byte_offset: int):
        super().__init__(f"{message} (byte offset {byte_offset})")
        self.byte_offset = byte_offset


class LayoutValidationError(LayoutError):
    """Structurally valid JSON that violates the document contract."""


@dataclass(frozen=True)
class Bounds:
    x: int
    y: int
    w: int
    h: int

    @property
    def x2(self) -> int:
        return self.x + self.w

    @property
    def y2(self) -> int:
        return self.y + self.h

    @property
    def area(self) -> int:
        return self.w * self.h

    @property
    def center_x(self) -> float:
        return self.x + self.w / 2.0

    @property
    def center_y(self) -> float:
        return self.y + self.h / 2.0

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.x, self.y, self.x2, self.y2)


@dataclass(frozen=True)
class TextStyle:
    content: str
    font_family: str
    font_size: float
    color: tuple[int, int, int]


@dataclass(frozen=True)
class AppMeta:
    app_id: str
    category: str
    rating: float


@dataclass(frozen=True)
class Element:
    id: str
    kind: str
    bounds: Bounds
    fill_color: Optional[tuple[int, int, int]] = None
    text: Optional[TextStyle] = None
    children: tuple["Element", ...] = ()


@dataclass(frozen=True)
class LayoutDocument:
    canvas_width: int
    canvas_height: int
    elements: tuple[Element, ...]
    meta: Optional[AppMeta] = None
    # Parse-time clamp/repair notes; not part of structural identity.
    warnings: tuple[str, ...] = field(default=(), compare=False)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def parse_color(value: Any, where: str) -> tuple[int, int, int]:
    if not isinstance(value, str) or len(value) != 7 or not value.startswith("#"):
        raise LayoutValidationError(f"{where}: color must be '#RRGGBB', got {value!r}")
    try:
        return (int(value[1:3], 16), int(value[3:5], 16), int(value[5:7], 16))
    except ValueError:
        raise LayoutValidationError(f"{where}: color must be '#RRGGBB', got {value!r}") from None


def format_color(rgb: tuple[int, int, int]) -> str:
    return "#{:02X}{:02X}{:02X}".format(*rgb)


def _as_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise LayoutValidationError(f"{where}: expected a number, got {value!r}")
    return _round_half_up(float(value))


def _parse_text_style(obj: Any, where: str) -> TextStyle:
    if not isinstance(obj, dict):
        raise LayoutValidationError(f"{where}: 'text' must be an object")
    size = obj.get("font_size", 0)
    if isinstance(size, bool) or not isinstance(size, (int, float)) or size <= 0:
        raise LayoutValidationError(f"{where}: font_size must be > 0, got {size!r}")
    return TextStyle(
        content=str(obj.get("content", "")),
        font_family=str(obj.get("font_family", "")),
        font_size=float(size),
        color=parse_color(obj.get("color", "#000000"), where),
    )


def _parse_element(obj: Any, canvas_w: int, canvas_h: int,
                   seen_ids: set, warnings: list) -> Element:
    if not isinstance(obj, dict):
        raise LayoutValidationError("element must be an object")
    elem_id = obj.get("id")
    if not isinstance(elem_id, str) or not elem_id:
        raise LayoutValidationError(f"element is missing a string id: {obj!r}")
    if elem_id in seen_ids:
        raise LayoutValidationError(f"duplicate element id '{elem_id}'")
    seen_ids.add(elem_id)

    kind = obj.get("kind")
    if kind not in KINDS:
        raise LayoutValidationError(f"element '{elem_id}': unknown kind {kind!r}")

    braw = obj.get("bounds")
    if not isinstance(braw, dict):
        raise LayoutValidationError(f"element '{elem_id}': missing bounds")
    x = _as_int(braw.get("x", 0), f"element '{elem_id}' bounds.x")
    y = _as_int(braw.get("y", 0), f"element '{elem_id}' bounds.y")
    w = _as_int(braw.get("w", 0), f"element '{elem_id}' bounds.w")
    h = _as_int(braw.get("h", 0), f"element '{elem_id}' bounds.h")

    # Out-of-canvas bounds are clamped, not rejected: a live editor routinely
    # produces transient out-of-bounds states.  Clamping intersects the
    # rectangle with the canvas.
    cx = min(max(x, 0), canvas_w)
    cy = min(max(y, 0), canvas_h)
    cw = max(min(x + max(w, 0), canvas_w) - cx, 0)
    ch = max(min(y + max(h, 0), canvas_h) - cy, 0)
    if (cx, cy, cw, ch) != (x, y, w, h):
        warnings.append(
            f"element '{elem_id}': bounds ({x},{y},{w},{h}) clamped to "
            f"({cx},{cy},{cw},{ch})"
        )
    bounds = Bounds(cx, cy, cw, ch)

    fill = obj.get("fill_color")
    fill_color = parse_color(fill, f"element '{elem_id}'") if fill is not None else None

    text = None
    if obj.get("text") is not None:
        if kind in TEXT_KINDS:
            text = _parse_text_style(obj["text"], f"element '{elem_id}'")
        else:
            warnings.append(f"element '{elem_id}': text style dropped (kind '{kind}' is not text-bearing)")

    children = tuple(
        _parse_element(c, canvas_w, canvas_h, seen_ids, warnings)
        for c in obj.get("children") or []
    )
    return Element(id=elem_id, kind=kind, bounds=bounds,
                   fill_color=fill_color, text=text, children=children)


def document_from_dict(obj: Any) -> LayoutDocument:
    """Validate a decoded layout JSON object into a LayoutDocument."""
    if not isinstance(obj, dict):
        raise LayoutValidationError("top-level layout must be an object")
    version = obj.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise LayoutValidationError(f"unsupported schema_version {version!r}")

    canvas = obj.get("canvas")
    if not isinstance(canvas, dict):
        raise LayoutValidationError("missing 'canvas' object")
    canvas_w = _as_int(canvas.get("width", 0), "canvas.width")
    canvas_h = _as_int(canvas.get("height", 0), "canvas.height")
    if canvas_w <= 0 or canvas_h <= 0:
        raise LayoutValidationError(f"canvas must be positive, got {canvas_w}x{canvas_h}")

    warnings: list[str] = []
    seen_ids: set = set()
    elements = tuple(
        _parse_element(e, canvas_w, canvas_h, seen_ids, warnings)
        for e in obj.get("elements") or []
    )

    meta = None
    mraw = obj.get("meta")
    if mraw is not None:
        if not isinstance(mraw, dict):
            raise LayoutValidationError("'meta' must be an object")
        rating = mraw.get("rating", 0.0)
        if isinstance(rating, bool) or not isinstance(rating, (int, float)) or not 0 <= rating <= 5:
            raise LayoutValidationError(f"meta.rating must be in [0,5], got {rating!r}")
        meta = AppMeta(
            app_id=str(mraw.get("app_id", "")),
            category=str(mraw.get("category", "")),
            rating=float(rating),
        )

    return LayoutDocument(canvas_width=canvas_w, canvas_height=canvas_h,
                          elements=elements, meta=meta, warnings=tuple(warnings))


def parse_layout(json_text: str) -> LayoutDocument:
    """Parse and validate layout JSON text.

    Raises LayoutParseError (with byte offset) for malformed JSON and
    LayoutValidationError for contract violations.  Out-of-canvas bounds are
    clamped; the clamp notes are attached as ``doc.warnings``.
    """
    try:
        obj = json.loads(json_text)
    except json.JSONDecodeError as exc:
        byte_offset = len(json_text[:exc.pos].encode("utf-8"))
        raise LayoutParseError(exc.msg, byte_offset) from None
    return document_from_dict(obj)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _element_to_dict(elem: Element) -> dict:
    out: dict[str, Any] = {
        "id": elem.id,
        "kind": elem.kind,
        "bounds": {"x": elem.bounds.x, "y": elem.bounds.y,
                   "w": elem.bounds.w, "h": elem.bounds.h},
    }
    if elem.fill_color is not None:
        out["fill_color"] = format_color(elem.fill_color)
    if elem.text is not None:
        out["text"] = {
            "content": elem.text.content,
            "font_family": elem.text.font_family,
            "font_size": elem.text.font_size,
            "color": format_color(elem.text.color),
        }
    if elem.children:
        out["children"] = [_element_to_dict(c) for c in elem.children]
    return out


def document_to_dict(doc: LayoutDocument) -> dict:
    out: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "canvas": {"width": doc.canvas_width, "height": doc.canvas_height},
        "elements": [_element_to_dict(e) for e in doc.elements],
    }
    if doc.meta is not None:
        out["meta"] = {"app_id": doc.meta.app_id, "category": doc.meta.category,
                       "rating": doc.meta.rating}
    return out


def serialize_layout(doc: LayoutDocument) -> str:
    return json.dumps(document_to_dict(doc))


# ---------------------------------------------------------------------------
# geometry utilities
# ---------------------------------------------------------------------------

def walk(doc: LayoutDocument) -> Iterator[Element]:
    """All elements in depth-first document order."""
    stack = list(reversed(doc.elements))
    while stack:
        elem = stack.pop()
        yield elem
        stack.extend(reversed(elem.children))


def leaves(doc: LayoutDocument) -> list[Element]:
    """Elements with no children, in depth-first document order.

    A childless container counts as a leaf: it occupies space and must affect
    density and balance.
    """
    return [e for e in walk(doc) if not e.children]


def element_count(doc: LayoutDocument) -> int:
    return sum(1 for _ in walk(doc))


def _scale_element(elem: Element, rx: float, ry: float,
                   target_w: int, target_h: int) -> Element:
    b = elem.bounds
    x = min(max(_round_half_up(b.x * rx), 0), target_w)
    y = min(max(_round_half_up(b.y * ry), 0), target_h)
    w = min(max(_round_half_up(b.w * rx), 0), target_w - x)
    h = min(max(_round_half_up(b.h * ry), 0), target_h - y)
    return replace(
        elem,
        bounds=Bounds(x, y, w, h),
        children=tuple(_scale_element(c, rx, ry, target_w, target_h) for c in elem.children),
    )


def scale_to_canvas(doc: LayoutDocument, target_w: int, target_h: int) -> LayoutDocument:
    """Rescale every bound onto a target canvas, preserving relative position.

    Bounds are multiplied by (target_w / canvas_width, target_h /
    canvas_height), rounded half-up to integer pixels and clamped to the new
    canvas.
    """
    if target_w <= 0 or target_h <= 0:
        raise ValueError(f"target canvas must be positive, got {target_w}x{target_h}")
    rx = target_w / doc.canvas_width
    ry = target_h / doc.canvas_height
    return LayoutDocument(
        canvas_width=target_w,
        canvas_height=target_h,
        elements=tuple(_scale_element(e, rx, ry, target_w, target_h) for e in doc.elements),
        meta=doc.meta,
    )


# ---------------------------------------------------------------------------
# RICO ingest shim
# ---------------------------------------------------------------------------

def _rico_kind(class_name: str, has_children: bool) -> str:
    for suffix, kind in RICO_CLASS_MAP.items():
        if class_name.endswith(suffix):
            return kind
    return "container" if has_children else "shape"


def _rico_element(node: dict, counter: list) -> Optional[dict]:
    bounds = node.get("bounds")
    if not isinstance(bounds, (list, tuple)) or len(bounds) != 4:
        return None
    x1, y1, x2, y2 = (float(v) for v in bounds)
    children = [c for c in node.get("children") or [] if isinstance(c, dict)]
    class_name = str(node.get("class") or node.get("componentLabel") or "")
    counter[0] += 1
    out = {
        "id": f"n{counter[0]}",
        "kind": _rico_kind(class_name, bool(children)),
        "bounds": {"x": x1, "y": y1, "w": max(x2 - x1, 0), "h": max(y2 - y1, 0)},
    }
    converted = [_rico_element(c, counter) for c in children]
    converted = [c for c in converted if c is not None]
    if converted:
        out["children"] = converted
    return out


def document_from_rico(obj: dict, meta: Optional[AppMeta] = None) -> LayoutDocument:
    """Convert a RICO-shaped view hierarchy JSON object into a document.

    Accepts either the raw hierarchy node or the ``{"activity": {"root":
    ...}}`` wrapper.  Android class names map onto the nine kinds; unknown
    classes become containers or shapes.  Off-screen bounds are clamped by the
    normal parse path.
    """
    root = obj
    if "activity" in root and isinstance(root["activity"], dict):
        root = root["activity"].get("root") or {}
    bounds = root.get("bounds")
    if not isinstance(bounds, (list, tuple)) or len(bounds) != 4:
        raise LayoutValidationError("RICO root node has no bounds")
    canvas_w = max(float(bounds[2]) - float(bounds[0]), 1)
    canvas_h = max(float(bounds[3]) - float(bounds[1]), 1)
    counter = [0]
    elements = [c for c in (_rico_element(child, counter)
                            for child in root.get("children") or []
                            if isinstance(child, dict)) if c is not None]
    doc = {
        "schema_version": SCHEMA_VERSION,
        "canvas": {"width": canvas_w, "height": canvas_h},
        "elements": elements,
    }
    if meta is not None:
        doc["meta"] = {"app_id": meta.app_id, "category": meta.category, "rating": meta.rating}
    return document_from_dict(doc)
