import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
import numpy as np

from guifeedback.layout import (LayoutParseError, LayoutValidationError,
                                document_from_dict, document_from_rico,
                                document_to_dict, leaves, parse_layout,
                                scale_to_canvas, serialize_layout)
from guifeedback.synth import random_document

from conftest import el, make_doc, txt


class TestParse:
    def test_empty_layout(self):
        doc = parse_layout('{"canvas":{"width":360,"height":640},"elements":[]}')
        assert doc.canvas_width == 360
        assert doc.canvas_height == 640
        assert doc.elements == ()
        assert doc.warnings == ()

    def test_duplicate_id_rejected(self):
        with pytest.raises(LayoutValidationError, match="e1"):
            make_doc([el("e1", "button", 0, 0, 10, 10),
                      el("e1", "button", 20, 20, 10, 10)])

    def test_clamp_overflowing_width(self):
        doc = make_doc([el("e1", "button", 350, 0, 30, 10)])
        assert doc.elements[0].bounds.w == 10
        assert doc.elements[0].bounds.x == 350
        assert len(doc.warnings) == 1

    def test_clamp_negative_origin(self):
        doc = make_doc([el("e1", "shape", -10, -20, 30, 40)])
        b = doc.elements[0].bounds
        assert (b.x, b.y, b.w, b.h) == (0, 0, 20, 20)

    def test_unknown_kind_names_id(self):
        with pytest.raises(LayoutValidationError, match="e9"):
            make_doc([el("e9", "widget", 0, 0, 10, 10)])

    def test_non_positive_canvas(self):
        with pytest.raises(LayoutValidationError):
            make_doc([], width=0)
        with pytest.raises(LayoutValidationError):
            make_doc([], height=-5)

    def test_malformed_json_reports_byte_offset(self):
        with pytest.raises(LayoutParseError) as err:
            parse_layout('{"canvas": }')
        assert err.value.byte_offset == 11

    def test_schema_version_defaults_and_rejects_unknown(self):
        parse_layout('{"canvas":{"width":10,"height":10},"elements":[]}')
        with pytest.raises(LayoutValidationError, match="schema_version"):
            parse_layout('{"schema_version":2,"canvas":{"width":10,"height":10},"elements":[]}')

    def test_text_style_only_on_text_kinds(self):
        doc = make_doc([el("e1", "image", 0, 0, 10, 10, text=txt())])
        assert doc.elements[0].text is None
        assert any("text style dropped" in w for w in doc.warnings)
        doc = make_doc([el("e2", "button", 0, 0, 10, 10, text=txt("Go"))])
        assert doc.elements[0].text.content == "Go"

    def test_font_size_must_be_positive(self):
        with pytest.raises(LayoutValidationError, match="font_size"):
            make_doc([el("e1", "text", 0, 0, 10, 10, text=txt(size=0))])

    def test_rating_range(self):
        with pytest.raises(LayoutValidationError, match="rating"):
            make_doc([], meta={"app_id": "a", "category": "c", "rating": 7})

    def test_fill_color_parsing(self):
        doc = make_doc([el("e1", "shape", 0, 0, 10, 10, fill="#A1B2C3")])
        assert doc.elements[0].fill_color == (0xA1, 0xB2, 0xC3)
        with pytest.raises(LayoutValidationError, match="color"):
            make_doc([el("e1", "shape", 0, 0, 10, 10, fill="red")])


class TestLeaves:
    def test_empty(self, empty_doc):
        assert leaves(empty_doc) == []

    def test_container_children_in_order(self):
        doc = make_doc([el("c", "container", 0, 0, 100, 100, children=[
            el("b1", "button", 0, 0, 40, 20),
            el("b2", "button", 0, 30, 40, 20),
        ])])
        assert [e.id for e in leaves(doc)] == ["b1", "b2"]

    def test_childless_container_is_a_leaf(self):
        doc = make_doc([el("c", "container", 0, 0, 100, 100)])
        assert [e.id for e in leaves(doc)] == ["c"]

    def test_depth_first_document_order(self):
        doc = make_doc([
            el("c1", "container", 0, 0, 100, 100, children=[
                el("a", "text", 0, 0, 10, 10, text=txt()),
                el("c2", "container", 0, 20, 50, 50, children=[
                    el("b", "icon", 0, 20, 10, 10)]),
            ]),
            el("d", "shape", 200, 0, 10, 10),
        ])
        assert [e.id for e in leaves(doc)] == ["a", "b", "d"]


class TestScale:
    def test_identity(self):
        doc = make_doc([el("e1", "button", 10, 20, 30, 40)])
        assert scale_to_canvas(doc, 360, 640) == doc

    def test_exact_ratio(self):
        doc = make_doc([el("e1", "image", 720, 1280, 720, 256)], width=1440, height=2560)
        scaled = scale_to_canvas(doc, 360, 640)
        b = scaled.elements[0].bounds
        assert (b.x, b.y, b.w, b.h) == (180, 320, 180, 64)

    def test_empty_document(self, empty_doc):
        scaled = scale_to_canvas(empty_doc, 720, 1280)
        assert scaled.canvas_width == 720
        assert scaled.canvas_height == 1280
        assert scaled.elements == ()

    def test_non_positive_target(self, empty_doc):
        with pytest.raises(ValueError):
            scale_to_canvas(empty_doc, 0, 100)

    @given(st.integers(0, 10_000), st.integers(100, 2000), st.integers(100, 2000))
    @settings(max_examples=60, deadline=None)
    def test_relative_position_preserved(self, seed, tw, th):
        doc = random_document(np.random.default_rng(seed))
        scaled = scale_to_canvas(doc, tw, th)
        for orig, new in zip(leaves(doc), leaves(scaled)):
            assert abs(new.bounds.x / tw - orig.bounds.x / doc.canvas_width) <= 1 / tw
            assert abs(new.bounds.y / th - orig.bounds.y / doc.canvas_height) <= 1 / th

    @given(st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_inverse_scaling_within_one_pixel(self, seed):
        doc = random_document(np.random.default_rng(seed))
        # odd upscale target so the rounding actually gets exercised
        there = scale_to_canvas(doc, 531, 977)
        back = scale_to_canvas(there, doc.canvas_width, doc.canvas_height)
        for orig, round_tripped in zip(leaves(doc), leaves(back)):
            for attr in ("x", "y", "w", "h"):
                assert abs(getattr(round_tripped.bounds, attr) - getattr(orig.bounds, attr)) <= 1


class TestRoundTrip:
    @given(st.integers(0, 10_000))
    @settings(max_examples=80, deadline=None)
    def test_serialize_parse_round_trip(self, seed):
        doc = random_document(np.random.default_rng(seed))
        assert parse_layout(serialize_layout(doc)) == doc

    def test_to_dict_is_json_clean(self):
        doc = make_doc([el("e1", "text", 1, 2, 3, 4, fill="#010203", text=txt())],
                       meta={"app_id": "a", "category": "games", "rating": 4.5})
        obj = json.loads(json.dumps(document_to_dict(doc)))
        assert document_from_dict(obj) == doc


class TestRicoShim:
    RICO = {
        "activity": {"root": {
            "bounds": [0, 0, 1440, 2560],
            "class": "android.widget.FrameLayout",
            "children": [
                {"bounds": [0, 0, 1440, 200], "class": "android.widget.TextView"},
                {"bounds": [0, 200, 1440, 400], "class": "android.widget.EditText"},
                {"bounds": [0, 400, 700, 600], "class": "android.widget.ImageButton"},
                {"bounds": [700, 400, 1440, 600], "class": "android.widget.ImageView"},
                {"bounds": [0, 600, 1440, 900], "class": "android.view.ViewGroup",
                 "children": [
                     {"bounds": [10, 610, 500, 890], "class": "android.widget.Button"},
                     {"bounds": [500, 610, 900, 890], "class": "com.example.Custom"},
                 ]},
            ],
        }}
    }

    def test_class_mapping(self):
        doc = document_from_rico(self.RICO)
        kinds = {e.id: e.kind for e in leaves(doc)}
        assert doc.canvas_width == 1440
        by_order = [e.kind for e in leaves(doc)]
        assert by_order == ["text", "edit_text", "image_button", "image", "button", "shape"]
        assert kinds  # ids were generated
        containers = [e for e in doc.elements if e.kind == "container"]
        assert len(containers) == 1

    def test_offscreen_bounds_clamped(self):
        rico = {"bounds": [0, 0, 100, 100],
                "children": [{"bounds": [-50, 20, 150, 60], "class": "android.widget.TextView"}]}
        doc = document_from_rico(rico)
        b = leaves(doc)[0].bounds
        assert (b.x, b.y, b.x2, b.y2) == (0, 20, 100, 60)
