import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from guifeedback.raster import channel_of, flatten_raster, rasterize, validate_raster
from guifeedback.synth import random_document

from conftest import el, make_doc, txt


class TestRasterize:
    def test_empty_layout(self, empty_doc):
        tensor = rasterize(empty_doc)
        assert tensor.shape == (90, 50, 3)
        assert not tensor.any()

    def test_full_canvas_image_fills_channel_one(self):
        doc = make_doc([el("a", "image", 0, 0, 360, 640)])
        tensor = rasterize(doc)
        assert np.all(tensor[:, :, 1] == 1.0)
        assert not tensor[:, :, 0].any()
        assert not tensor[:, :, 2].any()

    def test_top_half_text_covers_first_45_rows(self):
        # 640 px canvas: the top half maps exactly onto rows 0..44 of 90
        doc = make_doc([el("a", "text", 0, 0, 360, 320, text=txt())])
        tensor = rasterize(doc)
        assert np.all(tensor[:45, :, 0] == 1.0)
        assert not tensor[45:, :, 0].any()

    def test_partial_cell_coverage_is_fractional(self):
        # one cell is 7.2 px wide; a 3.6 px wide strip covers half of column 0
        doc = make_doc([el("a", "shape", 0, 0, 4, 640)])
        tensor = rasterize(doc)
        assert tensor[0, 0, 2] == np.float64(4 / 7.2)

    def test_same_group_overlap_does_not_exceed_one(self):
        doc = make_doc([el("a", "image", 0, 0, 200, 400),
                        el("b", "icon", 100, 200, 200, 400)])
        tensor = rasterize(doc)
        assert tensor[:, :, 1].max() <= 1.0

    def test_channel_grouping(self):
        assert channel_of("text") == 0 and channel_of("edit_text") == 0
        assert channel_of("image") == 1 and channel_of("image_button") == 1
        assert channel_of("icon") == 1
        for kind in ("button", "shape", "pagination", "container"):
            assert channel_of(kind) == 2

    @given(st.integers(0, 5000))
    @settings(max_examples=60, deadline=None)
    def test_values_in_unit_interval(self, seed):
        tensor = rasterize(random_document(np.random.default_rng(seed)))
        validate_raster(tensor)

    def test_flatten_is_13500_row_major_float32(self):
        doc = make_doc([el("a", "image", 0, 0, 360, 640)])
        flat = flatten_raster(rasterize(doc))
        assert flat.shape == (13500,)
        assert flat.dtype == np.float32
        # (row 0, col 0, channel 1) sits at index 1
        assert flat[1] == 1.0 and flat[0] == 0.0
