"""Feature extraction oracles: chunk geometry, shingles, and token vectors."""

from __future__ import annotations

import hashlib

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from PIL import Image

from cookiediff.features import (
    CaptureError,
    FeatureSet,
    FrequencyVector,
    capture_feature_set,
    chunk_bounds,
    grid_shape,
    iter_chunks,
    list_to_vector,
    shingle_image,
    tokenize_text,
)


def solid(width: int, height: int, color=(255, 255, 255, 255)) -> Image.Image:
    return Image.new("RGBA", (width, height), color)


def random_image(rng: np.random.Generator, width: int, height: int) -> Image.Image:
    arr = rng.integers(0, 256, size=(height, width, 4), dtype=np.uint8)
    return Image.fromarray(arr, "RGBA")


class TestChunkGeometry:
    def test_default_viewport_yields_700_chunks(self):
        image = solid(1366, 768)
        assert grid_shape(1366, 768, 40) == (35, 20)
        chunks = list(iter_chunks(image, 40))
        assert len(chunks) == 700

    def test_edge_chunks_keep_natural_size(self):
        bounds = list(chunk_bounds(1366, 768, 40))
        widths = {x1 - x0 for x0, _, x1, _ in bounds}
        heights = {y1 - y0 for _, y0, _, y1 in bounds}
        assert widths == {40, 6}
        assert heights == {40, 8}

    @given(
        width=st.integers(1, 200),
        height=st.integers(1, 200),
        chunk_px=st.integers(1, 50),
    )
    @settings(max_examples=200, deadline=None)
    def test_bounds_tile_the_raster_exactly(self, width, height, chunk_px):
        bounds = list(chunk_bounds(width, height, chunk_px))
        cols, rows = grid_shape(width, height, chunk_px)
        assert len(bounds) == cols * rows
        area = sum((x1 - x0) * (y1 - y0) for x0, y0, x1, y1 in bounds)
        assert area == width * height
        for x0, y0, x1, y1 in bounds:
            assert 0 <= x0 < x1 <= width
            assert 0 <= y0 < y1 <= height
        # row-major: y is non-decreasing, x resets at each new row
        for (ax, ay, _, _), (bx, by, _, _) in zip(bounds, bounds[1:]):
            assert (by > ay) or (by == ay and bx > ax)

    def test_degenerate_inputs_rejected(self):
        with pytest.raises(ValueError):
            list(chunk_bounds(0, 10, 40))
        with pytest.raises(ValueError):
            list(chunk_bounds(10, -1, 40))
        with pytest.raises(ValueError):
            list(chunk_bounds(10, 10, 0))

    def test_chunk_bytes_are_raw_rgba(self):
        image = solid(1, 1, (255, 0, 0, 255))
        (chunk,) = iter_chunks(image, 40)
        assert chunk == bytes([255, 0, 0, 255])


class TestShingles:
    def test_known_md5_for_single_red_pixel(self):
        vec = shingle_image(solid(1, 1, (255, 0, 0, 255)), 40)
        assert vec.counts == {"4bcd779a6d1cb005a4731d447682d40b": 1}

    def test_blank_page_chunk_census(self):
        # 1366x768 white: interior 40x40, right column 6x40, bottom row
        # 40x8, and a single 6x8 corner chunk.
        vec = shingle_image(solid(1366, 768), 40)
        assert sorted(vec.counts.values(), reverse=True) == [34 * 19, 34, 19, 1]
        assert vec.total == 700
        assert "845afe8629f1006ac66d365368a91551" in vec.counts
        assert vec.counts["845afe8629f1006ac66d365368a91551"] == 34 * 19

    def test_uniform_image_at_multiple_of_chunk_size_is_one_token(self):
        vec = shingle_image(solid(400, 200, (0, 0, 0, 255)), 40)
        assert len(vec) == 1
        assert vec.total == 50

    @given(data=st.data())
    @settings(max_examples=50, deadline=None)
    def test_total_matches_grid_size(self, data):
        width = data.draw(st.integers(1, 170))
        height = data.draw(st.integers(1, 170))
        seed = data.draw(st.integers(0, 2**32 - 1))
        image = random_image(np.random.default_rng(seed), width, height)
        cols, rows = grid_shape(width, height, 40)
        assert shingle_image(image, 40).total == cols * rows

    @given(data=st.data())
    @settings(max_examples=50, deadline=None)
    def test_single_pixel_flip_moves_exactly_one_chunk(self, data):
        width = data.draw(st.integers(2, 120))
        height = data.draw(st.integers(2, 120))
        seed = data.draw(st.integers(0, 2**32 - 1))
        rng = np.random.default_rng(seed)
        image = random_image(rng, width, height)
        x = int(rng.integers(0, width))
        y = int(rng.integers(0, height))
        flipped = image.copy()
        r, g, b, a = flipped.getpixel((x, y))
        flipped.putpixel((x, y), ((r + 128) % 256, g, b, a))
        before = shingle_image(image, 40).counts
        after = shingle_image(flipped, 40).counts
        moved = sum(
            abs(before.get(t, 0) - after.get(t, 0)) for t in before.keys() | after.keys()
        )
        assert moved == 2

    def test_independent_md5_route(self):
        image = random_image(np.random.default_rng(7), 90, 50)
        vec = shingle_image(image, 40)
        arr = np.asarray(image.convert("RGBA"))
        expected: dict[str, int] = {}
        for y0 in range(0, 50, 40):
            for x0 in range(0, 90, 40):
                blob = arr[y0 : min(y0 + 40, 50), x0 : min(x0 + 40, 90)].tobytes()
                token = hashlib.md5(blob).hexdigest()
                expected[token] = expected.get(token, 0) + 1
        assert vec.counts == expected


class TestFrequencyVector:
    def test_zero_counts_are_dropped_and_negative_rejected(self):
        assert FrequencyVector({"a": 0, "b": 2}).counts == {"b": 2}
        with pytest.raises(ValueError):
            FrequencyVector({"a": -1})

    def test_from_items_counts_duplicates(self):
        vec = FrequencyVector.from_items(["x", "y", "x"])
        assert vec.counts == {"x": 2, "y": 1}
        assert vec.total == 3
        assert vec["x"] == 2 and vec["missing"] == 0
        assert len(vec) == 2

    def test_merge_adds_counts(self):
        merged = FrequencyVector({"a": 1}).merge(FrequencyVector({"a": 2, "b": 1}))
        assert merged.counts == {"a": 3, "b": 1}

    def test_equality(self):
        assert FrequencyVector({"a": 1}) == FrequencyVector({"a": 1, "b": 0})
        assert FrequencyVector({"a": 1}) != FrequencyVector({"a": 2})

    def test_tokenizers(self):
        assert tokenize_text("  One two\t two\nthree ").counts == {
            "One": 1,
            "two": 2,
            "three": 1,
        }
        assert tokenize_text("").counts == {}
        assert list_to_vector(["u", "u", "v"]).counts == {"u": 2, "v": 1}


class _FakeCapturePage:
    def __init__(self, fail_screenshot=False):
        self.calls: list[str] = []
        self.fail_screenshot = fail_screenshot

    def scroll_top(self):
        self.calls.append("scroll_top")

    def screenshot(self):
        self.calls.append("screenshot")
        if self.fail_screenshot:
            raise RuntimeError("no surface")
        return solid(80, 40, (10, 20, 30, 255))

    def extract_text(self):
        return "alpha beta alpha"

    def extract_image_sources(self):
        return ["/img/a.png", "/img/a.png"]

    def extract_link_targets(self):
        return ["/next"]

    def extract_resource_urls(self):
        return ["http://x.test/", "http://x.test/img/a.png"]

    def current_url(self):
        return "http://x.test/"


class TestCaptureFeatureSet:
    def test_captures_all_vector_kinds(self):
        page = _FakeCapturePage()
        features = capture_feature_set(page, step_index=3, chunk_px=40)
        assert page.calls[:2] == ["scroll_top", "screenshot"]
        assert features.step_index == 3
        assert features.page_url == "http://x.test/"
        assert features.words.counts == {"alpha": 2, "beta": 1}
        assert features.image_srcs.counts == {"/img/a.png": 2}
        assert features.links.counts == {"/next": 1}
        assert features.resource_urls == ["http://x.test/", "http://x.test/img/a.png"]
        assert features.shingles.total == 2  # 80x40 at 40px
        assert set(FeatureSet.VECTOR_KINDS) == {"shingles", "words", "image_srcs", "links"}
        with pytest.raises(KeyError):
            features.vector("bogus")

    def test_screenshot_failure_raises_capture_error(self):
        with pytest.raises(CaptureError):
            capture_feature_set(_FakeCapturePage(fail_screenshot=True), 0)
