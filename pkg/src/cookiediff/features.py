"""Per-capture-point feature extraction: screenshots, shingles, and token vectors."""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

import numpy as np
from PIL import Image

DEFAULT_CHUNK_PX = 40


class FrequencyVector:
    """Multiset of string tokens with positive integer counts.

    The operand of the Jaccard/DiD comparisons. Zero counts are never
    stored; negative counts are rejected.
    """

    __slots__ = ("counts",)

    def __init__(self, counts: Mapping[str, int] | None = None):
        clean: dict[str, int] = {}
        for token, count in (counts or {}).items():
            if count < 0:
                raise ValueError(f"negative count for token {token!r}: {count}")
            if count > 0:
                clean[str(token)] = int(count)
        self.counts = clean

    @classmethod
    def from_items(cls, items: Iterable[str]) -> "FrequencyVector":
        counts: dict[str, int] = {}
        for item in items:
            counts[item] = counts.get(item, 0) + 1
        return cls(counts)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def merge(self, other: "FrequencyVector") -> "FrequencyVector":
        merged = dict(self.counts)
        for token, count in other.counts.items():
            merged[token] = merged.get(token, 0) + count
        return FrequencyVector(merged)

    def __getitem__(self, token: str) -> int:
        return self.counts.get(token, 0)

    def __len__(self) -> int:
        return len(self.counts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FrequencyVector):
            return NotImplemented
        return self.counts == other.counts

    def __repr__(self) -> str:
        return f"FrequencyVector({self.counts!r})"

    def to_dict(self) -> dict[str, int]:
        return dict(self.counts)


def tokenize_text(text: str) -> FrequencyVector:
    """Word frequency vector: split on whitespace runs, case preserved."""
    return FrequencyVector.from_items(text.split())


def list_to_vector(items: Iterable[str]) -> FrequencyVector:
    """Frequency vector over a list of strings, duplicates counted."""
    return FrequencyVector.from_items(items)


def chunk_bounds(width: int, height: int, chunk_px: int = DEFAULT_CHUNK_PX) -> Iterator[tuple[int, int, int, int]]:
    """Row-major (x0, y0, x1, y1) chunk rectangles covering a raster.

    Trailing partial chunks at the right/bottom edges keep their natural
    size rather than being padded or dropped.
    """
    if width <= 0 or height <= 0:
        raise ValueError(f"cannot chunk a {width}x{height} raster")
    if chunk_px <= 0:
        raise ValueError(f"chunk size must be positive, got {chunk_px}")
    for y0 in range(0, height, chunk_px):
        for x0 in range(0, width, chunk_px):
            yield x0, y0, min(x0 + chunk_px, width), min(y0 + chunk_px, height)


def grid_shape(width: int, height: int, chunk_px: int = DEFAULT_CHUNK_PX) -> tuple[int, int]:
    """(columns, rows) of the chunk grid for a raster."""
    cols = -(-width // chunk_px)
    rows = -(-height // chunk_px)
    return cols, rows


def _rgba_array(image: Image.Image) -> np.ndarray:
    if image.width == 0 or image.height == 0:
        raise ValueError(f"cannot process a {image.width}x{image.height} image")
    return np.asarray(image.convert("RGBA"))


def iter_chunks(image: Image.Image, chunk_px: int = DEFAULT_CHUNK_PX) -> Iterator[bytes]:
    """Raw RGBA bytes of each chunk, row-major."""
    arr = _rgba_array(image)
    height, width = arr.shape[:2]
    for x0, y0, x1, y1 in chunk_bounds(width, height, chunk_px):
        yield arr[y0:y1, x0:x1].tobytes()


def shingle_image(image: Image.Image, chunk_px: int = DEFAULT_CHUNK_PX) -> FrequencyVector:
    """Image shingle vector: MD5 of each chunk's raw pixel bytes, as a multiset.

    MD5 is a fidelity choice, not a security one: shingles only need a
    stable fingerprint of chunk content, and adversarial collisions are
    outside the threat model.
    """
    return FrequencyVector.from_items(
        hashlib.md5(chunk).hexdigest() for chunk in iter_chunks(image, chunk_px)
    )


@dataclass
class FeatureSet:
    """Everything captured at one point of a traversal.

    step_index 0 is the landing page; i is the state after step i.
    """

    step_index: int
    screenshot: Image.Image | None
    shingles: FrequencyVector
    words: FrequencyVector
    image_srcs: FrequencyVector
    links: FrequencyVector
    resource_urls: list[str] = field(default_factory=list)
    page_url: str = ""
    captured_at: float = 0.0

    VECTOR_KINDS = ("shingles", "words", "image_srcs", "links")

    def vector(self, kind: str) -> FrequencyVector:
        if kind not in self.VECTOR_KINDS:
            raise KeyError(kind)
        return getattr(self, kind)


class CaptureError(Exception):
    """A capture point could not be completed; it is excluded from pairing."""


def capture_feature_set(page, step_index: int, chunk_px: int = DEFAULT_CHUNK_PX) -> FeatureSet:
    """Capture one FeatureSet from a live page.

    Scrolls to the top first so screenshots are consistently aligned, then
    takes the viewport screenshot, then the content extractions. Content
    below the viewport is deliberately absent from the screenshot.
    """
    page.scroll_top()
    try:
        shot = page.screenshot()
    except Exception as exc:
        raise CaptureError(f"screenshot failed at step {step_index}: {exc}") from exc
    return FeatureSet(
        step_index=step_index,
        screenshot=shot,
        shingles=shingle_image(shot, chunk_px),
        words=tokenize_text(page.extract_text()),
        image_srcs=list_to_vector(page.extract_image_sources()),
        links=list_to_vector(page.extract_link_targets()),
        resource_urls=list(page.extract_resource_urls()),
        page_url=page.current_url(),
        captured_at=time.time(),
    )
