"""Screenshot and content divergence metrics, and their aggregation.

The screenshot metric filters out chunks that already differ between the
two all-cookies groups, so naturally dynamic regions never count against
the cookie-blocking condition. The content metrics compare token multisets
with a Jaccard distance and report the difference-in-distance between the
experimental and control comparisons.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from statistics import mean, median
from typing import Iterable, Mapping, Sequence
from urllib.parse import urlsplit

from PIL import Image

from .features import DEFAULT_CHUNK_PX, FeatureSet, FrequencyVector, iter_chunks


class BceSkipReason(str, Enum):
    DIMENSION_MISMATCH = "dimension-mismatch"
    NO_STABLE_CHUNKS = "no-stable-chunks"


@dataclass(frozen=True)
class BceOutcome:
    """Result of the three-way screenshot comparison.

    Either a difference delta in [0, 1] with the match/total chunk counts,
    or an explicit skip with its reason.
    """

    delta: float | None = None
    matches: int | None = None
    total: int | None = None
    skip_reason: BceSkipReason | None = None

    @property
    def is_skip(self) -> bool:
        return self.skip_reason is not None

    @classmethod
    def skipped(cls, reason: BceSkipReason) -> "BceOutcome":
        return cls(skip_reason=reason)

    @classmethod
    def measured(cls, matches: int, total: int) -> "BceOutcome":
        if total <= 0:
            raise ValueError("measured outcome requires total > 0")
        return cls(delta=1.0 - matches / total, matches=matches, total=total)


def chunk_grid(image: Image.Image, chunk_px: int = DEFAULT_CHUNK_PX) -> list[bytes]:
    """Row-major list of raw-pixel chunk blobs for one screenshot."""
    return list(iter_chunks(image, chunk_px))


def bce_from_chunks(
    baseline: Sequence[bytes],
    control: Sequence[bytes],
    experimental: Sequence[bytes],
) -> BceOutcome:
    """Three-way comparison over pre-chunked screenshots.

    Chunks where baseline != control are natural drift and are filtered
    out; the delta is the fraction of the remaining (stable) chunks where
    the experimental group diverged from baseline.
    """
    if not (len(baseline) == len(control) == len(experimental)):
        return BceOutcome.skipped(BceSkipReason.DIMENSION_MISMATCH)
    matches = 0
    total = 0
    for b, c, e in zip(baseline, control, experimental):
        if b == c:
            total += 1
            if b == e:
                matches += 1
    if total == 0:
        return BceOutcome.skipped(BceSkipReason.NO_STABLE_CHUNKS)
    return BceOutcome.measured(matches, total)


def bce_screenshot_difference(
    baseline: Image.Image,
    control: Image.Image,
    experimental: Image.Image,
    chunk_px: int = DEFAULT_CHUNK_PX,
) -> BceOutcome:
    """Screenshot difference delta over baseline/control/experimental captures."""
    dims = {(img.width, img.height) for img in (baseline, control, experimental)}
    if len(dims) != 1:
        return BceOutcome.skipped(BceSkipReason.DIMENSION_MISMATCH)
    return bce_from_chunks(
        chunk_grid(baseline, chunk_px),
        chunk_grid(control, chunk_px),
        chunk_grid(experimental, chunk_px),
    )


VectorLike = FrequencyVector | Mapping[str, int]


def _counts(vector: VectorLike) -> Mapping[str, int]:
    if isinstance(vector, FrequencyVector):
        return vector.counts
    return vector


def jaccard_distance(a: VectorLike, b: VectorLike) -> float:
    """Multiset Jaccard distance: 1 - sum(min)/sum(max) over tokens.

    Two empty multisets are considered identical (distance 0).
    """
    ca, cb = _counts(a), _counts(b)
    intersection = 0
    union = 0
    for token in ca.keys() | cb.keys():
        x = ca.get(token, 0)
        y = cb.get(token, 0)
        intersection += min(x, y)
        union += max(x, y)
    if union == 0:
        return 0.0
    return 1.0 - intersection / union


def did(baseline: VectorLike, control: VectorLike, experimental: VectorLike) -> float:
    """Difference in distance: J(B, E) - J(B, C), in [-1, 1].

    Near zero means blocking third-party cookies moved the page no further
    from baseline than the natural reload drift already did.
    """
    return jaccard_distance(baseline, experimental) - jaccard_distance(baseline, control)


@dataclass(frozen=True)
class DidValue:
    value: float
    feature_kind: str  # one of FeatureSet.VECTOR_KINDS
    clickstream_id: str
    step_index: int


@dataclass(frozen=True)
class StepDelta:
    clickstream_id: str
    step_index: int
    outcome: BceOutcome


@dataclass
class DomainSummary:
    """Per-domain aggregation of both metrics plus bookkeeping tallies."""

    domain: str
    status: str
    triples: int = 0
    dropped_points: int = 0
    bce: list[StepDelta] = field(default_factory=list)
    dids: list[DidValue] = field(default_factory=list)
    mean_delta: float | None = None
    median_delta: float | None = None
    skip_counts: dict[str, int] = field(default_factory=dict)
    ad_request_counts: dict[str, int] | None = None

    @property
    def all_skipped(self) -> bool:
        return self.triples > 0 and all(s.outcome.is_skip for s in self.bce)

    def deltas(self) -> list[float]:
        return [s.outcome.delta for s in self.bce if not s.outcome.is_skip]


def summarize_deltas(summary: DomainSummary) -> None:
    values = summary.deltas()
    summary.mean_delta = mean(values) if values else None
    summary.median_delta = median(values) if values else None
    skips: dict[str, int] = {}
    for step in summary.bce:
        if step.outcome.is_skip:
            reason = step.outcome.skip_reason.value
            skips[reason] = skips.get(reason, 0) + 1
    summary.skip_counts = skips


def cdf_points(values: Iterable[float]) -> list[tuple[float, float]]:
    """Sorted (value, cumulative fraction) pairs; duplicate values collapse
    to a single row at their maximum fraction."""
    ordered = sorted(values)
    n = len(ordered)
    points: list[tuple[float, float]] = []
    for i, v in enumerate(ordered):
        if i + 1 < n and ordered[i + 1] == v:
            continue
        points.append((v, (i + 1) / n))
    return points


def emit_cdf(values: Iterable[float], label: str, path: str | Path) -> Path:
    """Write a CDF as CSV rows of value,cumulative_fraction.

    The label is carried by callers into filenames and figure legends; the
    CSV itself stays a plain two-column table (header-only when empty).
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["value", "cumulative_fraction"])
        for value, fraction in cdf_points(values):
            writer.writerow([f"{value:.10g}", f"{fraction:.10g}"])
    return path


def load_ad_domains(path: str | Path) -> frozenset[str]:
    """Newline-delimited advertisement domains.

    Tolerates comment lines and adblock-style ||domain^ host anchors, since
    published lists commonly mix both.
    """
    domains: set[str] = set()
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith(("!", "#", "[")):
            continue
        if line.startswith("||"):
            line = line[2:]
            for stop in "^/$":
                cut = line.find(stop)
                if cut != -1:
                    line = line[:cut]
        domain = line.lower().strip(".")
        if domain:
            domains.add(domain)
    return frozenset(domains)


def count_ad_requests(resource_urls: Iterable[str], ad_domains: frozenset[str] | set[str]) -> int:
    """Number of fetched URLs whose host falls under any listed domain.

    Matching is a suffix match on label boundaries: ads.x.com matches x.com,
    notx.com does not.
    """
    count = 0
    for url in resource_urls:
        try:
            host = urlsplit(url).hostname
        except ValueError:
            continue
        if not host:
            continue
        labels = host.lower().split(".")
        for i in range(len(labels)):
            if ".".join(labels[i:]) in ad_domains:
                count += 1
                break
    return count


@dataclass(frozen=True)
class CaptureTriple:
    """One aligned (baseline, control, experimental) capture point."""

    clickstream_id: str
    step_index: int
    baseline: "CaptureRecord"
    control: "CaptureRecord"
    experimental: "CaptureRecord"


@dataclass
class PairingResult:
    triples: list[CaptureTriple]
    dropped: int


def pair_capture_points(record: "DomainRecord") -> PairingResult:
    """Align capture points across groups by (clickstream, step index).

    A point present in some groups but not all three is dropped and
    counted; imputing the missing side would manufacture differences the
    experiment cannot attribute.
    """
    from .storage import CrawlGroup  # local import to keep analysis importable alone

    triples: list[CaptureTriple] = []
    dropped = 0
    for round_ in record.rounds:
        by_group = {
            group: {c.step_index: c for c in run.captures}
            for group, run in round_.groups.items()
        }
        baseline = by_group.get(CrawlGroup.BASELINE, {})
        control = by_group.get(CrawlGroup.CONTROL, {})
        experimental = by_group.get(CrawlGroup.EXPERIMENTAL, {})
        seen = set(baseline) | set(control) | set(experimental)
        for step_index in sorted(seen):
            if step_index in baseline and step_index in control and step_index in experimental:
                triples.append(
                    CaptureTriple(
                        clickstream_id=round_.clickstream.id,
                        step_index=step_index,
                        baseline=baseline[step_index],
                        control=control[step_index],
                        experimental=experimental[step_index],
                    )
                )
            else:
                dropped += 1
    return PairingResult(triples=triples, dropped=dropped)


def summarize_domain(
    record: "DomainRecord",
    ad_domains: frozenset[str] | None = None,
    chunk_px: int = DEFAULT_CHUNK_PX,
) -> DomainSummary:
    """Compute per-triple BCE and DiD values and roll them up for one domain."""
    from .storage import CrawlGroup

    pairing = pair_capture_points(record)
    summary = DomainSummary(
        domain=record.domain,
        status=record.status.value,
        triples=len(pairing.triples),
        dropped_points=pairing.dropped,
    )
    for triple in pairing.triples:
        shots = [cap.load_screenshot() for cap in (triple.baseline, triple.control, triple.experimental)]
        if all(s is not None for s in shots):
            outcome = bce_screenshot_difference(*shots, chunk_px=chunk_px)
        else:
            outcome = BceOutcome.skipped(BceSkipReason.DIMENSION_MISMATCH)
        summary.bce.append(
            StepDelta(clickstream_id=triple.clickstream_id, step_index=triple.step_index, outcome=outcome)
        )
        for kind in FeatureSet.VECTOR_KINDS:
            summary.dids.append(
                DidValue(
                    value=did(
                        triple.baseline.vectors[kind],
                        triple.control.vectors[kind],
                        triple.experimental.vectors[kind],
                    ),
                    feature_kind=kind,
                    clickstream_id=triple.clickstream_id,
                    step_index=triple.step_index,
                )
            )
    summarize_deltas(summary)
    if ad_domains is not None:
        counts: dict[str, int] = {}
        for group in CrawlGroup:
            urls: list[str] = []
            for round_ in record.rounds:
                run = round_.groups.get(group)
                if run is not None:
                    for capture in run.captures:
                        urls.extend(capture.resource_urls)
            counts[group.value] = count_ad_requests(urls, ad_domains)
        summary.ad_request_counts = counts
    return summary
