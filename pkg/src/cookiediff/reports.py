"""Analysis reports: delimited tables plus matplotlib figures from a store."""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from statistics import mean
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .analysis import (
    DomainSummary,
    cdf_points,
    emit_cdf,
    load_ad_domains,
    summarize_domain,
)
from .features import DEFAULT_CHUNK_PX, FeatureSet
from .storage import CrawlStore, TerminationStatus

log = logging.getLogger(__name__)


@dataclass
class AnalysisResult:
    out_dir: Path
    summaries: list[DomainSummary] = field(default_factory=list)
    tallies: dict[str, int] = field(default_factory=dict)
    tables: list[Path] = field(default_factory=list)
    figures: list[Path] = field(default_factory=list)


def _did_mean(summary: DomainSummary, kind: str) -> float | None:
    values = [d.value for d in summary.dids if d.feature_kind == kind]
    return mean(values) if values else None


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.10g}"


def _write_summaries(path: Path, rows: list[tuple[DomainSummary, int, int]]) -> None:
    header = [
        "domain",
        "rank",
        "status",
        "rounds",
        "triples",
        "dropped_points",
        "mean_delta",
        "median_delta",
        "skip_dimension_mismatch",
        "skip_no_stable_chunks",
    ]
    header += [f"did_mean_{kind}" for kind in FeatureSet.VECTOR_KINDS]
    header += ["ads_baseline", "ads_control", "ads_experimental"]
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for summary, rank, rounds in rows:
            ads = summary.ad_request_counts or {}
            writer.writerow(
                [
                    summary.domain,
                    rank,
                    summary.status,
                    rounds,
                    summary.triples,
                    summary.dropped_points,
                    _fmt(summary.mean_delta),
                    _fmt(summary.median_delta),
                    summary.skip_counts.get("dimension-mismatch", 0),
                    summary.skip_counts.get("no-stable-chunks", 0),
                ]
                + [_fmt(_did_mean(summary, kind)) for kind in FeatureSet.VECTOR_KINDS]
                + [ads.get("baseline", ""), ads.get("control", ""), ads.get("experimental", "")]
            )


def _cdf_figure(
    path: Path,
    series: list[tuple[str, Sequence[float]]],
    xlabel: str,
    title: str,
) -> Path:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    drawn = False
    for label, values in series:
        points = cdf_points(values)
        if not points:
            continue
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        ax.step([xs[0]] + xs, [0.0] + ys, where="post", label=f"{label} (n={len(values)})")
        drawn = True
    ax.set_xlabel(xlabel)
    ax.set_ylabel("cumulative fraction")
    ax.set_ylim(0, 1.02)
    ax.set_title(title)
    ax.grid(True, alpha=0.4)
    if drawn:
        ax.legend(loc="lower right", fontsize=8)
    else:
        ax.text(0.5, 0.5, "no data", ha="center", va="center", transform=ax.transAxes)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _scatter_figure(path: Path, points: list[tuple[float, float]], xlabel: str, ylabel: str, title: str) -> Path:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    if points:
        ax.scatter([p[0] for p in points], [p[1] for p in points], s=18, alpha=0.7)
    else:
        ax.text(0.5, 0.5, "no data", ha="center", va="center", transform=ax.transAxes)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.4)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def analyze_store(
    store_root: str | Path,
    out_dir: str | Path,
    ad_domains_path: str | Path | None = None,
    chunk_px: int = DEFAULT_CHUNK_PX,
) -> AnalysisResult:
    """Compute per-domain metrics for a whole store and write the report.

    Emits one summary row per domain, CDF tables for both metrics (the
    screenshot deltas also faceted by clickstream length), and rendered
    figures next to the tables.
    """
    store = CrawlStore(store_root)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    figures_dir = out / "figures"
    figures_dir.mkdir(exist_ok=True)
    ad_domains = load_ad_domains(ad_domains_path) if ad_domains_path else None

    result = AnalysisResult(out_dir=out)
    tallies = {
        "domains_total": 0,
        "with_triples": 0,
        "all_skipped": 0,
        "dropped_points": 0,
        "capture_failures": 0,
        "triples": 0,
    }
    for status in TerminationStatus:
        tallies[f"status_{status.value.replace('-', '_')}"] = 0

    summary_rows: list[tuple[DomainSummary, int, int]] = []
    domain_means: list[float] = []
    point_deltas: list[float] = []
    deltas_by_length: dict[int, list[float]] = {}
    dids_by_kind: dict[str, list[float]] = {kind: [] for kind in FeatureSet.VECTOR_KINDS}
    ad_scatter: list[tuple[float, float]] = []

    for record in store.iter_records():
        tallies["domains_total"] += 1
        tallies[f"status_{record.status.value.replace('-', '_')}"] += 1
        tallies["capture_failures"] += record.capture_failures
        summary = summarize_domain(record, ad_domains=ad_domains, chunk_px=chunk_px)
        result.summaries.append(summary)
        summary_rows.append((summary, record.rank, len(record.rounds)))
        tallies["dropped_points"] += summary.dropped_points
        tallies["triples"] += summary.triples
        if summary.triples:
            tallies["with_triples"] += 1
        if summary.all_skipped:
            tallies["all_skipped"] += 1
        lengths = {r.clickstream.id: len(r.clickstream.steps) for r in record.rounds}
        for step in summary.bce:
            if step.outcome.is_skip:
                continue
            delta = step.outcome.delta
            point_deltas.append(delta)
            length = lengths.get(step.clickstream_id)
            if length is not None:
                deltas_by_length.setdefault(length, []).append(delta)
        for value in summary.dids:
            dids_by_kind[value.feature_kind].append(value.value)
        if summary.mean_delta is not None:
            domain_means.append(summary.mean_delta)
            if summary.ad_request_counts is not None:
                ad_scatter.append((summary.ad_request_counts.get("baseline", 0), summary.mean_delta))

    summaries_path = out / "summaries.csv"
    _write_summaries(summaries_path, summary_rows)
    result.tables.append(summaries_path)

    result.tables.append(emit_cdf(domain_means, "domain mean delta", out / "bce_cdf_domains.csv"))
    result.tables.append(emit_cdf(point_deltas, "capture point delta", out / "bce_cdf_points.csv"))
    for length in sorted(deltas_by_length):
        result.tables.append(
            emit_cdf(
                deltas_by_length[length],
                f"capture point delta, length {length}",
                out / f"bce_cdf_points_len{length}.csv",
            )
        )
    for kind in FeatureSet.VECTOR_KINDS:
        result.tables.append(emit_cdf(dids_by_kind[kind], f"did {kind}", out / f"did_cdf_{kind}.csv"))

    bce_series: list[tuple[str, Sequence[float]]] = [("all points", point_deltas)]
    bce_series += [
        (f"length {length}", deltas_by_length[length]) for length in sorted(deltas_by_length)
    ]
    bce_series.append(("domain means", domain_means))
    result.figures.append(
        _cdf_figure(
            figures_dir / "bce_cdf.png",
            bce_series,
            "screenshot difference delta",
            "screenshot difference CDF",
        )
    )
    result.figures.append(
        _cdf_figure(
            figures_dir / "did_cdf.png",
            [(kind, dids_by_kind[kind]) for kind in FeatureSet.VECTOR_KINDS],
            "difference in distance",
            "feature DiD CDF",
        )
    )
    if ad_domains is not None:
        result.figures.append(
            _scatter_figure(
                figures_dir / "ads_vs_delta.png",
                ad_scatter,
                "ad requests (baseline group)",
                "mean screenshot delta",
                "ad load vs screenshot difference",
            )
        )

    result.tallies = tallies
    analysis_path = out / "analysis.json"
    with analysis_path.open("w", encoding="utf-8") as fh:
        json.dump(
            {
                "tallies": tallies,
                "tables": [str(p.relative_to(out)) for p in result.tables],
                "figures": [str(p.relative_to(out)) for p in result.figures],
                "chunk_px": chunk_px,
                "ad_domains": str(ad_domains_path) if ad_domains_path else None,
            },
            fh,
            indent=1,
            sort_keys=True,
        )
    result.tables.append(analysis_path)
    log.info(
        "analyzed %d domains (%d with triples) into %s",
        tallies["domains_total"],
        tallies["with_triples"],
        out,
    )
    return result
