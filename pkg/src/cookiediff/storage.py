"""On-disk crawl store: JSON records plus PNG screenshots, one tree per run.

Layout, chosen for inspectability over compactness:

    <root>/manifest.json
    <root>/domains/<name>/record.json
    <root>/domains/<name>/rounds/<idx>/clickstream.json
    <root>/domains/<name>/rounds/<idx>/<group>/captures.json
    <root>/domains/<name>/rounds/<idx>/<group>/outcomes.json
    <root>/domains/<name>/rounds/<idx>/<group>/step_<i>.png
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
import time
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterator

from PIL import Image

from .clickstream import ClickableRef, Clickstream, StepOutcome, StepStatus
from .domains import ApexDomain, AttemptRecord, ResolvedTarget, ResolveFailure
from .features import FeatureSet, FrequencyVector

log = logging.getLogger(__name__)


class CrawlGroup(str, Enum):
    BASELINE = "baseline"
    CONTROL = "control"
    EXPERIMENTAL = "experimental"


class TerminationStatus(str, Enum):
    COMPLETE = "complete"
    TIMEOUT = "timeout"
    RESOLUTION_FAILED = "resolution-failed"
    CRASHED = "crashed"
    IN_PROGRESS = "in-progress"


@dataclass
class CaptureRecord:
    """One persisted capture point: feature vectors plus the screenshot path."""

    step_index: int
    vectors: dict[str, FrequencyVector]
    resource_urls: list[str] = field(default_factory=list)
    screenshot_path: Path | None = None
    page_url: str = ""
    captured_at: float = 0.0
    image: Image.Image | None = None  # in-memory only, dropped on save

    @classmethod
    def from_feature_set(cls, features: FeatureSet) -> "CaptureRecord":
        return cls(
            step_index=features.step_index,
            vectors={kind: features.vector(kind) for kind in FeatureSet.VECTOR_KINDS},
            resource_urls=list(features.resource_urls),
            page_url=features.page_url,
            captured_at=features.captured_at,
            image=features.screenshot,
        )

    def load_screenshot(self) -> Image.Image | None:
        if self.image is not None:
            return self.image
        if self.screenshot_path is None:
            return None
        try:
            with Image.open(self.screenshot_path) as img:
                return img.convert("RGBA")
        except OSError as exc:
            log.warning("unreadable screenshot %s: %s", self.screenshot_path, exc)
            return None


@dataclass
class GroupRun:
    """One group's pass over one round's clickstream."""

    group: CrawlGroup
    nav_status: str = "complete"
    outcomes: list[StepOutcome] = field(default_factory=list)
    captures: list[CaptureRecord] = field(default_factory=list)
    page_urls: list[str] = field(default_factory=list)
    started_at: float = 0.0
    finished_at: float = 0.0


@dataclass
class RoundRecord:
    index: int
    clickstream: Clickstream
    groups: dict[CrawlGroup, GroupRun] = field(default_factory=dict)


@dataclass
class DomainRecord:
    domain: str
    rank: int = 0
    resolution: ResolvedTarget | None = None
    rounds: list[RoundRecord] = field(default_factory=list)
    status: TerminationStatus = TerminationStatus.IN_PROGRESS
    started_at: float = 0.0
    finished_at: float | None = None
    capture_failures: int = 0
    notes: list[str] = field(default_factory=list)

    def capture_counts(self) -> dict[CrawlGroup, int]:
        counts = {group: 0 for group in CrawlGroup}
        for round_ in self.rounds:
            for group, run in round_.groups.items():
                counts[group] += len(run.captures)
        return counts


def _write_json(path: Path, payload: object) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _read_json(path: Path) -> object:
    with path.open(encoding="utf-8") as fh:
        return json.load(fh)


def _clickstream_to_json(stream: Clickstream) -> dict:
    return {
        "domain": stream.domain,
        "id": stream.id,
        "seed": stream.seed,
        "target_length": stream.target_length,
        "steps": [{"selector": s.selector, "kind": s.kind} for s in stream.steps],
    }


def _clickstream_from_json(raw: dict) -> Clickstream:
    return Clickstream(
        domain=raw["domain"],
        id=raw["id"],
        seed=raw.get("seed"),
        target_length=raw.get("target_length", 0),
        steps=[ClickableRef(selector=s["selector"], kind=s["kind"]) for s in raw.get("steps", [])],
    )


def _capture_to_json(capture: CaptureRecord, root: Path) -> dict:
    rel = None
    if capture.screenshot_path is not None:
        try:
            rel = str(capture.screenshot_path.relative_to(root))
        except ValueError:
            rel = str(capture.screenshot_path)
    return {
        "step_index": capture.step_index,
        "page_url": capture.page_url,
        "captured_at": capture.captured_at,
        "resource_urls": list(capture.resource_urls),
        "screenshot": rel,
        "vectors": {kind: vec.to_dict() for kind, vec in capture.vectors.items()},
    }


def _capture_from_json(raw: dict, root: Path) -> CaptureRecord:
    shot = raw.get("screenshot")
    return CaptureRecord(
        step_index=int(raw["step_index"]),
        vectors={kind: FrequencyVector(counts) for kind, counts in raw.get("vectors", {}).items()},
        resource_urls=[str(u) for u in raw.get("resource_urls", [])],
        screenshot_path=(root / shot) if shot else None,
        page_url=raw.get("page_url", ""),
        captured_at=float(raw.get("captured_at", 0.0)),
    )


def _outcomes_to_json(run: GroupRun) -> dict:
    return {
        "group": run.group.value,
        "nav_status": run.nav_status,
        "started_at": run.started_at,
        "finished_at": run.finished_at,
        "page_urls": list(run.page_urls),
        "outcomes": [
            {"index": o.index, "status": o.status.value, "landed_url": o.landed_url}
            for o in run.outcomes
        ],
    }


def _resolution_to_json(res: ResolvedTarget) -> dict:
    return {
        "rank": res.apex.rank,
        "name": res.apex.name,
        "url": res.url,
        "failure_reason": res.failure_reason.value if res.failure_reason else None,
        "attempts": [
            {"url": a.url, "ok": a.ok, "reason": a.reason.value if a.reason else None}
            for a in res.attempts
        ],
    }


def _resolution_from_json(raw: dict) -> ResolvedTarget:
    return ResolvedTarget(
        apex=ApexDomain(rank=int(raw["rank"]), name=raw["name"]),
        url=raw.get("url"),
        failure_reason=ResolveFailure(raw["failure_reason"]) if raw.get("failure_reason") else None,
        attempts=[
            AttemptRecord(
                url=a["url"],
                ok=bool(a["ok"]),
                reason=ResolveFailure(a["reason"]) if a.get("reason") else None,
            )
            for a in raw.get("attempts", [])
        ],
    )


class CrawlStore:
    """Filesystem-backed store for one crawl campaign."""

    def __init__(self, root: str | Path) -> None:
        self.root = Path(root)
        self.domains_dir = self.root / "domains"
        self.domains_dir.mkdir(parents=True, exist_ok=True)

    # manifest

    @property
    def manifest_path(self) -> Path:
        return self.root / "manifest.json"

    def write_manifest(self, manifest: dict) -> None:
        payload = dict(manifest)
        payload.setdefault("written_at", time.time())
        _write_json(self.manifest_path, payload)

    def read_manifest(self) -> dict | None:
        if not self.manifest_path.exists():
            return None
        raw = _read_json(self.manifest_path)
        return raw if isinstance(raw, dict) else None

    # paths

    def domain_dir(self, name: str) -> Path:
        return self.domains_dir / name

    def _round_dir(self, name: str, index: int) -> Path:
        return self.domain_dir(name) / "rounds" / f"{index:03d}"

    def domain_names(self) -> list[str]:
        if not self.domains_dir.exists():
            return []
        return sorted(p.name for p in self.domains_dir.iterdir() if p.is_dir())

    # writing

    def record_status(self, name: str) -> TerminationStatus | None:
        path = self.domain_dir(name) / "record.json"
        if not path.exists():
            return None
        try:
            raw = _read_json(path)
            return TerminationStatus(raw["status"])
        except (OSError, ValueError, KeyError) as exc:
            log.warning("unreadable record for %s: %s", name, exc)
            return None

    def save_round(self, domain: str, round_record: RoundRecord) -> None:
        round_dir = self._round_dir(domain, round_record.index)
        _write_json(round_dir / "clickstream.json", _clickstream_to_json(round_record.clickstream))
        for group, run in round_record.groups.items():
            group_dir = round_dir / group.value
            group_dir.mkdir(parents=True, exist_ok=True)
            for capture in run.captures:
                if capture.image is not None:
                    png_path = group_dir / f"step_{capture.step_index:03d}.png"
                    capture.image.save(png_path, format="PNG")
                    capture.screenshot_path = png_path
                    capture.image = None
            _write_json(
                group_dir / "captures.json",
                [_capture_to_json(c, self.root) for c in run.captures],
            )
            _write_json(group_dir / "outcomes.json", _outcomes_to_json(run))

    def save_record(self, record: DomainRecord) -> None:
        payload = {
            "domain": record.domain,
            "rank": record.rank,
            "status": record.status.value,
            "started_at": record.started_at,
            "finished_at": record.finished_at,
            "capture_failures": record.capture_failures,
            "notes": list(record.notes),
            "resolution": _resolution_to_json(record.resolution) if record.resolution else None,
            "rounds": [r.index for r in record.rounds],
        }
        _write_json(self.domain_dir(record.domain) / "record.json", payload)

    # loading

    def _load_group_run(self, group_dir: Path, group: CrawlGroup) -> GroupRun | None:
        captures_path = group_dir / "captures.json"
        outcomes_path = group_dir / "outcomes.json"
        if not captures_path.exists() and not outcomes_path.exists():
            return None
        run = GroupRun(group=group)
        if captures_path.exists():
            raw = _read_json(captures_path)
            run.captures = [_capture_from_json(c, self.root) for c in raw]
        if outcomes_path.exists():
            raw = _read_json(outcomes_path)
            run.nav_status = raw.get("nav_status", "complete")
            run.page_urls = [str(u) for u in raw.get("page_urls", [])]
            run.started_at = float(raw.get("started_at", 0.0))
            run.finished_at = float(raw.get("finished_at", 0.0))
            run.outcomes = [
                StepOutcome(
                    index=int(o["index"]),
                    status=StepStatus(o["status"]),
                    landed_url=o.get("landed_url", ""),
                )
                for o in raw.get("outcomes", [])
            ]
        return run

    def load_record(self, name: str) -> DomainRecord:
        path = self.domain_dir(name) / "record.json"
        raw = _read_json(path)
        record = DomainRecord(
            domain=raw["domain"],
            rank=int(raw.get("rank", 0)),
            status=TerminationStatus(raw["status"]),
            started_at=float(raw.get("started_at", 0.0)),
            finished_at=raw.get("finished_at"),
            capture_failures=int(raw.get("capture_failures", 0)),
            notes=[str(n) for n in raw.get("notes", [])],
            resolution=_resolution_from_json(raw["resolution"]) if raw.get("resolution") else None,
        )
        for index in raw.get("rounds", []):
            round_dir = self._round_dir(name, int(index))
            stream_path = round_dir / "clickstream.json"
            if not stream_path.exists():
                log.warning("round %s of %s has no clickstream file", index, name)
                continue
            round_record = RoundRecord(
                index=int(index),
                clickstream=_clickstream_from_json(_read_json(stream_path)),
            )
            for group in CrawlGroup:
                run = self._load_group_run(round_dir / group.value, group)
                if run is not None:
                    round_record.groups[group] = run
            record.rounds.append(round_record)
        return record

    def iter_records(self) -> Iterator[DomainRecord]:
        for name in self.domain_names():
            try:
                yield self.load_record(name)
            except (OSError, ValueError, KeyError) as exc:
                log.warning("skipping unreadable domain %s: %s", name, exc)
