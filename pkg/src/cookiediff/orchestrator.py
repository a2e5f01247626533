"""Campaign orchestration: rounds of interleaved group crawls per domain.

Every round, the baseline group generates a fresh clickstream which the
control and experimental groups then replay, each group in its own
browser profile. Rounds repeat until every group has met its capture
quota or the per-domain time budget runs out.
"""

from __future__ import annotations

import contextlib
import hashlib
import logging
import shutil
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from random import Random
from typing import Iterator

from .clickstream import (
    DEFAULT_CLICKSTREAM_LENGTH,
    Clickstream,
    StepStatus,
    generate_clickstream,
    traverse_clickstream,
)
from .domains import ApexDomain, DomainList, resolve_domain
from .features import CaptureError, capture_feature_set
from .page import Page
from .storage import (
    CaptureRecord,
    CrawlGroup,
    CrawlStore,
    DomainRecord,
    GroupRun,
    RoundRecord,
    TerminationStatus,
)
from .webdriver import CookiePolicy, LoadStatus, Viewport, WebDriverClient, WebDriverError

log = logging.getLogger(__name__)

DEFAULT_FEATURE_QUOTA = 50
DEFAULT_DOMAIN_TIMEOUT_S = 3600.0

_GROUP_POLICIES = {
    CrawlGroup.BASELINE: CookiePolicy.ALLOW_ALL,
    CrawlGroup.CONTROL: CookiePolicy.ALLOW_ALL,
    CrawlGroup.EXPERIMENTAL: CookiePolicy.BLOCK_THIRD_PARTY,
}


@dataclass
class RunConfig:
    clickstream_length: int = DEFAULT_CLICKSTREAM_LENGTH
    feature_quota: int = DEFAULT_FEATURE_QUOTA
    domain_timeout_s: float = DEFAULT_DOMAIN_TIMEOUT_S
    page_timeout_s: float = 30.0
    script_timeout_s: float = 30.0
    settle_s: float = 3.0
    viewport: Viewport = field(default_factory=Viewport)
    seed: int = 0
    chunk_px: int = 40
    headless: bool = True
    keep_profiles: bool = False

    def __post_init__(self) -> None:
        if self.clickstream_length < 0:
            raise ValueError("clickstream length cannot be negative")
        if self.feature_quota < 1:
            raise ValueError("feature quota must be at least 1")
        if self.domain_timeout_s <= 0 or self.page_timeout_s <= 0:
            raise ValueError("timeouts must be positive")


def derive_seed(base: int, domain: str, round_index: int) -> int:
    """Stable per-(domain, round) seed, independent of process hashing."""
    digest = hashlib.sha256(f"{base}:{domain}:{round_index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


@contextlib.contextmanager
def _open_page(
    client: WebDriverClient,
    config: RunConfig,
    policy: CookiePolicy,
    profile_dir: Path | None,
) -> Iterator[Page]:
    session = client.open_session(
        policy,
        viewport=config.viewport,
        profile_dir=profile_dir,
        page_timeout_s=config.page_timeout_s,
        script_timeout_s=config.script_timeout_s,
        headless=config.headless,
    )
    page = Page(session, settle_s=config.settle_s, ready_timeout_s=config.page_timeout_s)
    try:
        yield page
    finally:
        page.close()


def _run_round(
    apex: ApexDomain,
    landing_url: str,
    round_index: int,
    client: WebDriverClient,
    config: RunConfig,
    profiles: dict[CrawlGroup, Path],
    record: DomainRecord,
    deadline: float,
) -> RoundRecord:
    seed = derive_seed(config.seed, apex.name, round_index)
    stream: Clickstream | None = None
    round_record = RoundRecord(
        index=round_index,
        clickstream=Clickstream(domain=apex.name, target_length=config.clickstream_length, seed=seed),
    )
    round_record.clickstream.id = f"{apex.name}-r{round_index:03d}"
    for group in CrawlGroup:
        if time.monotonic() > deadline:
            break
        if group is not CrawlGroup.BASELINE and stream is None:
            break
        run = GroupRun(group=group, started_at=time.time())
        with _open_page(client, config, _GROUP_POLICIES[group], profiles[group]) as page:
            captures: list[CaptureRecord] = []

            def capture_hook(step_index: int) -> None:
                try:
                    features = capture_feature_set(page, step_index, config.chunk_px)
                except CaptureError as exc:
                    log.warning("%s %s round %d: %s", apex.name, group.value, round_index, exc)
                    record.capture_failures += 1
                    return
                captures.append(CaptureRecord.from_feature_set(features))

            nav = page.navigate(landing_url)
            if nav.status is not LoadStatus.COMPLETE:
                run.nav_status = f"{nav.status.value}: {nav.message}" if nav.message else nav.status.value
                run.finished_at = time.time()
                round_record.groups[group] = run
                log.info(
                    "%s %s round %d: navigation %s", apex.name, group.value, round_index, run.nav_status
                )
                continue
            if group is CrawlGroup.BASELINE:
                result = generate_clickstream(
                    page, apex.name, config.clickstream_length, Random(seed), capture_hook, seed=seed
                )
                stream = result.clickstream
                stream.id = round_record.clickstream.id
                round_record.clickstream = stream
                run.page_urls = result.page_urls
            else:
                run.outcomes = traverse_clickstream(page, stream, capture_hook)
                urls = [nav.url]
                urls.extend(o.landed_url for o in run.outcomes if o.status is StepStatus.CLICKED)
                run.page_urls = urls
            run.captures = captures
            run.finished_at = time.time()
        round_record.groups[group] = run
    return round_record


def run_domain(
    apex: ApexDomain,
    client: WebDriverClient,
    store: CrawlStore,
    config: RunConfig,
) -> DomainRecord:
    """Crawl one domain to quota, timeout, or failure; persist as we go."""
    record = DomainRecord(domain=apex.name, rank=apex.rank, started_at=time.time())
    deadline = time.monotonic() + config.domain_timeout_s
    profiles_root = store.domain_dir(apex.name) / "profiles"
    profiles = {group: profiles_root / group.value for group in CrawlGroup}
    for path in profiles.values():
        path.mkdir(parents=True, exist_ok=True)

    try:
        record.resolution = resolve_domain(
            apex, lambda: _open_page(client, config, CookiePolicy.ALLOW_ALL, None)
        )
        if not record.resolution.succeeded:
            record.status = TerminationStatus.RESOLUTION_FAILED
        else:
            landing_url = record.resolution.url
            assert landing_url is not None
            round_index = 0
            while True:
                counts = record.capture_counts()
                if min(counts.values()) >= config.feature_quota:
                    record.status = TerminationStatus.COMPLETE
                    break
                if time.monotonic() > deadline:
                    record.status = TerminationStatus.TIMEOUT
                    break
                try:
                    round_record = _run_round(
                        apex, landing_url, round_index, client, config, profiles, record, deadline
                    )
                except WebDriverError as exc:
                    log.warning("%s round %d failed (%s); retrying once", apex.name, round_index, exc)
                    try:
                        round_record = _run_round(
                            apex, landing_url, round_index, client, config, profiles, record, deadline
                        )
                    except WebDriverError as retry_exc:
                        log.error("%s round %d failed twice: %s", apex.name, round_index, retry_exc)
                        record.notes.append(f"round {round_index}: {retry_exc}")
                        record.status = TerminationStatus.CRASHED
                        break
                record.rounds.append(round_record)
                store.save_round(apex.name, round_record)
                store.save_record(record)
                round_index += 1
    finally:
        record.finished_at = time.time()
        if record.status is TerminationStatus.IN_PROGRESS:
            record.status = TerminationStatus.CRASHED
        store.save_record(record)
        if not config.keep_profiles:
            shutil.rmtree(profiles_root, ignore_errors=True)
    log.info(
        "%s finished: %s (%d rounds, counts %s)",
        apex.name,
        record.status.value,
        len(record.rounds),
        {g.value: n for g, n in record.capture_counts().items()},
    )
    return record


@dataclass
class CampaignResult:
    store_root: Path
    attempted: int = 0
    skipped: int = 0
    malformed_lines: int = 0
    status_counts: dict[str, int] = field(default_factory=dict)


def run_campaign(
    domains: DomainList | list[ApexDomain],
    endpoints: list[str],
    store_root: str | Path,
    config: RunConfig | None = None,
    workers: int = 1,
    resume: bool = True,
) -> CampaignResult:
    """Crawl a domain list across one or more driver endpoints."""
    config = config or RunConfig()
    if not endpoints:
        raise ValueError("at least one driver endpoint is required")
    if isinstance(domains, DomainList):
        apexes = domains.domains
        malformed = domains.malformed
    else:
        apexes = list(domains)
        malformed = 0
    store = CrawlStore(store_root)
    store.write_manifest(
        {
            "tool": "cookiediff",
            "config": {
                "clickstream_length": config.clickstream_length,
                "feature_quota": config.feature_quota,
                "domain_timeout_s": config.domain_timeout_s,
                "page_timeout_s": config.page_timeout_s,
                "settle_s": config.settle_s,
                "viewport": [config.viewport.width, config.viewport.height],
                "seed": config.seed,
                "chunk_px": config.chunk_px,
                "retry_policy": "one retry per failed round",
            },
            "endpoints": list(endpoints),
            "domain_count": len(apexes),
            "malformed_lines": malformed,
        }
    )
    result = CampaignResult(store_root=store.root, malformed_lines=malformed)

    todo: list[ApexDomain] = []
    for apex in apexes:
        if resume and store.record_status(apex.name) is TerminationStatus.COMPLETE:
            log.info("skipping %s: already complete", apex.name)
            result.skipped += 1
            continue
        todo.append(apex)

    lock = threading.Lock()

    def worker(worker_index: int, batch: list[ApexDomain]) -> None:
        client = WebDriverClient(endpoints[worker_index % len(endpoints)])
        for apex in batch:
            try:
                record = run_domain(apex, client, store, config)
                status = record.status.value
            except Exception:
                log.exception("domain %s crashed outside round handling", apex.name)
                if store.record_status(apex.name) is None:
                    store.save_record(
                        DomainRecord(
                            domain=apex.name,
                            rank=apex.rank,
                            status=TerminationStatus.CRASHED,
                            started_at=time.time(),
                            finished_at=time.time(),
                        )
                    )
                status = TerminationStatus.CRASHED.value
            with lock:
                result.attempted += 1
                result.status_counts[status] = result.status_counts.get(status, 0) + 1

    worker_count = max(1, min(workers, len(todo) or 1))
    batches: list[list[ApexDomain]] = [[] for _ in range(worker_count)]
    for i, apex in enumerate(todo):
        batches[i % worker_count].append(apex)
    threads = [
        threading.Thread(target=worker, args=(i, batch), name=f"crawler-{i}")
        for i, batch in enumerate(batches)
        if batch
    ]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()
    return result
