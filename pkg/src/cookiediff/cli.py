"""Command line interface: crawl, analyze, and fixture-server subcommands."""

from __future__ import annotations

import argparse
import logging
import sys
import time

from .domains import DomainListError, load_domain_list
from .fixtures import FixtureConfig, FixtureServer
from .orchestrator import (
    DEFAULT_DOMAIN_TIMEOUT_S,
    DEFAULT_FEATURE_QUOTA,
    RunConfig,
    run_campaign,
)
from .clickstream import DEFAULT_CLICKSTREAM_LENGTH
from .features import DEFAULT_CHUNK_PX
from .reports import analyze_store
from .webdriver import Viewport

log = logging.getLogger(__name__)


def _viewport(text: str) -> Viewport:
    try:
        width, _, height = text.lower().partition("x")
        return Viewport(int(width), int(height))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected WIDTHxHEIGHT, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cookiediff",
        description=(
            "Measure whether blocking third-party cookies changes what a "
            "website shows, by replaying identical clickstreams under "
            "baseline, control, and experimental cookie policies."
        ),
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    crawl = sub.add_parser("crawl", help="run a crawl campaign against a domain list")
    crawl.add_argument("--domains", required=True, help="rank,domain CSV file")
    crawl.add_argument("--store", required=True, help="output store directory")
    crawl.add_argument(
        "--driver",
        action="append",
        default=None,
        help="WebDriver endpoint URL (repeat for several drivers)",
    )
    crawl.add_argument("--limit", type=int, default=None, help="crawl only the first N domains")
    crawl.add_argument(
        "--length", type=int, default=DEFAULT_CLICKSTREAM_LENGTH, help="clickstream length k"
    )
    crawl.add_argument(
        "--quota", type=int, default=DEFAULT_FEATURE_QUOTA, help="capture points per group"
    )
    crawl.add_argument(
        "--domain-timeout",
        type=float,
        default=DEFAULT_DOMAIN_TIMEOUT_S / 60.0,
        help="per-domain budget in minutes",
    )
    crawl.add_argument("--page-timeout", type=float, default=30.0, help="page load timeout seconds")
    crawl.add_argument("--settle", type=float, default=3.0, help="post-load settle seconds")
    crawl.add_argument("--viewport", type=_viewport, default=Viewport(), help="viewport WxH")
    crawl.add_argument("--seed", type=int, default=0, help="base sampling seed")
    crawl.add_argument("--workers", type=int, default=1, help="parallel crawler threads")
    crawl.add_argument("--chunk-px", type=int, default=DEFAULT_CHUNK_PX, help="shingle chunk size")
    crawl.add_argument("--no-resume", action="store_true", help="recrawl completed domains too")
    crawl.add_argument("--keep-profiles", action="store_true", help="keep browser profiles on disk")
    crawl.add_argument("--headful", action="store_true", help="run browsers with a window")

    analyze = sub.add_parser("analyze", help="compute metrics and render the report")
    analyze.add_argument("--store", required=True, help="store directory from a crawl")
    analyze.add_argument("--out", required=True, help="report output directory")
    analyze.add_argument("--ad-domains", default=None, help="advertisement domain list")
    analyze.add_argument("--chunk-px", type=int, default=DEFAULT_CHUNK_PX, help="shingle chunk size")

    fixtures = sub.add_parser("fixtures", help="serve the deterministic fixture sites")
    fixtures.add_argument("--primary-port", type=int, default=8801)
    fixtures.add_argument("--secondary-port", type=int, default=8802)
    fixtures.add_argument("--banner-fraction", type=float, default=0.3)
    fixtures.add_argument("--rotation-period", type=int, default=4)
    fixtures.add_argument("--slow-delay-ms", type=int, default=1500)
    return parser


def _cmd_crawl(args: argparse.Namespace) -> int:
    try:
        domain_list = load_domain_list(args.domains, limit=args.limit)
    except DomainListError as exc:
        log.error("%s", exc)
        return 2
    if not domain_list.domains:
        log.error("no usable domains in %s (%d malformed lines)", args.domains, domain_list.malformed)
        return 2
    config = RunConfig(
        clickstream_length=args.length,
        feature_quota=args.quota,
        domain_timeout_s=args.domain_timeout * 60.0,
        page_timeout_s=args.page_timeout,
        settle_s=args.settle,
        viewport=args.viewport,
        seed=args.seed,
        chunk_px=args.chunk_px,
        headless=not args.headful,
        keep_profiles=args.keep_profiles,
    )
    endpoints = args.driver or ["http://127.0.0.1:4444"]
    result = run_campaign(
        domain_list,
        endpoints,
        args.store,
        config,
        workers=args.workers,
        resume=not args.no_resume,
    )
    log.info(
        "campaign done: %d attempted, %d skipped, statuses %s, %d malformed lines",
        result.attempted,
        result.skipped,
        result.status_counts,
        result.malformed_lines,
    )
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    result = analyze_store(args.store, args.out, ad_domains_path=args.ad_domains, chunk_px=args.chunk_px)
    for path in result.tables + result.figures:
        log.info("wrote %s", path)
    return 0


def _cmd_fixtures(args: argparse.Namespace) -> int:
    config = FixtureConfig(
        banner_fraction=args.banner_fraction,
        rotation_period=args.rotation_period,
        slow_delay_ms=args.slow_delay_ms,
    )
    server = FixtureServer(config, primary_port=args.primary_port, secondary_port=args.secondary_port)
    server.start()
    for host, address in sorted(server.host_map().items()):
        print(f"{host} -> {address}")
    print("serving; interrupt to stop", flush=True)
    try:
        while True:
            time.sleep(3600)
    except KeyboardInterrupt:
        pass
    finally:
        server.stop()
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    if args.command == "crawl":
        return _cmd_crawl(args)
    if args.command == "analyze":
        return _cmd_analyze(args)
    if args.command == "fixtures":
        return _cmd_fixtures(args)
    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
