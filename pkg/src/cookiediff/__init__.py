"""cookiediff: does blocking third-party cookies change what a website shows?

Crawls each domain under three browser conditions (baseline and control
with all cookies allowed, experimental with third-party cookies blocked),
replays identical clickstreams in all three, and scores the divergence of
screenshots and page content between the groups.
"""

from .analysis import (
    BceOutcome,
    BceSkipReason,
    bce_from_chunks,
    bce_screenshot_difference,
    did,
    jaccard_distance,
    pair_capture_points,
    summarize_domain,
)
from .clickstream import (
    ClickableRef,
    Clickstream,
    StepOutcome,
    StepStatus,
    generate_clickstream,
    traverse_clickstream,
)
from .domains import ApexDomain, ResolvedTarget, load_domain_list, resolve_domain, same_site
from .features import (
    DEFAULT_CHUNK_PX,
    FeatureSet,
    FrequencyVector,
    capture_feature_set,
    shingle_image,
)
from .orchestrator import RunConfig, run_campaign, run_domain
from .reports import analyze_store
from .storage import CrawlGroup, CrawlStore, DomainRecord, TerminationStatus
from .webdriver import BrowserSession, CookiePolicy, Viewport, WebDriverClient

__version__ = "0.1.0"

__all__ = [
    "ApexDomain",
    "BceOutcome",
    "BceSkipReason",
    "BrowserSession",
    "ClickableRef",
    "Clickstream",
    "CookiePolicy",
    "CrawlGroup",
    "CrawlStore",
    "DEFAULT_CHUNK_PX",
    "DomainRecord",
    "FeatureSet",
    "FrequencyVector",
    "ResolvedTarget",
    "RunConfig",
    "StepOutcome",
    "StepStatus",
    "TerminationStatus",
    "Viewport",
    "WebDriverClient",
    "analyze_store",
    "bce_from_chunks",
    "bce_screenshot_difference",
    "capture_feature_set",
    "did",
    "generate_clickstream",
    "jaccard_distance",
    "load_domain_list",
    "pair_capture_points",
    "resolve_domain",
    "run_campaign",
    "run_domain",
    "same_site",
    "shingle_image",
    "summarize_domain",
    "traverse_clickstream",
]
