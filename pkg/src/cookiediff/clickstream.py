"""Clickstream generation by uniform random sampling, and step-by-step replay."""

from __future__ import annotations

import logging
import uuid
from dataclasses import dataclass, field
from enum import Enum
from random import Random
from typing import Callable, Protocol

from .domains import same_site

log = logging.getLogger(__name__)

DEFAULT_CLICKSTREAM_LENGTH = 5


class ClickableKind(str, Enum):
    BUTTON = "button"
    LINK = "link"
    ONCLICK = "onclick"
    POINTER = "pointer"


@dataclass(frozen=True)
class ClickableRef:
    """A persisted clickable: the unique selector to replay plus its kind."""

    selector: str
    kind: str


@dataclass
class Clickstream:
    """An ordered sequence of clickables, replayed identically across groups."""

    domain: str
    steps: list[ClickableRef] = field(default_factory=list)
    target_length: int = DEFAULT_CLICKSTREAM_LENGTH
    seed: int | None = None
    id: str = field(default_factory=lambda: uuid.uuid4().hex[:12])

    def __len__(self) -> int:
        return len(self.steps)


class StepStatus(str, Enum):
    CLICKED = "clicked"
    SELECTOR_UNRESOLVED = "selector-unresolved"
    CLICK_FAILED = "click-failed"
    OFF_DOMAIN = "off-domain"


@dataclass(frozen=True)
class StepOutcome:
    index: int
    status: StepStatus
    landed_url: str = ""


class ClickTransportError(Exception):
    """Base for click-dispatch failures reported by the browser."""


class SelectorNotFound(ClickTransportError):
    pass


class ClickRejected(ClickTransportError):
    """Click dispatched but refused: not interactable, intercepted, or stale."""


class PageSurface(Protocol):
    """What generation and traversal need from a live page."""

    def enumerate_clickables(self) -> list:
        ...

    def resolve_selector(self, selector: str) -> tuple[bool, bool]:
        ...

    def click_css(self, selector: str) -> None:
        ...

    def settle(self) -> None:
        ...

    def current_url(self) -> str:
        ...

    def window_handles(self) -> list[str]:
        ...

    def current_window(self) -> str:
        ...

    def switch_window(self, handle: str) -> None:
        ...

    def close_window(self) -> None:
        ...


CaptureHook = Callable[[int], None]


def _is_error_page(url: str) -> bool:
    return url.startswith(("about:", "chrome:", "data:", "moz-extension:"))


def _reconcile_tabs(page: PageSurface, apex_name: str) -> str | None:
    """Apply the one-logical-page tab policy after a click.

    A new same-site tab becomes the page (the old one closes); off-site
    tabs are closed. Returns the URL of an off-site tab when that is all
    the click produced, else None.
    """
    handles = page.window_handles()
    if len(handles) <= 1:
        return None
    origin = page.current_window()
    adopted = None
    off_site_url = None
    for handle in handles:
        if handle == origin:
            continue
        page.switch_window(handle)
        url = page.current_url()
        if adopted is None and same_site(url, apex_name) and not _is_error_page(url):
            adopted = handle
        else:
            off_site_url = off_site_url or url
            page.close_window()
    if adopted is not None:
        page.switch_window(origin)
        page.close_window()
        page.switch_window(adopted)
        return None
    page.switch_window(origin)
    return off_site_url


def attempt_click(page: PageSurface, ref: ClickableRef, apex_name: str, index: int = 0) -> StepOutcome:
    """Resolve, click, settle, and classify where the click left us."""
    found, _visible = page.resolve_selector(ref.selector)
    if not found:
        return StepOutcome(index, StepStatus.SELECTOR_UNRESOLVED, page.current_url())
    try:
        page.click_css(ref.selector)
    except SelectorNotFound:
        return StepOutcome(index, StepStatus.SELECTOR_UNRESOLVED, page.current_url())
    except ClickRejected:
        return StepOutcome(index, StepStatus.CLICK_FAILED, page.current_url())
    page.settle()
    popup_url = _reconcile_tabs(page, apex_name)
    if popup_url is not None:
        return StepOutcome(index, StepStatus.OFF_DOMAIN, popup_url)
    url = page.current_url()
    if _is_error_page(url) or not same_site(url, apex_name):
        return StepOutcome(index, StepStatus.OFF_DOMAIN, url)
    return StepOutcome(index, StepStatus.CLICKED, url)


@dataclass
class GenerationResult:
    clickstream: Clickstream
    page_urls: list[str]


def generate_clickstream(
    page: PageSurface,
    apex_name: str,
    k: int,
    rng: Random,
    capture: CaptureHook | None = None,
    seed: int | None = None,
) -> GenerationResult:
    """Build a clickstream of up to k steps by uniform random clicking.

    The caller has already navigated to the landing page. At each step the
    current clickables are enumerated and sampled uniformly without
    replacement until one click succeeds; that clickable is appended and
    captured. The stream ends early when the clickable set is exhausted or
    a click navigates off the crawl domain.
    """
    stream = Clickstream(domain=apex_name, target_length=k, seed=seed)
    page_urls = [page.current_url()]
    if capture is not None:
        capture(0)
    while len(stream.steps) < k:
        descriptors = [d for d in page.enumerate_clickables()]
        if not descriptors:
            log.debug("%s: clickable set empty at step %d", apex_name, len(stream.steps))
            break
        order = list(range(len(descriptors)))
        rng.shuffle(order)
        chosen: ClickableRef | None = None
        left_domain = False
        for pick in order:
            descriptor = descriptors[pick]
            ref = ClickableRef(selector=descriptor.selector, kind=descriptor.kind)
            outcome = attempt_click(page, ref, apex_name, index=len(stream.steps))
            if outcome.status is StepStatus.CLICKED:
                chosen = ref
                break
            if outcome.status is StepStatus.OFF_DOMAIN:
                left_domain = True
                break
        if chosen is None:
            if left_domain:
                log.debug("%s: navigation left the domain at step %d", apex_name, len(stream.steps))
            break
        stream.steps.append(chosen)
        page_urls.append(page.current_url())
        if capture is not None:
            capture(len(stream.steps))
    return GenerationResult(clickstream=stream, page_urls=page_urls)


def traverse_clickstream(
    page: PageSurface,
    clickstream: Clickstream,
    capture: CaptureHook | None = None,
) -> list[StepOutcome]:
    """Replay a saved clickstream, halting at the first failed step.

    The caller has freshly navigated to the landing page; the landing is
    captured first, then each successfully clicked step.
    """
    if capture is not None:
        capture(0)
    outcomes: list[StepOutcome] = []
    for index, ref in enumerate(clickstream.steps):
        outcome = attempt_click(page, ref, clickstream.domain, index=index)
        outcomes.append(outcome)
        if outcome.status is not StepStatus.CLICKED:
            break
        if capture is not None:
            capture(index + 1)
    return outcomes
