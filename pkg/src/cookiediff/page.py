"""High-level page facade: one browser session plus the injected scripts."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Any

from PIL import Image

from .clickstream import ClickRejected, SelectorNotFound
from .scripts import load_script
from .webdriver import (
    BrowserSession,
    LoadOutcome,
    LoadStatus,
    NoSuchElementError,
    NotInteractableError,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClickableDescriptor:
    selector: str
    kind: str
    visible: bool = True


class Page:
    """Wraps a session with navigation settling and instrumentation calls."""

    def __init__(
        self,
        session: BrowserSession,
        settle_s: float = 3.0,
        ready_timeout_s: float = 30.0,
    ) -> None:
        self.session = session
        self.settle_s = settle_s
        self.ready_timeout_s = ready_timeout_s

    def navigate(self, url: str) -> LoadOutcome:
        outcome = self.session.navigate(url)
        if outcome.status is LoadStatus.COMPLETE:
            self.session.wait_ready(self.ready_timeout_s)
            if self.settle_s > 0:
                time.sleep(self.settle_s)
        return outcome

    def settle(self) -> None:
        self.session.wait_ready(self.ready_timeout_s)
        if self.settle_s > 0:
            time.sleep(self.settle_s)

    def current_url(self) -> str:
        return self.session.current_url()

    def evaluate(self, script: str, args: list | None = None) -> Any:
        return self.session.evaluate(script, args)

    def _run(self, name: str, args: list | None = None) -> Any:
        return self.session.evaluate(load_script(name), args)

    def enumerate_clickables(self) -> list[ClickableDescriptor]:
        raw = self._run("enumerate_clickables") or []
        out = []
        for item in raw:
            if not isinstance(item, dict):
                continue
            selector = item.get("selector")
            kind = item.get("kind")
            if not selector or not kind:
                continue
            out.append(
                ClickableDescriptor(
                    selector=str(selector),
                    kind=str(kind),
                    visible=bool(item.get("visible", True)),
                )
            )
        return out

    def resolve_selector(self, selector: str) -> tuple[bool, bool]:
        raw = self._run("resolve_selector", [selector]) or {}
        return bool(raw.get("found")), bool(raw.get("visible"))

    def click_css(self, selector: str) -> None:
        try:
            self.session.click_css(selector)
        except NoSuchElementError as exc:
            raise SelectorNotFound(str(exc)) from exc
        except NotInteractableError as exc:
            raise ClickRejected(str(exc)) from exc

    def scroll_top(self) -> None:
        offset = self._run("scroll_top")
        if offset:
            log.debug("scroll offset %s after reset", offset)

    def screenshot(self) -> Image.Image:
        return self.session.screenshot()

    def extract_text(self) -> str:
        return str(self._run("extract_text") or "")

    def extract_image_sources(self) -> list[str]:
        return [str(v) for v in (self._run("extract_image_sources") or [])]

    def extract_link_targets(self) -> list[str]:
        return [str(v) for v in (self._run("extract_link_targets") or [])]

    def extract_resource_urls(self) -> list[str]:
        return [str(v) for v in (self._run("extract_resource_urls") or [])]

    def page_state(self) -> dict:
        raw = self._run("page_state")
        return raw if isinstance(raw, dict) else {}

    def window_handles(self) -> list[str]:
        return self.session.window_handles()

    def current_window(self) -> str:
        return self.session.current_window()

    def switch_window(self, handle: str) -> None:
        self.session.switch_window(handle)

    def close_window(self) -> None:
        self.session.close_window()

    def close(self) -> None:
        self.session.close()

    def __enter__(self) -> "Page":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()
