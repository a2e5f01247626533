"""Minimal client for the WebDriver wire protocol over HTTP/JSON.

Speaks to any conformant remote end (geckodriver in production, the
bundled deterministic test driver in the hermetic suite). Only the
handful of endpoints this tool needs are implemented.
"""

from __future__ import annotations

import base64
import io
import logging
import time
import uuid
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any

import requests
from PIL import Image

log = logging.getLogger(__name__)

DEFAULT_VIEWPORT_WIDTH = 1366
DEFAULT_VIEWPORT_HEIGHT = 768

_ELEMENT_KEY = "element-6066-11e4-a52e-4f735466cecf"


class CookiePolicy(str, Enum):
    ALLOW_ALL = "allow-all"
    BLOCK_THIRD_PARTY = "block-third-party"

    @property
    def cookie_behavior(self) -> int:
        """Firefox network.cookie.cookieBehavior value."""
        return 1 if self is CookiePolicy.BLOCK_THIRD_PARTY else 0


@dataclass(frozen=True)
class Viewport:
    width: int = DEFAULT_VIEWPORT_WIDTH
    height: int = DEFAULT_VIEWPORT_HEIGHT

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError(f"viewport must be positive, got {self.width}x{self.height}")


class WebDriverError(Exception):
    """A wire-protocol error response."""

    def __init__(self, error: str, message: str = "", status: int = 0) -> None:
        super().__init__(f"{error}: {message}" if message else error)
        self.error = error
        self.message = message
        self.status = status


class DriverConnectionError(WebDriverError):
    """The remote end could not be reached at all."""

    def __init__(self, message: str) -> None:
        super().__init__("connection failed", message)


class CapabilityError(WebDriverError):
    """Session could not be created with the requested capabilities."""


class SessionDeadError(WebDriverError):
    """The session (or the driver behind it) is gone."""


class ScriptError(WebDriverError):
    """Injected JavaScript threw."""


class NoSuchElementError(WebDriverError):
    pass


class NotInteractableError(WebDriverError):
    pass


class LoadStatus(str, Enum):
    COMPLETE = "complete"
    TIMEOUT = "timeout"
    ERROR = "error"


@dataclass(frozen=True)
class LoadOutcome:
    status: LoadStatus
    message: str = ""
    url: str = ""


_SESSION_DEAD = {"invalid session id"}
_NOT_INTERACTABLE = {
    "element not interactable",
    "element click intercepted",
    "stale element reference",
}


def _raise_for(error: str, message: str, status: int) -> None:
    if error in _SESSION_DEAD:
        raise SessionDeadError(error, message, status)
    if error == "javascript error":
        raise ScriptError(error, message, status)
    if error == "no such element":
        raise NoSuchElementError(error, message, status)
    if error in _NOT_INTERACTABLE:
        raise NotInteractableError(error, message, status)
    if error == "session not created":
        raise CapabilityError(error, message, status)
    raise WebDriverError(error, message, status)


class WebDriverClient:
    """HTTP client bound to one remote end (e.g. one geckodriver process)."""

    def __init__(self, endpoint: str, http_timeout_s: float = 305.0) -> None:
        self.endpoint = endpoint.rstrip("/")
        self.http_timeout_s = http_timeout_s
        self._http = requests.Session()

    def request(self, method: str, path: str, payload: dict | None = None, *, in_session: bool = True) -> Any:
        url = self.endpoint + path
        body = payload if payload is not None else ({} if method == "POST" else None)
        try:
            resp = self._http.request(method, url, json=body, timeout=self.http_timeout_s)
        except requests.RequestException as exc:
            if in_session:
                raise SessionDeadError("connection lost", str(exc)) from exc
            raise DriverConnectionError(str(exc)) from exc
        try:
            decoded = resp.json()
        except ValueError as exc:
            raise WebDriverError("invalid response", f"{resp.status_code}: {resp.text[:200]}") from exc
        value = decoded.get("value")
        if resp.status_code >= 400 or (isinstance(value, dict) and "error" in value):
            error = value.get("error", "unknown error") if isinstance(value, dict) else "unknown error"
            message = value.get("message", "") if isinstance(value, dict) else str(value)
            _raise_for(error, message, resp.status_code)
        return value

    def status(self) -> dict:
        return self.request("GET", "/status", in_session=False)

    def open_session(
        self,
        policy: CookiePolicy,
        viewport: Viewport | None = None,
        profile_dir: str | Path | None = None,
        page_timeout_s: float = 30.0,
        script_timeout_s: float = 30.0,
        headless: bool = True,
    ) -> "BrowserSession":
        viewport = viewport or Viewport()
        args = ["-width", str(viewport.width), "-height", str(viewport.height)]
        if headless:
            args.insert(0, "-headless")
        if profile_dir is not None:
            args += ["-profile", str(profile_dir)]
        capabilities = {
            "capabilities": {
                "alwaysMatch": {
                    "browserName": "firefox",
                    "acceptInsecureCerts": False,
                    "pageLoadStrategy": "normal",
                    "timeouts": {
                        "pageLoad": int(page_timeout_s * 1000),
                        "script": int(script_timeout_s * 1000),
                        "implicit": 0,
                    },
                    "moz:firefoxOptions": {
                        "args": args,
                        "prefs": {
                            "network.cookie.cookieBehavior": policy.cookie_behavior,
                            "layout.css.devPixelsPerPx": "1.0",
                        },
                    },
                }
            }
        }
        value = self.request("POST", "/session", capabilities, in_session=False)
        session_id = value.get("sessionId") if isinstance(value, dict) else None
        if not session_id:
            raise CapabilityError("session not created", f"no sessionId in {value!r}")
        tag = Path(profile_dir).name if profile_dir is not None else f"ephemeral-{uuid.uuid4().hex[:8]}"
        session = BrowserSession(self, session_id, policy, viewport, profile_tag=tag)
        try:
            session.fit_viewport()
        except WebDriverError:
            session.close()
            raise
        return session


class BrowserSession:
    """One live browser with a fixed cookie policy and viewport."""

    def __init__(
        self,
        client: WebDriverClient,
        session_id: str,
        policy: CookiePolicy,
        viewport: Viewport,
        profile_tag: str = "",
    ) -> None:
        self.client = client
        self.session_id = session_id
        self.policy = policy
        self.viewport = viewport
        self.profile_tag = profile_tag
        self.alive = True
        self.device_pixel_ratio = 1.0

    def _call(self, method: str, path: str, payload: dict | None = None) -> Any:
        if not self.alive:
            raise SessionDeadError("invalid session id", "session already closed")
        return self.client.request(method, f"/session/{self.session_id}{path}", payload)

    def fit_viewport(self) -> None:
        """Size the window so the inner viewport matches the target exactly."""
        target = self.viewport
        self._call("POST", "/window/rect", {"width": target.width, "height": target.height})
        for _ in range(2):
            inner_w, inner_h, dpr = self.evaluate(
                "return [window.innerWidth, window.innerHeight, window.devicePixelRatio || 1];"
            )
            self.device_pixel_ratio = float(dpr)
            dw, dh = target.width - int(inner_w), target.height - int(inner_h)
            if dw == 0 and dh == 0:
                return
            rect = self._call("GET", "/window/rect")
            self._call(
                "POST",
                "/window/rect",
                {"width": int(rect["width"]) + dw, "height": int(rect["height"]) + dh},
            )
        inner_w, inner_h, _ = self.evaluate(
            "return [window.innerWidth, window.innerHeight, window.devicePixelRatio || 1];"
        )
        if (int(inner_w), int(inner_h)) != (target.width, target.height):
            log.warning(
                "viewport settled at %dx%d, wanted %dx%d",
                inner_w, inner_h, target.width, target.height,
            )

    def navigate(self, url: str) -> LoadOutcome:
        try:
            self._call("POST", "/url", {"url": url})
        except (SessionDeadError, ScriptError):
            raise
        except WebDriverError as exc:
            if exc.error == "timeout":
                return LoadOutcome(LoadStatus.TIMEOUT, exc.message, url)
            return LoadOutcome(LoadStatus.ERROR, f"{exc.error}: {exc.message}", url)
        return LoadOutcome(LoadStatus.COMPLETE, url=self.current_url())

    def current_url(self) -> str:
        return str(self._call("GET", "/url"))

    def evaluate(self, script: str, args: list | None = None) -> Any:
        return self._call("POST", "/execute/sync", {"script": script, "args": args or []})

    def screenshot(self) -> Image.Image:
        encoded = self._call("GET", "/screenshot")
        raw = base64.b64decode(encoded)
        image = Image.open(io.BytesIO(raw))
        image.load()
        return image

    def find_element(self, selector: str) -> str:
        value = self._call("POST", "/element", {"using": "css selector", "value": selector})
        return value[_ELEMENT_KEY]

    def click_css(self, selector: str) -> None:
        element_id = self.find_element(selector)
        self._call("POST", f"/element/{element_id}/click")

    def window_handles(self) -> list[str]:
        return list(self._call("GET", "/window/handles"))

    def current_window(self) -> str:
        return str(self._call("GET", "/window"))

    def switch_window(self, handle: str) -> None:
        self._call("POST", "/window", {"handle": handle})

    def close_window(self) -> None:
        self._call("DELETE", "/window")

    def wait_ready(self, timeout_s: float = 30.0, poll_s: float = 0.1) -> bool:
        deadline = time.monotonic() + timeout_s
        while time.monotonic() < deadline:
            try:
                if self.evaluate("return document.readyState;") == "complete":
                    return True
            except ScriptError:
                pass
            time.sleep(poll_s)
        return False

    def close(self) -> None:
        if not self.alive:
            return
        self.alive = False
        try:
            self.client.request("DELETE", f"/session/{self.session_id}")
        except WebDriverError as exc:
            log.debug("ignoring close failure for %s: %s", self.session_id, exc)

    def __enter__(self) -> "BrowserSession":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()
