"""Domain list loading, URL candidate resolution, and same-site checks."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable, ContextManager, Protocol
from urllib.parse import urlsplit

log = logging.getLogger(__name__)

_LABEL = r"[a-z0-9]([a-z0-9-]*[a-z0-9])?"
_NAME_RE = re.compile(rf"^{_LABEL}(\.{_LABEL})+$")


class DomainListError(Exception):
    """The domain list file itself is unusable."""


@dataclass(frozen=True)
class ApexDomain:
    """A ranked registered domain, e.g. (1, "example.com")."""

    rank: int
    name: str

    def __post_init__(self) -> None:
        if self.rank <= 0:
            raise ValueError(f"rank must be positive, got {self.rank}")
        if not _NAME_RE.match(self.name):
            raise ValueError(f"not a registered domain name: {self.name!r}")


def host_of(url: str) -> str:
    host = urlsplit(url).hostname
    return (host or "").lower()


def same_site(url: str, apex_name: str) -> bool:
    """True when the URL's host is the apex itself or a subdomain of it."""
    host = host_of(url)
    if not host:
        return False
    apex = apex_name.lower()
    return host == apex or host.endswith("." + apex)


@dataclass
class DomainList:
    domains: list[ApexDomain]
    malformed: int = 0


def load_domain_list(path: str | Path, limit: int | None = None) -> DomainList:
    """Read a rank,domain CSV; malformed lines are skipped and counted."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8", errors="replace")
    except OSError as exc:
        raise DomainListError(f"cannot read domain list {path}: {exc}") from exc
    domains: list[ApexDomain] = []
    malformed = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        rank_s, sep, name = line.partition(",")
        if not sep:
            malformed += 1
            continue
        try:
            apex = ApexDomain(rank=int(rank_s.strip()), name=name.strip().lower())
        except ValueError:
            log.debug("%s:%d: skipping malformed line %r", path, lineno, raw)
            malformed += 1
            continue
        domains.append(apex)
        if limit is not None and len(domains) >= limit:
            break
    return DomainList(domains=domains, malformed=malformed)


class ResolveFailure(str, Enum):
    NO_RESPONSE = "no-response"
    NO_CLICKABLES = "no-clickables"
    TLS_ERROR = "tls-error"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class AttemptRecord:
    url: str
    ok: bool
    reason: ResolveFailure | None = None


@dataclass
class ResolvedTarget:
    apex: ApexDomain
    url: str | None
    failure_reason: ResolveFailure | None = None
    attempts: list[AttemptRecord] = field(default_factory=list)

    @property
    def succeeded(self) -> bool:
        return self.url is not None


def candidate_urls(name: str) -> list[str]:
    """The fixed candidate order: https before http, bare before www."""
    return [
        f"https://{name}",
        f"https://www.{name}",
        f"http://{name}",
        f"http://www.{name}",
    ]


class ResolverPage(Protocol):
    def navigate(self, url: str):  # returns an object with .status and .message
        ...

    def enumerate_clickables(self) -> list:
        ...


_TLS_HINTS = ("ssl", "tls", "cert", "sec_error", "nssfailure", "insecure", "handshake")


def classify_navigation_error(message: str) -> ResolveFailure:
    lowered = message.lower()
    if any(h in lowered for h in _TLS_HINTS):
        return ResolveFailure.TLS_ERROR
    return ResolveFailure.NO_RESPONSE


def resolve_domain(
    apex: ApexDomain,
    page_factory: Callable[[], ContextManager[ResolverPage]],
    candidates: list[str] | None = None,
) -> ResolvedTarget:
    """Try each candidate URL until one loads and exposes a clickable.

    The reported URL is the candidate that worked (not any redirect
    target), so every group navigates the identical address later.
    """
    from .webdriver import LoadStatus

    target = ResolvedTarget(apex=apex, url=None)
    urls = candidates if candidates is not None else candidate_urls(apex.name)
    with page_factory() as page:
        for url in urls:
            outcome = page.navigate(url)
            if outcome.status is LoadStatus.TIMEOUT:
                reason = ResolveFailure.TIMEOUT
            elif outcome.status is not LoadStatus.COMPLETE:
                reason = classify_navigation_error(outcome.message)
            elif not page.enumerate_clickables():
                reason = ResolveFailure.NO_CLICKABLES
            else:
                target.attempts.append(AttemptRecord(url=url, ok=True))
                target.url = url
                target.failure_reason = None
                log.info("%s resolved to %s", apex.name, url)
                return target
            target.attempts.append(AttemptRecord(url=url, ok=False, reason=reason))
            target.failure_reason = reason
    log.info("%s failed to resolve (%s)", apex.name, target.failure_reason)
    return target
