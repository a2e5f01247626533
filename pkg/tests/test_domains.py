"""Domain list parsing, candidate resolution, and same-site checks."""

from __future__ import annotations

import contextlib

import pytest

from cookiediff.domains import (
    ApexDomain,
    AttemptRecord,
    DomainListError,
    ResolveFailure,
    candidate_urls,
    classify_navigation_error,
    host_of,
    load_domain_list,
    resolve_domain,
    same_site,
)
from cookiediff.webdriver import LoadOutcome, LoadStatus


class TestApexDomain:
    def test_valid(self):
        apex = ApexDomain(rank=3, name="news.example.co.uk")
        assert apex.rank == 3

    @pytest.mark.parametrize("rank", [0, -5])
    def test_rank_must_be_positive(self, rank):
        with pytest.raises(ValueError):
            ApexDomain(rank=rank, name="example.com")

    @pytest.mark.parametrize(
        "name",
        ["localhost", "-bad.example", "bad-.example", "has space.example", ""],
    )
    def test_name_must_look_like_registered_domain(self, name):
        with pytest.raises(ValueError):
            ApexDomain(rank=1, name=name)


class TestLoadDomainList:
    def test_well_formed_csv(self, tmp_path):
        path = tmp_path / "top.csv"
        path.write_text("1,example.com\n2,news.example.org\n\n3,SHOUTY.example\n")
        listing = load_domain_list(path)
        assert [d.name for d in listing.domains] == [
            "example.com",
            "news.example.org",
            "shouty.example",
        ]
        assert [d.rank for d in listing.domains] == [1, 2, 3]
        assert listing.malformed == 0

    def test_malformed_lines_are_counted_and_skipped(self, tmp_path):
        path = tmp_path / "top.csv"
        path.write_text(
            "1,good.example\n"
            "no-comma-here\n"
            "x,bad-rank.example\n"
            "4,nodot\n"
            "5,ok.example\n"
        )
        listing = load_domain_list(path)
        assert [d.name for d in listing.domains] == ["good.example", "ok.example"]
        assert listing.malformed == 3

    def test_limit_stops_early(self, tmp_path):
        path = tmp_path / "top.csv"
        path.write_text("".join(f"{i},site{i}.example\n" for i in range(1, 11)))
        listing = load_domain_list(path, limit=4)
        assert len(listing.domains) == 4

    def test_missing_file_raises(self, tmp_path):
        with pytest.raises(DomainListError):
            load_domain_list(tmp_path / "absent.csv")


class TestSameSite:
    def test_host_of(self):
        assert host_of("http://Sub.Example.COM:8080/x") == "sub.example.com"
        assert host_of("not a url") == ""

    @pytest.mark.parametrize(
        "url,expected",
        [
            ("http://example.com/", True),
            ("https://www.example.com/a", True),
            ("http://a.b.example.com/", True),
            ("http://notexample.com/", False),
            ("http://example.com.evil.test/", False),
            ("http://other.test/", False),
            ("about:neterror", False),
        ],
    )
    def test_same_site(self, url, expected):
        assert same_site(url, "example.com") is expected


class TestCandidates:
    def test_fixed_candidate_order(self):
        assert candidate_urls("example.com") == [
            "https://example.com",
            "https://www.example.com",
            "http://example.com",
            "http://www.example.com",
        ]

    @pytest.mark.parametrize(
        "message,expected",
        [
            ("SEC_ERROR_UNKNOWN_ISSUER", ResolveFailure.TLS_ERROR),
            ("about:neterror nssFailure2", ResolveFailure.TLS_ERROR),
            ("TLS handshake failed", ResolveFailure.TLS_ERROR),
            ("dnsNotFound", ResolveFailure.NO_RESPONSE),
            ("connection refused", ResolveFailure.NO_RESPONSE),
        ],
    )
    def test_classify_navigation_error(self, message, expected):
        assert classify_navigation_error(message) is expected


class _ScriptedPage:
    """ResolverPage whose navigations follow a URL -> (outcome, clickables) map."""

    def __init__(self, script):
        self.script = script
        self.visited: list[str] = []
        self._clickables: list = []

    def navigate(self, url):
        self.visited.append(url)
        outcome, clickables = self.script[url]
        self._clickables = clickables
        return outcome

    def enumerate_clickables(self):
        return list(self._clickables)


def _factory(page):
    @contextlib.contextmanager
    def make():
        yield page

    return make


def _ok():
    return LoadOutcome(status=LoadStatus.COMPLETE, url="http://landed.example/welcome")


def _err(message):
    return LoadOutcome(status=LoadStatus.ERROR, url="", message=message)


def _timeout():
    return LoadOutcome(status=LoadStatus.TIMEOUT, url="", message="timed out")


class TestResolveDomain:
    def test_falls_through_to_first_working_candidate(self):
        apex = ApexDomain(1, "example.com")
        page = _ScriptedPage(
            {
                "https://example.com": (_err("nssFailure"), []),
                "https://www.example.com": (_err("SEC_ERROR_BAD_DER"), []),
                "http://example.com": (_ok(), ["a clickable"]),
            }
        )
        target = resolve_domain(apex, _factory(page))
        assert target.succeeded
        # The candidate is reported, not the redirect target the load ended on.
        assert target.url == "http://example.com"
        assert target.failure_reason is None
        assert page.visited == [
            "https://example.com",
            "https://www.example.com",
            "http://example.com",
        ]
        assert [a.ok for a in target.attempts] == [False, False, True]
        assert target.attempts[0].reason is ResolveFailure.TLS_ERROR

    def test_page_without_clickables_is_not_a_resolution(self):
        apex = ApexDomain(1, "example.com")
        page = _ScriptedPage(
            {
                "https://example.com": (_ok(), []),
                "https://www.example.com": (_ok(), ["link"]),
            }
        )
        target = resolve_domain(
            apex, _factory(page), candidates=["https://example.com", "https://www.example.com"]
        )
        assert target.url == "https://www.example.com"
        assert target.attempts[0] == AttemptRecord(
            url="https://example.com", ok=False, reason=ResolveFailure.NO_CLICKABLES
        )

    def test_all_candidates_fail(self):
        apex = ApexDomain(1, "example.com")
        page = _ScriptedPage(
            {
                "https://example.com": (_timeout(), []),
                "https://www.example.com": (_err("dnsNotFound"), []),
                "http://example.com": (_err("dnsNotFound"), []),
                "http://www.example.com": (_err("dnsNotFound"), []),
            }
        )
        target = resolve_domain(apex, _factory(page))
        assert not target.succeeded
        assert target.url is None
        assert target.failure_reason is ResolveFailure.NO_RESPONSE
        assert target.attempts[0].reason is ResolveFailure.TIMEOUT
        assert len(target.attempts) == 4
