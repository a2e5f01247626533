"""Clickstream generation and replay against a scripted page graph."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from random import Random

import pytest

from cookiediff.clickstream import (
    ClickableRef,
    ClickRejected,
    Clickstream,
    SelectorNotFound,
    StepStatus,
    attempt_click,
    generate_clickstream,
    traverse_clickstream,
)


@dataclass
class _Node:
    """One fake page: its clickables and what each click does.

    actions map selector -> ("goto", url) | ("popup", url) | ("reject", None)
    | ("vanish", None). Selectors without an action stay on the page.
    """

    clickables: list
    actions: dict = field(default_factory=dict)


@dataclass(frozen=True)
class _Desc:
    selector: str
    kind: str = "link"
    visible: bool = True


class FakePage:
    def __init__(self, graph: dict[str, _Node], start: str):
        self.graph = graph
        self.windows: dict[str, str] = {"main": start}
        self.current: str = "main"
        self._popup_serial = 0

    # -- PageSurface ----------------------------------------------------
    def enumerate_clickables(self):
        return list(self._node().clickables)

    def resolve_selector(self, selector):
        node = self._node()
        known = any(d.selector == selector for d in node.clickables)
        action = node.actions.get(selector)
        if action is not None and action[0] == "vanish":
            return False, False
        return known, known

    def click_css(self, selector):
        node = self._node()
        if not any(d.selector == selector for d in node.clickables):
            raise SelectorNotFound(selector)
        action = node.actions.get(selector)
        if action is None:
            return
        verb, arg = action
        if verb == "goto":
            self.windows[self.current] = arg
        elif verb == "reject":
            raise ClickRejected(selector)
        elif verb == "popup":
            self._popup_serial += 1
            self.windows[f"popup-{self._popup_serial}"] = arg

    def settle(self):
        pass

    def current_url(self):
        return self.windows[self.current]

    def window_handles(self):
        return list(self.windows)

    def current_window(self):
        return self.current

    def switch_window(self, handle):
        assert handle in self.windows
        self.current = handle

    def close_window(self):
        del self.windows[self.current]
        if self.windows:
            self.current = next(iter(self.windows))

    # -- helpers ---------------------------------------------------------
    def _node(self) -> _Node:
        return self.graph[self.current_url()]


def ring_graph(n=4):
    """n same-site pages, each linking to the next and to home."""
    graph = {}
    for i in range(n):
        url = f"http://a.test/p{i}"
        nxt = f"http://a.test/p{(i + 1) % n}"
        graph[url] = _Node(
            clickables=[_Desc("#next"), _Desc("#home", kind="button")],
            actions={"#next": ("goto", nxt), "#home": ("goto", "http://a.test/p0")},
        )
    return graph


class TestAttemptClick:
    def test_successful_click(self):
        page = FakePage(ring_graph(), "http://a.test/p0")
        outcome = attempt_click(page, ClickableRef("#next", "link"), "a.test", index=2)
        assert outcome.status is StepStatus.CLICKED
        assert outcome.index == 2
        assert outcome.landed_url == "http://a.test/p1"

    def test_unknown_selector_is_unresolved(self):
        page = FakePage(ring_graph(), "http://a.test/p0")
        outcome = attempt_click(page, ClickableRef("#ghost", "link"), "a.test")
        assert outcome.status is StepStatus.SELECTOR_UNRESOLVED

    def test_vanishing_selector_is_unresolved(self):
        graph = {
            "http://a.test/": _Node(
                clickables=[_Desc("#gone")], actions={"#gone": ("vanish", None)}
            )
        }
        page = FakePage(graph, "http://a.test/")
        outcome = attempt_click(page, ClickableRef("#gone", "link"), "a.test")
        assert outcome.status is StepStatus.SELECTOR_UNRESOLVED

    def test_rejected_click_is_click_failed(self):
        graph = {
            "http://a.test/": _Node(
                clickables=[_Desc("#covered")], actions={"#covered": ("reject", None)}
            )
        }
        page = FakePage(graph, "http://a.test/")
        outcome = attempt_click(page, ClickableRef("#covered", "link"), "a.test")
        assert outcome.status is StepStatus.CLICK_FAILED

    def test_offsite_navigation_detected(self):
        graph = {
            "http://a.test/": _Node(
                clickables=[_Desc("#away")],
                actions={"#away": ("goto", "http://other.test/")},
            ),
            "http://other.test/": _Node(clickables=[]),
        }
        page = FakePage(graph, "http://a.test/")
        outcome = attempt_click(page, ClickableRef("#away", "link"), "a.test")
        assert outcome.status is StepStatus.OFF_DOMAIN
        assert outcome.landed_url == "http://other.test/"

    def test_error_page_counts_as_off_domain(self):
        graph = {
            "http://a.test/": _Node(
                clickables=[_Desc("#broken")],
                actions={"#broken": ("goto", "about:neterror?e=dnsNotFound")},
            ),
            "about:neterror?e=dnsNotFound": _Node(clickables=[]),
        }
        page = FakePage(graph, "http://a.test/")
        outcome = attempt_click(page, ClickableRef("#broken", "link"), "a.test")
        assert outcome.status is StepStatus.OFF_DOMAIN


class TestTabPolicy:
    def test_same_site_popup_is_adopted(self):
        graph = {
            "http://a.test/": _Node(
                clickables=[_Desc("#open")],
                actions={"#open": ("popup", "http://sub.a.test/win")},
            ),
            "http://sub.a.test/win": _Node(clickables=[]),
        }
        page = FakePage(graph, "http://a.test/")
        outcome = attempt_click(page, ClickableRef("#open", "link"), "a.test")
        assert outcome.status is StepStatus.CLICKED
        assert outcome.landed_url == "http://sub.a.test/win"
        assert len(page.windows) == 1  # the opener was closed

    def test_off_site_popup_is_closed_and_reported(self):
        graph = {
            "http://a.test/": _Node(
                clickables=[_Desc("#ad")],
                actions={"#ad": ("popup", "http://ads.test/interstitial")},
            ),
            "http://ads.test/interstitial": _Node(clickables=[]),
        }
        page = FakePage(graph, "http://a.test/")
        outcome = attempt_click(page, ClickableRef("#ad", "link"), "a.test")
        assert outcome.status is StepStatus.OFF_DOMAIN
        assert outcome.landed_url == "http://ads.test/interstitial"
        assert page.windows == {"main": "http://a.test/"}


class TestGeneration:
    def test_reaches_target_length(self):
        page = FakePage(ring_graph(), "http://a.test/p0")
        captured = []
        result = generate_clickstream(
            page, "a.test", 5, Random(1), capture=captured.append, seed=1
        )
        assert len(result.clickstream.steps) == 5
        assert result.clickstream.target_length == 5
        assert result.clickstream.seed == 1
        assert captured == [0, 1, 2, 3, 4, 5]
        assert len(result.page_urls) == 6
        assert result.page_urls[0] == "http://a.test/p0"

    def test_deterministic_for_a_seed(self):
        streams = []
        for _ in range(2):
            page = FakePage(ring_graph(), "http://a.test/p0")
            result = generate_clickstream(page, "a.test", 5, Random(42))
            streams.append([s.selector for s in result.clickstream.steps])
        assert streams[0] == streams[1]

    def test_sampling_is_roughly_uniform_over_first_pick(self):
        firsts = Counter()
        for seed in range(300):
            page = FakePage(ring_graph(), "http://a.test/p0")
            result = generate_clickstream(page, "a.test", 1, Random(seed))
            firsts[result.clickstream.steps[0].selector] += 1
        assert set(firsts) == {"#next", "#home"}
        for count in firsts.values():
            assert 90 <= count <= 210  # two-way uniform split, generous margin

    def test_stops_when_no_clickables(self):
        graph = {
            "http://a.test/": _Node(
                clickables=[_Desc("#only")],
                actions={"#only": ("goto", "http://a.test/dead-end")},
            ),
            "http://a.test/dead-end": _Node(clickables=[]),
        }
        page = FakePage(graph, "http://a.test/")
        result = generate_clickstream(page, "a.test", 5, Random(0))
        assert len(result.clickstream.steps) == 1
        assert result.page_urls == ["http://a.test/", "http://a.test/dead-end"]

    def test_stops_on_off_domain_navigation(self):
        graph = {
            "http://a.test/": _Node(
                clickables=[_Desc("#exit")],
                actions={"#exit": ("goto", "http://b.test/")},
            ),
            "http://b.test/": _Node(clickables=[_Desc("#whatever")]),
        }
        page = FakePage(graph, "http://a.test/")
        result = generate_clickstream(page, "a.test", 5, Random(0))
        assert result.clickstream.steps == []
        assert result.page_urls == ["http://a.test/"]

    def test_failed_clickable_is_skipped_for_another(self):
        graph = {
            "http://a.test/": _Node(
                clickables=[_Desc("#broken"), _Desc("#works")],
                actions={
                    "#broken": ("reject", None),
                    "#works": ("goto", "http://a.test/next"),
                },
            ),
            "http://a.test/next": _Node(clickables=[]),
        }
        for seed in range(10):
            page = FakePage(graph, "http://a.test/")
            result = generate_clickstream(page, "a.test", 1, Random(seed))
            assert [s.selector for s in result.clickstream.steps] == ["#works"]

    def test_kind_is_recorded_from_descriptor(self):
        page = FakePage(ring_graph(), "http://a.test/p0")
        result = generate_clickstream(page, "a.test", 3, Random(9))
        kinds = {s.selector: s.kind for s in result.clickstream.steps}
        for selector, kind in kinds.items():
            assert kind == ("button" if selector == "#home" else "link")


class TestTraversal:
    def test_replays_exact_sequence(self):
        gen_page = FakePage(ring_graph(), "http://a.test/p0")
        generated = generate_clickstream(gen_page, "a.test", 4, Random(5), seed=5)

        replay_page = FakePage(ring_graph(), "http://a.test/p0")
        captured = []
        outcomes = traverse_clickstream(
            replay_page, generated.clickstream, capture=captured.append
        )
        assert [o.status for o in outcomes] == [StepStatus.CLICKED] * 4
        assert captured == [0, 1, 2, 3, 4]
        landed = [generated.page_urls[0]] + [o.landed_url for o in outcomes]
        assert landed == generated.page_urls

    def test_halts_at_first_failure(self):
        stream = Clickstream(
            domain="a.test",
            steps=[ClickableRef("#next", "link"), ClickableRef("#ghost", "link"), ClickableRef("#next", "link")],
        )
        page = FakePage(ring_graph(), "http://a.test/p0")
        captured = []
        outcomes = traverse_clickstream(page, stream, capture=captured.append)
        assert [o.status for o in outcomes] == [
            StepStatus.CLICKED,
            StepStatus.SELECTOR_UNRESOLVED,
        ]
        assert captured == [0, 1]

    def test_empty_stream_captures_landing_only(self):
        page = FakePage(ring_graph(), "http://a.test/p0")
        captured = []
        outcomes = traverse_clickstream(page, Clickstream(domain="a.test"), capture=captured.append)
        assert outcomes == []
        assert captured == [0]
