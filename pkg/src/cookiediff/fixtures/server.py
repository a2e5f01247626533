"""Two-origin fixture web server with deterministic scenario pages.

Each scenario lives on its own hostname; requests are routed by Host
header, so one listener serves many crawlable "sites". A second listener
is a separate origin for cross-site frames and off-domain links. Page
bytes depend only on the request (plus an explicit rotation counter), so
repeated crawls see identical content.
"""

from __future__ import annotations

import hashlib
import io
import logging
import re
import threading
import time
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

from PIL import Image

log = logging.getLogger(__name__)

SCENARIO_HOSTS = {
    "static": "static.test",
    "rotating": "rotating.test",
    "gated": "gated.test",
    "cross": "cross.test",
    "chain": "chain.test",
    "slow": "slow.test",
}

RING_SIZE = 8


@dataclass
class FixtureConfig:
    banner_fraction: float = 0.3
    rotation_period: int = 4
    slow_delay_ms: int = 1500
    viewport_width: int = 1366
    viewport_height: int = 768
    chunk_px: int = 40
    secondary_host: str = "frames.test"

    @property
    def banner_height_px(self) -> int:
        rows = -(-self.viewport_height // self.chunk_px)
        banner_rows = round(self.banner_fraction * rows)
        return banner_rows * self.chunk_px


_ROTATION_COLORS = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b")


def _tile_colors(key: str, n: int) -> list[str]:
    raw = b""
    counter = 0
    while len(raw) < n * 3:
        raw += hashlib.md5(f"{key}:{counter}".encode()).digest()
        counter += 1
    return ["#%02x%02x%02x" % (raw[i * 3], raw[i * 3 + 1], raw[i * 3 + 2]) for i in range(n)]


def _png_bytes(color: tuple[int, int, int]) -> bytes:
    img = Image.new("RGB", (8, 8), color)
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


class _State:
    """Mutable cross-request state: per-path rotation counters."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._counters: dict[str, int] = {}

    def next_count(self, key: str) -> int:
        with self._lock:
            value = self._counters.get(key, 0)
            self._counters[key] = value + 1
            return value

    def reset(self) -> None:
        with self._lock:
            self._counters.clear()


def _page_href(n: int) -> str:
    return "/" if n == 0 else f"/p/{n}"


def _page_number(path: str) -> int | None:
    if path == "/":
        return 0
    match = re.fullmatch(r"/p/(\d+)", path)
    if match:
        return int(match.group(1))
    return None


class _Builder:
    """Assembles scenario HTML with fixed absolute-pixel geometry."""

    def __init__(self, config: FixtureConfig) -> None:
        self.config = config

    def _shell(self, title: str, css: list[str], body: list[str]) -> bytes:
        doc = (
            "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">\n"
            f"<title>{title}</title>\n<style>\n"
            "html, body { margin: 0; padding: 0; background-color: #ffffff; overflow: hidden; }\n"
            "a { color: #1a0dab; }\n"
            + "\n".join(css)
            + "\n</style></head>\n<body>\n"
            + "\n".join(body)
            + "\n</body></html>\n"
        )
        return doc.encode("utf-8")

    def _tiles(self, key: str) -> tuple[list[str], list[str]]:
        colors = _tile_colors(key, 18)
        css, html = [], []
        for i, color in enumerate(colors):
            row, col = divmod(i, 6)
            x = 40 + col * 210
            y = 320 + row * 110
            css.append(
                f"#tile{i} {{ position: absolute; left: {x}px; top: {y}px; "
                f"width: 160px; height: 90px; background-color: {color}; }}"
            )
            html.append(f'<div id="tile{i}"></div>')
        return css, html

    def _nav(self, scenario: str, n: int) -> str:
        if scenario == "chain":
            links = [(f"next-{n}", _page_href(n + 1), "continue reading")]
        elif scenario == "cross":
            links = [("away", f"http://{self.config.secondary_host}/landing", "partner site")]
        elif scenario == "slow":
            links = [
                (f"next-{n}", _page_href((n + 1) % RING_SIZE), "next"),
                ("home", _page_href(0), "home"),
            ]
        else:
            links = [
                (f"next-{n}", _page_href((n + 1) % RING_SIZE), "next page"),
                (f"skip-{n}", _page_href((n + 2) % RING_SIZE), "skip ahead"),
                ("home", _page_href(0), "back home"),
            ]
        parts = [
            f'<a id="nav-{name}" href="{href}">{label}</a>' for name, href, label in links
        ]
        return '<div id="nav" style="position: absolute; left: 40px; top: 284px;">' + " | ".join(parts) + "</div>"

    def _common_body(self, scenario: str, host: str, n: int) -> tuple[list[str], list[str]]:
        css, html = self._tiles(f"{scenario}:{host}:{n}")
        words = (
            f"The {scenario} fixture page number {n} shows a deterministic arrangement "
            f"of colored tiles and a short paragraph of prose for the word vector."
        )
        html.append(
            f'<div id="title" style="position: absolute; left: 40px; top: 250px;">{scenario} page {n}</div>'
        )
        html.append(self._nav(scenario, n))
        html.append(
            f'<p id="prose" style="position: absolute; left: 40px; top: 600px; width: 900px; margin: 0;">{words}</p>'
        )
        for i, img in enumerate(("alpha", "alpha", "beta")):
            x = 980 + i * 40
            html.append(
                f'<img id="img{i}" src="/img/{img}.png" width="24" height="24" '
                f'style="position: absolute; left: {x}px; top: 660px;" alt="">'
            )
        return css, html

    def scenario_page(self, scenario: str, host: str, n: int, rotation_count: int) -> bytes:
        css, html = self._common_body(scenario, host, n)
        if scenario == "rotating":
            color = _ROTATION_COLORS[rotation_count % max(2, self.config.rotation_period)]
            css.append(
                "#rotator { position: absolute; left: 40px; top: 680px; "
                f"width: 400px; height: 80px; background-color: {color}; }}".replace("}}", "}")
            )
            html.append('<div id="rotator"></div>')
        if scenario == "gated":
            banner_h = self.config.banner_height_px
            css.append(
                "#banner { position: absolute; left: 0px; top: 0px; "
                f"width: {self.config.viewport_width}px; height: {banner_h}px; "
                "background-color: #d6406a; display: none; color: #ffffff; }"
            )
            html.append(
                '<iframe id="probe" src="http://'
                + self.config.secondary_host
                + '/probe" style="position: absolute; left: 4px; top: 700px; width: 10px; height: 10px; border: 0;"></iframe>'
            )
            html.append('<div id="banner">This site needs cookies to show you content.</div>')
            html.append(
                "<script>\n"
                "window.addEventListener(\"message\", function (ev) {\n"
                "  var data = ev.data || {};\n"
                "  if (typeof data.cookieOk === \"undefined\") { return; }\n"
                "  var banner = document.getElementById(\"banner\");\n"
                "  if (banner) { banner.style.display = data.cookieOk ? \"none\" : \"block\"; }\n"
                "});\n"
                "</script>"
            )
        return self._shell(f"{scenario} {n}", css, html)

    def probe_page(self) -> bytes:
        return (
            "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"></head><body>\n"
            "<script>\n"
            "(function () {\n"
            "  var ok = false;\n"
            "  try {\n"
            "    document.cookie = \"probe=1; path=/\";\n"
            "    ok = document.cookie.indexOf(\"probe=1\") !== -1;\n"
            "  } catch (e) { ok = false; }\n"
            "  try { window.parent.postMessage({ cookieOk: ok }, \"*\"); } catch (e) {}\n"
            "})();\n"
            "</script>\n</body></html>\n"
        ).encode("utf-8")

    def landing_page(self) -> bytes:
        return self._shell(
            "partner",
            [],
            [
                '<div id="title" style="position: absolute; left: 40px; top: 250px;">partner landing</div>',
                '<div id="nav" style="position: absolute; left: 40px; top: 284px;">'
                '<a id="nav-home" href="/landing">stay here</a></div>',
            ],
        )

    def index_page(self, hosts: dict[str, str]) -> bytes:
        rows = [
            f'<li><a href="http://{host}/">{name}</a></li>' for name, host in sorted(hosts.items())
        ]
        return (
            "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>fixtures</title></head>\n"
            "<body><h1>fixture scenarios</h1><ul>\n" + "\n".join(rows) + "\n</ul></body></html>\n"
        ).encode("utf-8")


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "FixtureServer/1.0"
    sys_version = ""

    def date_time_string(self, timestamp: float | None = None) -> str:
        return "Thu, 01 Jan 1970 00:00:00 GMT"

    def log_message(self, fmt: str, *args: object) -> None:
        log.debug("%s %s", self.address_string(), fmt % args)

    def _send(self, body: bytes, content_type: str = "text/html; charset=utf-8", status: int = 200) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Cache-Control", "no-store")
        self.end_headers()
        self.wfile.write(body)

    def _not_found(self) -> None:
        self._send(b"<!DOCTYPE html><html><body>not found</body></html>", status=404)

    def do_POST(self) -> None:
        self.do_GET()

    def do_GET(self) -> None:
        try:
            self._route()
        except (BrokenPipeError, ConnectionResetError):
            pass

    def _route(self) -> None:
        server: FixtureServer = self.server.fixture_server  # type: ignore[attr-defined]
        origin: str = self.server.fixture_origin  # type: ignore[attr-defined]
        split = urlsplit(self.path)
        path = split.path
        host = (self.headers.get("Host") or "").split(":")[0].lower()
        if host.startswith("www."):
            host = host[4:]

        if path == "/_reset":
            server.state.reset()
            self._send(b"reset\n", content_type="text/plain; charset=utf-8")
            return
        if path == "/favicon.ico":
            self._not_found()
            return
        if path.startswith("/img/"):
            name = path[len("/img/"):]
            body = server.image_bytes(name)
            if body is None:
                self._not_found()
            else:
                self._send(body, content_type="image/png")
            return

        if origin == "secondary":
            if path == "/probe":
                self._send(server.builder.probe_page())
            elif path == "/landing":
                self._send(server.builder.landing_page())
            else:
                self._not_found()
            return

        scenario = server.scenario_for_host(host)
        if scenario is None:
            self._send(server.builder.index_page(SCENARIO_HOSTS))
            return
        n = _page_number(path)
        if n is None:
            self._not_found()
            return
        if scenario == "slow":
            query = parse_qs(split.query)
            delay_ms = int(query.get("ms", [server.config.slow_delay_ms])[0])
            time.sleep(delay_ms / 1000.0)
        rotation_count = 0
        if scenario == "rotating":
            rotation_count = server.state.next_count(f"{host}:{path}")
        self._send(server.builder.scenario_page(scenario, host, n, rotation_count))


@dataclass
class FixtureServer:
    """Runs the two fixture origins on loopback ports."""

    config: FixtureConfig = field(default_factory=FixtureConfig)
    primary_port: int = 0
    secondary_port: int = 0

    def __post_init__(self) -> None:
        self.state = _State()
        self.builder = _Builder(self.config)
        self._images = {
            "alpha.png": _png_bytes((200, 30, 30)),
            "beta.png": _png_bytes((30, 30, 200)),
        }
        self._servers: list[ThreadingHTTPServer] = []
        self._threads: list[threading.Thread] = []

    def scenario_for_host(self, host: str) -> str | None:
        for scenario, scenario_host in SCENARIO_HOSTS.items():
            if host == scenario_host:
                return scenario
        return None

    def image_bytes(self, name: str) -> bytes | None:
        return self._images.get(name)

    def start(self) -> None:
        if self._servers:
            raise RuntimeError("fixture server already started")
        for origin, port in (("primary", self.primary_port), ("secondary", self.secondary_port)):
            httpd = ThreadingHTTPServer(("127.0.0.1", port), _Handler)
            httpd.daemon_threads = True
            httpd.fixture_server = self  # type: ignore[attr-defined]
            httpd.fixture_origin = origin  # type: ignore[attr-defined]
            thread = threading.Thread(target=httpd.serve_forever, name=f"fixture-{origin}", daemon=True)
            thread.start()
            self._servers.append(httpd)
            self._threads.append(thread)
        self.primary_port = self._servers[0].server_address[1]
        self.secondary_port = self._servers[1].server_address[1]
        log.info("fixture origins on 127.0.0.1:%d and 127.0.0.1:%d", self.primary_port, self.secondary_port)

    def stop(self) -> None:
        for httpd in self._servers:
            httpd.shutdown()
            httpd.server_close()
        for thread in self._threads:
            thread.join(timeout=5)
        self._servers = []
        self._threads = []

    @property
    def primary_base(self) -> str:
        return f"http://127.0.0.1:{self.primary_port}"

    @property
    def secondary_base(self) -> str:
        return f"http://127.0.0.1:{self.secondary_port}"

    def host_map(self) -> dict[str, str]:
        """Hostname to address map for a driver-side hosts override."""
        mapping: dict[str, str] = {}
        for host in SCENARIO_HOSTS.values():
            mapping[host] = f"127.0.0.1:{self.primary_port}"
            mapping[f"www.{host}"] = f"127.0.0.1:{self.primary_port}"
        mapping[self.config.secondary_host] = f"127.0.0.1:{self.secondary_port}"
        mapping[f"www.{self.config.secondary_host}"] = f"127.0.0.1:{self.secondary_port}"
        return mapping

    def __enter__(self) -> "FixtureServer":
        self.start()
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.stop()
