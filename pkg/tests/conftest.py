"""Shared fixtures: the hermetic fixture origins and the stub browser driver.

The end-to-end tests need a WebDriver remote end. This suite uses the
bundled Node stub (tools/driver), pointed at the in-process fixture web
server through a hostname override, so everything runs entirely on
loopback with no real browser and no network.
"""

from __future__ import annotations

import json
import os
import re
import shutil
import subprocess
import time
from pathlib import Path

import pytest

from cookiediff.fixtures import FixtureServer
from cookiediff.webdriver import WebDriverClient

REPO_ROOT = Path(__file__).resolve().parent.parent
DRIVER_DIR = REPO_ROOT / "tools" / "driver"

_ENDPOINT_RE = re.compile(r"listening on (http://127\.0\.0\.1:\d+)")


def _node_ready() -> str | None:
    """Reason the stub driver cannot run, or None when it can."""
    if shutil.which("node") is None:
        return "node is not installed"
    if not (DRIVER_DIR / "server.js").exists():
        return f"driver entry point missing under {DRIVER_DIR}"
    if not (DRIVER_DIR / "node_modules").exists():
        install = subprocess.run(
            ["npm", "install", "--prefer-offline", "--no-audit", "--no-fund"],
            cwd=DRIVER_DIR,
            capture_output=True,
            text=True,
            timeout=300,
        )
        if install.returncode != 0:
            return f"npm install failed: {install.stderr.strip()[:200]}"
    return None


@pytest.fixture(scope="session")
def fixture_server():
    server = FixtureServer()
    server.start()
    yield server
    server.stop()


@pytest.fixture(scope="session")
def driver_endpoint(fixture_server):
    """Spawn one stub driver process for the whole session."""
    reason = _node_ready()
    if reason is not None:
        pytest.skip(f"stub driver unavailable: {reason}")
    env = dict(os.environ)
    env["COOKIEDIFF_HOSTS"] = json.dumps(fixture_server.host_map())
    proc = subprocess.Popen(
        ["node", str(DRIVER_DIR / "server.js"), "0"],
        stdout=subprocess.PIPE,
        stderr=subprocess.STDOUT,
        env=env,
        text=True,
    )
    line = proc.stdout.readline()
    match = _ENDPOINT_RE.search(line)
    if match is None:
        proc.terminate()
        rest = proc.stdout.read()
        pytest.skip(f"stub driver failed to start: {line!r} {rest[:200]!r}")
    yield match.group(1)
    proc.terminate()
    try:
        proc.wait(timeout=5)
    except subprocess.TimeoutExpired:
        proc.kill()


@pytest.fixture(scope="session")
def driver_client(driver_endpoint) -> WebDriverClient:
    client = WebDriverClient(driver_endpoint)
    deadline = time.monotonic() + 10
    while True:
        try:
            client.status()
            break
        except Exception:
            if time.monotonic() > deadline:
                raise
            time.sleep(0.1)
    return client
