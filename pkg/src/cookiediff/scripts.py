"""Loader for the injected JavaScript assets.

Each asset is a bare function body suitable for the WebDriver
execute/sync endpoint, which wraps it in a function so `arguments`
and `return` work.
"""

from __future__ import annotations

from importlib import resources

SCRIPT_NAMES = (
    "enumerate_clickables",
    "resolve_selector",
    "scroll_top",
    "extract_text",
    "extract_image_sources",
    "extract_link_targets",
    "extract_resource_urls",
    "page_state",
)

_cache: dict[str, str] = {}


def load_script(name: str) -> str:
    if name not in SCRIPT_NAMES:
        raise KeyError(f"unknown instrumentation script: {name}")
    if name not in _cache:
        ref = resources.files("cookiediff.instrumentation").joinpath(f"{name}.js")
        _cache[name] = ref.read_text(encoding="utf-8")
    return _cache[name]
