"""Deterministic two-origin fixture web server for hermetic crawls."""

from .server import FixtureConfig, FixtureServer, SCENARIO_HOSTS

__all__ = ["FixtureConfig", "FixtureServer", "SCENARIO_HOSTS"]
