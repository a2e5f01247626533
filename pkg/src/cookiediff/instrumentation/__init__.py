"""Injected JavaScript assets, shipped as plain .js function bodies."""
