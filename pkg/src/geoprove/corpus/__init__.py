"""Bundled ``.geo`` constructions."""

from importlib import resources


def corpus_path(name: str):
    """Path of a bundled construction, e.g. ``corpus_path("medians.geo")``."""
    return resources.files(__name__) / name


def names() -> list:
    return sorted(p.name for p in resources.files(__name__).iterdir() if p.name.endswith(".geo"))
