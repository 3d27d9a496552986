"""Access to the bundled JSON schemas."""

import json
from importlib import resources

NAMES = ("certificate", "polysystem", "report", "transcript")


def load_schema(name: str) -> dict:
    if name not in NAMES:
        raise KeyError(f"unknown schema {name!r}")
    return json.loads(resources.files(__package__).joinpath("schemas", f"{name}.json").read_text())
