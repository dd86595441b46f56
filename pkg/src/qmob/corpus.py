"""The shipped example documents (``qmob/data/*.qrep``)."""

from __future__ import annotations

from importlib import resources
from typing import List

from .qrep import QrepDocument, parse

_POWER_NAMES = {1: "single", 2: "squared", 3: "cubed", 4: "fourth"}


def names() -> List[str]:
    return sorted(p.name[:-5] for p in resources.files("qmob").joinpath("data").iterdir()
                  if p.name.endswith(".qrep"))


def path(name: str):
    return resources.files("qmob").joinpath("data", f"{name}.qrep")


def text(name: str) -> str:
    return path(name).read_text(encoding="utf-8")


def load(name: str) -> QrepDocument:
    return parse(text(name))


def simple_power_name(t: int, p: int) -> str:
    """Corpus name of ``S(1)^t`` over ``F_p`` on the one-vertex quiver."""
    return f"s1_{_POWER_NAMES[t]}_f{p}"
