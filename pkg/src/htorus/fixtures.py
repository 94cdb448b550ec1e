"""Shipped fixtures, verified by SHA-256 at load time.

``data/`` holds:

* ``connected_le6.g6``: every connected graph on 1 to 6 vertices (143 lines),
* ``fig4_k36_k3.json``: a genus-1 rotation system of K_{3,6} plus a triangle on
  the hubs, with the claws alternating between ``c a b`` and ``c b a``,
* ``golden_certificates.json``: solver certificates kept as regression anchors.

``scripts/make_fixtures.py`` regenerates them.
"""

from __future__ import annotations

import hashlib
import json
from importlib import resources

from .graph import Graph, parse_graph6, read_graph6_file
from .scheme import DrawingScheme, RotationSystem

HASHES = {
    "connected_le6.g6": "31986f58fa237c43caaccf3db22c52dc399c804d4af6ff5cac79d73119245984",
    "fig4_k36_k3.json": "df82a6aba6dc5088aca1545df28a6a2c8e8477c8408bc89cef94c340cf86ff50",
    "golden_certificates.json": "11080b7b54741ad7ecf17bd0e5c6bf54b73a0bac500129d76004a39ccecfad2d",
}


class FixtureError(RuntimeError):
    pass


def _path(name: str):
    return resources.files("htorus") / "data" / name


def fixture_bytes(name: str) -> bytes:
    data = _path(name).read_bytes()
    digest = hashlib.sha256(data).hexdigest()
    if digest != HASHES[name]:
        raise FixtureError(f"fixture {name} hash mismatch: {digest}")
    return data


def fixture_hash(name: str) -> str:
    return HASHES[name]


def corpus() -> list[Graph]:
    """All connected graphs with at most six vertices."""
    text = fixture_bytes("connected_le6.g6").decode("ascii")
    return [parse_graph6(line) for line in text.splitlines() if line and not line.startswith(">>")]


def corpus_lines() -> list[str]:
    text = fixture_bytes("connected_le6.g6").decode("ascii")
    return [line for line in text.splitlines() if line and not line.startswith(">>")]


def fig4() -> tuple[Graph, RotationSystem]:
    doc = json.loads(fixture_bytes("fig4_k36_k3.json"))
    g0 = parse_graph6(doc["graph6"])
    g = Graph(g0.n, [tuple(e) for e in doc["edges"]])
    if g != g0:
        raise FixtureError("fig4 edge list disagrees with its graph6 string")
    return g, RotationSystem.from_json(doc["rotations"])


def golden_certificates() -> dict[str, DrawingScheme]:
    doc = json.loads(fixture_bytes("golden_certificates.json"))
    return {name: DrawingScheme.from_dict(d) for name, d in doc.items()}


def load_graph6_file(path) -> list[Graph]:
    return read_graph6_file(path)
