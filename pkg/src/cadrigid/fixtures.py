"""The bundled example corpus."""

from __future__ import annotations

import json
from importlib import resources

from .gc import Certificate, parse_certificate
from .graph import GraphDocument, document_from_dict
from .rigidity import Labeling, labeling_from_dict

GRAPHS = (
    "empty",
    "doubled_triangle",
    "doubled_k4",
    "two_doubled_triangles",
    "braced_four_cycle",
    "quadrupled_triangle",
)
CASE_STUDIES = ("doubled_triangle", "braced_four_cycle", "quadrupled_triangle")


def path(name: str):
    return resources.files("cadrigid") / "data" / name


def read_text(name: str) -> str:
    return path(name).read_text(encoding="utf-8")


def graph(name: str) -> GraphDocument:
    return document_from_dict(json.loads(read_text(f"{name}.json")))


def embedding(name: str, kind: str = "generic") -> Labeling:
    return labeling_from_dict(json.loads(read_text(f"{name}_{kind}.json")))


def embedding_data(name: str, kind: str = "generic") -> dict:
    return json.loads(read_text(f"{name}_{kind}.json"))


def certificate(name: str) -> Certificate:
    return parse_certificate(read_text(f"{name}.cert.json"))
