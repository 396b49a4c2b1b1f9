"""Combinatorial and algebraic rigidity checks for body-and-cad designs."""

from .bracket import (
    BracketPolynomial,
    FanDiagram,
    enumerate_ab_fans,
    enumerate_fans,
    evaluate_bracket_polynomial,
    pure_condition_bracket,
    tree_decomposition_expansion,
)
from .factoring import factor, factor_values
from .gc import Extensor, certify_equivalence, join, meet
from .graph import BicoloredMultigraph, FrameSignature, TieDown, make_edge, parse_document
from .pebble import Verdict, play, sparsity_oracle
from .rigidity import build_matrix, pure_condition_value, stresses

__version__ = "0.1.0"

__all__ = [
    "BicoloredMultigraph",
    "BracketPolynomial",
    "Extensor",
    "FanDiagram",
    "FrameSignature",
    "TieDown",
    "Verdict",
    "build_matrix",
    "certify_equivalence",
    "enumerate_ab_fans",
    "enumerate_fans",
    "evaluate_bracket_polynomial",
    "factor",
    "factor_values",
    "join",
    "make_edge",
    "meet",
    "parse_document",
    "play",
    "pure_condition_bracket",
    "pure_condition_value",
    "sparsity_oracle",
    "stresses",
    "tree_decomposition_expansion",
]
