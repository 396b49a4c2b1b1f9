"""Rigidity matrices, pure-condition values, stresses and bar labels."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import bareiss_det, left_nullspace, rank, to_fraction
from .graph import RED, BicoloredMultigraph, FrameSignature, TieDown, apply_tie_down

Vector = tuple[Fraction, ...]
Labeling = dict[str, Vector]


class LabelError(ValueError):
    pass


@dataclass
class RigidityMatrix:
    rows: list[list[Fraction]]
    row_ids: list[str]
    n: int
    k: int

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.n * self.k

    def is_square(self) -> bool:
        return len(self.rows) == self.n * self.k


def unit(k: int, i: int) -> Vector:
    return tuple(Fraction(int(j == i)) for j in range(k))


def tie_down_labels(td: TieDown | None, k: int) -> Labeling:
    """Standard basis vectors for tie-down loops, in loop order."""
    if td is None:
        return {}
    return {l.id: unit(k, i % k) for i, l in enumerate(td.loops)}


def random_labeling(
    g: BicoloredMultigraph, sig: FrameSignature, rng: random.Random, spread: int = 50, skip: Iterable[str] = ()
) -> Labeling:
    """Random rational labels with the red zero-suffix."""
    skip = set(skip)
    out: Labeling = {}
    for e in g.edges:
        if e.id in skip:
            continue
        vals = [Fraction(rng.randint(-spread, spread), rng.randint(1, spread)) for _ in range(sig.k)]
        if e.color == RED:
            for t in range(sig.a, sig.k):
                vals[t] = Fraction(0)
        out[e.id] = tuple(vals)
    return out


def check_labeling(g: BicoloredMultigraph, sig: FrameSignature, labels: Mapping[str, Sequence[Fraction]]) -> None:
    for e in g.edges:
        if e.id not in labels:
            raise LabelError(f"missing label for edge {e.id!r}")
        vec = labels[e.id]
        if len(vec) != sig.k:
            raise LabelError(f"label of {e.id!r} has length {len(vec)}, expected {sig.k}")
        if e.color == RED and any(x != 0 for x in vec[sig.a :]):
            raise LabelError(f"red edge {e.id!r} must be zero in its last {sig.b} coordinates")


def build_matrix(
    g: BicoloredMultigraph,
    sig: FrameSignature,
    labeling: Mapping[str, Sequence[Fraction]],
    tie_down: TieDown | None = None,
) -> RigidityMatrix:
    """Rows in base order (loops already in g included), tie-down rows last.

    Row e = uv with u < v has +p(e) in the block of u and -p(e) in the block
    of v; a loop at v has p(e) in v's block only.  Columns are vertex-major.
    """
    full = apply_tie_down(g, tie_down)
    labels = dict(tie_down_labels(tie_down, sig.k))
    labels.update({key: tuple(map(to_fraction, val)) for key, val in labeling.items()})
    check_labeling(full, sig, labels)
    k = sig.k
    rows: list[list[Fraction]] = []
    for e in full.edges:
        row = [Fraction(0)] * (full.n * k)
        vec = labels[e.id]
        for t in range(k):
            row[e.u * k + t] = vec[t]
        if not e.is_loop:
            for t in range(k):
                row[e.v * k + t] = -vec[t]
        rows.append(row)
    return RigidityMatrix(rows, [e.id for e in full.edges], full.n, k)


def pure_condition_value(
    g: BicoloredMultigraph,
    sig: FrameSignature,
    labeling: Mapping[str, Sequence[Fraction]],
    tie_down: TieDown | None = None,
) -> Fraction:
    """Exact determinant of the tied-down rigidity matrix."""
    mat = build_matrix(g, sig, labeling, tie_down)
    if not mat.is_square():
        r, c = mat.shape
        raise ValueError(f"tied-down matrix is {r}x{c}, not square")
    return bareiss_det(mat.rows)


def pure_condition_float(
    g: BicoloredMultigraph,
    sig: FrameSignature,
    labeling: Mapping[str, Sequence[Fraction]],
    tie_down: TieDown | None = None,
    tol: float = 1e-9,
) -> tuple[float, float, bool]:
    """Floating point determinant.

    Returns (det, normalized, vanishes) where ``normalized`` divides the
    determinant by the product of row norms and ``vanishes`` compares it
    against ``tol``.
    """
    import numpy as np

    mat = build_matrix(g, sig, labeling, tie_down)
    if not mat.is_square():
        raise ValueError("tied-down matrix is not square")
    arr = np.array([[float(x) for x in row] for row in mat.rows], dtype=float)
    if arr.size == 0:
        return 1.0, 1.0, False
    norms = np.linalg.norm(arr, axis=1)
    if np.any(norms == 0):
        return 0.0, 0.0, True
    sign, logdet = np.linalg.slogdet(arr / norms[:, None])
    normalized = float(sign * np.exp(logdet))
    det = float(normalized * np.prod(norms))
    return det, normalized, abs(normalized) < tol


@dataclass(frozen=True)
class Stress:
    weights: dict[str, Fraction]

    @property
    def support(self) -> list[str]:
        return [key for key, w in self.weights.items() if w != 0]


def stresses(
    g: BicoloredMultigraph,
    sig: FrameSignature,
    labeling: Mapping[str, Sequence[Fraction]],
    tie_down: TieDown | None = None,
) -> list[Stress]:
    """Exact basis of the left null space of the (tied-down) rigidity matrix."""
    mat = build_matrix(g, sig, labeling, tie_down)
    basis = left_nullspace(mat.rows)
    return [Stress(dict(zip(mat.row_ids, vec))) for vec in basis]


def matrix_rank(mat: RigidityMatrix) -> int:
    return rank(mat.rows)


# -- geometry ----------------------------------------------------------------------------


def bar_label_2d(p1: Sequence, p2: Sequence) -> Vector:
    """Homogeneous coordinates of the line through two points of the plane."""
    x1, y1 = map(to_fraction, p1)
    x2, y2 = map(to_fraction, p2)
    if (x1, y1) == (x2, y2):
        raise LabelError("bar endpoints coincide")
    return (y1 - y2, x2 - x1, x1 * y2 - x2 * y1)


def bar_label_3d(p1: Sequence, p2: Sequence) -> Vector:
    """Plücker coordinates (direction, moment) of the line through two points."""
    a = tuple(map(to_fraction, p1))
    b = tuple(map(to_fraction, p2))
    if a == b:
        raise LabelError("bar endpoints coincide")
    d = tuple(y - x for x, y in zip(a, b))
    m = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
    return d + m


def plucker_quadric(x: Sequence[Fraction]) -> Fraction:
    return x[0] * x[3] + x[1] * x[4] + x[2] * x[5]


def labeling_from_dict(data: Mapping) -> Labeling:
    """Read an embedding document (labels, bars_2d or bars_3d)."""
    if not isinstance(data, Mapping):
        raise LabelError("embedding must be a JSON object")
    out: Labeling = {}
    for key, vec in data.get("labels", {}).items():
        try:
            out[key] = tuple(to_fraction(x) for x in vec)
        except ValueError as exc:
            raise LabelError(f"labels[{key!r}]: {exc}") from exc
    for key, (p, q) in data.get("bars_2d", {}).items():
        out[key] = bar_label_2d(p, q)
    for key, (p, q) in data.get("bars_3d", {}).items():
        out[key] = bar_label_3d(p, q)
    return out


def parse_labeling(text: str) -> Labeling:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LabelError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return labeling_from_dict(data)
