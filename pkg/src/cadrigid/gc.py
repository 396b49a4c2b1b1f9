"""Grassmann-Cayley join and meet on coordinate extensors."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping, Sequence

from .exact import to_fraction


class GCError(ValueError):
    pass


def _merge_sign(s: Sequence[int], t: Sequence[int]) -> int:
    """Sign of the permutation sorting the concatenation s + t (both sorted)."""
    inv = 0
    j = 0
    for x in s:
        while j < len(t) and t[j] < x:
            j += 1
        inv += j
    return -1 if inv % 2 else 1


@dataclass(frozen=True)
class Extensor:
    """Coefficients on the basis e_S of the step-s exterior power of Q^k."""

    k: int
    step: int
    coeffs: tuple[tuple[tuple[int, ...], Fraction], ...]

    @staticmethod
    def make(k: int, step: int, coeffs: Mapping[tuple[int, ...], Fraction]) -> "Extensor":
        items = tuple(sorted((s, Fraction(c)) for s, c in coeffs.items() if c != 0))
        return Extensor(k, step, items)

    @staticmethod
    def vector(vec: Sequence) -> "Extensor":
        vals = [to_fraction(x) for x in vec]
        return Extensor.make(len(vals), 1, {(i,): x for i, x in enumerate(vals)})

    @staticmethod
    def scalar(k: int, x) -> "Extensor":
        return Extensor.make(k, 0, {(): to_fraction(x)})

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def value(self) -> Fraction:
        """The scalar of a step-0 or step-k extensor."""
        if self.step not in (0, self.k):
            raise GCError(f"extensor of step {self.step} is not a scalar")
        return self.as_dict().get(tuple(range(self.step)), Fraction(0))

    def vector_form(self) -> list[Fraction]:
        """All C(k, step) coefficients in lexicographic basis order."""
        d = self.as_dict()
        return [d.get(s, Fraction(0)) for s in combinations(range(self.k), self.step)]

    def scaled(self, c) -> "Extensor":
        c = Fraction(c)
        return Extensor.make(self.k, self.step, {s: x * c for s, x in self.coeffs})

    def __add__(self, other: "Extensor") -> "Extensor":
        if (self.k, self.step) != (other.k, other.step):
            raise GCError("cannot add extensors of different shape")
        d = self.as_dict()
        for s, x in other.coeffs:
            d[s] = d.get(s, Fraction(0)) + x
        return Extensor.make(self.k, self.step, d)


def join(x: Extensor, y: Extensor) -> Extensor:
    if x.k != y.k:
        raise GCError("extensors live in different dimensions")
    if x.step + y.step > x.k:
        raise GCError(f"join of steps {x.step} and {y.step} exceeds {x.k}")
    out: dict[tuple[int, ...], Fraction] = {}
    for s, a in x.coeffs:
        for t, b in y.coeffs:
            if set(s) & set(t):
                continue
            key = tuple(sorted(s + t))
            out[key] = out.get(key, Fraction(0)) + _merge_sign(s, t) * a * b
    return Extensor.make(x.k, x.step + y.step, out)


def meet(x: Extensor, y: Extensor) -> Extensor:
    """Shuffle formula: split x into a (k-d)-part bracketed with y and the rest."""
    k, c, d = x.k, x.step, y.step
    if y.k != k:
        raise GCError("extensors live in different dimensions")
    if c + d < k:
        raise GCError(f"meet of steps {c} and {d} needs at least {k}")
    ycoef = y.as_dict()
    full = tuple(range(k))
    out: dict[tuple[int, ...], Fraction] = {}
    for s, a in x.coeffs:
        for s1 in combinations(s, k - d):
            s2 = tuple(v for v in s if v not in s1)
            t = tuple(v for v in full if v not in s1)
            b = ycoef.get(t)
            if not b:
                continue
            sign = _merge_sign(s1, s2) * _merge_sign(s1, t)
            out[s2] = out.get(s2, Fraction(0)) + sign * a * b
    return Extensor.make(k, c + d - k, out)


# -- expressions -------------------------------------------------------------------------


@dataclass(frozen=True)
class GCExpression:
    op: str  # "atom", "join" or "meet"
    atom: str = ""
    args: tuple["GCExpression", ...] = ()

    def atoms(self) -> list[str]:
        if self.op == "atom":
            return [self.atom]
        return [a for arg in self.args for a in arg.atoms()]

    def step(self, k: int) -> int:
        if self.op == "atom":
            return 1
        steps = [arg.step(k) for arg in self.args]
        if self.op == "join":
            return sum(steps)
        total = steps[0]
        for s in steps[1:]:
            total = total + s - k
        return total

    def to_text(self) -> str:
        if self.op == "atom":
            return self.atom
        if self.op == "join" and all(arg.op == "atom" for arg in self.args):
            return "".join(arg.atom for arg in self.args)
        sym = " v " if self.op == "join" else " ^ "
        return "(" + sym.join(arg.to_text() for arg in self.args) + ")"


def expression_from_json(node) -> GCExpression:
    if isinstance(node, str):
        return GCExpression("atom", atom=node)
    if isinstance(node, Mapping) and len(node) == 1:
        ((op, args),) = node.items()
        if op in ("join", "meet") and isinstance(args, list) and len(args) >= 2:
            return GCExpression(op, args=tuple(expression_from_json(a) for a in args))
    raise GCError(f"malformed expression node: {json.dumps(node)[:80]}")


def expression_to_json(expr: GCExpression):
    if expr.op == "atom":
        return expr.atom
    return {expr.op: [expression_to_json(a) for a in expr.args]}


@dataclass(frozen=True)
class Certificate:
    k: int
    expr: GCExpression
    name: str = ""


def parse_certificate(text: str) -> Certificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GCError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, Mapping) or "k" not in data or "expr" not in data:
        raise GCError("certificate needs keys 'k' and 'expr'")
    return Certificate(int(data["k"]), expression_from_json(data["expr"]), str(data.get("name", "")))


def evaluate(expr: GCExpression, labeling: Mapping[str, Sequence], k: int) -> Extensor:
    if expr.op == "atom":
        if expr.atom not in labeling:
            raise GCError(f"missing label for {expr.atom!r}")
        vec = Extensor.vector(labeling[expr.atom])
        if vec.k != k:
            raise GCError(f"label of {expr.atom!r} has length {vec.k}, expected {k}")
        return vec
    vals = [evaluate(arg, labeling, k) for arg in expr.args]
    fn = join if expr.op == "join" else meet
    acc = vals[0]
    for v in vals[1:]:
        acc = fn(acc, v)
    return acc


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    constant: Fraction | None
    trials: int

    @property
    def sign(self) -> int | None:
        if self.constant is None:
            return None
        return 1 if self.constant > 0 else -1


def certify_equivalence(
    expr: GCExpression,
    k: int,
    target: Callable[[Mapping[str, Sequence]], Fraction],
    trials: int = 200,
    rng: random.Random | None = None,
    atoms: Sequence[str] = (),
    spread: int = 10**6,
) -> Equivalence:
    """Randomized identity test of ``expr == c * target`` for one constant c."""
    if expr.step(k) not in (0, k):
        raise GCError("expression is not scalar valued")
    rng = rng or random.Random(0)
    names = sorted(set(expr.atoms()) | set(atoms))
    constant: Fraction | None = None
    for _ in range(trials):
        lab = {x: tuple(Fraction(rng.randint(-spread, spread), rng.randint(1, spread)) for _ in range(k)) for x in names}
        lhs = evaluate(expr, lab, k).value()
        rhs = target(lab)
        if rhs == 0 or lhs == 0:
            if lhs != rhs:
                return Equivalence(False, None, trials)
            continue
        ratio = lhs / rhs
        if constant is None:
            constant = ratio
        elif ratio != constant:
            return Equivalence(False, None, trials)
    return Equivalence(constant is not None, constant, trials)


