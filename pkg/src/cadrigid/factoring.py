"""Factor graphs of the pure condition.

Body-and-bar graphs are split by contracting (k,k+1)-circuits.  Coloured
graphs that are irreducible as uncoloured graphs are split further by
replacing edges with loops on their fan tails.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .bracket import assign_loop_labels, seed_fan
from .graph import (
    BLACK,
    RED,
    BicoloredMultigraph,
    Edge,
    FrameSignature,
    TieDown,
    contract_many,
    make_edge,
)
from .pebble import circuit_with, fundamental_circuit, play, play_kl, play_uncolored
from .rigidity import pure_condition_value


class FactoringError(ValueError):
    pass


@dataclass
class Factor:
    """A factor graph.  ``graph`` already carries its loops (tie-down or replacement)."""

    graph: BicoloredMultigraph
    edge_ids: list[str]
    origin: str  # "circuit", "residual" or "split"
    depth: int = 0

    @property
    def loop_ids(self) -> list[str]:
        return [e.id for e in self.graph.loops]

    def to_dict(self) -> dict:
        return {
            "edges": list(self.edge_ids),
            "vertices": self.graph.n,
            "loops": [{"id": e.id, "vertex": e.u + 1, "color": e.color} for e in self.graph.loops],
            "origin": self.origin,
            "depth": self.depth,
        }


@dataclass
class FactorDecomposition:
    factors: list[Factor]
    sig: FrameSignature
    steps: list[dict] = field(default_factory=list)

    def edge_sets(self) -> list[set[str]]:
        return [set(f.edge_ids) for f in self.factors]

    def to_dict(self) -> dict:
        return {"a": self.sig.a, "b": self.sig.b, "factors": [f.to_dict() for f in self.factors], "steps": self.steps}


def loop_color(replaced: Edge) -> str:
    """Colour of a loop that stands in for an edge.  Kept in one place on purpose."""
    return replaced.color


def _is_colored(g: BicoloredMultigraph, sig: FrameSignature) -> bool:
    return sig.b > 0 and any(e.color == RED for e in g.edges)


def _standard_loops(vertex: int, sig: FrameSignature, colored: bool) -> list[Edge]:
    td = TieDown.standard(vertex, sig, colored=colored)
    return [Edge(l.id, l.vertex, l.vertex, l.color) for l in td.loops]


# -- body-and-bar ----------------------------------------------------------------------------


def _span_graph(g: BicoloredMultigraph, ids: Sequence[str]) -> BicoloredMultigraph:
    wanted = set(ids)
    verts = sorted({v for e in g.edges if e.id in wanted for v in (e.u, e.v)})
    pos = {v: i for i, v in enumerate(verts)}
    edges = [make_edge(e.id, pos[e.u], pos[e.v], e.color) for e in g.edges if e.id in wanted]
    return BicoloredMultigraph(len(verts), tuple(edges))


def _uncolored_circuits(g: BicoloredMultigraph, k: int) -> list[list[str]]:
    """Distinct (k,k+1)-circuits of the edges rejected by the (k,k+1) game."""
    verdict, cfg = play_kl(g, k, k + 1)
    seen: set[frozenset[str]] = set()
    out = []
    for eid in verdict.rejected:
        e = g.edge(eid)
        if e.is_loop:
            raise FactoringError(f"loop {eid!r} in an untied graph")
        span = {v for x in fundamental_circuit(cfg, eid) for v in (g.edge(x).u, g.edge(x).v)} | {e.u, e.v}
        ids = [x.id for x in g.edges if x.u in span and x.v in span]
        key = frozenset(ids)
        if key not in seen:
            seen.add(key)
            out.append(ids)
    return out


def factor_body_and_bar(g: BicoloredMultigraph, k: int) -> FactorDecomposition:
    """Factor graphs of a (k,k)-tight graph by repeated circuit contraction.

    Colours are ignored; each returned factor carries a standard tie-down
    at its first vertex.
    """
    if g.loops:
        raise FactoringError("body-and-bar factoring expects an untied graph")
    verdict, _ = play_kl(g, k, k)
    if not verdict.is_tight:
        raise FactoringError(f"graph is not ({k},{k})-tight: {verdict.verdict.value}")
    sig = FrameSignature.color_blind(k)
    factors: list[Factor] = []
    steps: list[dict] = []
    cur = g
    depth = 0
    while cur.m:
        circuits = _uncolored_circuits(cur, k)
        if not circuits:
            raise FactoringError("a tight graph with edges must contain a circuit")
        for ids in circuits:
            h = _span_graph(cur, ids)
            tied = h.plus(*_standard_loops(0, sig, colored=False))
            factors.append(Factor(tied, list(ids), "circuit" if depth == 0 else "residual", depth))
        steps.append({"depth": depth, "vertices": cur.n, "circuits": [list(c) for c in circuits]})
        cur, _ = contract_many(cur, circuits)
        depth += 1
    return FactorDecomposition(factors, sig, steps)


# -- body-and-cad ----------------------------------------------------------------------------


def _copy_of(g: BicoloredMultigraph, e: Edge) -> Edge:
    stem = e.id + "'"
    while stem in g:
        stem += "'"
    return Edge(stem, e.u, e.v, e.color)


def proper_circuit(tied: BicoloredMultigraph, sig: FrameSignature) -> tuple[str, list[str]] | None:
    """First real edge (base order) whose copy closes a circuit missing some real edge."""
    real = [e for e in tied.edges if not e.is_loop]
    everything = {e.id for e in real}
    for e in real:
        copy = _copy_of(tied, e)
        circ = circuit_with(tied, sig, copy)
        if circ is None:
            raise FactoringError("tied graph plus an edge copy stayed independent")
        members = {x for x in circ if not tied.edge(x).is_loop} | {e.id}
        if members != everything:
            return e.id, sorted(members, key=tied.position)
    return None


def _replace_by_loops(tied: BicoloredMultigraph, ids: set[str], tails: Mapping[str, int]) -> BicoloredMultigraph:
    edges = []
    for e in tied.edges:
        if e.id in ids and not e.is_loop:
            t = tails[e.id]
            edges.append(Edge(e.id, t, t, loop_color(e)))
        else:
            edges.append(e)
    return BicoloredMultigraph(tied.n, tuple(edges))


def factor_body_and_cad(tied: BicoloredMultigraph, sig: FrameSignature, depth: int = 0) -> list[Factor]:
    """Split a tied-down [a,b]-graph into graphs with irreducible pure conditions."""
    real = [e.id for e in tied.edges if not e.is_loop]
    if not real:
        return []
    found = proper_circuit(tied, sig)
    if found is None:
        return [Factor(tied, real, "split" if depth else "circuit", depth)]
    _, h = found
    fan = seed_fan(tied, sig, colored=_is_colored(tied, sig))
    tails = {e.id: t for e, t in zip(tied.edges, fan.tails)}
    hset = set(h)
    rest = {x for x in real if x not in hset}
    g_prime = _replace_by_loops(tied, hset, tails)
    h_prime = _replace_by_loops(tied, rest, tails)
    return factor_body_and_cad(g_prime, sig, depth + 1) + factor_body_and_cad(h_prime, sig, depth + 1)


def factor(g: BicoloredMultigraph, sig: FrameSignature) -> FactorDecomposition:
    """Full pipeline: uncoloured circuit contraction, then coloured splitting."""
    base = factor_body_and_bar(g.recolored(BLACK), sig.k)
    if not _is_colored(g, sig):
        return FactorDecomposition(base.factors, sig, base.steps)
    verdict, _ = play(g, sig)
    if not verdict.is_tight:
        raise FactoringError(f"graph is not [{sig.a},{sig.b}]-tight: {verdict.verdict.value}")
    colors = {e.id: e.color for e in g.edges}
    out: list[Factor] = []
    steps = list(base.steps)
    for f in base.factors:
        edges = [Edge(e.id, e.u, e.v, colors[e.id]) for e in f.graph.edges if not e.is_loop]
        plain = BicoloredMultigraph(f.graph.n, tuple(edges))
        tied = plain.plus(*_standard_loops(0, sig, colored=True))
        pieces = factor_body_and_cad(tied, sig, f.depth)
        if len(pieces) > 1:
            steps.append({"split": list(f.edge_ids), "into": [p.edge_ids for p in pieces]})
        out.extend(pieces)
    return FactorDecomposition(out, sig, steps)


def is_irreducible(g: BicoloredMultigraph, sig: FrameSignature) -> bool:
    """Every same-coloured edge copy closes a circuit containing every edge."""
    verdict, _ = play(g, sig) if _is_colored(g, sig) else play_uncolored(g.recolored(BLACK), sig.k)
    if not verdict.is_tight:
        raise FactoringError("irreducibility is defined for tight graphs")
    everything = {e.id for e in g.edges if not e.is_loop}
    for e in g.edges:
        if e.is_loop:
            continue
        copy = _copy_of(g, e)
        circ = circuit_with(g, sig if _is_colored(g, sig) else None, copy, k=sig.k)
        if circ is None or ({x for x in circ if not g.edge(x).is_loop} | {e.id}) != everything:
            return False
    return True


# -- values ----------------------------------------------------------------------------------


def factor_labels(f: Factor, sig: FrameSignature, labeling: Mapping[str, Sequence]) -> dict:
    labels = dict(assign_loop_labels(f.graph, sig))
    for eid in f.edge_ids:
        labels[eid] = tuple(labeling[eid])
    return labels


def factor_value(f: Factor, sig: FrameSignature, labeling: Mapping[str, Sequence]) -> Fraction:
    """Pure-condition value of one factor graph with loops set to basis vectors."""
    return pure_condition_value(f.graph, sig, factor_labels(f, sig, labeling), None)


def factor_values(dec: FactorDecomposition, labeling: Mapping[str, Sequence]) -> list[Fraction]:
    return [factor_value(f, dec.sig, labeling) for f in dec.factors]


def whole_value(g: BicoloredMultigraph, sig: FrameSignature, labeling: Mapping[str, Sequence], vertex: int = 0) -> Fraction:
    td = TieDown.standard(vertex, sig, colored=_is_colored(g, sig))
    return pure_condition_value(g, sig, labeling, td)
