"""Bicolored multigraphs, tie-downs, contraction and the JSON interchange format.

Vertices are 0-based internally.  The JSON format and the CLI use 1-based
vertex indices.  The order of ``edges`` is the base ordering, and every
non-loop edge is stored with ``u < v`` (the base orientation points u -> v).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

RED = "red"
BLACK = "black"
COLORS = (RED, BLACK)


class GraphFormatError(ValueError):
    """Raised for malformed graph documents."""


@dataclass(frozen=True)
class Edge:
    id: str
    u: int
    v: int
    color: str = BLACK

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    @property
    def is_red(self) -> bool:
        return self.color == RED


@dataclass(frozen=True)
class FrameSignature:
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 0 or self.b < 0 or self.a + self.b < 1:
            raise ValueError(f"bad frame signature ({self.a},{self.b})")

    @property
    def k(self) -> int:
        return self.a + self.b

    @classmethod
    def color_blind(cls, k: int) -> "FrameSignature":
        """All-black signature used for body-and-bar sparsity counts."""
        return cls(1, k - 1) if k > 1 else cls(1, 0)


@dataclass(frozen=True)
class BicoloredMultigraph:
    n: int
    edges: tuple[Edge, ...] = ()
    _index: Mapping[str, int] = field(default=None, compare=False, repr=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphFormatError("a graph needs at least one vertex")
        edges = tuple(self.edges)
        object.__setattr__(self, "edges", edges)
        index: dict[str, int] = {}
        for i, e in enumerate(edges):
            if e.id in index:
                raise GraphFormatError(f"duplicate edge id {e.id!r}")
            if e.color not in COLORS:
                raise GraphFormatError(f"edge {e.id!r}: unknown color {e.color!r}")
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise GraphFormatError(f"edge {e.id!r}: vertex out of range")
            if e.u > e.v:
                raise GraphFormatError(f"edge {e.id!r}: endpoints must satisfy tail <= head")
            index[e.id] = i
        object.__setattr__(self, "_index", index)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def ids(self) -> list[str]:
        return [e.id for e in self.edges]

    def position(self, edge_id: str) -> int:
        return self._index[edge_id]

    def edge(self, edge_id: str) -> Edge:
        return self.edges[self._index[edge_id]]

    def __contains__(self, edge_id: object) -> bool:
        return edge_id in self._index

    @property
    def loops(self) -> list[Edge]:
        return [e for e in self.edges if e.is_loop]

    @property
    def proper_edges(self) -> list[Edge]:
        return [e for e in self.edges if not e.is_loop]

    def all_black(self) -> bool:
        return all(e.color == BLACK for e in self.edges)

    def with_edges(self, edges: Iterable[Edge], n: int | None = None) -> "BicoloredMultigraph":
        return BicoloredMultigraph(self.n if n is None else n, tuple(edges))

    def recolored(self, color: str = BLACK) -> "BicoloredMultigraph":
        return self.with_edges(Edge(e.id, e.u, e.v, color) for e in self.edges)

    def subgraph(self, edge_ids: Iterable[str]) -> "BicoloredMultigraph":
        """Same vertex set, only the listed edges (base order kept)."""
        keep = set(edge_ids)
        return self.with_edges(e for e in self.edges if e.id in keep)

    def without(self, edge_ids: Iterable[str]) -> "BicoloredMultigraph":
        drop = set(edge_ids)
        return self.with_edges(e for e in self.edges if e.id not in drop)

    def plus(self, *edges: Edge) -> "BicoloredMultigraph":
        return self.with_edges(self.edges + tuple(edges))


def make_edge(edge_id: str, x: int, y: int, color: str = BLACK) -> Edge:
    """Edge between x and y, stored in base orientation."""
    return Edge(edge_id, min(x, y), max(x, y), color)


def fresh_id(g: BicoloredMultigraph, stem: str) -> str:
    cand, i = stem, 1
    while cand in g:
        i += 1
        cand = f"{stem}{i}"
    return cand


# -- tie-downs -----------------------------------------------------------------


@dataclass(frozen=True)
class TieLoop:
    id: str
    vertex: int
    color: str = BLACK


@dataclass(frozen=True)
class TieDown:
    kind: str
    loops: tuple[TieLoop, ...]

    @classmethod
    def standard(cls, vertex: int, sig: FrameSignature, prefix: str = "_t", colored: bool = True) -> "TieDown":
        """k loops at one vertex; with ``colored`` the first a loops are red."""
        loops = tuple(
            TieLoop(f"{prefix}{i + 1}", vertex, RED if (colored and i < sig.a and sig.b > 0) else BLACK)
            for i in range(sig.k)
        )
        return cls("standard", loops)

    @classmethod
    def generalized(cls, loops: Iterable[TieLoop]) -> "TieDown":
        return cls("generalized", tuple(loops))

    @property
    def ids(self) -> list[str]:
        return [l.id for l in self.loops]

    def vertex(self) -> int | None:
        return self.loops[0].vertex if self.kind == "standard" and self.loops else None


def apply_tie_down(g: BicoloredMultigraph, td: TieDown | None) -> BicoloredMultigraph:
    """Append the tie-down loops after the graph's edges."""
    if td is None:
        return g
    for l in td.loops:
        if l.id in g:
            raise GraphFormatError(f"tie-down loop id {l.id!r} collides with an edge id")
    return g.plus(*(Edge(l.id, l.vertex, l.vertex, l.color) for l in td.loops))


def grounded(g: BicoloredMultigraph) -> BicoloredMultigraph:
    """Replace every loop by an edge to a new ground vertex (index n).

    A tied-down graph is independent exactly when its grounded version is
    [a,b]-sparse, so loops can be handled by the ordinary pebble game.
    """
    ground = g.n
    return BicoloredMultigraph(
        g.n + 1, tuple(Edge(e.id, e.u, ground, e.color) if e.is_loop else e for e in g.edges)
    )


# -- contraction -------------------------------------------------------------------


@dataclass(frozen=True)
class ContractionMap:
    vertex_map: tuple[int, ...]
    removed: frozenset[str]

    def __call__(self, v: int) -> int:
        return self.vertex_map[v]


def _components(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in pairs:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    return [find(x) for x in range(n)]


def contract_many(
    g: BicoloredMultigraph, blocks: Sequence[Iterable[str]]
) -> tuple[BicoloredMultigraph, ContractionMap]:
    """Contract several edge sets at once; overlapping vertex spans merge."""
    removed: set[str] = set()
    pairs: list[tuple[int, int]] = []
    for block in blocks:
        ids = set(block)
        unknown = ids - set(g.ids)
        if unknown:
            raise GraphFormatError(f"unknown edge ids {sorted(unknown)}")
        span = sorted({v for i in ids for v in (g.edge(i).u, g.edge(i).v)})
        comp = _components(g.n, ((g.edge(i).u, g.edge(i).v) for i in ids))
        if len({comp[v] for v in span}) > 1:
            raise GraphFormatError("block does not induce a connected subgraph")
        removed |= ids
        pairs.extend((span[0], v) for v in span[1:])
    rep = _components(g.n, pairs)
    reps = sorted(set(rep))
    new_index = {r: i for i, r in enumerate(reps)}
    vmap = tuple(new_index[rep[v]] for v in range(g.n))
    edges = [make_edge(e.id, vmap[e.u], vmap[e.v], e.color) for e in g.edges if e.id not in removed]
    return BicoloredMultigraph(len(reps), tuple(edges)), ContractionMap(vmap, frozenset(removed))


def contract(g: BicoloredMultigraph, block: Iterable[str]) -> tuple[BicoloredMultigraph, ContractionMap]:
    """Merge the vertices spanned by ``block`` into its smallest vertex and drop the block."""
    return contract_many(g, [list(block)])


def induced_subgraph(g: BicoloredMultigraph, vertices: Iterable[int]) -> BicoloredMultigraph:
    vs = sorted(set(vertices))
    if not vs:
        raise GraphFormatError("induced subgraph needs at least one vertex")
    if vs[0] < 0 or vs[-1] >= g.n:
        raise GraphFormatError("vertex out of range")
    pos = {v: i for i, v in enumerate(vs)}
    edges = [Edge(e.id, pos[e.u], pos[e.v], e.color) for e in g.edges if e.u in pos and e.v in pos]
    return BicoloredMultigraph(len(vs), tuple(edges))


# -- JSON documents ------------------------------------------------------------------


@dataclass(frozen=True)
class GraphDocument:
    graph: BicoloredMultigraph
    sig: FrameSignature
    tie_down: TieDown | None = None
    name: str | None = None


def _vertex(raw: object, n: int, where: str) -> int:
    if not isinstance(raw, int) or isinstance(raw, bool):
        raise GraphFormatError(f"{where}: vertex must be an integer")
    if not 1 <= raw <= n:
        raise GraphFormatError(f"{where}: vertex {raw} out of range 1..{n}")
    return raw - 1


def document_from_dict(data: Mapping) -> GraphDocument:
    if not isinstance(data, Mapping):
        raise GraphFormatError("document must be a JSON object")
    n = data.get("vertices")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise GraphFormatError("'vertices' must be a positive integer")
    edges: list[Edge] = []
    for idx, raw in enumerate(data.get("edges", [])):
        where = f"edges[{idx}]"
        if not isinstance(raw, Mapping):
            raise GraphFormatError(f"{where}: expected an object")
        eid = raw.get("id")
        if not isinstance(eid, str) or not eid:
            raise GraphFormatError(f"{where}: 'id' must be a non-empty string")
        color = raw.get("color", BLACK)
        if color not in COLORS:
            raise GraphFormatError(f"{where}: unknown color {color!r}")
        t = _vertex(raw.get("tail"), n, where)
        h = _vertex(raw.get("head"), n, where)
        edges.append(make_edge(eid, t, h, color))
    g = BicoloredMultigraph(n, tuple(edges))
    a = data.get("a")
    b = data.get("b")
    if a is None and b is None:
        k = data.get("k", 3)
        sig = FrameSignature.color_blind(k)
    else:
        if not isinstance(a, int) or not isinstance(b, int):
            raise GraphFormatError("'a' and 'b' must be integers")
        sig = FrameSignature(a, b)
    td = None
    raw_td = data.get("tie_down")
    if raw_td is not None:
        kind = raw_td.get("kind")
        if kind == "standard":
            td = TieDown.standard(_vertex(raw_td.get("vertex", 1), n, "tie_down"), sig, colored=not g.all_black())
        elif kind == "generalized":
            loops = []
            for idx, rl in enumerate(raw_td.get("loops", [])):
                where = f"tie_down.loops[{idx}]"
                color = rl.get("color", BLACK)
                if color not in COLORS:
                    raise GraphFormatError(f"{where}: unknown color {color!r}")
                loops.append(TieLoop(str(rl.get("id", f"_t{idx + 1}")), _vertex(rl.get("vertex"), n, where), color))
            td = TieDown.generalized(loops)
            if len(loops) != sig.k:
                raise GraphFormatError(f"generalized tie-down needs {sig.k} loops, got {len(loops)}")
        else:
            raise GraphFormatError(f"tie_down: unknown kind {kind!r}")
        for l in td.loops:
            if l.id in g:
                raise GraphFormatError(f"tie-down loop id {l.id!r} collides with an edge id")
    return GraphDocument(g, sig, td, data.get("name"))


def parse_document(text: str) -> GraphDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return document_from_dict(data)


def parse_graph(text: str) -> BicoloredMultigraph:
    return parse_document(text).graph


def graph_to_dict(g: BicoloredMultigraph) -> dict:
    return {
        "vertices": g.n,
        "edges": [{"id": e.id, "tail": e.u + 1, "head": e.v + 1, "color": e.color} for e in g.edges],
    }


def document_to_dict(doc: GraphDocument) -> dict:
    out: dict = {}
    if doc.name:
        out["name"] = doc.name
    out.update(graph_to_dict(doc.graph))
    out["a"] = doc.sig.a
    out["b"] = doc.sig.b
    if doc.tie_down is not None:
        if doc.tie_down.kind == "standard":
            out["tie_down"] = {"kind": "standard", "vertex": doc.tie_down.loops[0].vertex + 1}
        else:
            out["tie_down"] = {
                "kind": "generalized",
                "loops": [{"id": l.id, "vertex": l.vertex + 1, "color": l.color} for l in doc.tie_down.loops],
            }
    return out


def serialize_graph(g: BicoloredMultigraph) -> str:
    return json.dumps(graph_to_dict(g), indent=1)
