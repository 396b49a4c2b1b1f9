"""Pebble games for (k,l)-sparsity and [a,b]-sparsity.

Two engines live here.  ``KLPebbleGame`` is the classical single-colour
(k,l) game used for colour-blind checks and for the (k,k+1) game of the
body-and-bar factoring.  ``ABPebbleGame`` tracks aqua and black pebbles.  Its
state only ever changes through the six moves (add red, add black, red
reversal, black reversal, pebble swap, pebble flip).  Pebbles are gathered
inside one colour class at a time, and when an edge cannot be added directly
the aqua/black assignment is repaired along a shortest exchange path of the
underlying matroid union, executed with flips.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Sequence

from .graph import BLACK, RED, BicoloredMultigraph, Edge, FrameSignature, grounded

AQUA, BLK = 0, 1
PEBBLE_COLORS = ("aqua", "black")


class PebbleMoveError(RuntimeError):
    """A move was attempted without its precondition."""


class Verdict(str, Enum):
    TIGHT = "tight"
    SPARSE = "sparse"
    DEPENDENT_SPANNING = "dependent_contains_spanning_tight"
    DEPENDENT = "dependent"


@dataclass(frozen=True)
class SparsityVerdict:
    verdict: Verdict
    rejected: tuple[str, ...]
    free_pebbles: int
    free_aqua: int = 0
    free_black: int = 0

    @property
    def is_tight(self) -> bool:
        return self.verdict is Verdict.TIGHT

    @property
    def is_independent(self) -> bool:
        return self.verdict in (Verdict.TIGHT, Verdict.SPARSE)


def _verdict(rejected: Sequence[str], free: int, ell: int) -> Verdict:
    if rejected:
        return Verdict.DEPENDENT_SPANNING if free == ell else Verdict.DEPENDENT
    return Verdict.TIGHT if free == ell else Verdict.SPARSE


# -- single colour (k,l) game ------------------------------------------------------


class KLPebbleGame:
    """The (k,l) pebble game for 0 <= l < 2k with optional component tracking."""

    def __init__(self, n: int, k: int, ell: int, components: bool = False):
        if not (k >= 1 and 0 <= ell < 2 * k):
            raise ValueError(f"(k,l)=({k},{ell}) outside 0 <= l < 2k")
        self.n, self.k, self.ell = n, k, ell
        self.free = [k] * n
        self.out: list[list[int]] = [[] for _ in range(n)]
        self.tail: list[int] = []
        self.head: list[int] = []
        self._mark = [0] * n
        self._stamp = 0
        self.track_components = components and ell == k
        self.comp = [-1] * n
        self._comp_count = 0

    # searching

    def _find_path(self, start: int, forbid: int) -> list[int] | None:
        """Edges of a directed path from ``start`` to a vertex holding a free pebble."""
        self._stamp += 1
        stamp, mark, out, free, head = self._stamp, self._mark, self.out, self.free, self.head
        mark[start] = stamp
        if forbid >= 0:
            mark[forbid] = stamp
        stack = [(start, 0)]
        path: list[int] = []
        while stack:
            v, pos = stack[-1]
            edges = out[v]
            if pos < len(edges):
                stack[-1] = (v, pos + 1)
                e = edges[pos]
                w = head[e]
                if mark[w] == stamp:
                    continue
                mark[w] = stamp
                path.append(e)
                if free[w]:
                    return path
                stack.append((w, 0))
            else:
                stack.pop()
                if path:
                    path.pop()
        return None

    def _reverse_path(self, path: list[int]) -> None:
        tail, head, out, free = self.tail, self.head, self.out, self.free
        free[head[path[-1]]] -= 1
        free[tail[path[0]]] += 1
        for e in path:
            t, h = tail[e], head[e]
            out[t].remove(e)
            out[h].append(e)
            tail[e], head[e] = h, t

    def _gather(self, v: int, want: int, forbid: int) -> bool:
        free = self.free
        while free[v] < want:
            path = self._find_path(v, forbid)
            if path is None:
                return False
            self._reverse_path(path)
        return True

    def collect(self, i: int, j: int) -> bool:
        """Try to bring l+1 free pebbles onto {i, j}."""
        need = self.ell + 1
        if i == j:
            return need <= self.k and self._gather(i, need, -1)
        self._gather(i, min(self.k, need), j)
        return self._gather(j, need - self.free[i], i) if self.free[i] < need else True

    def reach(self, roots: Iterable[int]) -> list[int]:
        self._stamp += 1
        stamp, mark = self._stamp, self._mark
        order = []
        stack = []
        for r in roots:
            if mark[r] != stamp:
                mark[r] = stamp
                stack.append(r)
                order.append(r)
        while stack:
            v = stack.pop()
            for e in self.out[v]:
                w = self.head[e]
                if mark[w] != stamp:
                    mark[w] = stamp
                    stack.append(w)
                    order.append(w)
        return order

    # edges

    def insert(self, i: int, j: int) -> int | None:
        """Add edge ij if independent; return its internal index or None."""
        if self.track_components and i != j and self.comp[i] >= 0 and self.comp[i] == self.comp[j]:
            return None
        if not self.collect(i, j):
            return None
        t, h = (i, j) if self.free[i] > 0 else (j, i)
        e = len(self.tail)
        self.tail.append(t)
        self.head.append(h)
        self.out[t].append(e)
        self.free[t] -= 1
        if self.track_components and i != j:
            self._update_components(i, j)
        return e

    def circuit_vertices(self, i: int, j: int) -> list[int] | None:
        """Vertex set of the minimal block spanning i and j, or None if ij is independent."""
        if self.collect(i, j):
            return None
        if i == j and self.ell >= self.k:
            return []
        return self.reach([i, j])

    def induced_edges(self, vertices: Iterable[int]) -> list[int]:
        return [e for v in vertices for e in self.out[v]]

    def _update_components(self, i: int, j: int) -> None:
        if self.collect(i, j):
            return
        core = set(self.reach([i, j]))
        cand = set(range(self.n)) - core
        cand = {v for v in cand if self.free[v] == 0}
        changed = True
        while changed:
            changed = False
            for v in list(cand):
                if any(self.head[e] not in core and self.head[e] not in cand for e in self.out[v]):
                    cand.discard(v)
                    changed = True
        members = core | cand
        cid = self._comp_count
        self._comp_count += 1
        for v in members:
            self.comp[v] = cid

    def components(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for v, c in enumerate(self.comp):
            if c >= 0:
                groups.setdefault(c, []).append(v)
        return [sorted(g) for g in groups.values() if len(g) > 1]

    @property
    def total_free(self) -> int:
        return sum(self.free)


# -- [a,b] game ------------------------------------------------------------------


Observer = Callable[["ABPebbleGame", str], None]


class ABPebbleGame:
    """The [a,b] pebble game on ``n`` vertices.

    Edges are referred to by integer keys chosen by the caller.  ``observer``
    is called after every move with the game and the move's name.
    """

    def __init__(self, n: int, a: int, b: int, observer: Observer | None = None, components: bool = False):
        if a < 1 or b < 0:
            raise ValueError("the [a,b] game needs a >= 1 and b >= 0")
        self.n, self.a, self.b, self.k = n, a, b, a + b
        self.cap = (a, b)
        self.free = ([a] * n, [b] * n)
        self.out: tuple[list[list[int]], list[list[int]]] = ([[] for _ in range(n)], [[] for _ in range(n)])
        self.ends: dict[int, tuple[int, int]] = {}
        self.red: dict[int, bool] = {}
        self.tail: dict[int, int] = {}
        self.cover: dict[int, int] = {}
        self.observer = observer
        self._mark = [0] * n
        self._stamp = 0
        self.shadow = KLPebbleGame(n, self.k, self.k, components=True) if components else None

    # -- the six moves

    def _emit(self, name: str) -> None:
        if self.observer is not None:
            self.observer(self, name)

    def _head(self, e: int) -> int:
        u, v = self.ends[e]
        return v if self.tail[e] == u else u

    def _place(self, e: int, tail: int, color: int) -> None:
        self.tail[e] = tail
        self.cover[e] = color
        self.out[color][tail].append(e)
        self.out[color][tail].sort()

    def _unplace(self, e: int) -> None:
        self.out[self.cover[e]][self.tail[e]].remove(e)

    def _check_add(self, i: int, j: int) -> None:
        fa, fb = self.free
        if fa[i] + fb[i] + fa[j] + fb[j] < self.k + 1:
            raise PebbleMoveError("add: fewer than a+b+1 pebbles on the endpoints")

    def add_red(self, e: int, i: int, j: int) -> None:
        self._check_add(i, j)
        fa = self.free[AQUA]
        if fa[i] + fa[j] < self.a + 1 or fa[i] < 1:
            raise PebbleMoveError("add red: needs a+1 aqua pebbles with one on the tail")
        self.ends[e] = (i, j)
        self.red[e] = True
        fa[i] -= 1
        self._place(e, i, AQUA)
        self._emit("add_red")

    def add_black(self, e: int, i: int, j: int) -> None:
        self._check_add(i, j)
        fa, fb = self.free
        if self.b > 0 and fb[i] + fb[j] >= self.b + 1:
            color = BLK
        elif fa[i] + fa[j] >= self.a + 1:
            color = AQUA
        else:
            raise PebbleMoveError("add black: neither b+1 black nor a+1 aqua pebbles")
        if self.free[color][i] < 1:
            raise PebbleMoveError("add black: tail holds no pebble of the covering colour")
        self.ends[e] = (i, j)
        self.red[e] = False
        self.free[color][i] -= 1
        self._place(e, i, color)
        self._emit("add_black")

    def reverse_red(self, e: int) -> None:
        if not self.red[e]:
            raise PebbleMoveError("red reversal on a black edge")
        i, j = self.tail[e], self._head(e)
        fa = self.free[AQUA]
        if fa[j] < 1:
            raise PebbleMoveError("red reversal: head has no aqua pebble")
        self._unplace(e)
        fa[j] -= 1
        fa[i] += 1
        self._place(e, j, AQUA)
        self._emit("reverse_red")

    def reverse_black(self, e: int, color: int) -> None:
        if self.red[e]:
            raise PebbleMoveError("black reversal on a red edge")
        i, j = self.tail[e], self._head(e)
        if self.free[color][j] < 1:
            raise PebbleMoveError("black reversal: head has no pebble of that colour")
        old = self.cover[e]
        self._unplace(e)
        self.free[color][j] -= 1
        self.free[old][i] += 1
        self._place(e, j, color)
        self._emit("reverse_black")

    def swap(self, v: int, e: int, f: int) -> None:
        if self.red[e] or self.red[f] or self.tail[e] != v or self.tail[f] != v:
            raise PebbleMoveError("swap: needs two black out-edges of v")
        if {self.cover[e], self.cover[f]} != {AQUA, BLK}:
            raise PebbleMoveError("swap: covers must have different colours")
        ce, cf = self.cover[e], self.cover[f]
        self._unplace(e)
        self._unplace(f)
        self._place(e, v, cf)
        self._place(f, v, ce)
        self._emit("swap")

    def flip(self, v: int, e: int) -> None:
        if self.red[e] or self.tail[e] != v:
            raise PebbleMoveError("flip: needs a black out-edge of v")
        old = self.cover[e]
        new = 1 - old
        if self.free[new][v] < 1:
            raise PebbleMoveError("flip: no pebble of the opposite colour on v")
        self._unplace(e)
        self.free[new][v] -= 1
        self.free[old][v] += 1
        self._place(e, v, new)
        self._emit("flip")

    # -- single-class searches

    def _find_path(self, c: int, start: int, forbid: Sequence[int]) -> list[int] | None:
        self._stamp += 1
        stamp, mark = self._stamp, self._mark
        out, free = self.out[c], self.free[c]
        mark[start] = stamp
        for f in forbid:
            mark[f] = stamp
        stack = [(start, 0)]
        path: list[int] = []
        while stack:
            v, pos = stack[-1]
            edges = out[v]
            if pos < len(edges):
                stack[-1] = (v, pos + 1)
                e = edges[pos]
                w = self._head(e)
                if mark[w] == stamp:
                    continue
                mark[w] = stamp
                path.append(e)
                if free[w]:
                    return path
                stack.append((w, 0))
            else:
                stack.pop()
                if path:
                    path.pop()
        return None

    def _pull(self, c: int, path: list[int]) -> None:
        for e in reversed(path):
            if self.red[e]:
                self.reverse_red(e)
            else:
                self.reverse_black(e, c)

    def _gather(self, c: int, v: int, want: int, forbid: Sequence[int] = ()) -> bool:
        free = self.free[c]
        while free[v] < want:
            path = self._find_path(c, v, forbid)
            if path is None:
                return False
            self._pull(c, path)
        return True

    def _collect(self, c: int, i: int, j: int) -> bool:
        """Bring cap+1 pebbles of class c onto {i, j}, i < j."""
        cap = self.cap[c]
        if cap == 0:
            return False
        self._gather(c, i, cap)
        return self._gather(c, j, cap + 1 - self.free[c][i], (i,))

    def _class_circuit(self, c: int, i: int, j: int) -> list[int]:
        """Edges of class c spanned by the closed set reachable from i and j."""
        self._stamp += 1
        stamp, mark, out = self._stamp, self._mark, self.out[c]
        stack = [i, j]
        mark[i] = mark[j] = stamp
        found: list[int] = []
        while stack:
            v = stack.pop()
            for e in out[v]:
                found.append(e)
                w = self._head(e)
                if mark[w] != stamp:
                    mark[w] = stamp
                    stack.append(w)
        return sorted(found)

    # -- insertion

    def _targets(self, red: bool, current: int | None) -> list[int]:
        order = [AQUA] if red else ([BLK, AQUA] if self.b > 0 else [AQUA])
        return [t for t in order if t != current]

    def _finish_add(self, e: int, i: int, j: int, red: bool, c: int) -> None:
        # the add moves also require the other colour's pebbles on i
        other = 1 - c
        self._gather(other, i, self.cap[other])
        if red:
            self.add_red(e, i, j)
        else:
            self.add_black(e, i, j)
        if self.cover[e] != c:
            raise PebbleMoveError("edge covered with an unexpected colour")

    def insert(self, e: int, u: int, v: int, red: bool) -> bool:
        """Add edge e = uv if the result stays [a,b]-sparse."""
        if e in self.ends:
            raise ValueError(f"edge key {e} already present")
        if u == v:
            return False
        i, j = min(u, v), max(u, v)
        sh = self.shadow
        if sh is not None and sh.comp[i] >= 0 and sh.comp[i] == sh.comp[j]:
            return False
        for c in self._targets(red, None):
            if self._collect(c, i, j):
                self._finish_add(e, i, j, red, c)
                self._after_insert(i, j)
                return True
        path, c, _ = self._exchange_search(i, j, red)
        if path is None:
            return False
        for x, t in path:
            xi, xj = self.ends[x]
            if not self._collect(t, xi, xj):
                raise PebbleMoveError("exchange step is not independent")
            self.flip(self.tail[x], x)
        if not self._collect(c, i, j):
            raise PebbleMoveError("exchange path did not free room for the new edge")
        self._finish_add(e, i, j, red, c)
        self._after_insert(i, j)
        return True

    def _after_insert(self, i: int, j: int) -> None:
        if self.shadow is not None:
            if self.shadow.insert(i, j) is None:
                raise PebbleMoveError("shadow (k,k) game disagrees")

    def _exchange_search(self, i: int, j: int, red: bool):
        """Shortest exchange path for a new edge ij.

        Returns (moves, cls, visited): ``moves`` lists (edge, target class)
        pairs in execution order (sink first) or None, ``cls`` is the class
        the new edge enters and ``visited`` holds every edge reached.
        """
        NEW = -1
        parent: dict[int, int | None] = {NEW: None}
        queue = deque([NEW])
        while queue:
            x = queue.popleft()
            if x == NEW:
                xi, xj, xred, cur = i, j, red, None
            else:
                xi, xj = self.ends[x]
                xred, cur = self.red[x], self.cover[x]
            for t in self._targets(xred, cur):
                if self._collect(t, xi, xj):
                    moves = []
                    node, target = x, t
                    while node != NEW:
                        moves.append((node, target))
                        target = self.cover[node]
                        node = parent[node]
                    return moves, target, parent
                for y in self._class_circuit(t, xi, xj):
                    if y not in parent:
                        parent[y] = x
                        queue.append(y)
        return None, None, parent

    def exchange_closure(self, u: int, v: int, red: bool) -> list[int]:
        """Edges reachable from a rejected edge uv in the exchange graph."""
        path, _, visited = self._exchange_search(min(u, v), max(u, v), red)
        if path is not None:
            raise ValueError("edge is independent")
        return sorted(x for x in visited if x >= 0)

    # -- views

    @property
    def total_free(self) -> int:
        return sum(self.free[0]) + sum(self.free[1])

    def out_edges(self, v: int) -> list[int]:
        return sorted(self.out[0][v] + self.out[1][v])


# -- configurations and front ends -----------------------------------------------------


@dataclass
class PebbleConfiguration:
    """Final state of a pebble game run on a graph."""

    graph: BicoloredMultigraph
    k: int
    ell: int
    mode: str  # "ab" or "kl"
    sig: FrameSignature | None
    accepted: list[str]
    rejected: list[str]
    tail: dict[str, int]
    cover: dict[str, str]
    free_aqua: list[int]
    free_black: list[int]
    game: object = field(repr=False, default=None)

    def orientation(self) -> dict[str, tuple[int, int]]:
        out = {}
        for eid in self.accepted:
            e = self.graph.edge(eid)
            t = self.tail[eid]
            out[eid] = (t, e.v if t == e.u else e.u)
        return out


def _run_ab(
    g: BicoloredMultigraph,
    sig: FrameSignature,
    observer: Observer | None = None,
    components: bool = False,
    order: Sequence[int] | None = None,
) -> tuple[SparsityVerdict, PebbleConfiguration]:
    game = ABPebbleGame(g.n, sig.a, sig.b, observer=observer, components=components)
    accepted: list[str] = []
    rejected: list[str] = []
    idx = range(g.m) if order is None else order
    for p in idx:
        e = g.edges[p]
        if game.insert(p, e.u, e.v, e.is_red):
            accepted.append(e.id)
        else:
            rejected.append(e.id)
    fa, fb = game.free
    free = sum(fa) + sum(fb)
    verdict = SparsityVerdict(_verdict(rejected, free, sig.k), tuple(rejected), free, sum(fa), sum(fb))
    cfg = PebbleConfiguration(
        g,
        sig.k,
        sig.k,
        "ab",
        sig,
        accepted,
        rejected,
        {g.edges[p].id: game.tail[p] for p in game.tail},
        {g.edges[p].id: PEBBLE_COLORS[game.cover[p]] for p in game.cover},
        list(fa),
        list(fb),
        game,
    )
    return verdict, cfg


def _run_kl(
    g: BicoloredMultigraph, k: int, ell: int, components: bool = False, order: Sequence[int] | None = None
) -> tuple[SparsityVerdict, PebbleConfiguration]:
    game = KLPebbleGame(g.n, k, ell, components=components)
    accepted: list[str] = []
    rejected: list[str] = []
    key: dict[int, str] = {}
    idx = range(g.m) if order is None else order
    for p in idx:
        e = g.edges[p]
        internal = game.insert(e.u, e.v)
        if internal is None:
            rejected.append(e.id)
        else:
            accepted.append(e.id)
            key[internal] = e.id
    free = game.total_free
    verdict = SparsityVerdict(_verdict(rejected, free, ell), tuple(rejected), free, 0, free)
    cfg = PebbleConfiguration(
        g,
        k,
        ell,
        "kl",
        None,
        accepted,
        rejected,
        {key[x]: game.tail[x] for x in key},
        {key[x]: "black" for x in key},
        [0] * g.n,
        list(game.free),
        game,
    )
    cfg._keys = key  # type: ignore[attr-defined]
    return verdict, cfg


def play(
    g: BicoloredMultigraph,
    sig: FrameSignature,
    *,
    observer: Observer | None = None,
    components: bool = False,
    order: Sequence[int] | None = None,
) -> tuple[SparsityVerdict, PebbleConfiguration]:
    """Run the [a,b] pebble game over the edges of g in base order (or ``order``)."""
    return _run_ab(g, sig, observer, components, order)


def play_uncolored(
    g: BicoloredMultigraph, k: int, *, components: bool = False, order: Sequence[int] | None = None
) -> tuple[SparsityVerdict, PebbleConfiguration]:
    """Colour-blind (k,k) game; every edge must be black."""
    if any(e.color == RED for e in g.edges):
        raise ValueError("play_uncolored needs an all-black graph")
    return _run_kl(g, k, k, components, order)


def play_kl(g: BicoloredMultigraph, k: int, ell: int, **kw) -> tuple[SparsityVerdict, PebbleConfiguration]:
    """The (k,l) game ignoring colours."""
    return _run_kl(g, k, ell, **kw)


def play_tied(g: BicoloredMultigraph, sig: FrameSignature | None = None, k: int | None = None):
    """Check a graph whose loops form a (possibly generalized) tie-down.

    Loops become edges to an extra ground vertex, so a valid tie-down is
    exactly a tight verdict.
    """
    gg = grounded(g)
    if sig is not None and not g.all_black():
        return play(gg, sig)
    kk = sig.k if sig is not None else k
    if kk is None:
        raise ValueError("give sig or k")
    return play_kl(gg.recolored(BLACK), kk, kk)


def fundamental_circuit(cfg: PebbleConfiguration, edge_id: str) -> list[str]:
    """Edge ids H' such that H' + e is the circuit created by the rejected edge e."""
    if edge_id not in cfg.rejected:
        raise ValueError(f"edge {edge_id!r} was not rejected")
    g = cfg.graph
    e = g.edge(edge_id)
    if e.is_loop and cfg.mode == "ab":
        return []
    if cfg.mode == "kl":
        game: KLPebbleGame = cfg.game  # type: ignore[assignment]
        verts = game.circuit_vertices(e.u, e.v)
        if verts is None:
            raise PebbleMoveError("cannot confirm dependence of a rejected edge")
        keys = cfg._keys  # type: ignore[attr-defined]
        return sorted((keys[x] for x in game.induced_edges(verts)), key=g.position)
    game2: ABPebbleGame = cfg.game  # type: ignore[assignment]
    closure = game2.exchange_closure(e.u, e.v, e.is_red)
    ids = [g.edges[p].id for p in closure]
    assert cfg.sig is not None
    member = []
    base = g.subgraph(ids + [edge_id])
    if is_sparse(base, cfg.sig):
        raise PebbleMoveError("exchange closure of a rejected edge is independent")
    for x in ids:
        if is_sparse(base.without([x]), cfg.sig):
            member.append(x)
    return sorted(member, key=g.position)


def is_sparse(g: BicoloredMultigraph, sig: FrameSignature) -> bool:
    return play(g, sig)[0].is_independent


def is_kl_sparse(g: BicoloredMultigraph, k: int, ell: int) -> bool:
    return play_kl(g, k, ell)[0].is_independent


def circuit_with(g: BicoloredMultigraph, sig: FrameSignature | None, extra: Edge, k: int | None = None) -> list[str] | None:
    """Circuit created by adding ``extra`` to an independent g (None if still independent).

    Loops are allowed; they are treated as edges to a ground vertex.
    """
    h = g.plus(extra)
    tied = any(x.is_loop for x in h.edges)
    if tied:
        h = grounded(h)
    if sig is not None and not h.all_black():
        verdict, cfg = play(h, sig)
    else:
        kk = sig.k if sig is not None else k
        verdict, cfg = play_kl(h.recolored(BLACK), kk, kk)
    if extra.id not in cfg.rejected:
        if verdict.rejected:
            raise ValueError("base graph is not independent")
        return None
    return fundamental_circuit(cfg, extra.id)


# -- brute force reference ---------------------------------------------------------


def _kl_sparse_brute(n: int, pairs: Sequence[tuple[int, int]], k: int, ell: int) -> bool:
    if not pairs:
        return True
    for mask in range(1, 1 << n):
        cnt = sum(1 for u, v in pairs if (mask >> u) & 1 and (mask >> v) & 1)
        if cnt > k * bin(mask).count("1") - ell and cnt > 0:
            return False
    return True


def sparsity_oracle(g: BicoloredMultigraph, sig: FrameSignature, limit: int = 20) -> bool:
    """Exhaustive [a,b]-sparsity test over all splits of the black edges."""
    if g.m > limit:
        raise ValueError(f"oracle limited to {limit} edges")
    red = [(e.u, e.v) for e in g.edges if e.color == RED]
    black = [(e.u, e.v) for e in g.edges if e.color == BLACK]
    if sig.b == 0:
        return _kl_sparse_brute(g.n, red + black, sig.a, sig.a)
    if not _kl_sparse_brute(g.n, red, sig.a, sig.a):
        return False
    for choice in itertools.product((0, 1), repeat=len(black)):
        xs = red + [p for p, c in zip(black, choice) if c == 0]
        ys = [p for p, c in zip(black, choice) if c == 1]
        if _kl_sparse_brute(g.n, xs, sig.a, sig.a) and _kl_sparse_brute(g.n, ys, sig.b, sig.b):
            return True
    return False


def kl_oracle(g: BicoloredMultigraph, k: int, ell: int) -> bool:
    return _kl_sparse_brute(g.n, [(e.u, e.v) for e in g.edges], k, ell)


def check_invariants(game: ABPebbleGame, max_n: int = 8) -> list[str]:
    """Return the list of violated invariants (empty when all hold)."""
    problems: list[str] = []
    n, a, b = game.n, game.a, game.b
    for e, red in game.red.items():
        if red and game.cover[e] != AQUA:
            problems.append(f"red edge {e} not covered aqua")
    heads = {e: game._head(e) for e in game.tail}
    for v in range(n):
        for c in (AQUA, BLK):
            if game.free[c][v] < 0:
                problems.append("negative pebble count")
            if game.free[c][v] + len(game.out[c][v]) != game.cap[c]:
                problems.append(f"vertex {v} colour {c} count broken")
    if n > max_n:
        return problems
    for mask in range(1, 1 << n):
        size = bin(mask).count("1")
        p = [sum(game.free[c][v] for v in range(n) if mask >> v & 1) for c in (0, 1)]
        m = [0, 0]
        o = [0, 0]
        for e, t in game.tail.items():
            if mask >> t & 1:
                if mask >> heads[e] & 1:
                    m[game.cover[e]] += 1
                else:
                    o[game.cover[e]] += 1
        if p[0] + m[0] + o[0] != a * size:
            problems.append(f"(ii) fails on {mask:b}")
        if p[1] + m[1] + o[1] != b * size:
            problems.append(f"(iii) fails on {mask:b}")
        if sum(p) + sum(m) + sum(o) != (a + b) * size:
            problems.append(f"(i) fails on {mask:b}")
        if m[0] > a * size - a:
            problems.append(f"(v) fails on {mask:b}")
        if m[1] > max(b * size - b, 0):
            problems.append(f"(vi) fails on {mask:b}")
    return problems
