"""Fan diagrams, bracket polynomials and the tree-decomposition expansion.

A fan diagram of a tied-down graph orients every edge so that each vertex has
exactly k out-going edges, loops included.  In [a,b] mode at most a of them
may be red.  The fan enumeration branches on an edge of a directed cycle
(fix it, or reverse the cycle and fix it) and handles strongly connected
pieces independently, so the work between two emitted fans stays small.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .exact import bareiss_det, to_fraction
from .forests import forest_partition
from .graph import BLACK, RED, BicoloredMultigraph, FrameSignature, TieDown, apply_tie_down, grounded
from .pebble import ABPebbleGame, KLPebbleGame


class FanError(ValueError):
    pass


@dataclass(frozen=True)
class FanDiagram:
    graph: BicoloredMultigraph
    tails: tuple[int, ...]

    def out_sets(self) -> list[list[int]]:
        """Positions of out-going edges per vertex, in base order."""
        sets: list[list[int]] = [[] for _ in range(self.graph.n)]
        for p, t in enumerate(self.tails):
            sets[t].append(p)
        return sets

    def tail(self, edge_id: str) -> int:
        return self.tails[self.graph.position(edge_id)]

    def reversed_edges(self) -> list[str]:
        g = self.graph
        return [e.id for e, t in zip(g.edges, self.tails) if not e.is_loop and t != e.u]

    def to_dict(self) -> dict:
        g = self.graph
        out = {}
        for e, t in zip(g.edges, self.tails):
            h = t if e.is_loop else (e.v if t == e.u else e.u)
            out[e.id] = [t + 1, h + 1]
        return out


def is_fan(g: BicoloredMultigraph, tails: Sequence[int], k: int, a: int | None = None) -> bool:
    outdeg = [0] * g.n
    red = [0] * g.n
    for e, t in zip(g.edges, tails):
        if t not in (e.u, e.v):
            return False
        outdeg[t] += 1
        if e.color == RED:
            red[t] += 1
    if any(d != k for d in outdeg):
        return False
    return a is None or all(r <= a for r in red)


# -- seeds ----------------------------------------------------------------------------


def seed_fan(g: BicoloredMultigraph, sig: FrameSignature, colored: bool) -> FanDiagram:
    """A fan diagram read off a pebble game on the grounded graph."""
    k = sig.k
    gg = grounded(g)
    ground = g.n
    if colored:
        game = ABPebbleGame(gg.n, sig.a, sig.b)
        for p, e in enumerate(gg.edges):
            if not game.insert(p, e.u, e.v, e.color == RED):
                raise FanError("graph with its tie-down is not [a,b]-tight")
        if game.total_free != k:
            raise FanError("graph with its tie-down is not [a,b]-tight")
        game._gather(0, ground, sig.a)
        game._gather(1, ground, sig.b)
        tails = tuple(game.tail[p] for p in range(gg.m))
    else:
        kl = KLPebbleGame(gg.n, k, k)
        for e in gg.edges:
            if kl.insert(e.u, e.v) is None:
                raise FanError("graph with its tie-down is not (k,k)-tight")
        if kl.total_free != k:
            raise FanError("graph with its tie-down is not (k,k)-tight")
        kl._gather(ground, k, -1)
        tails = tuple(kl.tail)
    if any(t == ground for t in tails):
        raise FanError("could not orient the tie-down loops")
    fixed = tuple(e.u if e.is_loop else t for e, t in zip(g.edges, tails))
    return FanDiagram(g, fixed)


# -- enumeration engine ---------------------------------------------------------------------


class FanEnumerator:
    """Enumerate all fan diagrams reachable from a seed.

    ``run()`` yields ``None`` each time ``self.tail`` holds a new fan; use
    ``snapshot()`` to copy it.  With ``a`` given only orientations with at
    most ``a`` red out-edges per vertex are produced, using admissible
    cycles.
    """

    def __init__(self, g: BicoloredMultigraph, seed: Sequence[int], k: int, a: int | None = None):
        if not is_fan(g, seed, k, a):
            raise FanError("seed is not a valid fan diagram")
        self.g = g
        self.k = k
        self.a = a
        self.n = g.n
        m = g.m
        self.eu = [e.u for e in g.edges]
        self.ev = [e.v for e in g.edges]
        self.red = [e.color == RED for e in g.edges]
        self.tail = list(seed)
        self.fixed = [e.is_loop for e in g.edges]
        self.inc: list[list[int]] = [[] for _ in range(self.n)]
        for p, e in enumerate(g.edges):
            if not e.is_loop:
                self.inc[e.u].append(p)
                self.inc[e.v].append(p)
        self.redout = [0] * self.n
        for p in range(m):
            if self.red[p]:
                self.redout[self.tail[p]] += 1
        self._mark = [0] * self.n
        self._stamp = 0

    def snapshot(self) -> FanDiagram:
        return FanDiagram(self.g, tuple(self.tail))

    def _head(self, p: int) -> int:
        t = self.tail[p]
        return self.ev[p] if t == self.eu[p] else self.eu[p]

    # strongly connected pieces of the free edges inside a vertex set
    def _pieces(self, verts: Sequence[int]) -> list[list[int]]:
        self._stamp += 1
        stamp = self._stamp
        mark = self._mark
        for v in verts:
            mark[v] = stamp
        index: dict[int, int] = {}
        low: dict[int, int] = {}
        on: set[int] = set()
        st: list[int] = []
        out: list[list[int]] = []
        counter = 0
        fixed, tail, inc = self.fixed, self.tail, self.inc
        for root in verts:
            if root in index:
                continue
            work = [(root, 0)]
            index[root] = low[root] = counter
            counter += 1
            st.append(root)
            on.add(root)
            while work:
                v, pos = work[-1]
                edges = inc[v]
                advanced = False
                while pos < len(edges):
                    p = edges[pos]
                    pos += 1
                    if fixed[p] or tail[p] != v:
                        continue
                    w = self._head(p)
                    if mark[w] != stamp:
                        continue
                    if w not in index:
                        work[-1] = (v, pos)
                        index[w] = low[w] = counter
                        counter += 1
                        st.append(w)
                        on.add(w)
                        work.append((w, 0))
                        advanced = True
                        break
                    if w in on and index[w] < low[v]:
                        low[v] = index[w]
                if advanced:
                    continue
                work.pop()
                if work:
                    u = work[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = st.pop()
                        on.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    if len(comp) > 1:
                        out.append(comp)
        return out

    def _admissible(self, into: int, v: int, nxt: int) -> bool:
        if self.a is None or not self.red[into] or self.red[nxt]:
            return True
        return self.redout[v] < self.a

    def _cycle_through(self, e: int, verts_mark: int) -> list[int] | None:
        """Shortest admissible directed cycle starting with edge e (edge list)."""
        start, goal = self.tail[e], self._head(e)
        mark = self._mark
        fixed, tail, inc = self.fixed, self.tail, self.inc
        prev: dict[tuple[int, int], tuple[tuple[int, int], int] | None] = {}
        first = (goal, e)
        prev[first] = None
        queue = deque([first])
        end = None
        while queue:
            state = queue.popleft()
            v, came = state
            if v == start:
                if self._admissible(came, v, e):
                    end = state
                    break
                continue
            for p in inc[v]:
                if fixed[p] or tail[p] != v or p == e:
                    continue
                w = self._head(p)
                if mark[w] != verts_mark:
                    continue
                if not self._admissible(came, v, p):
                    continue
                key = (w, p) if self.a is not None else (w, -1)
                if key in prev:
                    continue
                prev[key] = (state, p)
                queue.append((w, p))
                if self.a is None:
                    prev[(w, p)] = prev[key]
        if end is None:
            return None
        path = []
        state = end
        while prev[state] is not None:
            parent, p = prev[state]  # type: ignore[misc]
            path.append(p)
            state = parent
        path.reverse()
        cyc = [e] + path
        if self.a is not None:
            seen = set()
            for p in cyc:
                t = tail[p]
                if t in seen:
                    return None
                seen.add(t)
        return cyc

    def _polygon(self, verts: Sequence[int]) -> tuple[int, list[int]] | None:
        self._stamp += 1
        stamp = self._stamp
        for v in verts:
            self._mark[v] = stamp
        cand = sorted(
            {p for v in verts for p in self.inc[v] if not self.fixed[p] and self._mark[self._head(p)] == stamp and self.tail[p] == v}
        )
        for e in cand:
            cyc = self._cycle_through(e, stamp)
            if cyc is not None:
                return e, cyc
            if self.a is None:
                raise FanError("edge inside a strongly connected piece lies on no cycle")
        return None

    def _reverse(self, cyc: Sequence[int]) -> None:
        for p in cyc:
            t = self.tail[p]
            h = self._head(p)
            if self.red[p]:
                self.redout[t] -= 1
                self.redout[h] += 1
            self.tail[p] = h

    def _undo_reverse(self, cyc: Sequence[int]) -> None:
        self._reverse(cyc)

    def run(self) -> Iterator[None]:
        trail: list[tuple[str, object]] = []

        def undo_to(size: int) -> None:
            while len(trail) > size:
                kind, obj = trail.pop()
                if kind == "fix":
                    self.fixed[obj] = False  # type: ignore[index]
                else:
                    self._undo_reverse(obj)  # type: ignore[arg-type]

        def push_jobs(verts: Sequence[int], rest):
            todo = rest
            for piece in self._pieces(verts):
                todo = (piece, todo)
            return todo

        todo = push_jobs(list(range(self.n)), None)
        frames: list[list] = []
        while True:
            while todo is not None:
                job, rest = todo
                found = self._polygon(job)
                if found is None:
                    todo = rest
                    continue
                e, cyc = found
                frames.append([job, e, cyc, rest, len(trail), 1])
                self.fixed[e] = True
                trail.append(("fix", e))
                todo = push_jobs(job, rest)
            yield None
            while frames:
                fr = frames[-1]
                job, e, cyc, rest, mark, branch = fr
                undo_to(mark)
                if branch == 1:
                    fr[5] = 2
                    self._reverse(cyc)
                    trail.append(("rev", cyc))
                    self.fixed[e] = True
                    trail.append(("fix", e))
                    todo = push_jobs(job, rest)
                    break
                frames.pop()
            else:
                return


def _tied(g: BicoloredMultigraph, tie_down: TieDown | None) -> BicoloredMultigraph:
    return apply_tie_down(g, tie_down)


def _colored(g: BicoloredMultigraph, sig: FrameSignature) -> bool:
    return sig.b > 0 and any(e.color == RED for e in g.edges)


def enumerate_fans(
    g: BicoloredMultigraph, k: int, seed: FanDiagram | None = None, limit: int | None = None
) -> Iterator[FanDiagram]:
    """All k-fan diagrams of a tied-down graph (loops included in g)."""
    if seed is None:
        seed = seed_fan(g, FrameSignature.color_blind(k), colored=False)
    if seed.graph != g:
        raise FanError("seed belongs to another graph")
    en = FanEnumerator(g, seed.tails, k)
    for count, _ in enumerate(en.run()):
        if limit is not None and count >= limit:
            return
        yield en.snapshot()


def enumerate_ab_fans(
    g: BicoloredMultigraph, sig: FrameSignature, seed: FanDiagram | None = None, limit: int | None = None
) -> Iterator[FanDiagram]:
    """All [a,b]-fan diagrams: out-degree k with at most a red out-edges per vertex."""
    if seed is None:
        seed = seed_fan(g, sig, colored=_colored(g, sig))
    en = FanEnumerator(g, seed.tails, sig.k, sig.a if _colored(g, sig) else None)
    for count, _ in enumerate(en.run()):
        if limit is not None and count >= limit:
            return
        yield en.snapshot()


def brute_force_fans(g: BicoloredMultigraph, k: int, a: int | None = None) -> set[tuple[int, ...]]:
    """Every valid orientation, by exhaustive search (tests only)."""
    proper = [p for p, e in enumerate(g.edges) if not e.is_loop]
    found = set()
    for bits in itertools.product((0, 1), repeat=len(proper)):
        tails = [e.u for e in g.edges]
        for p, bit in zip(proper, bits):
            tails[p] = g.edges[p].v if bit else g.edges[p].u
        if is_fan(g, tails, k, a):
            found.add(tuple(tails))
    return found


# -- bracket monomials and polynomials ------------------------------------------------------


def _perm_sign(seq: Sequence[int]) -> int:
    seq = list(seq)
    sign = 1
    seen = [False] * len(seq)
    order = sorted(range(len(seq)), key=lambda i: seq[i])
    for i in range(len(seq)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class BracketMonomial:
    sign: int
    brackets: tuple[tuple[str, ...], ...]


def fan_to_monomial(fan: FanDiagram) -> BracketMonomial:
    g = fan.graph
    sets = fan.out_sets()
    order = [p for s in sets for p in s]
    sign = _perm_sign(order)
    if len(fan.reversed_edges()) % 2:
        sign = -sign
    return BracketMonomial(sign, tuple(tuple(g.edges[p].id for p in s) for s in sets))


@dataclass
class BracketPolynomial:
    """Signed sum of bracket products with brackets kept in base order."""

    order: dict[str, int]
    terms: dict[tuple[tuple[str, ...], ...], int] = field(default_factory=dict)
    k: int = 0

    def _canon(self, brackets: Sequence[Sequence[str]]) -> tuple[int, tuple[tuple[str, ...], ...]]:
        sign = 1
        out = []
        for br in brackets:
            pos = [self.order[x] for x in br]
            if len(set(pos)) < len(pos):
                return 0, ()
            sign *= _perm_sign(pos)
            out.append(tuple(sorted(br, key=self.order.__getitem__)))
        out.sort(key=lambda br: [self.order[x] for x in br])
        return sign, tuple(out)

    def add(self, coeff: int, brackets: Sequence[Sequence[str]]) -> None:
        sign, key = self._canon(brackets)
        if sign == 0:
            return
        self.terms[key] = self.terms.get(key, 0) + sign * coeff
        if self.terms[key] == 0:
            del self.terms[key]

    def __len__(self) -> int:
        return len(self.terms)

    def negated(self) -> "BracketPolynomial":
        return BracketPolynomial(self.order, {key: -c for key, c in self.terms.items()}, self.k)

    def equals(self, other: "BracketPolynomial") -> bool:
        return self.terms == other.terms

    def edges(self) -> set[str]:
        return {x for key in self.terms for br in key for x in br}

    def to_text(self) -> str:
        parts = []
        for key, c in self.terms.items():
            sign = "+" if c > 0 else "-"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(sign + mag + "".join("[" + " ".join(br) + "]" for br in key))
        return " ".join(parts) if parts else "0"


def parse_bracket_polynomial(text: str, order: Sequence[str]) -> BracketPolynomial:
    """Read the canonical text form, e.g. ``+[a b d][c e f] -[a b c][d e f]``."""
    import re

    bp = BracketPolynomial({x: i for i, x in enumerate(order)})
    for m in re.finditer(r"([+-]?)(\d*)((?:\[[^\]]*\])+)", text.replace(" [", "[")):
        coeff = int(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
        brackets = [br.split() for br in re.findall(r"\[([^\]]*)\]", m.group(3))]
        bp.add(coeff, brackets)
    return bp


def pure_condition_bracket(
    g: BicoloredMultigraph,
    sig: FrameSignature,
    tie_down: TieDown | None = None,
    limit: int | None = None,
) -> BracketPolynomial:
    """Sum of fan monomials; brackets made only of standard tie-down loops are dropped."""
    tied = _tied(g, tie_down)
    if tied.m != sig.k * tied.n:
        raise FanError(f"graph is not tight: {tied.m} edges and loops for {tied.n} vertices")
    fans = enumerate_ab_fans(tied, sig, limit=limit)
    strip = set(tie_down.ids) if tie_down is not None and tie_down.kind == "standard" else set()
    bp = BracketPolynomial({e.id: i for i, e in enumerate(tied.edges)}, k=sig.k)
    for fan in fans:
        mono = fan_to_monomial(fan)
        brackets = [br for br in mono.brackets if not (br and set(br) <= strip)]
        bp.add(mono.sign, brackets)
    return bp


def evaluate_bracket_polynomial(bp: BracketPolynomial, labeling: Mapping[str, Sequence]) -> Fraction:
    total = Fraction(0)
    cache: dict[tuple[str, ...], Fraction] = {}
    for key, c in bp.terms.items():
        term = Fraction(c)
        for br in key:
            if br not in cache:
                try:
                    cols = [[to_fraction(x) for x in labeling[e]] for e in br]
                except KeyError as exc:
                    raise FanError(f"missing label for {exc.args[0]!r}") from exc
                cache[br] = bareiss_det([list(r) for r in zip(*cols)])
            term *= cache[br]
            if term == 0:
                break
        total += term
    return total


# -- tree decompositions ------------------------------------------------------------------


def _incidence_det(n: int, rows: Sequence[tuple[int, int]]) -> int:
    mat = []
    for u, v in rows:
        r = [0] * n
        r[u] += 1
        if u != v:
            r[v] -= 1
        mat.append(r)
    return int(bareiss_det(mat))


def _spanning_sets(n: int, pairs: Sequence[tuple[int, int]], items: Sequence[int], size: int) -> list[tuple[int, ...]]:
    """Acyclic ``size``-subsets of ``items`` in the grounded graph (loops go to vertex n)."""
    out: list[tuple[int, ...]] = []
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    chosen: list[int] = []

    def rec(i: int) -> None:
        if len(chosen) == size:
            out.append(tuple(chosen))
            return
        if len(items) - i < size - len(chosen):
            return
        p = items[i]
        u, v = pairs[p]
        ru, rv = find(u), find(n if u == v else v)
        if ru != rv:
            parent[ru] = rv
            chosen.append(p)
            rec(i + 1)
            chosen.pop()
            parent[ru] = ru
        rec(i + 1)

    rec(0)
    return out


class _TreeExpansion:
    """Looped tree decompositions of a tied graph, stored as a layered DAG.

    Class c takes n edges forming a spanning tree together with the ground;
    ``edges`` maps a remaining-edge mask to its (sign, tree, rest) moves.
    """

    def __init__(
        self,
        tied: BicoloredMultigraph,
        sig: FrameSignature,
        zeros: frozenset[tuple[int, int]] = frozenset(),
        max_vertices: int = 6,
    ):
        if tied.n > max_vertices:
            raise ValueError(f"tree-decomposition expansion limited to {max_vertices} vertices")
        if tied.m != sig.k * tied.n:
            raise ValueError("graph with tie-down is not square")
        self.g = tied
        self.n = tied.n
        self.k = sig.k
        self.pairs = [(e.u, e.v) for e in tied.edges]
        colored = sig.b > 0 and any(e.color == RED for e in tied.edges)
        self.red = [colored and e.color == RED for e in tied.edges]
        self.a = sig.a
        self.zeros = zeros
        self.moves: dict[int, list[tuple[int, tuple[int, ...], int]]] = {}
        self._build((1 << tied.m) - 1)

    def _build(self, full: int) -> None:
        n, m = self.n, self.g.m
        signs: dict[int, int] = {}
        stack = [full]
        while stack:
            rem = stack.pop()
            if rem == 0 or rem in self.moves:
                continue
            c = self.k - bin(rem).count("1") // n
            items = [p for p in range(m) if rem >> p & 1]
            items = [p for p in items if (p, c) not in self.zeros and not (c >= self.a and self.red[p])]
            moves = []
            for tree in _spanning_sets(n, self.pairs, items, n):
                mask = sum(1 << p for p in tree)
                if mask not in signs:
                    signs[mask] = _incidence_det(n, [self.pairs[p] for p in tree])
                s = signs[mask]
                rest = rem & ~mask
                inv = sum(1 for p in tree for q in range(p) if rest >> q & 1)
                moves.append((s if inv % 2 == 0 else -s, tree, rest))
                stack.append(rest)
            self.moves[rem] = moves

    def run(self, weight) -> object:
        """Sum over decompositions of sign * prod(weight(p, c))."""
        memo: dict[int, object] = {0: 1}
        n, k = self.n, self.k

        def value(rem: int):
            if rem in memo:
                return memo[rem]
            c = k - bin(rem).count("1") // n
            total = 0
            for s, tree, rest in self.moves[rem]:
                w = s
                for p in tree:
                    w = w * weight(p, c)
                    if not w:
                        break
                if w:
                    sub = value(rest)
                    if sub:
                        total = total + w * sub
            memo[rem] = total
            return total

        order = sorted(self.moves, key=lambda r: bin(r).count("1"))
        for rem in order:
            value(rem)
        return value((1 << self.g.m) - 1)

    def column_sign(self) -> int:
        n, k = self.n, self.k
        return _perm_sign([v * k + c for c in range(k) for v in range(n)])


def tree_decomposition_expansion(
    g: BicoloredMultigraph,
    sig: FrameSignature,
    tie_down: TieDown | None,
    labeling: Mapping[str, Sequence],
    expansion: "_TreeExpansion | None" = None,
) -> Fraction:
    """Evaluate the pure condition as a signed sum over looped tree decompositions.

    Each edge occurs once in every term, so labels are scaled to integers
    and the common denominator is divided out at the end.
    """
    from math import lcm

    from .rigidity import tie_down_labels

    tied = _tied(g, tie_down)
    labels = dict(tie_down_labels(tie_down, sig.k))
    labels.update({key: tuple(map(to_fraction, v)) for key, v in labeling.items()})
    ints = []
    denom = 1
    for e in tied.edges:
        vec = labels[e.id]
        d = lcm(*(x.denominator for x in vec))
        ints.append([int(x * d) for x in vec])
        denom *= d
    exp = expansion or tree_expansion(g, sig, tie_down)
    value = exp.run(lambda p, c: ints[p][c])
    return Fraction(exp.column_sign() * value, denom)


def tree_expansion(g: BicoloredMultigraph, sig: FrameSignature, tie_down: TieDown | None) -> _TreeExpansion:
    """Precompute the decomposition structure for repeated evaluation.

    Trees that put a tie-down loop in a class where its label vanishes are
    dropped up front.
    """
    from .rigidity import tie_down_labels

    tied = _tied(g, tie_down)
    zeros = set()
    for key, vec in tie_down_labels(tie_down, sig.k).items():
        p = tied.position(key)
        zeros.update((p, c) for c, x in enumerate(vec) if x == 0)
    return _TreeExpansion(tied, sig, frozenset(zeros))


def count_tree_decompositions(
    g: BicoloredMultigraph, sig: FrameSignature, tie_down: TieDown | None, looped: bool = True
) -> int:
    """Number of tree decompositions; with ``looped`` tie-down loop i must sit in tree i."""
    tied = _tied(g, tie_down)
    loops = {e.id: i for i, e in enumerate(tie_down.loops)} if (tie_down is not None and looped) else {}
    ids = [e.id for e in tied.edges]
    exp = _TreeExpansion(tied, sig)
    memo: dict[int, int] = {0: 1}

    def count(rem: int) -> int:
        if rem not in memo:
            c = exp.k - bin(rem).count("1") // exp.n
            memo[rem] = sum(
                count(rest)
                for _, tree, rest in exp.moves[rem]
                if all(loops.get(ids[p], c) == c for p in tree)
            )
        return memo[rem]

    for rem in sorted(exp.moves, key=lambda r: bin(r).count("1")):
        count(rem)
    return count((1 << tied.m) - 1)


# -- loop labels for generalized tie-downs --------------------------------------------------


def assign_loop_labels(tied: BicoloredMultigraph, sig: FrameSignature) -> dict[str, tuple[Fraction, ...]]:
    """Give every loop a standard basis vector compatible with some tree decomposition."""
    gg = grounded(tied)
    pairs = [(e.u, e.v) for e in gg.edges]
    colored = _colored(tied, sig)
    allowed = [list(range(sig.a)) if (colored and e.color == RED) else list(range(sig.k)) for e in gg.edges]
    cls = forest_partition(gg.n, pairs, sig.k, allowed)
    if cls is None:
        raise FanError("loops do not form a valid tie-down")
    out = {}
    for e, c in zip(tied.edges, cls):
        if e.is_loop:
            out[e.id] = tuple(Fraction(int(i == c)) for i in range(sig.k))
    return out
