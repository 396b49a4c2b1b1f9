"""Partitioning edges into forests by matroid-union augmenting paths."""

from __future__ import annotations

from collections import deque
from typing import Sequence


def _forest_path(n: int, edges: Sequence[tuple[int, int]], members: list[int], x: int) -> list[int] | None:
    """Edges of ``members`` on the cycle closed by edge x, or None if x keeps a forest."""
    u, v = edges[x]
    if u == v:
        return []
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in members:
        a, b = edges[e]
        adj.setdefault(a, []).append((b, e))
        adj.setdefault(b, []).append((a, e))
    prev: dict[int, tuple[int, int] | None] = {u: None}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        if w == v:
            break
        for y, e in adj.get(w, ()):
            if y not in prev:
                prev[y] = (w, e)
                queue.append(y)
    if v not in prev:
        return None
    path = []
    w = v
    while prev[w] is not None:
        w2, e = prev[w]  # type: ignore[misc]
        path.append(e)
        w = w2
    return path


def forest_partition(
    n: int, edges: Sequence[tuple[int, int]], k: int, allowed: Sequence[Sequence[int]] | None = None
) -> list[int] | None:
    """Assign each edge to one of k forests, or return None if impossible.

    ``allowed[e]`` restricts the classes edge e may use.  Loops can never lie
    in a forest.
    """
    allowed = [list(range(k))] * len(edges) if allowed is None else [list(a) for a in allowed]
    cls = [-1] * len(edges)
    members: list[list[int]] = [[] for _ in range(k)]
    for x in range(len(edges)):
        parent: dict[int, int | None] = {x: None}
        target: dict[int, int] = {}
        queue = deque([x])
        found = None
        while queue and found is None:
            y = queue.popleft()
            for t in allowed[y]:
                if t == cls[y]:
                    continue
                cyc = _forest_path(n, edges, members[t], y)
                if cyc is None:
                    found = (y, t)
                    break
                if edges[y][0] == edges[y][1]:
                    continue
                for z in cyc:
                    if z not in parent:
                        parent[z] = y
                        target[z] = t
                        queue.append(z)
        if found is None:
            return None
        y, t = found
        while True:
            old = cls[y]
            if old >= 0:
                members[old].remove(y)
            cls[y] = t
            members[t].append(y)
            p = parent[y]
            if p is None:
                break
            t = old
            y = p
    return cls
