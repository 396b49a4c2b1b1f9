"""Regenerate the JSON fixture corpus shipped in src/cadrigid/data."""

import json
import random
from fractions import Fraction
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "cadrigid" / "data"


def edge(i, u, v, color="black"):
    return {"id": i, "tail": u, "head": v, "color": color}


def doubled(pairs):
    out = []
    for names, u, v in pairs:
        out += [edge(x, u, v) for x in names]
    return out


def q(x):
    x = Fraction(x)
    return str(x) if x.denominator != 1 else x.numerator


def bars(d):
    return {k: [[q(c) for c in p] for p in pts] for k, pts in d.items()}


def rnd_point(rng, dim):
    return [Fraction(rng.randint(-40, 40), rng.randint(1, 9)) for _ in range(dim)]


def generic_bars(names, rng, dim):
    return {x: (rnd_point(rng, dim), rnd_point(rng, dim)) for x in names}


def write(name, data):
    (OUT / name).write_text(json.dumps(data, indent=1) + "\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20240601)

    write("empty.json", {"name": "single body", "vertices": 1, "k": 3, "edges": [], "tie_down": {"kind": "standard", "vertex": 1}})

    tri = doubled([("ab", 1, 2), ("cd", 2, 3), ("ef", 1, 3)])
    write("doubled_triangle.json", {"name": "doubled triangle", "vertices": 3, "k": 3, "edges": tri, "tie_down": {"kind": "standard", "vertex": 1}})
    write("doubled_triangle_generic.json", {"bars_2d": bars(generic_bars("abcdef", rng, 2))})
    write(
        "doubled_triangle_parallel.json",
        {
            "bars_2d": bars(
                {
                    "a": ([0, 0], [0, 1]),
                    "b": ([1, 0], [1, 1]),
                    "c": ([2, 0], [2, 1]),
                    "d": ([3, 0], [3, 1]),
                    "e": ([Fraction(1, 3), 2], [5, Fraction(7, 2)]),
                    "f": ([-1, 4], [2, -3]),
                }
            )
        },
    )

    k4 = []
    for names, u, v in [("ab", 1, 2), ("cd", 1, 3), ("ef", 1, 4), ("gh", 2, 3), ("ij", 2, 4), ("kl", 3, 4)]:
        k4 += [edge(x, u, v, "red" if x in "cdg" else "black") for x in names]
    write("doubled_k4.json", {"name": "doubled K4 with three red edges", "vertices": 4, "a": 2, "b": 2, "edges": k4, "tie_down": {"kind": "standard", "vertex": 1}})
    labels = {}
    for e in k4:
        vec = [Fraction(rng.randint(-30, 30), rng.randint(1, 7)) for _ in range(4)]
        if e["color"] == "red":
            vec[2:] = [0, 0]
        labels[e["id"]] = [q(x) for x in vec]
    write("doubled_k4_generic.json", {"labels": labels})

    two = doubled([("ab", 1, 2), ("cd", 2, 3), ("ef", 1, 3), ("gh", 4, 5), ("ij", 5, 6), ("kl", 4, 6)])
    two += [edge("m", 1, 4), edge("n", 2, 5), edge("o", 3, 6)]
    write("two_doubled_triangles.json", {"name": "two doubled triangles joined by three bars", "vertices": 6, "k": 3, "edges": two, "tie_down": {"kind": "standard", "vertex": 1}})
    write("two_doubled_triangles_generic.json", {"bars_2d": bars(generic_bars("abcdefghijklmno", rng, 2))})

    cyc = doubled([("ab", 1, 2), ("cd", 2, 3), ("ef", 3, 4), ("gh", 1, 4)]) + [edge("i", 1, 3)]
    write("braced_four_cycle.json", {"name": "braced doubled 4-cycle", "vertices": 4, "k": 3, "edges": cyc, "tie_down": {"kind": "standard", "vertex": 1}})
    write("braced_four_cycle_generic.json", {"bars_2d": bars(generic_bars("abcdefghi", rng, 2))})
    write(
        "braced_four_cycle_parallel.json",
        {
            "bars_2d": bars(
                {
                    "a": ([0, 0], [4, 0]),
                    "b": ([0, 1], [4, 1]),
                    "e": ([0, 2], [4, 2]),
                    "f": ([0, 3], [4, 3]),
                    "c": ([0, 0], [0, 3]),
                    "d": ([1, 0], [1, 3]),
                    "g": ([2, 0], [2, 3]),
                    "h": ([3, 0], [3, 3]),
                    "i": ([0, 0], [4, 3]),
                }
            )
        },
    )

    quad = doubled([("abcd", 2, 3), ("efgh", 1, 2), ("ijkl", 1, 3)])
    write("quadrupled_triangle.json", {"name": "quadrupled triangle", "vertices": 3, "k": 6, "edges": quad, "tie_down": {"kind": "standard", "vertex": 1}})
    write("quadrupled_triangle_generic.json", {"bars_3d": bars(generic_bars("abcdefghijkl", rng, 3))})
    par = {}
    dirs = {"abcd": [1, 0, 0], "efgh": [Fraction(-1, 2), 1, 0], "ijkl": [Fraction(-1, 2), -1, 0]}
    for group, d in dirs.items():
        for x in group:
            p = rnd_point(rng, 3)
            par[x] = (p, [s + t for s, t in zip(p, d)])
    write("quadrupled_triangle_parallel.json", {"bars_3d": bars(par)})

    write(
        "doubled_triangle.cert.json",
        {"name": "doubled triangle", "k": 3, "expr": {"meet": [{"meet": [{"join": ["c", "d"]}, {"join": ["a", "b"]}]}, {"join": ["e", "f"]}]}},
    )
    write(
        "braced_four_cycle.cert.json",
        {
            "name": "braced doubled 4-cycle",
            "k": 3,
            "expr": {
                "meet": [
                    {"meet": [{"join": ["c", "d"]}, {"join": ["a", "b"]}]},
                    {"join": [{"meet": [{"join": ["e", "f"]}, {"join": ["g", "h"]}]}, "i"]},
                ]
            },
        },
    )
    write(
        "quadrupled_triangle.cert.json",
        {
            "name": "quadrupled triangle",
            "k": 6,
            "expr": {"meet": [{"meet": [{"join": list("ijkl")}, {"join": list("abcd")}]}, {"join": list("efgh")}]},
        },
    )


if __name__ == "__main__":
    main()
