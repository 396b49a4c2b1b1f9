"""Acceptance checks, one PASS/FAIL line per criterion.

Run under pytest (lines are repeated in the terminal summary) or directly
with ``python tests/test_acceptance.py``.  Checks known not to hold are
marked ``xfail(strict=True)``; they still print their FAIL line.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from fractions import Fraction

import pytest

from cadrigid import fixtures
from cadrigid.bracket import (
    FanEnumerator,
    count_tree_decompositions,
    enumerate_ab_fans,
    evaluate_bracket_polynomial,
    parse_bracket_polynomial,
    pure_condition_bracket,
    seed_fan,
    tree_decomposition_expansion,
    tree_expansion,
)
from cadrigid.factoring import factor, factor_values, whole_value
from cadrigid.forests import forest_partition
from cadrigid.gc import certify_equivalence
from cadrigid.graph import BLACK, RED, BicoloredMultigraph, FrameSignature, TieDown, apply_tie_down, make_edge
from cadrigid.pebble import play, play_uncolored, sparsity_oracle
from cadrigid.rigidity import bar_label_2d, bar_label_3d, pure_condition_value, random_labeling, stresses

LINES: list[str] = []


def report(criterion: int, ok: bool, detail: str) -> bool:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion:>2}: {detail}"
    LINES.append(line)
    print(line)
    return ok


# -- 1: pebble game against an independent oracle ------------------------------------------

SIGS = [FrameSignature(1, 2), FrameSignature(2, 2), FrameSignature(3, 3)]


def forest_oracle(g: BicoloredMultigraph, sig: FrameSignature) -> bool:
    """[a,b]-sparse iff the edges split into k forests with red edges in the first a."""
    allowed = [range(sig.a) if e.color == RED else range(sig.k) for e in g.edges]
    return forest_partition(g.n, [(e.u, e.v) for e in g.edges], sig.k, allowed) is not None


def exhaustive_graphs(sig: FrameSignature, max_n: int = 3):
    for n in range(1, max_n + 1):
        kinds = [(u, v, c) for u, v in itertools.combinations(range(n), 2) for c in (RED, BLACK)]
        for m in range(sig.k * n - sig.k + 3):
            for combo in itertools.combinations_with_replacement(kinds, m):
                yield BicoloredMultigraph(n, tuple(make_edge(f"e{i}", u, v, c) for i, (u, v, c) in enumerate(combo)))


def random_graph(rng: random.Random, sig: FrameSignature) -> BicoloredMultigraph:
    n = rng.randint(1, 5)
    m = rng.randint(0, sig.k * n - sig.k + 2)
    edges = []
    for i in range(m):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v and rng.random() < 0.9:
            continue
        edges.append(make_edge(f"e{i}", u, v, RED if rng.random() < 0.4 else BLACK))
    return BicoloredMultigraph(n, tuple(edges))


def test_criterion_01_pebble_game_matches_oracle():
    start = time.perf_counter()
    rng = random.Random(2024)
    bad = []
    counts = {"exhaustive": 0, "random": 0, "brute": 0}
    for sig in SIGS:
        for g in exhaustive_graphs(sig):
            counts["exhaustive"] += 1
            if play(g, sig)[0].is_independent != forest_oracle(g, sig):
                bad.append(("exhaustive", sig, g))
        for _ in range(10_000):
            g = random_graph(rng, sig)
            counts["random"] += 1
            got = play(g, sig)[0].is_independent
            if got != forest_oracle(g, sig):
                bad.append(("random", sig, g))
            black = sum(1 for e in g.edges if e.color == BLACK)
            if black <= 8 and g.m <= 20 and not g.loops:
                counts["brute"] += 1
                if got != sparsity_oracle(g, sig):
                    bad.append(("brute", sig, g))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    detail = (
        f"{counts['exhaustive']} exhaustive + {counts['random']} random graphs, "
        f"{counts['brute']} also brute-forced, {len(bad)} disagreements, {elapsed:.1f}s (< 60s)"
    )
    assert report(1, ok, detail)


# -- 2: fixtures classify as tight ---------------------------------------------------------


def test_criterion_02_fixtures_are_tight():
    expected = {
        "doubled_k4": ("[2,2]", FrameSignature(2, 2)),
        "doubled_triangle": ("(3,3)", None),
        "two_doubled_triangles": ("(3,3)", None),
        "quadrupled_triangle": ("(6,6)", None),
    }
    parts = []
    ok = True
    for name, (label, sig) in expected.items():
        d = fixtures.graph(name)
        if sig is not None:
            assert d.sig == sig
            v, _ = play(d.graph, sig)
        else:
            v, _ = play_uncolored(d.graph, d.sig.k)
        ok &= v.is_tight
        parts.append(f"{name} {v.verdict.value} {label}")
    assert report(2, ok, "; ".join(parts))


# -- 3: fan counts -------------------------------------------------------------------------


def test_criterion_03_fan_counts():
    expected = {"doubled_triangle": 2, "braced_four_cycle": 4, "quadrupled_triangle": 6}
    got = {}
    for name in expected:
        d = fixtures.graph(name)
        tied = apply_tie_down(d.graph, TieDown.standard(0, d.sig, colored=False))
        got[name] = sum(1 for _ in enumerate_ab_fans(tied, d.sig))
    detail = ", ".join(f"{n} {got[n]} (want {expected[n]})" for n in expected)
    assert report(3, got == expected, detail)


# -- 4: tree decompositions of the doubled triangle ----------------------------------------


@pytest.mark.xfail(strict=True, reason="an exhaustive count gives 48 looped decompositions, not 36")
def test_criterion_04_tree_decomposition_count():
    d = fixtures.graph("doubled_triangle")
    n = count_tree_decompositions(d.graph, d.sig, d.tie_down)
    assert report(4, n == 36, f"doubled triangle has {n} looped tree decompositions (want 36)")


# -- 5: determinant identities -------------------------------------------------------------


def test_criterion_05_determinant_identities():
    start = time.perf_counter()
    rng = random.Random(5)
    parts = []
    ok = True
    for name in fixtures.GRAPHS:
        d = fixtures.graph(name)
        bp = pure_condition_bracket(d.graph, d.sig, d.tie_down)
        exp = tree_expansion(d.graph, d.sig, d.tie_down)
        ratios = set()
        tree_ok = True
        for _ in range(100):
            lab = random_labeling(d.graph, d.sig, rng)
            det = pure_condition_value(d.graph, d.sig, lab, d.tie_down)
            br = evaluate_bracket_polynomial(bp, lab)
            ratios.add(br / det if det else ("zero" if br == 0 else "bad"))
            tree_ok &= tree_decomposition_expansion(d.graph, d.sig, d.tie_down, lab, expansion=exp) == det
        sign_ok = len(ratios) == 1 and next(iter(ratios)) in (1, -1)
        ok &= sign_ok and tree_ok
        parts.append(f"{name} sign {sorted(map(str, ratios))} trees {'=' if tree_ok else '!='} det")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 120
    assert report(5, ok, "; ".join(parts) + f"; {elapsed:.1f}s (< 120s)")


# -- 6: doubled triangle polynomial --------------------------------------------------------


def test_criterion_06_doubled_triangle_polynomial():
    d = fixtures.graph("doubled_triangle")
    bp = pure_condition_bracket(d.graph, d.sig, d.tie_down)
    want = parse_bracket_polynomial("[a b d][c e f] - [a b c][d e f]", d.graph.ids)
    ok = bp.equals(want) or bp.equals(want.negated())
    assert report(6, ok, f"computed {bp.to_text()}")


# -- 7: factoring --------------------------------------------------------------------------


def test_criterion_07_factoring():
    parts = []
    d = fixtures.graph("two_doubled_triangles")
    dec = factor(d.graph, d.sig)
    shape = [sorted(f.edge_ids) for f in dec.factors]
    ok = shape == [list("abcdef"), list("ghijkl"), list("mno")]
    parts.append(f"two doubled triangles -> {len(dec.factors)} factors {[''.join(s) for s in shape]}")
    k4 = fixtures.graph("doubled_k4")
    k4_sets = [sorted(f.edge_ids) for f in factor(k4.graph, k4.sig).factors]
    ok &= ["c", "d"] in k4_sets
    parts.append(f"doubled K4 factors {[''.join(s) for s in k4_sets]}")
    rng = random.Random(7)
    for name in fixtures.GRAPHS[1:]:
        g = fixtures.graph(name)
        dec = factor(g.graph, g.sig)
        ratios = set()
        for _ in range(50):
            lab = random_labeling(g.graph, g.sig, rng)
            prod = Fraction(1)
            for v in factor_values(dec, lab):
                prod *= v
            whole = whole_value(g.graph, g.sig, lab)
            ratios.add(prod / whole if whole else None)
        const_ok = len(ratios) == 1 and None not in ratios and next(iter(ratios)) != 0
        ok &= const_ok
        parts.append(f"{name} c={'/'.join(map(str, ratios))}")
    assert report(7, ok, "; ".join(parts))


# -- 8: special positions vanish -----------------------------------------------------------


def _direction(p, q):
    return tuple(Fraction(y) - Fraction(x) for x, y in zip(p, q))


def _parallel(u, v):
    return all(u[i] * v[j] == u[j] * v[i] for i in range(len(u)) for j in range(len(u)))


def _labels(bars, dim):
    make = bar_label_2d if dim == 2 else bar_label_3d
    return {e: make(p, q) for e, (p, q) in bars.items()}


def special_position_check(name: str) -> tuple[bool, str]:
    d = fixtures.graph(name)
    raw = fixtures.embedding_data(name, "parallel")
    key = "bars_2d" if "bars_2d" in raw else "bars_3d"
    dim = 2 if key == "bars_2d" else 3
    bars = {e: ([Fraction(x) for x in p], [Fraction(x) for x in q]) for e, (p, q) in raw[key].items()}
    base = pure_condition_value(d.graph, d.sig, _labels(bars, dim), d.tie_down)
    dirs = {e: _direction(p, q) for e, (p, q) in bars.items()}
    family = [e for e in bars if any(f != e and _parallel(dirs[e], dirs[f]) for f in bars)]
    tried = 0
    stuck = []
    for e in family:
        p, q = bars[e]
        for j in range(dim):
            moved = list(q)
            moved[j] += Fraction(1, 1000)
            if _parallel(_direction(p, moved), dirs[e]):
                continue
            tried += 1
            val = pure_condition_value(d.graph, d.sig, _labels({**bars, e: (p, moved)}, dim), d.tie_down)
            if val == 0:
                stuck.append(f"{e}[{j}]")
    ok = base == 0 and not stuck
    detail = f"{name}: value {base}, {tried} perturbations, {len(stuck)} still zero"
    if stuck:
        detail += f" ({' '.join(stuck[:6])}{' ...' if len(stuck) > 6 else ''})"
    return ok, detail


@pytest.mark.parametrize(
    "name",
    [
        "doubled_triangle",
        "braced_four_cycle",
        pytest.param(
            "quadrupled_triangle",
            marks=pytest.mark.xfail(strict=True, reason="one perturbation leaves two parallel quadruples"),
        ),
    ],
)
def test_criterion_08_special_positions(name):
    ok, detail = special_position_check(name)
    assert report(8, ok, detail)


# -- 9: Cayley certificates ----------------------------------------------------------------


@pytest.mark.parametrize("name", fixtures.CASE_STUDIES)
def test_criterion_09_certificates(name):
    d = fixtures.graph(name)
    bp = pure_condition_bracket(d.graph, d.sig, d.tie_down)
    cert = fixtures.certificate(name)
    res = certify_equivalence(
        cert.expr, cert.k, lambda lab: evaluate_bracket_polynomial(bp, lab), trials=200, rng=random.Random(9)
    )
    assert report(9, res.equivalent, f"{name}: equivalent={res.equivalent} constant={res.constant} over {res.trials} trials")


# -- 10: stresses at the special positions -------------------------------------------------


@pytest.mark.parametrize(
    "name",
    [
        "doubled_triangle",
        pytest.param(
            "braced_four_cycle",
            marks=pytest.mark.xfail(strict=True, reason="the stress misses the diagonal bar at this position"),
        ),
        pytest.param(
            "quadrupled_triangle",
            marks=pytest.mark.xfail(strict=True, reason="three parallel quadruples carry four independent stresses"),
        ),
    ],
)
def test_criterion_10_stresses(name):
    d = fixtures.graph(name)
    lab = fixtures.embedding(name, "parallel")
    basis = stresses(d.graph, d.sig, lab, d.tie_down)
    support = set().union(*(s.support for s in basis)) if basis else set()
    full = set(d.graph.ids)
    ok = len(basis) == 1 and support == full
    missing = sorted(full - support)
    assert report(10, ok, f"{name}: stress dimension {len(basis)}, support misses {missing or 'nothing'}")


# -- 11: complexity ------------------------------------------------------------------------


def tree_union(n: int, k: int, rng: random.Random) -> BicoloredMultigraph:
    edges = []
    for _ in range(k):
        perm = list(range(n))
        rng.shuffle(perm)
        for i in range(1, n):
            edges.append((perm[i], perm[rng.randrange(i)]))
    rng.shuffle(edges)
    return BicoloredMultigraph(n, tuple(make_edge(f"e{i}", u, v) for i, (u, v) in enumerate(edges)))


def chained_blocks(n: int) -> BicoloredMultigraph:
    """Doubled triangles on (2i, 2i+1, 2i+2); an even n ends with a tripled edge."""
    pairs = []
    i = 0
    while 2 * i + 2 < n:
        u, v, w = 2 * i, 2 * i + 1, 2 * i + 2
        pairs += [(u, v), (u, v), (v, w), (v, w), (u, w), (u, w)]
        i += 1
    if n % 2 == 0:
        pairs += [(n - 2, n - 1)] * 3
    return BicoloredMultigraph(n, tuple(make_edge(f"e{j}", u, v) for j, (u, v) in enumerate(pairs)))


def per_fan_seconds(n: int, fans: int = 2000, rounds: int = 5) -> float:
    sig = FrameSignature.color_blind(3)
    tied = apply_tie_down(chained_blocks(n), TieDown.standard(0, sig, colored=False))
    seed = seed_fan(tied, sig, colored=False)
    best = float("inf")
    for _ in range(rounds):
        en = FanEnumerator(tied, seed.tails, 3)
        it = en.run()
        next(it)
        start = time.perf_counter()
        count = 0
        for _ in it:
            count += 1
            if count >= fans:
                break
        best = min(best, (time.perf_counter() - start) / count)
    return best


def test_criterion_11_complexity():
    rng = random.Random(11)
    n = 10_000
    g = tree_union(n, 6, rng)
    start = time.perf_counter()
    verdict, _ = play_uncolored(g, 6)
    pebble_time = time.perf_counter() - start
    times = {size: per_fan_seconds(size) for size in (10, 100, 1000)}
    ratio = max(times.values()) / min(times.values())
    ok = verdict.is_tight and pebble_time < 10 and ratio <= 15
    fan_text = ", ".join(f"n={s} {t * 1e6:.1f}us" for s, t in times.items())
    detail = f"pebble n={n} m={g.m} {verdict.verdict.value} in {pebble_time:.2f}s (< 10s); per fan {fan_text}; ratio {ratio:.2f} (<= 15)"
    assert report(11, ok, detail)


# -- script mode ---------------------------------------------------------------------------


def main() -> int:
    checks = [
        test_criterion_01_pebble_game_matches_oracle,
        test_criterion_02_fixtures_are_tight,
        test_criterion_03_fan_counts,
        test_criterion_04_tree_decomposition_count,
        test_criterion_05_determinant_identities,
        test_criterion_06_doubled_triangle_polynomial,
        test_criterion_07_factoring,
        *[lambda n=n: test_criterion_08_special_positions(n) for n in fixtures.CASE_STUDIES],
        *[lambda n=n: test_criterion_09_certificates(n) for n in fixtures.CASE_STUDIES],
        *[lambda n=n: test_criterion_10_stresses(n) for n in fixtures.CASE_STUDIES],
        test_criterion_11_complexity,
    ]
    for check in checks:
        try:
            check()
        except AssertionError:
            pass
    failed = sum(1 for line in LINES if line.startswith("[FAIL]"))
    print(f"{len(LINES) - failed} passed, {failed} failed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
