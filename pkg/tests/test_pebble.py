import random

import pytest

from cadrigid import fixtures
from cadrigid.graph import BLACK, RED, BicoloredMultigraph, Edge, FrameSignature, make_edge
from cadrigid.pebble import (
    Verdict,
    check_invariants,
    circuit_with,
    fundamental_circuit,
    is_sparse,
    kl_oracle,
    play,
    play_kl,
    play_tied,
    play_uncolored,
    sparsity_oracle,
)


def random_graph(rng, n, m, red_share=0.3):
    edges = []
    for i in range(m):
        u, v = rng.randrange(n), rng.randrange(n)
        while u == v:
            u, v = rng.randrange(n), rng.randrange(n)
        edges.append(make_edge(f"e{i}", u, v, RED if rng.random() < red_share else BLACK))
    return BicoloredMultigraph(n, tuple(edges))


def test_single_edge_is_sparse():
    g = BicoloredMultigraph(2, (make_edge("a", 0, 1),))
    v, _ = play(g, FrameSignature(1, 1))
    assert v.verdict is Verdict.SPARSE and not v.rejected


def test_two_vertex_tight():
    sig = FrameSignature(1, 1)
    g = BicoloredMultigraph(2, (make_edge("a", 0, 1, RED), make_edge("b", 0, 1)))
    assert play(g, sig)[0].verdict is Verdict.TIGHT


def test_two_red_edges_need_two_red_trees():
    sig = FrameSignature(1, 1)
    g = BicoloredMultigraph(2, (make_edge("a", 0, 1, RED), make_edge("b", 0, 1, RED)))
    v, _ = play(g, sig)
    assert v.rejected == ("b",)
    assert v.verdict is Verdict.DEPENDENT


def test_dependent_spanning_verdict():
    sig = FrameSignature(1, 1)
    g = BicoloredMultigraph(2, tuple(make_edge(x, 0, 1) for x in "abc"))
    v, _ = play(g, sig)
    assert v.verdict is Verdict.DEPENDENT_SPANNING


def test_fixture_verdicts():
    for name in fixtures.GRAPHS:
        d = fixtures.graph(name)
        g = d.graph
        if g.all_black():
            v, _ = play_uncolored(g, d.sig.k)
        else:
            v, _ = play(g, d.sig)
        assert v.is_tight, name


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 2)])
def test_matches_oracle_small(a, b):
    rng = random.Random(a * 10 + b)
    sig = FrameSignature(a, b)
    for _ in range(300):
        n = rng.randint(2, 4)
        g = random_graph(rng, n, rng.randint(0, min(12, sig.k * n - sig.k + 2)))
        assert play(g, sig)[0].is_independent == sparsity_oracle(g, sig), g


def test_kl_matches_oracle():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(2, 5)
        k = rng.randint(1, 3)
        ell = rng.randint(0, 2 * k - 1)
        g = random_graph(rng, n, rng.randint(0, k * n), 0.0)
        assert play_kl(g, k, ell)[0].is_independent == kl_oracle(g, k, ell)


def test_invariants_hold_after_every_move():
    rng = random.Random(3)
    sig = FrameSignature(2, 1)
    for _ in range(40):
        g = random_graph(rng, 5, 14)
        seen = []
        play(g, sig, observer=lambda game, move: seen.append(check_invariants(game)))
        assert all(not s for s in seen)


def test_verdict_independent_of_edge_order():
    rng = random.Random(11)
    sig = FrameSignature(1, 2)
    for _ in range(60):
        g = random_graph(rng, 5, 14)
        order = list(range(g.m))
        rng.shuffle(order)
        v1, _ = play(g, sig)
        v2, _ = play(g, sig, order=order)
        assert v1.verdict == v2.verdict
        assert len(v1.rejected) == len(v2.rejected)


def test_fundamental_circuits_are_minimal():
    rng = random.Random(5)
    sig = FrameSignature(1, 1)
    checked = 0
    for _ in range(60):
        g = random_graph(rng, 4, 9)
        v, cfg = play(g, sig)
        for eid in v.rejected:
            circ = fundamental_circuit(cfg, eid) + [eid]
            sub = g.subgraph(circ)
            assert not is_sparse(sub, sig)
            for x in circ:
                assert is_sparse(sub.without([x]), sig)
            checked += 1
    assert checked > 20


def test_doubled_k4_copy_of_c_closes_small_circuit():
    d = fixtures.graph("doubled_k4")
    c = d.graph.edge("c")
    circ = circuit_with(d.graph, d.sig, Edge("c'", c.u, c.v, c.color))
    assert sorted(circ + ["c'"]) == ["c", "c'", "d"]


def test_tied_fixture_is_tight():
    d = fixtures.graph("doubled_triangle")
    from cadrigid.graph import apply_tie_down

    v, _ = play_tied(apply_tie_down(d.graph, d.tie_down), k=3)
    assert v.is_tight
