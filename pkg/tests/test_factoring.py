import random
import time

import pytest

from cadrigid import fixtures
from cadrigid.factoring import factor, factor_values, is_irreducible, whole_value
from cadrigid.graph import BicoloredMultigraph, FrameSignature, make_edge
from cadrigid.rigidity import random_labeling


def product(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def tree_union(n, k, rng):
    edges = []
    for t in range(k):
        perm = list(range(n))
        rng.shuffle(perm)
        for i in range(1, n):
            edges.append((perm[i], perm[rng.randrange(i)]))
    return BicoloredMultigraph(n, tuple(make_edge(f"e{i}", u, v) for i, (u, v) in enumerate(edges)))


@pytest.mark.parametrize("name", fixtures.GRAPHS[1:])
def test_factors_partition_the_edges(name):
    d = fixtures.graph(name)
    dec = factor(d.graph, d.sig)
    seen = [x for f in dec.factors for x in f.edge_ids]
    assert sorted(seen) == sorted(d.graph.ids)


def test_two_doubled_triangles_factor_shape():
    d = fixtures.graph("two_doubled_triangles")
    dec = factor(d.graph, d.sig)
    assert [sorted(f.edge_ids) for f in dec.factors] == [list("abcdef"), list("ghijkl"), list("mno")]
    assert [f.origin for f in dec.factors] == ["circuit", "circuit", "residual"]


@pytest.mark.parametrize("name", fixtures.GRAPHS[1:])
def test_product_of_factor_values(name):
    d = fixtures.graph(name)
    dec = factor(d.graph, d.sig)
    rng = random.Random(name)
    for _ in range(5):
        lab = random_labeling(d.graph, d.sig, rng)
        assert product(factor_values(dec, lab)) == whole_value(d.graph, d.sig, lab)


@pytest.mark.parametrize("name", ["doubled_triangle", "braced_four_cycle", "quadrupled_triangle"])
def test_case_studies_are_irreducible(name):
    d = fixtures.graph(name)
    assert is_irreducible(d.graph, d.sig)
    assert len(factor(d.graph, d.sig).factors) == 1


def test_doubled_k4_is_reducible_only_with_colours():
    d = fixtures.graph("doubled_k4")
    assert is_irreducible(d.graph.recolored(), FrameSignature.color_blind(4))
    assert not is_irreducible(d.graph, d.sig)


def test_refactoring_a_factor_is_stable():
    d = fixtures.graph("two_doubled_triangles")
    for f in factor(d.graph, d.sig).factors:
        plain = BicoloredMultigraph(f.graph.n, tuple(f.graph.proper_edges))
        again = factor(plain, d.sig)
        assert [sorted(x.edge_ids) for x in again.factors] == [sorted(f.edge_ids)]


def test_cubic_scaling():
    rng = random.Random(0)
    sig = FrameSignature.color_blind(3)
    per = []
    for n in (16, 32, 64):
        g = tree_union(n, 3, rng)
        start = time.perf_counter()
        factor(g, sig)
        per.append((time.perf_counter() - start) / n**3)
    assert per[-1] <= 4 * max(per[0], 1e-7)
