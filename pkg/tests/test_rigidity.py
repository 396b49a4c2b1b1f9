import itertools
import random
from fractions import Fraction

import pytest

from cadrigid import fixtures
from cadrigid.exact import bareiss_det, rank
from cadrigid.graph import BicoloredMultigraph, FrameSignature, TieDown, TieLoop, apply_tie_down, make_edge
from cadrigid.pebble import play_kl, play_tied
from cadrigid.rigidity import (
    LabelError,
    bar_label_2d,
    bar_label_3d,
    build_matrix,
    matrix_rank,
    plucker_quadric,
    pure_condition_float,
    pure_condition_value,
    random_labeling,
    stresses,
)

SIG3 = FrameSignature.color_blind(3)


def test_row_layout():
    g = BicoloredMultigraph(2, (make_edge("a", 0, 1),))
    m = build_matrix(g, SIG3, {"a": (1, 2, 3)}, TieDown.standard(0, SIG3, colored=False))
    assert m.rows[0] == [1, 2, 3, -1, -2, -3]
    assert m.row_ids == ["a", "_t1", "_t2", "_t3"]
    assert m.rows[1][:3] == [1, 0, 0]


def test_red_label_suffix_checked():
    d = fixtures.graph("doubled_k4")
    lab = random_labeling(d.graph, d.sig, random.Random(0))
    lab["c"] = (1, 2, 3, 4)
    with pytest.raises(LabelError):
        build_matrix(d.graph, d.sig, lab, d.tie_down)


def test_generic_value_nonzero_iff_tight():
    rng = random.Random(1)
    td = TieDown.standard(0, SIG3, colored=False)
    pairs = [(0, 1), (0, 2), (1, 2)]
    for combo in itertools.combinations_with_replacement(pairs, 6):
        g = BicoloredMultigraph(3, tuple(make_edge(f"e{i}", u, v) for i, (u, v) in enumerate(combo)))
        tight = play_kl(g, 3, 3)[0].is_tight
        val = pure_condition_value(g, SIG3, random_labeling(g, SIG3, rng), td)
        assert (val != 0) == tight, combo


def _generalized(g, sig, rng):
    while True:
        loops = [TieLoop(f"_g{i}", rng.randrange(g.n)) for i in range(sig.k)]
        td = TieDown.generalized(loops)
        if play_tied(apply_tie_down(g, td), k=sig.k)[0].is_tight:
            return td


@pytest.mark.parametrize("name", ["doubled_triangle", "braced_four_cycle", "two_doubled_triangles"])
def test_vanishing_independent_of_tie_down(name):
    d = fixtures.graph(name)
    rng = random.Random(2)
    ties = [TieDown.standard(v, d.sig, colored=False) for v in range(3)]
    ties += [_generalized(d.graph, d.sig, rng) for _ in range(2)]
    for kind in ("generic", "parallel"):
        try:
            lab = fixtures.embedding(name, kind)
        except FileNotFoundError:
            continue
        zero = {pure_condition_value(d.graph, d.sig, lab, td) == 0 for td in ties}
        assert len(zero) == 1, kind


def test_standard_tie_downs_agree_up_to_sign():
    d = fixtures.graph("two_doubled_triangles")
    lab = fixtures.embedding("two_doubled_triangles")
    vals = {abs(pure_condition_value(d.graph, d.sig, lab, TieDown.standard(v, d.sig, colored=False))) for v in range(6)}
    assert len(vals) == 1


@pytest.mark.parametrize("name", fixtures.CASE_STUDIES)
def test_rank_nullity_and_annihilation(name):
    d = fixtures.graph(name)
    lab = fixtures.embedding(name, "parallel")
    mat = build_matrix(d.graph, d.sig, lab, d.tie_down)
    basis = stresses(d.graph, d.sig, lab, d.tie_down)
    assert matrix_rank(mat) + len(basis) == len(mat.rows)
    for s in basis:
        w = [s.weights[r] for r in mat.row_ids]
        combo = [sum(wi * row[j] for wi, row in zip(w, mat.rows)) for j in range(len(mat.rows[0]))]
        assert all(x == 0 for x in combo)


def test_float_mode_agrees():
    d = fixtures.graph("braced_four_cycle")
    gen = fixtures.embedding("braced_four_cycle")
    par = fixtures.embedding("braced_four_cycle", "parallel")
    det, _, zero = pure_condition_float(d.graph, d.sig, gen, d.tie_down)
    exact = pure_condition_value(d.graph, d.sig, gen, d.tie_down)
    assert not zero
    assert det == pytest.approx(float(exact), rel=1e-9)
    assert pure_condition_float(d.graph, d.sig, par, d.tie_down)[2]


def test_bar_label_2d_contains_endpoints():
    p, q = (Fraction(1, 3), 2), (5, Fraction(-7, 2))
    line = bar_label_2d(p, q)
    for x, y in (p, q):
        assert line[0] * x + line[1] * y + line[2] == 0


def test_bar_label_3d_is_a_line():
    rng = random.Random(4)
    for _ in range(20):
        p = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)]
        q = [x + rng.randint(1, 4) for x in p]
        assert plucker_quadric(bar_label_3d(p, q)) == 0


def test_bar_label_rejects_degenerate():
    with pytest.raises(LabelError):
        bar_label_2d((1, 1), (1, 1))


def test_bareiss_matches_leibniz():
    rng = random.Random(8)
    for n in range(1, 5):
        m = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        ref = Fraction(0)
        for perm in itertools.permutations(range(n)):
            inv = sum(1 for i in range(n) for j in range(i) if perm[j] > perm[i])
            term = Fraction((-1) ** inv)
            for i, p in enumerate(perm):
                term *= m[i][p]
            ref += term
        assert bareiss_det(m) == ref
    assert rank([[1, 2], [2, 4]]) == 1


@pytest.mark.parametrize("name", fixtures.CASE_STUDIES)
def test_single_full_stress_on_a_generic_zero(name):
    # the value is affine in one coordinate, so solving for it lands on a generic zero
    d = fixtures.graph(name)
    lab = random_labeling(d.graph, d.sig, random.Random(10))
    e = d.graph.ids[0]

    def value_at(x):
        return pure_condition_value(d.graph, d.sig, {**lab, e: (x,) + lab[e][1:]}, d.tie_down)

    f0, f1 = value_at(Fraction(0)), value_at(Fraction(1))
    root = -f0 / (f1 - f0)
    lab[e] = (root,) + lab[e][1:]
    assert pure_condition_value(d.graph, d.sig, lab, d.tie_down) == 0
    basis = stresses(d.graph, d.sig, lab, d.tie_down)
    assert len(basis) == 1
    assert set(basis[0].support) >= set(d.graph.ids)
