from fractions import Fraction
from math import comb

import numpy as np
import pytest

from gallai.cliques import is_clique, max_clique
from gallai.coloring import EdgeColoring
from gallai.errors import BudgetExhausted, InputError
from gallai.products import random_two_coloring
from gallai.ramsey import bicolor_clique_pair, search_ramsey_coloring, weighted_ramsey


def test_all_red():
    pair = bicolor_clique_pair(EdgeColoring.monochromatic(5, 2, 1), 1, 2)
    assert (pair.k, pair.l) == (5, 1)


def test_single_vertex():
    pair = bicolor_clique_pair(EdgeColoring.monochromatic(1, 2, 1), 1, 2)
    assert (pair.k, pair.l) == (1, 1)


def test_pair_is_monochromatic():
    rng = np.random.default_rng(0)
    for _ in range(30):
        F = random_two_coloring(40, (1, 2), 2, rng)
        p = bicolor_clique_pair(F, 1, 2)
        assert is_clique(F.color_masks[1], p.red) and is_clique(F.color_masks[2], p.blue)
        assert comb(p.k + p.l, p.k) >= 40


def test_weighted_singletons():
    F = EdgeColoring.monochromatic(1, 2, 1)
    res = weighted_ramsey(F, [(3, 5)], 1, 2)
    assert res.product == 15 and res.branch == "singletons"


def test_weighted_early_exit():
    F = EdgeColoring.monochromatic(2, 2, 1)
    res = weighted_ramsey(F, [(8, 1), (1, 8)], 1, 2)
    assert (res.red, res.blue, res.product) == ([0], [1], 64)


def test_weighted_uniform_reduces_to_pair():
    rng = np.random.default_rng(1)
    F = random_two_coloring(256, (1, 2), 2, rng)
    res = weighted_ramsey(F, [(1, 1)] * 256, 1, 2)
    assert res.branch == "bucket" and res.m1 == res.m2 == 1
    assert all(res.checks.values())
    assert res.product * 32 >= 64


def test_weighted_rejects_nonpositive():
    with pytest.raises(InputError):
        weighted_ramsey(EdgeColoring.monochromatic(2, 2, 1), [(0, 1), (1, 1)], 1, 2)


def test_weighted_chain_random_weights():
    rng = np.random.default_rng(2)
    for i in range(20):
        F = random_two_coloring(200, (1, 2), 2, rng)
        w = [(Fraction(int(rng.integers(1, 50))), Fraction(int(rng.integers(1, 50)))) for _ in range(200)]
        res = weighted_ramsey(F, w, 1, 2)
        assert all(res.checks.values())
        assert res.red_weight == sum(w[i][0] for i in res.red)


def test_search_examples():
    rc = search_ramsey_coloring(16, 8, 0, 10)
    assert rc.clique_bound <= 8
    assert len(max_clique(rc.coloring.color_masks[1])) == len(rc.red_clique)
    with pytest.raises(BudgetExhausted):
        search_ramsey_coloring(2, 1, 0, 20)
    rc = search_ramsey_coloring(4, 2, 0, 1000)
    assert rc.clique_bound <= 2
