from fractions import Fraction

import pytest

from gallai.coloring import color_pairs
from gallai.constructions import (WeightGraph, c_exponent, coloring_from_weight_graph, conjecture_threshold,
                                  optimal_weight_graph)
from gallai.errors import InputError
from gallai.exact import Real
from gallai.oracle import g_exact


def test_triple_product_t16():
    con = coloring_from_weight_graph(WeightGraph(3, {P: 16 for P in color_pairs(3)}))
    assert con.n == 4096
    assert all(con.g(P) <= 1024 for P in color_pairs(3))
    assert con.audit(2)


def test_single_pair():
    con = coloring_from_weight_graph(WeightGraph(3, {(1, 2): 9}))
    assert con.n == 9
    assert con.g({1, 2}) == 9 and con.g({1, 2, 3}) == 9


def test_matching_r4():
    WG = WeightGraph(4, {(1, 2): 64, (3, 4): 64})
    con = coloring_from_weight_graph(WG, seed=3)
    S = frozenset({1, 2, 3})
    g = con.g(S)
    blue = [f for f in con.factors if f.pair == frozenset({3, 4})][0]
    assert g == 64 * len(blue.red_clique)
    assert g <= 64 * 12
    # the inner factor on {3,4} occupies each block of 64 consecutive vertices
    F = con.coloring()
    block = list(range(64))
    assert g_exact(F.restrict(block), {3}).size == len(blue.red_clique)


def test_product_g_matches_oracle_small():
    con = coloring_from_weight_graph(WeightGraph(3, {(1, 2): 3, (1, 3): 3, (2, 3): 2}), seed=1)
    F = con.coloring()
    for S in ({1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}):
        assert con.g(S) == g_exact(F, S).size


def test_optimal_weights_examples():
    ow = optimal_weight_graph(3, 2, 4096)
    assert sorted(ow.graph.weights.values()) == [16, 16, 16]
    ow = optimal_weight_graph(4, 3, 2 ** 12)
    assert ow.regime == "matching" and sorted(ow.graph.weights.values()) == [64, 64]
    ow = optimal_weight_graph(5, 4, 2 ** 40)
    assert ow.regime == "triangle+matching"
    tri = ow.weight({1, 2})
    assert tri >= Real(Fraction(2 ** 8)) * 2 and tri <= Real(Fraction(2 ** 8)) * 3  # 2^8 * 40^(1/5)
    assert ow.graph.w({1, 2}) == 536 and ow.graph.w({4, 5}) == 7166


def test_optimal_weights_complete():
    ow = optimal_weight_graph(5, 2, 2 ** 20)
    assert ow.regime == "complete" and len(ow.graph.weights) == 10
    assert ow.graph.m >= 2 ** 20


def test_c_exponent_table():
    assert c_exponent(3, 2) == 2
    assert c_exponent(4, 4) == 0
    assert c_exponent(5, 3) == 6
    assert c_exponent(5, 1) == 1
    assert c_exponent(6, 5) == 1
    assert c_exponent(5, 4) == Fraction(8, 5)


def test_conjecture_threshold():
    assert conjecture_threshold(2, 3) == 5
    assert conjecture_threshold(3, 3) == 10
    assert conjecture_threshold(4, 3) == 25
    with pytest.raises(InputError):
        conjecture_threshold(3, 9)


def test_weight_graph_validation():
    with pytest.raises(InputError):
        WeightGraph(3, {(1, 4): 2})
    with pytest.raises(InputError):
        WeightGraph(3, {(1, 2): Fraction(1, 2)})
    with pytest.raises(InputError):
        coloring_from_weight_graph(WeightGraph(3, {(1, 2): Fraction(5, 2)}))
