import random
from fractions import Fraction
from math import comb

import pytest

from gallai.coloring import color_pairs
from gallai.discrepancy import (PairWeights, a0, find_heavy_set, heavy_factor, heavy_set_from_deviation,
                                random_pair_weights, variance_audit)
from gallai.errors import InputError


def test_complete_support_counts():
    res = find_heavy_set(PairWeights(5, {P: 1 for P in color_pairs(5)}), 3)
    assert res.kind == "count" and res.nonzero == 10 and res.a0 == 10


def test_single_weight_r4():
    res = find_heavy_set(PairWeights(4, {(1, 2): 1}), 3)
    assert res.kind == "set" and res.S == frozenset({1, 2, 3})
    assert res.Z == 1 and res.margin >= 0
    assert heavy_factor(4, 3) == (1 + Fraction(1, 576)) * Fraction(1, 2)


def test_nine_edges_r5():
    w = {P: 1 for P in color_pairs(5)[:9]}
    res = find_heavy_set(PairWeights(5, w), 3)
    assert res.kind == "set" and res.margin >= 0
    assert res.Z == max(PairWeights(5, w).Z(S) for S in __import__("itertools").combinations(range(1, 6), 3))


def test_a0_values():
    assert a0(6, 3) == 15
    assert a0(6, 5) == 3
    assert a0(7, 6) == 5


def test_s_range():
    with pytest.raises(InputError):
        find_heavy_set(PairWeights(4, {(1, 2): 1}), 4)


def test_deviation_example():
    res = heavy_set_from_deviation(PairWeights(4, {(1, 2): 6}))
    assert res.F == 3
    assert res.S in (frozenset({1, 2, 4}), frozenset({1, 2, 3}))
    assert res.Z == 6 and res.bound == Fraction(3, 6) * 6 + Fraction(3, 4)


def test_balanced_has_no_deviation():
    with pytest.raises(InputError):
        heavy_set_from_deviation(PairWeights(4, {P: 2 for P in color_pairs(4)}))


def test_doubled_degree_r5():
    w = {P: 1 for P in color_pairs(5)}
    for P in color_pairs(5):
        if 1 in P:
            w[P] = 3
    res = heavy_set_from_deviation(PairWeights(5, w))
    deg = PairWeights(5, w).degrees()
    assert res.dropped == min(deg, key=lambda v: (deg[v], v))
    assert res.margin >= 0


def test_variance_uniform():
    rep = variance_audit(PairWeights(5, {P: 7 for P in color_pairs(5)}))
    assert rep.variance_wQ == 0 and rep.lower_bound == 0


def test_variance_single_weight():
    for r in range(4, 8):
        R2 = comb(r, 2)
        rep = variance_audit(PairWeights(r, {(1, 2): 5}))
        assert rep.variance_wQ == 25 * (Fraction(1, R2) - Fraction(1, R2 * R2))
        assert rep.lower_bound == rep.variance_wQ


def test_variance_random():
    rng = random.Random(0)
    for i in range(100):
        rep = variance_audit(random_pair_weights(rng.randint(2, 8), i))
        assert rep.holds and rep.second_moment == rep.second_moment_formula


def test_weights_json_round_trip():
    pw = random_pair_weights(6, 3, nonzero=5)
    assert PairWeights.from_json(pw.to_json()) == pw
    with pytest.raises(InputError):
        PairWeights(3, {(1, 2): -1})
