from gallai.coloring import EdgeColoring, color_subsets
from gallai.oracle import enumerate_gallai, exhaustive_pair_product_check, g_exact, naive_g
from gallai.products import random_coloring


def test_e1_values(e1):
    assert g_exact(e1, {1, 3}).size == 3
    assert g_exact(e1, {2, 3}).size == 3
    assert g_exact(e1, {1, 2}).size == 2


def test_monochromatic():
    F = EdgeColoring.monochromatic(9, 3, 2)
    assert g_exact(F, {2}).size == 9 and g_exact(F, {1}).size == 1


def test_matches_naive():
    for seed in range(40):
        F = random_coloring(9, 3, seed)
        for S in color_subsets(3, 1) + color_subsets(3, 2):
            assert g_exact(F, S).size == naive_g(F, S)


def test_enumeration_counts():
    assert sum(1 for _ in enumerate_gallai(3, 3)) == 21
    assert sum(1 for _ in enumerate_gallai(2, 4)) == 4
    assert sum(1 for _ in enumerate_gallai(5, 3)) == 6129


def test_pair_product_small():
    assert exhaustive_pair_product_check(1)
    assert exhaustive_pair_product_check(3)
