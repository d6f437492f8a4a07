import numpy as np
import pytest

from gallai.coloring import (EdgeColoring, Witness, check_witness, color_subsets, decode, encode,
                             find_rainbow_triangle, from_json, is_gallai, to_json)
from gallai.errors import InputError
from gallai.products import random_coloring


def test_rainbow_k3():
    assert find_rainbow_triangle(decode("3 3\n1 2 3\n")) == (0, 1, 2)


def test_monochromatic_is_gallai():
    assert find_rainbow_triangle(EdgeColoring.monochromatic(7, 4, 2)) is None


def test_e1_is_gallai(e1):
    assert is_gallai(e1)


def test_detector_against_brute_force():
    for seed in range(60):
        F = random_coloring(7, 3, seed)
        rows = F.rows
        brute = any(len({rows[a][b], rows[a][c], rows[b][c]}) == 3
                    for a in range(7) for b in range(a + 1, 7) for c in range(b + 1, 7))
        tri = find_rainbow_triangle(F)
        assert (tri is not None) == brute
        if tri:
            a, b, c = tri
            assert len({rows[a][b], rows[a][c], rows[b][c]}) == 3


def test_witness_examples(e1):
    assert check_witness(e1, Witness((0, 1, 2), frozenset({1, 3})))
    assert not check_witness(e1, Witness((0, 1, 2, 3), frozenset({1, 3})))
    assert check_witness(e1, Witness((3,), frozenset({2})))
    assert check_witness(e1, Witness((), frozenset({1})))


def test_codec_examples():
    F = decode("2 3\n1\n")
    assert (F.n, F.r, F.color(0, 1)) == (2, 3, 1)
    text = "4 3\n1 3 3 3 3 2\n"
    assert encode(decode(text)) == text
    with pytest.raises(InputError, match="exceeds"):
        decode("3 2\n1 2 3\n")


def test_json_round_trip():
    F = random_coloring(9, 4, 3)
    assert from_json(to_json(F)) == F


def test_matrix_validation():
    with pytest.raises(InputError):
        EdgeColoring(2, 2, np.array([[0, 1], [2, 0]]))
    with pytest.raises(InputError):
        EdgeColoring(2, 2, np.array([[0, 3], [3, 0]]))


def test_color_subsets():
    assert len(color_subsets(5, 3)) == 10
