import dataclasses
import random
from fractions import Fraction
from math import comb

import pytest

from gallai.coloring import EdgeColoring, check_witness, color_pairs
from gallai.constants import ConstantsGeneral, ConstantsTight3
from gallai.errors import InputError
from gallai.exact import Real
from gallai.extraction import (extract_general, extract_tight3, extract_triple, extract_two_colored,
                               extract_weak_general, validate_certificate)
from gallai.extraction.general import default_m
from gallai.oracle import g_exact
from gallai.products import lex_product, product_of, random_gallai, random_two_coloring, substitute

import numpy as np


def test_two_colored_small(e1):
    W = extract_two_colored(e1)
    assert W.size >= 2 and check_witness(e1, W)
    assert extract_two_colored(EdgeColoring.monochromatic(1, 3, 1)).size == 1


def test_two_colored_random():
    rng = random.Random(3)
    for seed in range(40):
        n = rng.randint(27, 600)
        F = random_gallai(n, 3, seed, max_parts=rng.choice([2, 4, 16]))
        W = extract_two_colored(F)
        assert W.size ** 3 >= n and check_witness(F, W)


def test_two_colored_needs_three_colors():
    with pytest.raises(InputError):
        extract_two_colored(random_gallai(5, 4, 0))


def test_triple(e1):
    assert extract_triple(EdgeColoring.monochromatic(1, 3, 1)).product() == 1
    fam = extract_triple(e1)
    assert fam.product() >= 4 and fam.validate(e1)


def test_weak_general_full_palette():
    F = random_gallai(10, 4, 1)
    fam = extract_weak_general(F, 4)
    assert fam.best().size == 10


def test_weak_general_bounds():
    for seed in range(30):
        r = 4 + seed % 2
        s = 2 + seed % (r - 2)
        F = random_gallai(300, r, seed)
        fam = extract_weak_general(F, s)
        assert fam.validate(F)
        assert fam.product() >= 300 ** comb(r - 2, s - 2)
        assert fam.best().size ** comb(r, 2) >= 300 ** comb(s, 2)


def test_tight3_literal_constants_base_case():
    F = random_gallai(200, 3, 4)
    res = extract_tight3(F, ConstantsTight3.literal())
    assert res.flag == "product" and res.product >= 200
    assert res.f_n <= 1


def test_tight3_desk_exact_product():
    k = ConstantsTight3.desk()
    for seed in range(10):
        n = 100 + 150 * seed
        F = random_gallai(n, 3, seed)
        res = extract_tight3(F, k, 2 ** 40)
        assert res.family.validate(F)
        target = Real(n) * res.f_n if res.f_n <= 1 else Real(n)
        assert Real(res.product) >= target
        assert res.flag == "product"


def test_tight3_dominant_part_takes_case_two():
    big = random_gallai(300, 3, 5)
    F = substitute(EdgeColoring.monochromatic(2, 3, 3), [big, EdgeColoring.monochromatic(1, 3, 1)])
    k = ConstantsTight3.desk()
    res = extract_tight3(F, k, 2 ** 40)
    top = [t for t in res.trace if t["n"] == 301]
    assert top and top[0]["case"] in (1, 2)
    alpha1 = Fraction(top[0]["alpha1"])
    assert alpha1 ** 4 * k.log_C >= 1


def test_general_base_certificate():
    k = ConstantsGeneral.desk(4, 2)
    F = EdgeColoring.monochromatic(1, 4, 1)
    res = extract_general(F, 2, k)
    cert = res.certificate
    assert cert.a == 0 and cert.epsilon == 0 and cert.log_f == 0
    assert validate_certificate(F, res.family, cert, k, res.m)


def test_general_random_certificates():
    for seed in range(20):
        s = 2 + seed % 2
        k = ConstantsGeneral.desk(4, s)
        F = random_gallai(50 + 20 * seed, 4, seed, max_parts=[3, 8, 40][seed % 3])
        res = extract_general(F, s, k)
        rep = validate_certificate(F, res.family, res.certificate, k, res.m)
        assert rep, rep.to_json()


def test_general_tampered_weight_is_rejected():
    k = ConstantsGeneral.desk(4, 2)
    F = random_gallai(200, 4, 7)
    res = extract_general(F, 2, k)
    cert = res.certificate
    P = color_pairs(4)[0]
    bumped = dict(cert.weights)
    bumped[P] = max(cert.w(P), 1) * 10 ** 6
    bad = dataclasses.replace(cert, weights=bumped)
    rep = validate_certificate(F, res.family, bad, k, res.m)
    assert not rep and (1 in rep.violated or 2 in rep.violated)


def test_general_product_grows_pair_set():
    rng = np.random.default_rng(0)
    pairs = color_pairs(4)
    factors = [random_two_coloring(4, tuple(sorted(pairs[i % 6])), 4, rng) for i in range(6)]
    tree = product_of(factors)
    F = factors[0]
    for G in factors[1:]:
        F = lex_product(F, G)
    k = dataclasses.replace(ConstantsGeneral.desk(4, 2), delta=Fraction(1, 8))
    res = extract_general(F, 2, k, 2 ** 16)
    assert res.certificate.a <= comb(4, 2)
    assert validate_certificate(F, res.family, res.certificate, k, 2 ** 16)
    assert tree.n == F.n


def test_default_m_form():
    k = ConstantsGeneral.desk(4, 2)
    assert default_m(300, k) == 2 ** 16
    assert default_m(2 ** 16 + 1, k) == 2 ** 32


def test_extractors_below_oracle():
    for seed in range(15):
        F = random_gallai(12, 3, seed)
        W = extract_two_colored(F)
        assert W.size <= g_exact(F, W.colors).size
        for S, W in extract_triple(F).items():
            assert W.size <= g_exact(F, S).size
