"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

The lines are also collected and repeated in the terminal summary.
"""

import random
import time
from fractions import Fraction
from itertools import combinations, product
from math import comb

import numpy as np

from conftest import ACCEPTANCE_LINES
from gallai.asymptotics import check_facts_A, check_facts_C
from gallai.coloring import EdgeColoring, check_witness, color_pairs, color_subsets
from gallai.constants import ConstantsGeneral, ConstantsTight3
from gallai.constructions import WeightGraph, coloring_from_weight_graph
from gallai.discrepancy import (a0, find_heavy_set, heavy_set_from_deviation,
                                random_pair_weights, variance_audit)
from gallai.errors import GallaiError, InputError
from gallai.exact import compare_log_squared
from gallai.extraction import (extract_general, extract_tight3, extract_triple, extract_two_colored,
                               extract_weak_general, validate_certificate)
from gallai.oracle import enumerate_gallai, g_exact, naive_g
from gallai.products import lex_product, random_coloring, random_gallai, random_two_coloring
from gallai.ramsey import bicolor_clique_pair, weighted_ramsey


def record(num: int, title: str, ok: bool, detail: str, elapsed: float, limit: float) -> None:
    in_time = elapsed < limit
    verdict = "PASS" if ok and in_time else "FAIL"
    line = f"criterion {num:2d} [{verdict}] {title}: {detail} ({elapsed:.1f}s, limit {limit:.0f}s)"
    ACCEPTANCE_LINES[num] = line
    print(line)
    assert ok, line
    assert in_time, line


def test_criterion_01_pair_product_exhaustive():
    t0 = time.perf_counter()
    runs = failures = 0
    for n in range(1, 6):
        for F in enumerate_gallai(n, 3):
            fam = extract_triple(F)
            runs += 1
            if not (fam.validate(F) and fam.product() >= n):
                failures += 1
    record(1, "pair-witness product >= n on every Gallai 3-coloring, n <= 5", failures == 0,
           f"{runs} colorings, {failures} failures", time.perf_counter() - t0, 60)


def test_criterion_02_two_colored_at_scale():
    t0 = time.perf_counter()
    rng = random.Random(2)
    failures = 0
    smallest_ratio = None
    for i in range(500):
        n = rng.randint(27, 2187)
        F = random_gallai(n, 3, 10_000 + i, max_parts=rng.choice([2, 3, 5, 8, 16, 64]))
        W = extract_two_colored(F)
        ok = len(W.colors) == 2 and check_witness(F, W) and W.size ** 3 >= n
        failures += not ok
        ratio = Fraction(W.size ** 3, n)
        smallest_ratio = ratio if smallest_ratio is None else min(smallest_ratio, ratio)
    record(2, "two-colored witness of size >= ceil(n^(1/3))", failures == 0,
           f"500 colorings, {failures} failures, min |W|^3/n = {float(smallest_ratio):.3f}",
           time.perf_counter() - t0, 300)


def test_criterion_03_construction_bracketing():
    t0 = time.perf_counter()
    rows = []
    ok = True
    for t in (8, 16, 32):
        con = coloring_from_weight_graph(WeightGraph(3, {P: t for P in color_pairs(3)}), seed=t)
        gs = [con.g(P) for P in color_pairs(3)]
        # g <= t (2 log2 t)^2  <=>  g / (4t) <= log2(t)^2
        upper = all(compare_log_squared(Fraction(g, 4 * t), t) <= 0 for g in gs)
        W = extract_two_colored(con.tree)
        lower = W.size >= t
        ok &= upper and lower
        rows.append(f"t={t}: max g={max(gs)} vs {t * (2 * t.bit_length() - 2) ** 2}, extracted {W.size}")
    record(3, "construction g <= t(2 log t)^2 and extraction >= t", ok, "; ".join(rows),
           time.perf_counter() - t0, 120)


def test_criterion_04_product_law():
    t0 = time.perf_counter()
    rng = random.Random(4)
    failures = checks = 0
    for i in range(200):
        r = rng.randint(2, 4)
        F1 = random_coloring(rng.randint(1, 8), r, 2 * i)
        F2 = random_coloring(rng.randint(1, 8), r, 2 * i + 1)
        P = lex_product(F1, F2)
        for s in range(1, r + 1):
            for S in color_subsets(r, s):
                checks += 1
                if g_exact(P, S).size != g_exact(F1, S).size * g_exact(F2, S).size:
                    failures += 1
    record(4, "g(F1 x F2, S) = g(F1, S) g(F2, S)", failures == 0,
           f"200 pairs, {checks} color sets, {failures} failures", time.perf_counter() - t0, 120)


def test_criterion_05_two_color_cliques_exhaustive():
    t0 = time.perf_counter()
    runs = failures = 0
    for t in range(1, 7):
        for flat in product((1, 2), repeat=t * (t - 1) // 2):
            F = EdgeColoring.from_flat(t, 2, flat)
            pair = bicolor_clique_pair(F, 1, 2)
            runs += 1
            k, l = pair.k, pair.l
            mono = (all(F.color(u, v) == 1 for u, v in combinations(pair.red, 2))
                    and all(F.color(u, v) == 2 for u, v in combinations(pair.blue, 2)))
            ok = mono and k >= 1 and l >= 1 and comb(k + l, k) >= t and compare_log_squared(4 * k * l, t) >= 0
            failures += not ok
    record(5, "red/blue cliques with binom(k+l,k) >= t and kl >= log^2(t)/4, t <= 6", failures == 0,
           f"{runs} colorings, {failures} failures", time.perf_counter() - t0, 60)


def test_criterion_06_weighted_ramsey():
    t0 = time.perf_counter()
    rng = np.random.default_rng(6)
    uniform_fail = chain_fail = 0
    worst = None
    for t in (256, 1024):
        for _ in range(50):
            F = random_two_coloring(t, (1, 2), 2, rng)
            res = weighted_ramsey(F, [(1, 1)] * t, 1, 2)
            # product >= log^2(t) / 32
            if compare_log_squared(32 * res.product, t) < 0:
                uniform_fail += 1
            if not all(res.checks.values()):
                chain_fail += 1
            ratio = res.product * 32 / (t.bit_length() - 1) ** 2
            worst = ratio if worst is None else min(worst, ratio)
    chain_runs = 0
    for i in range(100):
        t = int(rng.integers(16, 600))
        F = random_two_coloring(t, (1, 2), 2, rng)
        spread = int(rng.integers(1, 6))
        w = [(Fraction(int(rng.integers(1, 2 ** spread + 1)), int(rng.integers(1, 4))),
              Fraction(int(rng.integers(1, 2 ** spread + 1)), int(rng.integers(1, 4)))) for _ in range(t)]
        try:
            res = weighted_ramsey(F, w, 1, 2)
        except GallaiError:
            chain_fail += 1
            continue
        chain_runs += 1
        if res.branch == "bucket":
            needed = ("bucket_ratio", "pigeonhole", "chain")
            if not all(res.checks.get(k, False) for k in needed):
                chain_fail += 1
    ok = uniform_fail == 0 and chain_fail == 0
    record(6, "weighted Ramsey product and internal chain", ok,
           f"uniform 100 runs, {uniform_fail} below log^2 t/32 (worst ratio {float(worst):.2f}); "
           f"random weights {chain_runs} runs, {chain_fail} chain failures", time.perf_counter() - t0, 180)


def test_criterion_07_weak_general():
    t0 = time.perf_counter()
    rng = random.Random(7)
    failures = 0
    for i in range(200):
        r = rng.choice([4, 5])
        s = rng.randint(2, r - 1)
        n = rng.randint(2, 4096)
        F = random_gallai(n, r, 20_000 + i, max_parts=rng.choice([2, 3, 8, 32]))
        fam = extract_weak_general(F, s)
        ok = (fam.validate(F)
              and fam.product() >= n ** comb(r - 2, s - 2)
              and fam.best().size ** comb(r, 2) >= n ** comb(s, 2))
        failures += not ok
    record(7, "product >= n^binom(r-2,s-2) and best >= n^(binom(s,2)/binom(r,2))", failures == 0,
           f"200 colorings, {failures} failures", time.perf_counter() - t0, 300)


def test_criterion_08_certificates():
    t0 = time.perf_counter()
    rng = random.Random(8)
    failures = 0
    kinds: dict = {}
    for i in range(100):
        s = rng.choice([2, 3])
        n = rng.randint(2, 500)
        k = ConstantsGeneral.desk(4, s)
        F = random_gallai(n, 4, 30_000 + i, max_parts=rng.choice([3, 8, 16, 40]))
        res = extract_general(F, s, k, 2 ** 16)
        rep = validate_certificate(F, res.family, res.certificate, k, 2 ** 16)
        failures += not rep
        kinds[res.certificate.kind] = kinds.get(res.certificate.kind, 0) + 1
    record(8, "certificates satisfy properties (1)-(5) at desk constants", failures == 0,
           f"100 colorings, {failures} invalid, kinds {dict(sorted(kinds.items()))}", time.perf_counter() - t0, 300)


def test_criterion_09_discrepancy():
    t0 = time.perf_counter()
    rng = random.Random(9)
    var_fail = 0
    for i in range(1000):
        r = rng.randint(2, 8)
        pw = random_pair_weights(r, i, nonzero=rng.randint(0, comb(r, 2)))
        try:
            rep = variance_audit(pw)
            var_fail += not (rep.second_moment == rep.second_moment_formula and rep.holds)
        except GallaiError:
            var_fail += 1
    heavy_fail = 0
    for i in range(10_000):
        r = rng.randint(3, 8)
        s = rng.randint(2, r - 1)
        limit = min(int(-(-a0(r, s) // 1)) - 1, comb(r, 2))
        pw = random_pair_weights(r, 50_000 + i, nonzero=rng.randint(0, limit))
        try:
            res = find_heavy_set(pw, s)
            heavy_fail += not (res.kind == "set" and res.margin >= 0)
        except GallaiError:
            heavy_fail += 1
    dev_fail = dev_runs = 0
    while dev_runs < 1000:
        r = rng.randint(3, 8)
        pw = random_pair_weights(r, 90_000 + dev_runs, nonzero=rng.randint(1, comb(r, 2)))
        dev_runs += 1
        try:
            res = heavy_set_from_deviation(pw)
            dev_fail += not (len(res.S) == r - 1 and res.margin >= 0)
        except InputError:
            dev_runs -= 1  # balanced instance, not a deviating one
        except GallaiError:
            dev_fail += 1
    ok = var_fail == heavy_fail == dev_fail == 0
    record(9, "second-moment identity, heavy sets, deviation sets", ok,
           f"variance {var_fail}/1000 failures, heavy set {heavy_fail}/10000, deviation {dev_fail}/1000",
           time.perf_counter() - t0, 180)


def test_criterion_10_asymptotic_facts():
    t0 = time.perf_counter()
    rep_a = check_facts_A(ConstantsTight3.literal())
    a_time = time.perf_counter() - t0
    t1 = time.perf_counter()
    rep_c = check_facts_C(ConstantsGeneral.literal(3, 2), 35)
    c_time = time.perf_counter() - t1
    a_ok = all(r.holds for r in rep_a)
    c_ok = all(r.holds for r in rep_c)
    a_txt = ", ".join(f"{r.fact} {'ok' if r.holds else 'FAIL'}" for r in rep_a)
    c_txt = ", ".join(f"{r.fact} {'ok' if r.holds else 'FAIL'} (threshold loglog m = {r.threshold})"
                      for r in rep_c)
    record(10, "facts about f at literal constants (A) and at log m = 2^35 (C)",
           a_ok and c_ok and a_time < 120 and c_time < 120,
           f"A: {a_txt} in {a_time:.1f}s; C: {c_txt} in {c_time:.1f}s", time.perf_counter() - t0, 240)


def test_criterion_11_oracle_consistency():
    t0 = time.perf_counter()
    rng = random.Random(11)
    mismatches = 0
    for i in range(500):
        n = rng.randint(1, 12)
        r = rng.randint(1, 4)
        F = random_coloring(n, r, 40_000 + i)
        S = frozenset(rng.sample(range(1, r + 1), rng.randint(1, r)))
        mismatches += g_exact(F, S).size != naive_g(F, S)
    over = checks = 0
    k3 = ConstantsTight3.desk()
    for i in range(100):
        n = rng.randint(2, 12)
        F3 = random_gallai(n, 3, 60_000 + i, max_parts=rng.choice([2, 4, 12]))
        F4 = random_gallai(n, 4, 70_000 + i, max_parts=rng.choice([2, 4, 12]))
        found = [extract_two_colored(F3)]
        found += list(extract_triple(F3).values())
        found += list(extract_tight3(F3, k3, 2 ** 40).family.values())
        pairs = [(F3, W) for W in found]
        for s in (2, 3):
            pairs += [(F4, W) for W in extract_weak_general(F4, s).values()]
            pairs += [(F4, W) for W in extract_general(F4, s, ConstantsGeneral.desk(4, s)).family.values()]
        for F, W in pairs:
            checks += 1
            over += W.size > g_exact(F, W.colors).size
    ok = mismatches == 0 and over == 0
    record(11, "oracle equals naive enumeration; extractors never beat the oracle", ok,
           f"500 instances, {mismatches} mismatches; {checks} extractor witnesses, {over} above g",
           time.perf_counter() - t0, 180)
