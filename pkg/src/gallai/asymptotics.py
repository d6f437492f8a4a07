"""Exact evaluation of the recursion functions f and f_eps, and machine checks of their growth facts.

f depends on a fixed m and on constants (D, C, c):

    f(n) = c log^2(Cn)                                   for n <= m^(4/9)
         = c^2 log^2(m^(4/9)) log^2(C n m^(-4/9))        for m^(4/9) < n <= m^(8/9)
         = c^3 log^4(m^(4/9)) log^2(C n m^(-8/9))        for m^(8/9) < n <= m

f_eps(l) = (log m)^(C eps + C log(l/n) / log m) for the many-color recursion.

Every comparison here is exact: rational when all logarithms are integers,
otherwise decided by interval arithmetic with growing precision.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Optional, Sequence

from .constants import ConstantsGeneral, ConstantsTight3
from .errors import InputError
from .exact import LogExpr, Real, floor_log2

# f ------------------------------------------------------------------------------------


def _as_log(x) -> LogExpr:
    if isinstance(x, LogExpr):
        return x
    return LogExpr.const(Fraction(x))


def f_branch(log_n, log_m) -> int:
    """Which interval of f contains n: 0, 1 or 2 (closed on the right)."""
    ln, lm = _as_log(log_n), _as_log(log_m)
    if 9 * ln <= 4 * lm:
        return 0
    if 9 * ln <= 8 * lm:
        return 1
    return 2


def f_formula(branch: int, log_n, log_m, k: ConstantsTight3) -> Real:
    """The closed form of f on the given interval, evaluated at log n."""
    ell = Real.of(_as_log(log_n))
    a = Real.of(_as_log(log_m) * Fraction(4, 9))
    u = ell + k.log_C
    if branch == 0:
        return k.c * u ** 2
    if branch == 1:
        return k.c ** 2 * a ** 2 * (u - a) ** 2
    return k.c ** 3 * a ** 4 * (u - 2 * a) ** 2


def f_real(log_n, log_m, k: ConstantsTight3) -> Real:
    """f(2^log_n) for log-form inputs (exact or interval-backed)."""
    ln, lm = _as_log(log_n), _as_log(log_m)
    if ln < 0 or ln > lm:
        raise InputError("need 1 <= n <= m")
    return f_formula(f_branch(ln, lm), ln, lm, k)


def f_of(n: int, log_m, k: ConstantsTight3) -> Real:
    return f_real(LogExpr.log2(n), log_m, k)


def f_eval(log_n: int, log_m: int, k: ConstantsTight3) -> Fraction:
    """Exact f(2^log_n) for integer logarithms."""
    if not 0 <= log_n <= log_m:
        raise InputError("need 0 <= log_n <= log_m")
    return f_real(log_n, log_m, k).exact


# f_eps --------------------------------------------------------------------------------


def feps_log(log_ell, log_n, loglog_m: int, epsilon, C) -> LogExpr:
    """log2 f_eps(ell) = C (eps + (log ell - log n) / log m) * log log m, with log m = 2^loglog_m."""
    log_m = Fraction(2) ** loglog_m
    eps = _as_log(epsilon)
    return (eps + (_as_log(log_ell) - _as_log(log_n)) / log_m) * (Fraction(C) * loglog_m)


def feps_eval(log_ell, log_n, loglog_m: int, epsilon, C) -> LogExpr:
    """Exact log-form value of f_eps; the returned expression is log2 of the value."""
    if _as_log(log_ell) > _as_log(log_n) or _as_log(log_ell) < 0:
        raise InputError("need 1 <= ell <= n")
    if _as_log(log_n) > Fraction(2) ** loglog_m:
        raise InputError("need n <= m")
    return feps_log(log_ell, log_n, loglog_m, epsilon, C)


# reports --------------------------------------------------------------------------------


@dataclass
class FactReport:
    fact: str
    grid: str
    samples: list = field(default_factory=list)
    threshold: Optional[int] = None

    @property
    def holds(self) -> bool:
        return all(s["holds"] for s in self.samples)

    @property
    def first_failure(self) -> Optional[dict]:
        for s in self.samples:
            if not s["holds"]:
                return s
        return None

    def to_json(self) -> dict:
        out = {
            "fact": self.fact,
            "grid": self.grid,
            "samples": len(self.samples),
            "passed": sum(1 for s in self.samples if s["holds"]),
            "holds": self.holds,
            "first_failure": self.first_failure,
        }
        if self.threshold is not None:
            out["empirical_threshold_loglog_m"] = self.threshold
        return out


def _ge_scaled(x: Real, y: Real, e: int) -> bool:
    """x >= y * 2^-e for exact positive rationals, without forming 2^e when e is huge."""
    if e <= 4096:
        return x >= y / Fraction(2) ** e
    lx, ly = floor_log2(x.exact), floor_log2(y.exact)
    if lx + e > ly + 1:
        return True
    if lx + e + 1 < ly:
        return False
    # here e is within a few units of ly - lx, so the shift is affordable
    return x.exact * Fraction(2) ** e >= y.exact


def _short(x) -> str:
    x = Fraction(x)
    if max(x.numerator.bit_length(), x.denominator.bit_length()) > 80:
        return f"~2^{x.numerator.bit_length() - x.denominator.bit_length()}"
    return str(x)


# facts about f ----------------------------------------------------------------------------


def _grid_logs(log_m: int, rng: random.Random, extra: int = 2) -> list[int]:
    L = log_m
    cands = {1, 2, 5, L // 2, 4 * L // 9, 4 * L // 9 + 1, 8 * L // 9, 8 * L // 9 + 1, L - 1, L}
    for _ in range(extra):
        cands.add(rng.randint(1, L))
    return sorted(x for x in cands if 1 <= x <= L)


def default_grid_A(k: ConstantsTight3) -> list[int]:
    base = k.log_C
    return [base, 2 * base, 9 * base + 7]


def check_facts_A(k: ConstantsTight3, log_ms: Optional[Sequence[int]] = None, seed: int = 0) -> list[FactReport]:
    """Exact verdicts for the five facts about f on a dyadic grid of sample points.

    Requires m >= C, i.e. every log m in the grid at least log C.
    """
    log_ms = list(log_ms) if log_ms is not None else default_grid_A(k)
    if any(L < k.log_C for L in log_ms):
        raise InputError("the facts about f assume m >= C")
    rng = random.Random(seed)
    reports = [FactReport(f"A{i}", "") for i in range(1, 6)]
    for L in log_ms:
        f = lambda ln: f_real(ln, L, k)  # noqa: E731
        for ell in _grid_logs(L, rng):
            fn = f(ell)
            cross = {ell - 4 * L // 9, ell - 8 * L // 9, ell - 4 * L // 9 - 1, ell - 8 * L // 9 - 1}
            # fact 1: f(an) >= a f(n), a = 2^-e in [1/n, 1]
            for e in sorted({0, 1, 5, (ell + 1) // 2, ell} | {x for x in cross if 0 <= x <= ell}):
                if 0 <= e <= ell:
                    ok = _ge_scaled(f(ell - e), fn, e)
                    reports[0].samples.append({"log_m": _short(L), "log_n": _short(ell), "log_inv_alpha": e, "holds": ok})
            # fact 5: f(an) >= 16 a f(n) for a in [1/n, 1/32]
            for e in sorted({5, 6, (ell + 1) // 2, ell} | {x for x in cross if 5 <= x <= ell}):
                if 5 <= e <= ell:
                    ok = _ge_scaled(f(ell - e), 16 * fn, e)
                    reports[4].samples.append({"log_m": _short(L), "log_n": _short(ell), "log_inv_alpha": e, "holds": ok})
            # fact 4: f(tau) >= f(n)/2 for n/D^3 <= tau <= n
            for e in sorted({0, 1, 3 * k.log_D} | {x for x in cross if 0 <= x <= 3 * k.log_D}):
                lt = ell - e
                if 0 <= lt and e <= 3 * k.log_D:
                    ok = f(lt) >= fn / 2
                    reports[3].samples.append({"log_m": _short(L), "log_n": _short(ell), "log_tau": _short(lt), "holds": ok})
            # fact 2: n f(n) - sum n_i f(n_i) <= (8 / log C) n f(n)
            if ell <= 4096:
                n = 2 ** ell
                for parts in _triples_for(n, rng):
                    lhs = n * fn
                    for ni in parts:
                        lhs = lhs - ni * f_of(ni, L, k)
                    ok = lhs <= Fraction(8, k.log_C) * n * fn
                    reports[1].samples.append({"log_m": _short(L), "log_n": ell,
                                               "parts": [_short(p) for p in parts], "holds": ok})
        # fact 3: f(2^i) log^2(D 2^j) >= 512 f(2^(i + 8j/7)), 2^j <= m^(7/18); exponent rounded up
        jmax = 7 * L // 18
        js = sorted({0, 1, 7, 8, jmax // 2, jmax, rng.randint(0, jmax)})
        is_ = sorted({0, 1, 4 * L // 9, 4 * L // 9 + 1, 8 * L // 9, 8 * L // 9 + 1, rng.randint(0, L)})
        for j in js:
            for i in is_:
                top = i + ceil(Fraction(8 * j, 7))
                if top > L:
                    continue
                ok = f(i) * (k.log_D + j) ** 2 >= 512 * f(top)
                reports[2].samples.append({"log_m": _short(L), "i": _short(i), "j": _short(j), "holds": ok})
    grid = f"log m in {[_short(L) for L in log_ms]}, dyadic n, alpha, tau; 8j/7 rounded up"
    for rep in reports:
        rep.grid = grid
    return reports


def _triples_for(n: int, rng: random.Random) -> list[tuple[int, int, int]]:
    out = set()
    if n >= 4:
        out.add((n // 2, n // 4, n - n // 2 - n // 4))
    if n >= 3:
        out.add((n - 2, 1, 1))
        third = n // 3
        out.add((third, third, n - 2 * third))
        for _ in range(2):
            a = rng.randint(1, n - 2)
            b = rng.randint(1, n - a - 1)
            out.add((a, b, n - a - b))
    return sorted(out)


def f_breakpoints_ok(k: ConstantsTight3, log_m: int) -> bool:
    """f only drops when crossing an interval boundary (the right limit is at most the left value)."""
    ok = True
    for num, branch in ((4, 0), (8, 1)):
        p = Fraction(num * log_m, 9)
        ok &= f_formula(branch + 1, p, log_m, k) <= f_formula(branch, p, log_m, k)
    return bool(ok)


# facts about f_eps ----------------------------------------------------------------------------


def _facts_C_samples(k: ConstantsGeneral, K: int) -> list[list[dict]]:
    """Evaluate the four facts about f_eps at log m = 2^K; returns samples per fact."""
    C, b = k.C, k.b
    log_m = Fraction(2) ** K
    R2 = k.pairs
    eps_values = (Fraction(0), Fraction(1, 3))
    log_n = log_m  # the facts do not depend on n once alpha is fixed; take n = m
    out: list[list[dict]] = [[], [], [], []]
    # fact 1: f(an) >= a^(1/(2b)) f(n) and f(an) >= a f(n), alpha = 2^-e in [1/n, 1]
    for e in sorted({0, 1, 10, K, min(2 ** K, 1 << 20)}):
        for eps in eps_values:
            diff = feps_log(log_n - e, log_n, K, eps, C) - feps_log(log_n, log_n, K, eps, C)
            ok = diff >= Fraction(-e, 2 * b) and diff >= -e
            out[0].append({"log_inv_alpha": e, "eps": str(eps), "holds": bool(ok)})
    # fact 2: sum a_i^(1 + C K / 2^K) + 3 log^(-3/4) m >= 1
    ex = 1 + C * K / log_m
    slack = Real.pow2(Fraction(-3 * K, 4)) * 3
    triples = [
        (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)),
        (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)),
        (1 - Fraction(2, 2 ** 8), Fraction(1, 2 ** 8), Fraction(1, 2 ** 8)),
        (1 - Fraction(2, 2 ** 32), Fraction(1, 2 ** 32), Fraction(1, 2 ** 32)),
    ]
    q = Fraction(1, 2 ** max(2, (3 * K) // 4))
    triples.append((1 - 2 * q, q, q))
    for alphas in triples:
        total = slack
        for a in alphas:
            total = total + Real.pow2(Real.log2(a) * ex)
        ok = total >= 1
        out[1].append({"alphas": [str(a) if a.denominator < 2 ** 40 else _short(a) for a in alphas], "holds": bool(ok)})
    # fact 3: log^(2/b)(log^(1/4) m * 2^j) >= 256 binom(r,2) f(2^(i+2j)) / f(2^i), 2^j <= m^delta
    jmax = int(k.delta * log_m)
    for j in sorted({0, 1, 2, jmax // 2, jmax}):
        if j < 0:
            continue
        lhs = (Fraction(K, 4) + j) ** 2  # raised to the b-th power on both sides
        rhs = Real.pow2(2 * b * C * K * j / log_m) * (256 * R2) ** b
        ok = Real(lhs) >= rhs
        out[2].append({"j": _short(j), "holds": bool(ok)})
    # fact 4: f(an) >= f(n)/2 for a >= 1/log m
    for e in sorted({0, 1, K}):
        diff = feps_log(log_n - e, log_n, K, 0, C) - feps_log(log_n, log_n, K, 0, C)
        out[3].append({"log_inv_alpha": e, "holds": bool(diff >= -1)})
    return out


def check_facts_C(k: ConstantsGeneral, loglog_m: int, *, threshold: bool = True, max_loglog: int = 192) -> list[FactReport]:
    """Verdicts for the four facts about f_eps at log m = 2^loglog_m.

    With ``threshold`` set, each report also carries the empirical threshold:
    the least K such that every sample passes at log m = 2^K' for all K' in
    [K, max_loglog] (None if the fact fails at max_loglog).  The facts are not
    monotone at small m, so this is found by a downward scan.
    """
    if loglog_m < 1:
        raise InputError("loglog m must be positive")
    if loglog_m > 4096:
        raise InputError("log m = 2^loglog_m is too large to represent")
    samples = _facts_C_samples(k, loglog_m)
    grid = f"log m = 2^{loglog_m}; alpha dyadic; f_eps compared in exact log form"
    reports = [FactReport(f"C{i + 1}", grid, samples[i]) for i in range(4)]
    if threshold:
        found: list[Optional[int]] = [None] * 4
        open_ = [True] * 4
        for K in range(max_loglog, 0, -1):
            verdicts = _facts_C_samples(k, K)
            for i in range(4):
                if open_[i]:
                    if all(s["holds"] for s in verdicts[i]):
                        found[i] = K
                    else:
                        open_[i] = False
            if not any(open_):
                break
        for rep, K in zip(reports, found):
            rep.threshold = K
    return reports


def loglog_m0(r: int) -> str:
    """m0 = 2^2^2^2^(8 r^2) is a tower; only its description is returned."""
    return f"log log log log m0 = {8 * r * r}"
