"""Two-color Ramsey extraction, the weighted Ramsey lemma, and random low-clique colorings."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

import numpy as np

from .cliques import is_clique, max_clique, popcount
from .coloring import EdgeColoring
from .errors import BudgetExhausted, InputError, PropertyViolation
from .exact import compare_log_squared, floor_log2

M_THRESHOLD = 2 ** 16


def _two_colors(F: EdgeColoring, red: Optional[int], blue: Optional[int]) -> tuple[int, int]:
    used = F.used_colors
    if red is not None and blue is not None:
        if red == blue:
            raise InputError("red and blue must be different colors")
        if not used <= {red, blue}:
            raise InputError(f"coloring uses colors {sorted(used)} outside {{{red}, {blue}}}")
        return red, blue
    if len(used) > 2:
        raise InputError(f"expected a 2-coloring, found colors {sorted(used)}")
    palette = sorted(used) + [c for c in range(1, max(F.r, 2) + 1) if c not in used]
    return palette[0], palette[1]


@dataclass
class CliquePair:
    red: list[int]
    blue: list[int]
    red_color: int
    blue_color: int

    @property
    def k(self) -> int:
        return len(self.red)

    @property
    def l(self) -> int:
        return len(self.blue)


def _pivot_find(Ra: list[int], Ba: list[int], live: int, p: int, q: int) -> tuple[str, list[int]]:
    """Red clique of size p+1 or blue clique of size q+1 inside ``live``.

    Requires |live| >= binom(p+q, p); each pivot moves into the neighborhood
    whose size still meets the binomial budget.
    """
    A: list[int] = []
    B: list[int] = []
    while True:
        low = live & -live
        v = low.bit_length() - 1
        if p == 0:
            return "red", A + [v]
        if q == 0:
            return "blue", B + [v]
        live ^= low
        Nr = live & Ra[v]
        if popcount(Nr) >= comb(p + q - 1, p - 1):
            A.append(v)
            live = Nr
            p -= 1
        else:
            B.append(v)
            live &= Ba[v]
            q -= 1


def _extend(adj: list[int], clique: list[int], t: int) -> list[int]:
    mask = 0
    for v in clique:
        mask |= 1 << v
    for v in range(t):
        if not (mask >> v) & 1 and (adj[v] & mask) == mask:
            mask |= 1 << v
    return [v for v in range(t) if (mask >> v) & 1]


def bicolor_clique_pair(F: EdgeColoring, red: Optional[int] = None, blue: Optional[int] = None) -> CliquePair:
    """Red clique A and blue clique B with binom(|A|+|B|, |A|) >= t."""
    red, blue = _two_colors(F, red, blue)
    t = F.n
    Ra = F.color_masks[red] if red <= F.r else [0] * t
    Ba = F.color_masks[blue] if blue <= F.r else [0] * t
    A, B = [0], [0]
    everything = (1 << t) - 1
    while comb(len(A) + len(B), len(A)) < t:
        side, clique = _pivot_find(Ra, Ba, everything, len(A), len(B))
        if side == "red":
            A = clique
        else:
            B = clique
    A = _extend(Ra, A, t)
    B = _extend(Ba, B, t)
    return CliquePair(sorted(A), sorted(B), red, blue)


@dataclass
class WeightedRamseyResult:
    red: list[int]
    blue: list[int]
    red_weight: Fraction
    blue_weight: Fraction
    branch: str
    gamma: Fraction
    t: int
    m1: int = 0
    m2: int = 0
    bucket: list[int] = field(default_factory=list)
    gamma_bucket: Fraction = Fraction(0)
    checks: dict = field(default_factory=dict)
    guarantee_asserted: bool = False

    @property
    def product(self) -> Fraction:
        return self.red_weight * self.blue_weight

    def guarantee_holds(self) -> bool:
        """(sum alpha)(sum beta) >= (gamma/32) log^2 t, decided exactly."""
        if self.t <= 1:
            return self.product >= 0
        return compare_log_squared(32 * self.product / self.gamma, self.t) >= 0

    def to_json(self) -> dict:
        return {
            "branch": self.branch,
            "red": self.red,
            "blue": self.blue,
            "red_weight": str(self.red_weight),
            "blue_weight": str(self.blue_weight),
            "product": str(self.product),
            "gamma": str(self.gamma),
            "m1": self.m1,
            "m2": self.m2,
            "bucket_size": len(self.bucket),
            "checks": self.checks,
            "guarantee_asserted": self.guarantee_asserted,
        }


def weighted_ramsey(
    F: EdgeColoring,
    weights: Sequence[tuple],
    red: Optional[int] = None,
    blue: Optional[int] = None,
    *,
    M: int = M_THRESHOLD,
) -> WeightedRamseyResult:
    """Red clique S and blue clique U with large (sum alpha over S)(sum beta over U).

    Follows the dyadic-bucket argument; every link of the inequality chain is
    checked exactly and recorded in ``checks``.  The final guarantee
    (gamma/32) log^2 t is enforced only when t >= M.
    """
    red, blue = _two_colors(F, red, blue)
    t = F.n
    if len(weights) != t:
        raise InputError(f"expected {t} weight pairs, got {len(weights)}")
    alpha = [Fraction(a) for a, _ in weights]
    beta = [Fraction(b) for _, b in weights]
    if any(a <= 0 or b <= 0 for a, b in zip(alpha, beta)):
        raise InputError("every weight pair needs alpha > 0 and beta > 0")
    gammas = [a * b for a, b in zip(alpha, beta)]
    gamma = min(gammas)
    amax, bmax = max(alpha), max(beta)
    ia = alpha.index(amax)
    ib = beta.index(bmax)

    if t == 1 or compare_log_squared(32 * amax * bmax / gamma, t) >= 0:
        res = WeightedRamseyResult([ia], [ib], amax, bmax, "singletons", gamma, t)
        res.checks = {"early_exit": True}
    else:
        span = floor_log2(amax * bmax / gamma)
        m1 = m2 = span + 1
        buckets: dict[tuple[int, int], list[int]] = {}
        for i in range(t):
            key = (floor_log2(alpha[i] * bmax / gamma), floor_log2(beta[i] * amax / gamma))
            buckets.setdefault(key, []).append(i)
        key = min(buckets, key=lambda k: (-len(buckets[k]), k))
        A = buckets[key]
        sub = F.restrict(A)
        pair = bicolor_clique_pair(sub, red, blue)
        S = [A[i] for i in pair.red]
        U = [A[i] for i in pair.blue]
        a_min = min(alpha[i] for i in A)
        b_min = min(beta[i] for i in A)
        gamma_A = min(gammas[i] for i in A)
        rw = sum((alpha[i] for i in S), Fraction(0))
        bw = sum((beta[i] for i in U), Fraction(0))
        res = WeightedRamseyResult(S, U, rw, bw, "bucket", gamma, t, m1, m2, A, gamma_A)
        k, l = len(S), len(U)
        ratio = t / Fraction(m1 * m2)
        checks = {
            "bucket_ratio": all(alpha[i] < 2 * a_min and beta[i] < 2 * b_min for i in A),
            "pigeonhole": len(A) * m1 * m2 >= t,
            "binomial": comb(k + l, k) >= len(A),
            "kl_log": compare_log_squared(4 * k * l, len(A)) >= 0,
            "corner": a_min * b_min * 4 >= gamma_A,
            "weighted": rw * bw >= k * l * a_min * b_min,
        }
        # log^2 of a ratio below 1 is read as 0 in the chain's final bound
        if ratio <= 1:
            checks["chain"] = rw * bw >= 0
        else:
            checks["chain"] = compare_log_squared(16 * rw * bw / gamma_A, ratio) >= 0
        res.checks = checks
        if not all(checks.values()):
            failed = [name for name, ok in checks.items() if not ok]
            raise PropertyViolation(f"weighted Ramsey chain failed at {failed}")

    if t >= M:
        res.guarantee_asserted = True
        if not res.guarantee_holds():
            raise PropertyViolation("weighted Ramsey guarantee failed")
    return res


# random search -------------------------------------------------------------------

def max_mono_cliques(F: EdgeColoring, red: int, blue: int) -> tuple[list[int], list[int]]:
    return max_clique(F.color_masks[red]), max_clique(F.color_masks[blue])


@dataclass
class RamseyColoring:
    coloring: EdgeColoring
    red_clique: list[int]
    blue_clique: list[int]
    attempts: int

    @property
    def clique_bound(self) -> int:
        return max(len(self.red_clique), len(self.blue_clique))


def search_ramsey_coloring(
    t: int,
    bound: int,
    seed: int,
    budget: int = 1000,
    colors: tuple[int, int] = (1, 2),
    r: Optional[int] = None,
) -> RamseyColoring:
    """Random 2-coloring of K_t whose largest monochromatic clique has at most ``bound`` vertices."""
    if t < 2:
        raise InputError("t must be at least 2")
    if bound < 1:
        raise InputError("bound must be at least 1")
    red, blue = colors
    r = r if r is not None else max(colors)
    rng = np.random.default_rng(seed)
    pairs = t * (t - 1) // 2
    for attempt in range(1, budget + 1):
        flat = np.where(rng.integers(0, 2, size=pairs) == 0, red, blue)
        F = EdgeColoring.from_flat(t, r, flat)
        rc, bc = max_mono_cliques(F, red, blue)
        if max(len(rc), len(bc)) <= bound:
            # re-verify with an independent check before returning
            if not (is_clique(F.color_masks[red], rc) and is_clique(F.color_masks[blue], bc)):
                raise PropertyViolation("clique solver returned a non-clique")
            return RamseyColoring(F, rc, bc, attempt)
    raise BudgetExhausted(f"no 2-coloring of K_{t} with monochromatic cliques <= {bound} in {budget} attempts")
