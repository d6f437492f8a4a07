"""Discrepancy in edge-weighted graphs on the palette.

Either a nonnegative weighting of the color pairs has many nonzero pairs, or
some s-set of colors carries noticeably more than its average share of the
total weight.  Everything here is exact rational arithmetic; heavy sets are
found by enumeration (the palette is small) and the lemmas only guarantee
that the enumeration succeeds.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional

from .coloring import color_pairs, fmt_colors
from .errors import InputError, PropertyViolation

MAX_R = 12


@dataclass
class PairWeights:
    """Nonnegative rational weights on the pairs of {1..r}; absent pairs weigh 0."""

    r: int
    w: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.r < 2:
            raise InputError("need at least two colors")
        clean = {}
        for P, v in self.w.items():
            P = frozenset(P)
            if len(P) != 2 or not P <= frozenset(range(1, self.r + 1)):
                raise InputError(f"{sorted(P)} is not a color pair of a {self.r}-palette")
            v = Fraction(v)
            if v < 0:
                raise InputError(f"weight of {fmt_colors(P)} is negative")
            clean[P] = v
        self.w = clean

    @property
    def pairs(self) -> list:
        return color_pairs(self.r)

    def weight(self, P) -> Fraction:
        return self.w.get(frozenset(P), Fraction(0))

    @property
    def total(self) -> Fraction:
        return sum(self.w.values(), Fraction(0))

    def degree(self, v: int) -> Fraction:
        return sum((x for P, x in self.w.items() if v in P), Fraction(0))

    def degrees(self) -> dict:
        return {v: self.degree(v) for v in range(1, self.r + 1)}

    def nonzero(self) -> int:
        return sum(1 for x in self.w.values() if x > 0)

    def Z(self, S) -> Fraction:
        """Weight inside S."""
        S = frozenset(S)
        return sum((x for P, x in self.w.items() if P <= S), Fraction(0))

    def Y(self, Q) -> Fraction:
        """Weight of pairs meeting Q."""
        Q = frozenset(Q)
        return sum((x for P, x in self.w.items() if P & Q), Fraction(0))

    def to_json(self) -> dict:
        return {"r": self.r, "weights": {fmt_colors(P): str(x) for P, x in sorted(self.w.items(), key=lambda kv: sorted(kv[0]))}}

    @classmethod
    def from_json(cls, obj: dict) -> "PairWeights":
        try:
            r = int(obj["r"])
            w = {}
            for key, val in obj["weights"].items():
                P = frozenset(int(c) for c in str(key).replace(" ", "").split(","))
                w[P] = Fraction(val)
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"bad weights object: {exc}") from exc
        return cls(r, w)

    @classmethod
    def load(cls, path: str) -> "PairWeights":
        try:
            with open(path) as fh:
                return cls.from_json(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read weights {path!r}: {exc}") from exc


def random_pair_weights(r: int, seed: int, nonzero: Optional[int] = None, bits: int = 16) -> PairWeights:
    """Random rational weights with numerators and denominators up to 2^bits on ``nonzero`` random pairs."""
    rng = random.Random(seed)
    pairs = color_pairs(r)
    k = len(pairs) if nonzero is None else nonzero
    chosen = rng.sample(pairs, k)
    top = 2 ** bits
    return PairWeights(r, {P: Fraction(rng.randint(1, top), rng.randint(1, top)) for P in chosen})


# heavy sets ---------------------------------------------------------------------------------


def a0(r: int, s: int) -> Fraction:
    """Support size forcing the dichotomy: binom(r,2), r/2 or (r+3)/2."""
    if s < r - 1:
        return Fraction(comb(r, 2))
    if r % 2 == 0:
        return Fraction(r, 2)
    return Fraction(r + 3, 2)


def heavy_factor(r: int, s: int) -> Fraction:
    """(1 + (4 r binom(r,2)^2)^-1) binom(s,2) / binom(r,2)."""
    R2 = comb(r, 2)
    return (1 + Fraction(1, 4 * r * R2 * R2)) * Fraction(comb(s, 2), R2)


@dataclass
class HeavySetResult:
    kind: str  # "count" or "set"
    r: int
    s: int
    a0: Fraction
    nonzero: int
    S: Optional[frozenset] = None
    Z: Optional[Fraction] = None
    threshold: Optional[Fraction] = None

    @property
    def margin(self) -> Optional[Fraction]:
        return None if self.S is None else self.Z - self.threshold

    def to_json(self) -> dict:
        out = {"kind": self.kind, "r": self.r, "s": self.s, "a0": str(self.a0), "nonzero": self.nonzero}
        if self.S is not None:
            out.update({"S": sorted(self.S), "Z": str(self.Z), "threshold": str(self.threshold),
                        "margin": str(self.margin)})
        return out


def find_heavy_set(pw: PairWeights, s: int) -> HeavySetResult:
    """Either at least a0 nonzero pairs, or the heaviest s-set, which beats the average share."""
    r = pw.r
    if r > MAX_R:
        raise InputError(f"r={r} exceeds the enumeration limit {MAX_R}")
    if not 1 <= s <= r - 1:
        raise InputError(f"need 1 <= s <= r-1, got s={s}, r={r}")
    need = a0(r, s)
    nz = pw.nonzero()
    if nz >= need:
        return HeavySetResult("count", r, s, need, nz)
    threshold = heavy_factor(r, s) * pw.total
    best = max((frozenset(S) for S in combinations(range(1, r + 1), s)),
               key=lambda S: (pw.Z(S), [-c for c in sorted(S)]))
    res = HeavySetResult("set", r, s, need, nz, best, pw.Z(best), threshold)
    if res.margin < 0:
        raise PropertyViolation(f"no heavy {s}-set although only {nz} < {need} pairs are nonzero")
    return res


@dataclass
class DeviationResult:
    S: frozenset
    F: Fraction
    dropped: int
    via: str  # "deviating vertex" or "averaging"
    Z: Fraction
    bound: Fraction

    @property
    def margin(self) -> Fraction:
        return self.Z - self.bound

    def to_json(self) -> dict:
        return {"S": sorted(self.S), "F": str(self.F), "dropped": self.dropped, "via": self.via,
                "Z": str(self.Z), "bound": str(self.bound), "margin": str(self.margin)}


def heavy_set_from_deviation(pw: PairWeights) -> DeviationResult:
    """An (r-1)-set with weight >= binom(r-1,2)/binom(r,2) w + F/r, F the largest degree deviation."""
    r = pw.r
    w = pw.total
    avg = Fraction(2) * w / r
    deg = pw.degrees()
    v = max(deg, key=lambda u: (abs(deg[u] - avg), -u))
    F = abs(deg[v] - avg)
    if F == 0:
        raise InputError("no vertex degree deviates from 2w/r")
    if deg[v] <= avg - F:
        drop, via = v, "deviating vertex"
    else:
        drop = min(deg, key=lambda u: (deg[u], u))
        via = "averaging"
        if deg[drop] > avg - F / r:
            raise PropertyViolation("averaging step found no light vertex")
    S = frozenset(range(1, r + 1)) - {drop}
    bound = Fraction(comb(r - 1, 2), comb(r, 2)) * w + F / r
    res = DeviationResult(S, F, drop, via, pw.Z(S), bound)
    if res.margin < 0:
        raise PropertyViolation("deviation bound failed")
    return res


# second moment -----------------------------------------------------------------------------


@dataclass
class VarianceReport:
    r: int
    mean_Y: Fraction
    mean_Y_formula: Fraction
    second_moment: Fraction
    terms: dict
    second_moment_formula: Fraction
    variance_Y: Fraction
    variance_wQ: Fraction
    lower_bound: Fraction
    checks: dict

    @property
    def holds(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "E[Y_Q]": str(self.mean_Y),
            "E[Y_Q] formula": str(self.mean_Y_formula),
            "E[Y_Q^2]": str(self.second_moment),
            "E[Y_Q^2] terms": {k: str(v) for k, v in self.terms.items()},
            "E[Y_Q^2] closed form": str(self.second_moment_formula),
            "Var(Y_Q)": str(self.variance_Y),
            "Var(w_Q)": str(self.variance_wQ),
            "lower bound": str(self.lower_bound),
            "checks": self.checks,
        }


def variance_audit(pw: PairWeights) -> VarianceReport:
    """Second moment of Y_Q for a uniform random pair Q, by formula and by enumeration."""
    r = pw.r
    R2 = comb(r, 2)
    pairs = pw.pairs
    w = pw.total
    sq = sum((pw.weight(P) ** 2 for P in pairs), Fraction(0))
    deg = pw.degrees()
    dsq = sum((d * d for d in deg.values()), Fraction(0))
    star_sq = {v: sum((pw.weight(P) ** 2 for P in pairs if v in P), Fraction(0)) for v in deg}

    Ys = [pw.Y(Q) for Q in pairs]
    mean_Y = sum(Ys, Fraction(0)) / R2
    second = sum((y * y for y in Ys), Fraction(0)) / R2
    var_Y = second - mean_Y ** 2
    mean_w = w / R2
    var_w = sum(((pw.weight(Q) - mean_w) ** 2 for Q in pairs), Fraction(0)) / R2

    terms = {
        "equal pairs": Fraction(2 * r - 3, R2) * sq,
        "pairs sharing a vertex": Fraction(r, R2) * sum((deg[v] ** 2 - star_sq[v] for v in deg), Fraction(0)),
        "disjoint pairs": Fraction(4, R2) * (w * w - dsq + sq),
    }
    closed = Fraction(4, R2) * w * w + Fraction(1, R2) * sq + Fraction(r - 4, R2) * dsq
    lower = Fraction(1, R2) * sq - w * w / (R2 * R2)
    full = frozenset(range(1, r + 1))
    checks = {
        "mean": mean_Y == Fraction(2 * r - 3, R2) * w,
        "three_terms": sum(terms.values(), Fraction(0)) == second,
        "closed_form": closed == second,
        "cauchy_schwarz": dsq >= r * (2 * w / r) ** 2,
        # the lower bound drops (r-4)/binom(r,2) sum d(v)^2 via Cauchy-Schwarz, valid for r >= 4
        "variance_bound": var_Y >= lower if r >= 4 else True,
        "lower_bound_is_var_wQ": lower == var_w,
        "pivot_identity": all(pw.Y(Q) + pw.Z(full - Q) == w for Q in pairs),
    }
    rep = VarianceReport(r, mean_Y, Fraction(2 * r - 3, R2) * w, second, terms, closed,
                         var_Y, var_w, lower, checks)
    if not rep.holds:
        failed = [k for k, ok in checks.items() if not ok]
        raise PropertyViolation(f"second-moment audit failed: {failed}")
    return rep
