"""Upper-bound constructions: Gallai colorings built from weighted graphs on the palette.

A weight graph assigns integer weights w_P to color pairs.  The product of
one 2-coloring of K_{w_P} per pair, each with small monochromatic cliques,
is a Gallai coloring on prod w_P vertices whose S-subchromatic sets have at
most prod_{P in S} w_P * prod_{|P & S| = 1} (clique bound of F_P) vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

from .coloring import EdgeColoring, color_pairs, color_subsets, fmt_colors
from .errors import BudgetExhausted, InputError, PropertyViolation
from .exact import Real, floor_log2
from .products import ProductTree, flatten, g_of_product, product_of
from .ramsey import RamseyColoring, search_ramsey_coloring

RAMSEY_NUMBERS = {3: 6, 4: 18}


@dataclass
class WeightGraph:
    """Weights w_P >= 1 on color pairs of the palette {1..r}; absent pairs weigh 1."""

    r: int
    weights: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for P, v in self.weights.items():
            P = frozenset(P)
            if len(P) != 2 or not P <= frozenset(range(1, self.r + 1)):
                raise InputError(f"{sorted(P)} is not a color pair of a {self.r}-palette")
            v = Fraction(v)
            if v < 1:
                raise InputError(f"weight of {fmt_colors(P)} is below 1")
            if v > 1:
                clean[P] = v
        self.weights = clean

    def w(self, P) -> Fraction:
        return self.weights.get(frozenset(P), Fraction(1))

    @property
    def m(self) -> Fraction:
        out = Fraction(1)
        for v in self.weights.values():
            out *= v
        return out

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.weights.values())

    def bound(self, S, clique_bounds: Optional[dict] = None) -> Fraction | Real:
        """prod_{P in S} w_P times, over pairs meeting S once, the clique bound of F_P.

        With ``clique_bounds`` the achieved integer bounds are used and the
        result is exact; otherwise the nominal 2 log2 w_P, as a Real.
        """
        S = frozenset(S)
        inside = Fraction(1)
        for P, v in self.weights.items():
            if P <= S:
                inside *= v
        out: Fraction | Real = inside
        for P, v in sorted(self.weights.items(), key=lambda kv: sorted(kv[0])):
            if len(P & S) == 1:
                if clique_bounds is not None:
                    out = out * clique_bounds[P]
                else:
                    out = Real.of(out) * (2 * Real.log2(v))
        return out

    def to_json(self) -> dict:
        return {"r": self.r, "weights": {fmt_colors(P): str(v) for P, v in self.ordered()}}

    def ordered(self) -> list:
        return sorted(self.weights.items(), key=lambda kv: sorted(kv[0]))


@dataclass
class FactorReport:
    pair: frozenset
    t: int
    nominal_bound: int
    achieved_bound: int
    relaxed: bool
    attempts: int
    red_clique: list
    blue_clique: list

    def to_json(self) -> dict:
        return {"pair": sorted(self.pair), "t": self.t, "nominal_bound": self.nominal_bound,
                "achieved_bound": self.achieved_bound, "relaxed": self.relaxed,
                "attempts": self.attempts}


@dataclass
class Construction:
    graph: WeightGraph
    tree: ProductTree
    factors: list

    @property
    def n(self) -> int:
        return self.tree.n

    def coloring(self) -> EdgeColoring:
        return flatten(self.tree)

    def clique_bounds(self) -> dict:
        return {f.pair: f.achieved_bound for f in self.factors}

    def g(self, S) -> int:
        """Exact g(F, S) from the product law and exact factor cliques."""
        S = frozenset(S)
        by_id = {id(f.coloring): f for f in self.factors}

        def leaf_g(F: EdgeColoring, S: frozenset) -> int:
            rep = by_id[id(F)]
            P = rep.pair
            if P <= S:
                return rep.t
            hit = P & S
            if not hit:
                return 1
            (c,) = hit
            return len(rep.red_clique) if c == min(P) else len(rep.blue_clique)

        return g_of_product(self.tree, S, leaf_g)

    def audit(self, s: int) -> dict:
        """Exact g per s-set against the bound with achieved factor clique numbers."""
        cb = self.clique_bounds()
        rows = {}
        for S in color_subsets(self.graph.r, s):
            g = self.g(S)
            bound = self.graph.bound(S, cb)
            rows[fmt_colors(S)] = {"g": g, "bound": str(bound), "holds": g <= bound}
        if not all(row["holds"] for row in rows.values()):
            raise PropertyViolation("product coloring exceeds the weight-graph bound")
        return rows

    def to_json(self, s: Optional[int] = None) -> dict:
        out = {"n": self.n, "graph": self.graph.to_json(), "factors": [f.to_json() for f in self.factors]}
        if s is not None:
            out["g"] = self.audit(s)
        return out


@dataclass
class _Factor(FactorReport):
    coloring: EdgeColoring = None


def coloring_from_weight_graph(WG: WeightGraph, seed: int = 0, budget: int = 1000,
                               max_relax: int = 8) -> Construction:
    """The product of one small-clique 2-coloring per weighted pair, in lexicographic pair order.

    Each factor F_P on K_{w_P} targets monochromatic cliques of at most
    floor(2 log2 w_P) vertices; if the random search misses that target
    within ``budget`` attempts the bound is relaxed one step at a time and
    the achieved bound is reported.
    """
    if not WG.is_integral():
        raise InputError("weights must be integers; round non-integral weights up first")
    if not WG.weights:
        raise InputError("the weight graph has no pair of weight above 1")
    factors: list[_Factor] = []
    for i, (P, v) in enumerate(WG.ordered()):
        t = int(v)
        colors = tuple(sorted(P))
        nominal = max(1, floor_log2(t * t))  # floor(2 log2 t)
        found: Optional[RamseyColoring] = None
        bound = nominal
        while found is None:
            try:
                found = search_ramsey_coloring(t, bound, seed + i, budget, colors, WG.r)
            except BudgetExhausted:
                if bound - nominal >= max_relax:
                    raise
                bound += 1
        rc, bc = found.red_clique, found.blue_clique
        factors.append(_Factor(P, t, nominal, max(len(rc), len(bc)), bound > nominal, found.attempts,
                               rc, bc, found.coloring))
    tree = product_of([f.coloring for f in factors])
    return Construction(WG, tree, factors)


# optimal weight graphs --------------------------------------------------------------------


@dataclass
class OptimalWeights:
    """Weights m^e (log2 m)^f per pair, and their ceiling realization."""

    r: int
    s: int
    m: int
    regime: str
    exponents: dict
    graph: WeightGraph

    def weight(self, P) -> Real:
        """The symbolic weight m^e (log2 m)^f of a pair as a Real."""
        e, f = self.exponents[frozenset(P)]
        return _weight_real(self.m, e, f)

    @property
    def slack(self) -> Real:
        """prod ceil(w_P) / m, which lies in [1, 2^binom(r,2))."""
        return Real(self.graph.m) / self.m

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "s": self.s,
            "m": self.m,
            "regime": self.regime,
            "symbolic": {fmt_colors(P): f"m^({e}) * log2(m)^({f})" for P, (e, f) in _ordered(self.exponents)},
            "realized": self.graph.to_json()["weights"],
            "realized_product": str(self.graph.m),
        }


def _ordered(d: dict) -> list:
    return sorted(d.items(), key=lambda kv: sorted(kv[0]))


def _weight_real(m: int, e: Fraction, f: Fraction) -> Real:
    """m^e (log2 m)^f as a Real."""
    lm = Real.log2(m)
    base = Real.pow2(lm * e)
    if f == 0:
        return base
    return base * lm.rpow(f)


def _ceil_real(x: Real) -> int:
    """Exact ceiling of a positive Real."""
    if x.exact is not None:
        return math.ceil(x.exact)
    guess = max(1, math.ceil(x.approx()))
    while x <= guess - 1:
        guess -= 1
    while x > guess:
        guess += 1
    return guess


def optimal_weight_graph(r: int, s: int, m: int) -> OptimalWeights:
    """The weight graph of the matching regime for (r, s), with exact exponents and integer ceilings.

    * s < r-1: every pair gets m^(1/binom(r,2));
    * s = r-1, r even: a perfect matching with weights m^(2/r);
    * s = r-1, r odd: a triangle with weights m^(1/r) (log m)^((r-3)/(2r)) plus
      a matching with weights m^(2/r) (log m)^(-3/r).
    """
    if not 1 <= s < r:
        raise InputError(f"need 1 <= s < r, got r={r}, s={s}")
    if m < 2:
        raise InputError("m must be at least 2")
    exps: dict = {}
    if s < r - 1:
        regime = "complete"
        for P in color_pairs(r):
            exps[P] = (Fraction(1, comb(r, 2)), Fraction(0))
    elif r % 2 == 0:
        regime = "matching"
        for i in range(1, r, 2):
            exps[frozenset({i, i + 1})] = (Fraction(2, r), Fraction(0))
    else:
        regime = "triangle+matching"
        for P in ({1, 2}, {1, 3}, {2, 3}):
            exps[frozenset(P)] = (Fraction(1, r), Fraction(r - 3, 2 * r))
        for i in range(4, r, 2):
            exps[frozenset({i, i + 1})] = (Fraction(2, r), Fraction(-3, r))
    weights = {}
    for P, (e, f) in exps.items():
        weights[P] = max(1, _ceil_real(_weight_real(m, e, f)))
    return OptimalWeights(r, s, m, regime, exps, WeightGraph(r, weights))


# exponent table and threshold formula ----------------------------------------------------


def c_exponent(r: int, s: int) -> Fraction:
    """The polylog exponent c_{r,s} of the tight bound."""
    if not 1 <= s <= r:
        raise InputError(f"need 1 <= s <= r, got r={r}, s={s}")
    if s == r:
        return Fraction(0)
    if s == 1:
        return Fraction(1)
    if s < r - 1:
        return Fraction(s * (r - s))
    if r % 2 == 0:
        return Fraction(1)
    return Fraction(r + 3, r)


def conjecture_threshold(r: int, t: int) -> int:
    """N(r, t) from the two-color Ramsey number r(t): (r(t)-1)^(r/2) or (t-1)(r(t)-1)^((r-1)/2)."""
    if r < 1:
        raise InputError("r must be positive")
    if t not in RAMSEY_NUMBERS:
        raise InputError(f"Ramsey number r({t}) is not tabulated; known: {sorted(RAMSEY_NUMBERS)}")
    R = RAMSEY_NUMBERS[t]
    if r % 2 == 0:
        return (R - 1) ** (r // 2)
    return (t - 1) * (R - 1) ** ((r - 1) // 2)
