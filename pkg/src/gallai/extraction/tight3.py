"""Tight recursion for Gallai 3-colorings.

For a fixed m and constants (D, C, c), every Gallai 3-coloring on n <= m
vertices should have either a two-colored set of size m^(7/18)/8 or witnesses
g, o, p with g*o*p >= n f(n).  The recursion follows the case split of that
argument:

* base: f(n) <= 1, where the plain product-at-least-n recursion suffices;
* a dominant part (alpha_1 >= (log C)^(-1/4)): regroup into U1 (the largest
  part), U2 and U3 (parts joined to U1 in the two quotient colors) and merge
  the three sub-results;
* sparse parts: dyadic classes Phi(i) by part size, the bad classes B' and
  B'', and the weighted Ramsey lemma on the upper half of every good class.

Witnesses are only ever improved by these steps, and the final family is the
pointwise maximum with the plain recursion.  The returned flag reports which
bound the run actually certifies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from ..coloring import color_pairs
from ..constants import ConstantsTight3
from ..decomposition import DecompNode, build_decomposition
from ..errors import InputError, PropertyViolation
from ..exact import LogExpr, Real, floor_log2
from ..ramsey import weighted_ramsey
from ..asymptotics import f_of
from .basic import _view, _weak_arrays
from .family import WitnessFamily, concat, family_from_arrays, heaviest_clique
from .nodes import dyadic_classes, part_order, recursion_room, regroup, union_node


@dataclass
class Tight3Result:
    family: WitnessFamily
    flag: str
    n: int
    m: int
    f_n: Real
    trace: list = field(default_factory=list)

    @property
    def product(self) -> int:
        return self.family.product()

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "flag": self.flag,
            "product": self.product,
            "f_n": self.f_n.to_json() if self.f_n.exact is None or self.f_n.exact.denominator < 2 ** 64 else "<1",
            "witnesses": self.family.to_json(),
            "trace": self.trace,
        }


class _Tight3:
    def __init__(self, k: ConstantsTight3, m: int):
        self.k = k
        self.m = m
        self.log_m = LogExpr.log2(m)
        self.pairs = color_pairs(3)
        self.trace: list = []
        self._f_cache: dict[int, Real] = {}
        self._base_cache: dict[int, bool] = {}

    def f(self, n: int) -> Real:
        if n not in self._f_cache:
            self._f_cache[n] = f_of(n, self.log_m, self.k)
        return self._f_cache[n]

    def is_base(self, n: int) -> bool:
        if n not in self._base_cache:
            self._base_cache[n] = self.f(n) <= 1
        return self._base_cache[n]

    def oversized(self, size: int) -> bool:
        # size >= m^(7/18) / 8
        return 18 * LogExpr.log2(8 * size) >= 7 * self.log_m

    def dominant(self, part: int, n: int) -> bool:
        # part / n >= (log C)^(-1/4)
        return Fraction(part, n) ** 4 * self.k.log_C >= 1

    def solve(self, node: DecompNode) -> dict:
        if node.is_leaf:
            return {P: node.vertices for P in self.pairs}
        n = node.size
        if self.is_base(n):
            return _weak_arrays(node, 3, 2)
        order = part_order(node)
        n1 = node.children[order[0]].size
        if self.dominant(n1, n):
            return self._dominant_case(node, order)
        return self._sparse_case(node, order)

    def _dominant_case(self, node: DecompNode, order: list[int]) -> dict:
        n = node.size
        q1, q2 = sorted(node.Q)
        yellow, blue = q1, q2
        i1, near, far = regroup(node, order, yellow)
        sizes = lambda idx: sum(node.children[j].size for j in idx)  # noqa: E731
        swapped = sizes(near) < sizes(far)
        if swapped:
            yellow, blue = blue, yellow
            near, far = far, near
        third = ({1, 2, 3} - {q1, q2}).pop()
        o_pair = frozenset({third, yellow})
        p_pair = frozenset({third, blue})
        n1, n2 = node.children[i1].size, sizes(near)
        case = 1 if self.dominant(n2, n) else 2
        U = [node.children[i1], union_node(node, near), union_node(node, far)]
        R = [self.solve(u) if u is not None else None for u in U]
        empty = np.zeros(0, dtype=np.int64)
        get = lambda i, P: R[i][P] if R[i] is not None else empty  # noqa: E731
        out = {node.Q: concat([get(i, node.Q) for i in range(3)])}
        out[o_pair] = max([concat([get(0, o_pair), get(1, o_pair)]), get(2, o_pair)], key=len)
        out[p_pair] = max([concat([get(0, p_pair), get(2, p_pair)]), get(1, p_pair)], key=len)
        self.trace.append({
            "n": n, "case": case, "alpha1": f"{n1}/{n}", "alpha2": f"{n2}/{n}",
            "swapped_U2_U3": swapped, "Q": sorted(node.Q),
            "sizes": {"g": len(out[node.Q]), "o": len(out[o_pair]), "p": len(out[p_pair])},
        })
        return out

    def _sparse_case(self, node: DecompNode, order: list[int]) -> dict:
        n = node.size
        k = self.k
        q1, q2 = sorted(node.Q)
        yellow, blue = q1, q2
        third = ({1, 2, 3} - {q1, q2}).pop()
        o_pair = frozenset({third, yellow})
        p_pair = frozenset({third, blue})
        kids = [self.solve(c) for c in node.children]
        t = len(kids)
        o = [len(r[o_pair]) for r in kids]
        p = [len(r[p_pair]) for r in kids]
        out = {node.Q: concat([r[node.Q] for r in kids])}
        early = any(self.oversized(len(r[P])) for r in kids for P in self.pairs)

        cand_o = [max((r[o_pair] for r in kids), key=len)]
        cand_p = [max((r[p_pair] for r in kids), key=len)]
        hc = heaviest_clique(node.quotient, o_pair, o)
        cand_o.append(concat([kids[j][o_pair] for j in hc]))
        hc = heaviest_clique(node.quotient, p_pair, p)
        cand_p.append(concat([kids[j][p_pair] for j in hc]))

        tau = floor_log2(Fraction(2 * n, k.D ** 2))
        classes = dyadic_classes([c.size for c in node.children])
        log_n = LogExpr.log2(n)
        buckets = []
        precondition_failed = False
        for i in sorted(classes):
            phi = classes[i]
            # B': |Phi(i)| <= 2D * 2^(7(tau - i)/8)
            bad1 = Fraction(len(phi), 2 * k.D) ** 8 <= Fraction(2) ** (7 * (tau - i))
            # B'': i <= log(n m^(-7/18))
            bad2 = 18 * i <= 18 * log_n - 7 * self.log_m
            entry = {"i": i, "size": len(phi), "in_B1": bool(bad1), "in_B2": bool(bad2)}
            if not (bad1 or bad2):
                ranked = sorted(phi, key=lambda j: (o[j] * p[j], j))
                top = ranked[len(ranked) // 2:]
                if len(top) < k.M:
                    precondition_failed = True
                    entry["below_M"] = True
                sub = node.quotient.restrict(top)
                wr = weighted_ramsey(sub, [(o[j], p[j]) for j in top], red=yellow, blue=blue)
                cand_o.append(concat([kids[top[x]][o_pair] for x in wr.red]))
                cand_p.append(concat([kids[top[x]][p_pair] for x in wr.blue]))
                entry.update({"ramsey_branch": wr.branch, "ramsey_product": str(wr.product),
                              "median_index": int(ranked[len(ranked) // 2])})
            buckets.append(entry)
        out[o_pair] = max(cand_o, key=len)
        out[p_pair] = max(cand_p, key=len)
        self.trace.append({
            "n": n, "case": 3, "t": t, "alpha1": f"{node.children[order[0]].size}/{n}", "tau": tau,
            "Q": sorted(node.Q), "buckets": buckets, "early_exit_available": early,
            "ramsey_precondition_failed": precondition_failed,
            "sizes": {"g": len(out[node.Q]), "o": len(out[o_pair]), "p": len(out[p_pair])},
        })
        return out


def extract_tight3(F, k: ConstantsTight3, m: Optional[int] = None) -> Tight3Result:
    """Witnesses for the three color pairs of a Gallai 3-coloring via the tight recursion.

    ``m`` defaults to n.  The flag is "product" when prod |W| >= n f(n),
    "max" when some witness reaches m^(7/18)/8, and "weak" when only the
    plain bound prod |W| >= n could be certified.
    """
    if F.r != 3:
        raise InputError("extract_tight3 needs a 3-coloring")
    n = F.n
    m = n if m is None else int(m)
    if n > m:
        raise InputError(f"n={n} exceeds m={m}")
    root = build_decomposition(F)
    solver = _Tight3(k, m)
    with recursion_room(root.depth() + n):
        arrays = solver.solve(root)
    plain = _weak_arrays(root, 3, 2)
    final = {P: max(arrays[P], plain[P], key=len) for P in solver.pairs}
    fam = family_from_arrays(final)
    if not fam.validate(_view(F)):
        raise PropertyViolation("tight recursion produced an invalid witness")
    prod = fam.product()
    if prod < n:
        raise PropertyViolation("tight recursion lost the product-at-least-n guarantee")
    fn = solver.f(n)
    if Real(prod) >= Real(n) * fn:
        flag = "product"
    elif solver.oversized(max(W.size for W in fam.values())):
        flag = "max"
    else:
        flag = "weak"
    fam.meta = {"flag": flag}
    return Tight3Result(fam, flag, n, m, fn, solver.trace)
