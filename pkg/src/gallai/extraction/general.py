"""Many-color recursion with certificates.

A certificate for a Gallai r-coloring F on n <= m vertices is a tuple
(f, eps, P, w): pair weights w_P >= 1 on a set P of color pairs, together
with f >= 1 and eps >= 0, such that

  (1) every s-set S has g(F, S) >= prod_{P in S} w_P, witnessed;
  (2) prod_P w_P >= m^(-eps) n;
  (3) prod_S |W_S| >= (n f)^b with b = binom(r-2, s-2);
  (4) f >= (log m)^(C eps);
  (5) f >= (c log^2 m)^(a d) with a = |P|.

The recursion runs over a Gallai decomposition and follows the four cases
of the inductive argument: a dominant part (Cases 1 and 2, regrouping into
U1, U2, U3 and inheriting one certificate), many mid-sized parts (Case 3,
inheriting from the heaviest class of equal a_j), and many tiny parts
(Case 4, merging a class of similar certificates with w_Q = sum of w_Q,j).
Weights are kept as integers, eps and log2 f as exact log-form values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, ceil
from typing import Optional

import numpy as np

from ..coloring import color_subsets, fmt_colors
from ..constants import ConstantsGeneral
from ..decomposition import DecompNode, build_decomposition
from ..errors import InputError, PropertyViolation
from ..exact import LogExpr, floor_log2, is_power_of_two, exact_log2, lmax
from ..ramsey import weighted_ramsey
from .basic import _view
from .family import WitnessFamily, concat, family_from_arrays, heaviest_clique
from .nodes import dyadic_classes, part_order, recursion_room, regroup, union_node

ZERO = LogExpr()


@dataclass
class Certificate:
    """The tuple (f, eps, P, w) in exact log form.

    ``weights`` maps each pair in P to an integer weight > 1; pairs outside P
    have weight 1.  ``log_f`` is log2 f and ``epsilon`` is eps itself.
    """

    n: int
    weights: dict
    epsilon: LogExpr
    log_f: LogExpr
    kind: str = "base"

    @property
    def P_set(self) -> frozenset:
        return frozenset(self.weights)

    @property
    def a(self) -> int:
        return len(self.weights)

    def w(self, P: frozenset) -> int:
        return self.weights.get(P, 1)

    def log_weight(self) -> LogExpr:
        out = LogExpr()
        for v in self.weights.values():
            out = out + LogExpr.log2(v)
        return out

    def clique_bound(self, S: frozenset) -> int:
        out = 1
        for P, v in self.weights.items():
            if P <= S:
                out *= v
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "kind": self.kind,
            "a": self.a,
            "weights": {fmt_colors(P): str(v) for P, v in sorted(self.weights.items(), key=lambda kv: sorted(kv[0]))},
            "epsilon": self.epsilon.to_json(),
            "log2_f": self.log_f.to_json(),
        }


def _base_certificate() -> Certificate:
    return Certificate(1, {}, LogExpr(), LogExpr(), "base")


class _Logs:
    """log2 m = L = 2^K and log2 log2 m = K, plus the derived thresholds."""

    def __init__(self, k: ConstantsGeneral, m: int):
        if not is_power_of_two(m) or m < 2 or not is_power_of_two(exact_log2(m)):
            raise InputError("m must have the form 2^(2^K) so that log m and log log m are exact")
        self.k = k
        self.L = exact_log2(m)
        self.loglog = LogExpr.log2(self.L)
        # log2 of (c log^2 m)^d per unit of a
        self.per_pair = (k.log2_c + 2 * self.loglog) * k.d

    def epsilon(self, n: int, log_w: LogExpr) -> LogExpr:
        """Least eps >= 0 with prod w >= m^(-eps) n."""
        return lmax(ZERO, (LogExpr.log2(n) - log_w) / self.L)

    def log_f(self, eps: LogExpr, a: int) -> LogExpr:
        """Least log2 f allowed by f >= 1 and properties (4) and (5)."""
        return lmax(ZERO, _scale(eps, self.k.C, self.loglog), self.per_pair * a)

    def make(self, n: int, weights: dict, kind: str) -> Certificate:
        weights = {P: v for P, v in weights.items() if v > 1}
        cert = Certificate(n, weights, LogExpr(), LogExpr(), kind)
        cert.epsilon = self.epsilon(n, cert.log_weight())
        cert.log_f = self.log_f(cert.epsilon, cert.a)
        return cert


def _scale(eps: LogExpr, C: Fraction, loglog: LogExpr) -> LogExpr:
    """C eps log2 log2 m; log2 log2 m is an integer by the form of m."""
    return eps * (C * loglog.rational_value())


@dataclass
class GeneralResult:
    family: WitnessFamily
    certificate: Certificate
    certified: bool
    n: int
    m: int
    trace: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "certified": self.certified,
            "certificate": self.certificate.to_json(),
            "witnesses": self.family.to_json(),
            "trace": self.trace,
        }


class _General:
    def __init__(self, r: int, s: int, k: ConstantsGeneral, m: int):
        self.r, self.s, self.k, self.m = r, s, k, m
        self.logs = _Logs(k, m)
        self.L = self.logs.L
        self.targets = color_subsets(r, s)
        self.b = comb(r - 2, s - 2)
        self.trace: list = []

    # witness bookkeeping ------------------------------------------------------------

    def log_product(self, arrays: dict) -> LogExpr:
        out = LogExpr()
        for S in self.targets:
            out = out + LogExpr.log2(len(arrays[S]))
        return out

    def property3(self, arrays: dict, n: int, cert: Certificate) -> bool:
        return self.log_product(arrays) >= (LogExpr.log2(n) + cert.log_f) * self.b

    def choose(self, arrays: dict, n: int, proof: Certificate, others: list[Certificate]) -> tuple[Certificate, bool]:
        """The proof's certificate when (3) holds, else the valid one with least f."""
        if self.property3(arrays, n, proof):
            return proof, True
        best = None
        for cert in others:
            if best is None or cert.log_f < best.log_f:
                best = cert
        if best is not None and self.property3(arrays, n, best):
            return best, True
        return proof, False

    # recursion ------------------------------------------------------------------------

    def solve(self, node: DecompNode) -> tuple[dict, Certificate]:
        if node.is_leaf:
            return {S: node.vertices for S in self.targets}, _base_certificate()
        n = node.size
        order = part_order(node)
        n1 = node.children[order[0]].size
        # alpha_1 > log^(-1/2) m
        if n1 * n1 * self.L > n * n:
            return self._dominant(node, order)
        return self._spread(node, order)

    def _inherit(self, n: int, cert: Certificate, tag: str) -> Certificate:
        return self.logs.make(n, dict(cert.weights), tag)

    def _dominant(self, node: DecompNode, order: list[int]) -> tuple[dict, Certificate]:
        n = node.size
        q1, q2 = sorted(node.Q)
        i1, near, far = regroup(node, order, q1)
        size = lambda idx: sum(node.children[j].size for j in idx)  # noqa: E731
        swapped = size(near) < size(far)
        if swapped:
            q1, q2 = q2, q1
            near, far = far, near
        n2 = size(near)
        case = 1 if n2 * n2 * self.L >= n * n else 2
        U = [node.children[i1], union_node(node, near), union_node(node, far)]
        sub = [self.solve(u) if u is not None else None for u in U]
        empty = np.zeros(0, dtype=np.int64)
        get = lambda i, S: sub[i][0][S] if sub[i] is not None else empty  # noqa: E731
        arrays = {}
        for S in self.targets:
            if node.Q <= S:
                arrays[S] = concat([get(i, S) for i in range(3)])
            elif q1 in S:
                arrays[S] = max([concat([get(0, S), get(1, S)]), get(2, S)], key=len)
            elif q2 in S:
                arrays[S] = max([concat([get(0, S), get(2, S)]), get(1, S)], key=len)
            else:
                arrays[S] = max((get(i, S) for i in range(3)), key=len)
        cands = [self._inherit(n, sub[i][1], f"inherit U{i + 1}") for i in range(3) if sub[i] is not None]
        proof = min(cands, key=_f_key)
        cert, ok = self.choose(arrays, n, proof, cands)
        T = next(S for S in self.targets if q1 in S and q2 not in S) if self.s < self.r else None
        entry = {"n": n, "case": case, "Q": sorted(node.Q), "alpha1": f"{U[0].size}/{n}",
                 "alpha2": f"{n2}/{n}", "swapped_U2_U3": swapped, "certificate": cert.kind,
                 "property3": ok}
        if T is not None and sub[1] is not None:
            entry["swapped_T_symmetry"] = len(get(0, T)) > len(get(1, T))
        self.trace.append(entry)
        return arrays, cert

    def _spread(self, node: DecompNode, order: list[int]) -> tuple[dict, Certificate]:
        n = node.size
        k = self.k
        L = self.L
        q1, q2 = sorted(node.Q)
        kids = [self.solve(c) for c in node.children]
        sizes = [c.size for c in node.children]
        t = len(kids)
        log_n = LogExpr.log2(n)
        # tau = floor(log2(2 n log^(-1/2) m))
        tau = floor_log2(Fraction(4 * n * n, L)) // 2
        classes = dyadic_classes(sizes)
        tiny = {i for i in classes if LogExpr.const(i) <= log_n - k.delta * L}
        tiny_mass = sum(sizes[j] for i in tiny for j in classes[i])
        case = 3 if 2 * tiny_mass <= n else 4

        arrays = {}
        ramsey_log = []
        for S in self.targets:
            if node.Q <= S:
                arrays[S] = concat([kd[0][S] for kd in kids])
                continue
            cands = [max((kd[0][S] for kd in kids), key=len)]
            if len(S & node.Q) == 1:
                weights = [len(kd[0][S]) for kd in kids]
                cands.append(concat([kids[j][0][S] for j in heaviest_clique(node.quotient, S, weights)]))
            arrays[S] = max(cands, key=len)
        for T in self.targets:
            if not (q1 in T and q2 not in T):
                continue
            T2 = (T - {q1}) | {q2}
            for i in sorted(classes):
                phi = classes[i]
                # B: |Phi(i)| <= 4 delta1^-1 log^(1/4) m 2^((tau - i)/2)
                if (Fraction(len(phi)) * k.delta1 / 4) ** 4 <= Fraction(L) * Fraction(2) ** (2 * (tau - i)):
                    continue
                ranked = sorted(phi, key=lambda j: (len(kids[j][0][T]) * len(kids[j][0][T2]), j))
                beta = max(0, ceil((1 - k.delta1 / 4) * len(phi)) - 1)
                top = ranked[beta:]
                wr = weighted_ramsey(node.quotient.restrict(top),
                                     [(len(kids[j][0][T]), len(kids[j][0][T2])) for j in top],
                                     red=q1, blue=q2)
                red = concat([kids[top[x]][0][T] for x in wr.red])
                blue = concat([kids[top[x]][0][T2] for x in wr.blue])
                if len(red) > len(arrays[T]):
                    arrays[T] = red
                if len(blue) > len(arrays[T2]):
                    arrays[T2] = blue
                ramsey_log.append({"T": sorted(T), "i": i, "top": len(top), "branch": wr.branch,
                                   "guarantee_asserted": wr.guarantee_asserted})

        certs = [kd[1] for kd in kids]
        inherits = [self._inherit(n, c, f"inherit part {j}") for j, c in enumerate(certs)]
        merges = self._class_merges(n, node.Q, certs, sizes, [j for i in tiny for j in classes[i]])
        full = self._merge(n, node.Q, certs, list(range(t)), "merge all parts")
        if case == 3:
            mass: dict[int, int] = {}
            for i in classes:
                if i in tiny:
                    continue
                for j in classes[i]:
                    mass[certs[j].a] = mass.get(certs[j].a, 0) + sizes[j]
            a_star = min(mass, key=lambda a: (-mass[a], a))
            G_a = [j for i in classes if i not in tiny for j in classes[i] if certs[j].a == a_star]
            proof = min((inherits[j] for j in G_a), key=_f_key)
        else:
            proof = max(merges, key=lambda mc: mc[1])[0]
        others = inherits + [mc[0] for mc in merges] + [full]
        cert, ok = self.choose(arrays, n, proof, others)
        self.trace.append({"n": n, "case": case, "Q": sorted(node.Q), "t": t, "tau": tau,
                           "alpha1": f"{sizes[order[0]]}/{n}", "tiny_mass": tiny_mass,
                           "ramsey": ramsey_log, "certificate": cert.kind, "a": cert.a,
                           "property3": ok})
        return arrays, cert

    def _merge(self, n: int, Q: frozenset, certs: list[Certificate], idx: list[int], tag: str) -> Certificate:
        pairs = set().union(*(certs[j].P_set for j in idx)) - {Q}
        weights = {P: min(certs[j].w(P) for j in idx) for P in pairs}
        weights[Q] = sum(certs[j].w(Q) for j in idx)
        return self.logs.make(n, weights, tag)

    def _class_merges(self, n, Q, certs, sizes, pool) -> list[tuple[Certificate, int]]:
        """Merge each class of similar certificates among the tiny parts; returns (cert, mass)."""
        k = self.k
        groups: dict[tuple, list[int]] = {}
        for j in pool:
            c = certs[j]
            key = ((c.epsilon / k.delta0).floor(), tuple(sorted(tuple(sorted(P)) for P in c.P_set)),
                   tuple((LogExpr.log2(c.weights[P]) / (k.delta0 * self.L)).floor()
                         for P in sorted(c.P_set, key=sorted)))
            groups.setdefault(key, []).append(j)
        out = []
        for key in sorted(groups):
            idx = groups[key]
            mass = sum(sizes[j] for j in idx)
            cert = self._merge(n, Q, certs, idx, f"merge class of {len(idx)}")
            out.append((cert, mass))
        return out


def _f_key(cert: Certificate):
    return _Ordered(cert.log_f)


class _Ordered:
    __slots__ = ("x",)

    def __init__(self, x: LogExpr):
        self.x = x

    def __lt__(self, other: "_Ordered") -> bool:
        return self.x < other.x


def default_m(n: int, k: ConstantsGeneral) -> int:
    """The least m = 2^(2^K) with m >= n and log m >= log_m0 when that is known."""
    e = max(1, (n - 1).bit_length())
    if k.log_m0 is not None:
        e = max(e, k.log_m0)
    return 2 ** (2 ** (e - 1).bit_length())


def extract_general(F, s: int, k: ConstantsGeneral, m: Optional[int] = None) -> GeneralResult:
    """Witnesses for every s-set of colors plus a certificate (f, eps, P, w)."""
    r = F.r
    if not 1 < s < r:
        raise InputError(f"need 1 < s < r, got s={s}, r={r}")
    if (k.r, k.s) != (r, s):
        raise InputError(f"constants are for (r, s)=({k.r}, {k.s})")
    n = F.n
    m = default_m(n, k) if m is None else int(m)
    if n > m:
        raise InputError(f"n={n} exceeds m={m}")
    root = build_decomposition(F)
    solver = _General(r, s, k, m)
    with recursion_room(root.depth() + n):
        arrays, cert = solver.solve(root)
    fam = family_from_arrays(arrays)
    if not fam.validate(_view(F)):
        raise PropertyViolation("general recursion produced an invalid witness")
    certified = solver.property3(arrays, n, cert)
    below = k.log_m0 is None or solver.L < k.log_m0
    fam.meta = {"certified": certified, "m_below_m0": below}
    return GeneralResult(fam, cert, certified, n, m, solver.trace)


# validation --------------------------------------------------------------------------


@dataclass
class CertificateReport:
    violated: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return not self.violated

    def to_json(self) -> dict:
        return {"valid": not self.violated, "violated": self.violated, "details": self.details}


def validate_certificate(F, W: WitnessFamily, cert: Certificate, k: ConstantsGeneral, m: int) -> CertificateReport:
    """Check properties (1)-(5) exactly; 0 in ``violated`` marks a malformed certificate."""
    r, n = F.r, F.n
    s = k.s
    logs = _Logs(k, m)
    rep = CertificateReport()
    targets = color_subsets(r, s)
    bad0 = []
    if cert.n != n:
        bad0.append("n mismatch")
    if n > m:
        bad0.append("n exceeds m")
    if cert.epsilon < 0:
        bad0.append("eps < 0")
    if cert.log_f < 0:
        bad0.append("f < 1")
    if any(Fraction(v) < 1 for v in cert.weights.values()):
        bad0.append("weight below 1")
    if any(len(P) != 2 or not P <= frozenset(range(1, r + 1)) for P in cert.weights):
        bad0.append("weight on a non-pair")
    if set(W) != set(targets) or not W.validate(_view(F)):
        bad0.append("witness family invalid")
    if bad0:
        rep.violated.append(0)
        rep.details["0"] = bad0
        return rep
    short = [sorted(S) for S in targets if W[S].size < cert.clique_bound(S)]
    if short:
        rep.violated.append(1)
        rep.details["1"] = short
    if cert.log_weight() < LogExpr.log2(n) - cert.epsilon * logs.L:
        rep.violated.append(2)
    log_prod = LogExpr()
    for S in targets:
        log_prod = log_prod + LogExpr.log2(W[S].size)
    if log_prod < (LogExpr.log2(n) + cert.log_f) * comb(r - 2, s - 2):
        rep.violated.append(3)
    if cert.log_f < _scale(cert.epsilon, k.C, logs.loglog):
        rep.violated.append(4)
    if cert.log_f < logs.per_pair * cert.a:
        rep.violated.append(5)
    return rep
