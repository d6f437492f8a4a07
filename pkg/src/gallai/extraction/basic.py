"""Extraction by plain recursion over Gallai decompositions.

* ``extract_two_colored``: a two-colored set of at least n^(1/3) vertices for a
  Gallai 3-coloring, via the three-cograph edge partition.
* ``extract_triple``: witnesses for the three color pairs of a Gallai
  3-coloring whose sizes multiply to at least n.
* ``extract_weak_general``: witnesses for every s-subset of the palette whose
  sizes multiply to at least n^binom(r-2, s-2).
"""

from __future__ import annotations

from math import comb

from ..coloring import Witness, check_witness, color_pairs, color_subsets
from ..decomposition import build_decomposition, cotree_max_clique, cotree_max_independent, cotrees_from_decomposition
from ..errors import InputError, PropertyViolation
from .family import WitnessFamily, concat, family_from_arrays, heaviest_clique


def _palette(F) -> int:
    return F.r


def _view(F):
    """Something with ``n``, ``r`` and ``submatrix`` for witness validation."""
    from ..products import LazyColoring, Leaf, Prod, Sub

    if isinstance(F, (Leaf, Prod, Sub)):
        return LazyColoring(F)
    return F


def extract_two_colored(F, *, trace: list | None = None) -> Witness:
    """A two-colored set of size >= ceil(n^(1/3)) in a Gallai 3-coloring.

    Cascade: a big clique in the first cograph, else inside its maximum
    independent set a big clique of the second cograph, else the second
    cograph's independent set there, which is a clique of the third cograph.
    """
    if F.r != 3:
        raise InputError("extract_two_colored needs a 3-coloring")
    n = F.n
    root = build_decomposition(F)
    trees = cotrees_from_decomposition(root)
    P1, P2, P3 = color_pairs(3)
    stage = 1
    K1 = cotree_max_clique(trees[P1])
    if len(K1) ** 3 >= n:
        W = Witness(tuple(K1), P1)
    else:
        stage = 2
        I1 = cotree_max_independent(trees[P1])
        K2 = cotree_max_clique(trees[P2], within=I1)
        if len(K2) ** 3 >= n:
            W = Witness(tuple(K2), P2)
        else:
            stage = 3
            J = cotree_max_independent(trees[P2], within=I1)
            W = Witness(tuple(J), P3)
    if trace is not None:
        trace.append({"stage": stage, "cascade_size": W.size})
    if W.size ** 3 < n:
        raise PropertyViolation(f"cograph cascade returned {W.size} vertices for n={n}")
    if not check_witness(_view(F), W):
        raise PropertyViolation("cograph cascade returned an invalid witness")
    return W


def _weak_arrays(root, r: int, s: int) -> dict:
    targets = color_subsets(r, s)
    results: dict[int, dict] = {}
    for node in root.postorder():
        if node.is_leaf:
            results[id(node)] = {S: node.vertices for S in targets}
            continue
        kids = [results.pop(id(c)) for c in node.children]
        out = {}
        for S in targets:
            if node.Q <= S:
                out[S] = concat([k[S] for k in kids])
            elif s == 1:
                weights = [len(k[S]) for k in kids]
                chosen = heaviest_clique(node.quotient, S, weights)
                out[S] = concat([kids[i][S] for i in chosen])
            else:
                out[S] = max((k[S] for k in kids), key=len)
        results[id(node)] = out
    return results[id(root)]


def extract_weak_general(F, s: int) -> WitnessFamily:
    """Witnesses W_S for all s-subsets S with prod |W_S| >= n^binom(r-2, s-2)."""
    r = F.r
    n = F.n
    if not 1 <= s <= r:
        raise InputError(f"s must lie in [1, {r}]")
    if s == r:
        full = frozenset(range(1, r + 1))
        fam = WitnessFamily({full: Witness(tuple(range(n)), full)})
        fam.meta = {"exponent": 1}
        return fam
    root = build_decomposition(F)
    fam = family_from_arrays(_weak_arrays(root, r, s))
    if s >= 2:
        b = comb(r - 2, s - 2)
        if fam.product() < n ** b:
            raise PropertyViolation("weak bound product guarantee failed")
        best = fam.best()
        if best.size ** comb(r, 2) < n ** comb(s, 2):
            raise PropertyViolation("weak bound best-witness guarantee failed")
        fam.meta = {"exponent": b, "best": sorted(best.colors)}
    else:
        fam.meta = {"best": sorted(fam.best().colors)}
    return fam


def extract_triple(F) -> WitnessFamily:
    """Witnesses for the three color pairs of a Gallai 3-coloring with product >= n."""
    if F.r != 3:
        raise InputError("extract_triple needs a 3-coloring")
    return extract_weak_general(F, 2)
