"""Ground truth at desk scale: exact g(F, S), naive enumeration, exhaustive sweeps."""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from .cliques import max_clique
from .coloring import EdgeColoring, Witness, check_witness, color_pairs
from .errors import InputError, ScaleCapExceeded

DEFAULT_CAP = int(os.environ.get("GALLAI_ORACLE_CAP", "200"))
ENUMERATION_CAP = 10 ** 8


@dataclass(frozen=True)
class OracleResult:
    S: frozenset
    witness: Witness
    optimal: bool = True

    @property
    def size(self) -> int:
        return self.witness.size

    def to_json(self) -> dict:
        return {"S": sorted(self.S), "size": self.size, "optimal": self.optimal,
                "witness": list(self.witness.vertices)}


def g_exact(F: EdgeColoring, S, cap: int | None = None) -> OracleResult:
    """Largest S-subchromatic set.

    Such a set is independent in the graph of edges colored outside S, i.e. a
    clique in the graph of edges colored inside S; the latter is what the
    branch and bound searches.
    """
    S = frozenset(S)
    if not S:
        raise InputError("color set must be nonempty")
    cap = DEFAULT_CAP if cap is None else cap
    if F.n > cap:
        raise ScaleCapExceeded(f"n={F.n} exceeds the oracle cap {cap}")
    adj = F.adjacency(S)
    best = max_clique(adj)
    W = Witness(tuple(best), S)
    if not check_witness(F, W):
        raise AssertionError("oracle produced an invalid witness")
    return OracleResult(S, W)


def g_value(F: EdgeColoring, S) -> int:
    return g_exact(F, S).size


def naive_g(F: EdgeColoring, S) -> int:
    """Full subset enumeration; independent of the branch and bound.  n <= 16."""
    if F.n > 16:
        raise ScaleCapExceeded("naive enumeration is limited to n <= 16")
    S = frozenset(S)
    n = F.n
    rows = F.rows
    ok_pair = [[u == v or rows[u][v] in S for v in range(n)] for u in range(n)]
    best = 1 if n else 0
    for size in range(n, 1, -1):
        if size <= best:
            break
        for subset in combinations(range(n), size):
            if all(ok_pair[u][v] for u, v in combinations(subset, 2)):
                return size
    return best


_TRIPLE_CACHE: dict[int, list[tuple[int, int, int]]] = {}


def _triples(n: int) -> list[tuple[int, int, int]]:
    if n not in _TRIPLE_CACHE:
        index = {}
        for k, (u, v) in enumerate(combinations(range(n), 2)):
            index[(u, v)] = k
        _TRIPLE_CACHE[n] = [(index[(u, v)], index[(u, w)], index[(v, w)])
                            for u, v, w in combinations(range(n), 3)]
    return _TRIPLE_CACHE[n]


def enumerate_gallai(n: int, r: int) -> Iterator[EdgeColoring]:
    """All Gallai r-colorings of K_n in lexicographic order of the flat color list."""
    if n < 1 or r < 1:
        raise InputError("n and r must be positive")
    pairs = n * (n - 1) // 2
    if r ** pairs > ENUMERATION_CAP:
        raise ScaleCapExceeded(f"{r}^{pairs} colorings exceed the enumeration cap")
    triples = _triples(n)
    for flat in product(range(1, r + 1), repeat=pairs):
        rainbow = False
        for a, b, c in triples:
            x, y, z = flat[a], flat[b], flat[c]
            if x != y and y != z and x != z:
                rainbow = True
                break
        if not rainbow:
            yield EdgeColoring.from_flat(n, r, flat)


def exhaustive_pair_product_check(n: int) -> bool:
    """Every Gallai 3-coloring of K_n: extracted and exact pair-products are both >= n."""
    from .extraction import extract_triple

    if n > 5:
        raise ScaleCapExceeded("exhaustive check is limited to n <= 5")
    pairs = color_pairs(3)
    for F in enumerate_gallai(n, 3):
        fam = extract_triple(F)
        prod_w = 1
        for P in pairs:
            if not check_witness(F, fam[P]):
                return False
            prod_w *= fam[P].size
        prod_g = 1
        for P in pairs:
            prod_g *= g_value(F, P)
        if prod_w < n or prod_g < n:
            return False
    return True
