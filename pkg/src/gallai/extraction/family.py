"""Witness families and the shared quotient-clique helper used by the recursions."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from ..cliques import max_weight_clique
from ..coloring import EdgeColoring, Witness, check_witness, fmt_colors


class WitnessFamily(dict):
    """Map from color sets to witnesses, plus run metadata."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.meta: dict = {}

    def sizes(self) -> dict:
        return {S: W.size for S, W in self.items()}

    def product(self) -> int:
        out = 1
        for W in self.values():
            out *= W.size
        return out

    def best(self) -> Witness:
        return max(self.values(), key=lambda W: (W.size, [-c for c in sorted(W.colors)]))

    def validate(self, F) -> bool:
        return all(W.colors == S and check_witness(F, W) for S, W in self.items())

    def to_json(self) -> dict:
        return {fmt_colors(S): W.to_json() for S, W in sorted(self.items(), key=lambda kv: sorted(kv[0]))}


def family_from_arrays(arrays: dict) -> WitnessFamily:
    fam = WitnessFamily()
    for S, arr in arrays.items():
        fam[S] = Witness(tuple(int(v) for v in np.asarray(arr).tolist()), S)
    return fam


def concat(arrays: Sequence[np.ndarray]) -> np.ndarray:
    arrays = [a for a in arrays if len(a)]
    if not arrays:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate(arrays)


EXACT_QUOTIENT_LIMIT = 40


def heaviest_clique(quotient: EdgeColoring, colors: Iterable[int], weights: Sequence[int]) -> list[int]:
    """Indices of a heavy clique in the quotient graph of edges colored in ``colors``.

    Exact for quotients up to EXACT_QUOTIENT_LIMIT vertices, greedy by weight above.
    """
    t = quotient.n
    adj = quotient.adjacency(colors)
    if t <= EXACT_QUOTIENT_LIMIT:
        _, best = max_weight_clique(adj, weights)
        return best
    order = sorted(range(t), key=lambda i: (-weights[i], i))
    chosen: list[int] = []
    mask = (1 << t) - 1
    for i in order:
        if (mask >> i) & 1:
            chosen.append(i)
            mask &= adj[i]
    return sorted(chosen)
