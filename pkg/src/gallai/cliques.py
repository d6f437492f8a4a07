"""Exact maximum clique / independent set over bitmask adjacency.

Branch and bound with greedy-coloring upper bounds.  Vertices are relabelled
by degree (descending, ties by index) so that the lowest set bit is always the
next vertex in search order.
"""

from __future__ import annotations

import sys
from typing import Sequence


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def max_clique(adj: Sequence[int], within: int | None = None) -> list[int]:
    """A maximum clique of the graph given by bitmask rows ``adj``.

    Only vertices in the bitmask ``within`` are considered (default: all).
    Returns the clique as a sorted vertex list.
    """
    n = len(adj)
    if within is None:
        within = (1 << n) - 1
    verts = list(_bits(within))
    if not verts:
        return []
    deg = {v: popcount(adj[v] & within) for v in verts}
    order = sorted(verts, key=lambda v: (-deg[v], v))
    pos = {v: i for i, v in enumerate(order)}
    k = len(order)
    radj = [0] * k
    for v in order:
        row = 0
        for u in _bits(adj[v] & within):
            row |= 1 << pos[u]
        radj[pos[v]] = row

    best: list[int] = [0]
    current: list[int] = []

    def color_sort(P: int):
        verts_out: list[int] = []
        bounds: list[int] = []
        uncolored = P
        color = 0
        while uncolored:
            color += 1
            Q = uncolored
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                uncolored ^= low
                Q &= ~radj[v] & ~low
                verts_out.append(v)
                bounds.append(color)
        return verts_out, bounds

    def expand(P: int):
        vs, bounds = color_sort(P)
        for i in range(len(vs) - 1, -1, -1):
            if len(current) + bounds[i] <= len(best):
                return
            v = vs[i]
            current.append(v)
            newP = P & radj[v]
            if newP:
                expand(newP)
            elif len(current) > len(best):
                best[:] = current
            current.pop()
            P &= ~(1 << v)

    limit = sys.getrecursionlimit()
    if limit < k + 100:
        sys.setrecursionlimit(k + 100)
    expand((1 << k) - 1)
    return sorted(order[i] for i in best)


def max_independent_set(adj: Sequence[int], within: int | None = None) -> list[int]:
    n = len(adj)
    full = (1 << n) - 1
    comp = [(full ^ adj[v]) & ~(1 << v) for v in range(n)]
    return max_clique(comp, within)


def is_clique(adj: Sequence[int], vertices: Sequence[int]) -> bool:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return all((adj[v] | (1 << v)) & mask == mask for v in vertices)


def max_weight_clique(adj: Sequence[int], weights: Sequence[int], within: int | None = None) -> tuple[int, list[int]]:
    """Maximum total weight clique for nonnegative integer (or rational) weights.

    Bound: greedy color classes, each contributing its heaviest member.
    """
    n = len(adj)
    if within is None:
        within = (1 << n) - 1
    verts = [v for v in _bits(within) if weights[v] > 0]
    if not verts:
        return 0, []
    order = sorted(verts, key=lambda v: (-weights[v], v))
    pos = {v: i for i, v in enumerate(order)}
    k = len(order)
    wt = [weights[v] for v in order]
    radj = [0] * k
    for v in order:
        row = 0
        for u in _bits(adj[v] & within):
            if u in pos:
                row |= 1 << pos[u]
        radj[pos[v]] = row

    best_w = [0]
    best: list[int] = []
    current: list[int] = []

    def bound(P: int):
        # vertices are sorted by weight, so the first vertex of a class is its heaviest
        vs: list[int] = []
        cum: list = []
        uncolored = P
        total = 0
        while uncolored:
            Q = uncolored
            first = True
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                uncolored ^= low
                Q &= ~radj[v] & ~low
                if first:
                    total += wt[v]
                    first = False
                vs.append(v)
                cum.append(total)
        return vs, cum

    def expand(P: int, cur_w):
        vs, cum = bound(P)
        for i in range(len(vs) - 1, -1, -1):
            if cur_w + cum[i] <= best_w[0]:
                return
            v = vs[i]
            current.append(v)
            nw = cur_w + wt[v]
            newP = P & radj[v]
            if newP:
                expand(newP, nw)
            elif nw > best_w[0]:
                best_w[0] = nw
                best[:] = current
            current.pop()
            P &= ~(1 << v)

    if sys.getrecursionlimit() < k + 100:
        sys.setrecursionlimit(k + 100)
    expand((1 << k) - 1, 0)
    return best_w[0], sorted(order[i] for i in best)
