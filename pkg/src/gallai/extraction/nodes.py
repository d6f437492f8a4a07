"""Helpers shared by the tight recursions: part ordering, regrouping, dyadic classes."""

from __future__ import annotations

import sys
from contextlib import contextmanager
from typing import Sequence

import numpy as np

from ..decomposition import DecompNode
from ..exact import floor_log2


def part_order(node: DecompNode) -> list[int]:
    """Child indices by decreasing size, ties by smallest vertex."""
    kids = node.children
    return sorted(range(len(kids)), key=lambda i: (-kids[i].size, int(kids[i].vertices.min())))


def union_node(node: DecompNode, idxs: Sequence[int]) -> DecompNode | None:
    """The node for the union of the given parts, decomposed by those parts."""
    idxs = list(idxs)
    if not idxs:
        return None
    if len(idxs) == 1:
        return node.children[idxs[0]]
    kids = [node.children[i] for i in idxs]
    verts = np.sort(np.concatenate([k.vertices for k in kids]))
    return DecompNode(verts, node.Q, node.quotient.restrict(idxs), kids)


def regroup(node: DecompNode, order: list[int], near: int) -> tuple[int, list[int], list[int]]:
    """Largest part, the parts joined to it in color ``near``, and the rest."""
    i1 = order[0]
    row = node.quotient.matrix[i1]
    near_parts = [j for j in order[1:] if row[j] == near]
    far_parts = [j for j in order[1:] if row[j] != near]
    return i1, near_parts, far_parts


def dyadic_classes(sizes: Sequence[int]) -> dict[int, list[int]]:
    """Indices grouped by floor(log2 size): class i holds sizes in [2^i, 2^(i+1))."""
    out: dict[int, list[int]] = {}
    for j, nj in enumerate(sizes):
        out.setdefault(floor_log2(nj), []).append(j)
    return out


@contextmanager
def recursion_room(depth: int):
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * depth + 1000))
    try:
        yield
    finally:
        sys.setrecursionlimit(old)
