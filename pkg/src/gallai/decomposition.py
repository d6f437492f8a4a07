"""Gallai partitions, recursive decomposition trees, and the three-cograph edge partition."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .coloring import EdgeColoring, color_pairs, find_rainbow_triangle
from .errors import InputError, NotGallaiError


@dataclass(frozen=True)
class GallaiPartition:
    parts: tuple[tuple[int, ...], ...]
    Q: frozenset
    quotient: EdgeColoring

    @property
    def t(self) -> int:
        return len(self.parts)

    def to_json(self) -> dict:
        return {
            "parts": [list(p) for p in self.parts],
            "Q": sorted(self.Q),
            "quotient": [int(c) for c in self.quotient.flat],
        }


# partition finder -------------------------------------------------------------

def _components(mask: np.ndarray) -> tuple[int, np.ndarray]:
    """Connected components of a dense boolean adjacency matrix by frontier BFS."""
    n = mask.shape[0]
    labels = np.full(n, -1, dtype=np.int64)
    k = 0
    for seed in range(n):
        if labels[seed] >= 0:
            continue
        reach = np.zeros(n, dtype=bool)
        reach[seed] = True
        frontier = np.array([seed])
        while frontier.size:
            nxt = mask[frontier].any(axis=0) & ~reach
            reach |= nxt
            frontier = np.flatnonzero(nxt)
        labels[reach] = k
        k += 1
        if k == 1 and reach.all():
            break
    return k, labels


def _block_sums(A: np.ndarray, labels: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(labels, kind="stable")
    sizes = np.bincount(labels, minlength=k)
    starts = np.concatenate([[0], np.cumsum(sizes)[:-1]])
    B = A[np.ix_(order, order)]
    B = np.add.reduceat(B, starts, axis=0)
    B = np.add.reduceat(B, starts, axis=1)
    return B, sizes


def _coarsen_pair(M: np.ndarray, a: int, b: int) -> Optional[np.ndarray]:
    """Finest grouping into parts whose cross edges are monochromatic within {a, b}.

    Returns part labels, or None when everything collapses into one part.
    """
    outside = (M != a) & (M != b)
    np.fill_diagonal(outside, False)
    k, labels = _components(outside)
    if k < 2:
        return None
    A = (M == a).astype(np.int64)
    counts, sizes = _block_sums(A, labels, k)
    while True:
        full = np.outer(sizes, sizes)
        mixed = (counts != 0) & (counts != full)
        np.fill_diagonal(mixed, False)
        if not mixed.any():
            break
        k2, merge = connected_components(csr_matrix(mixed), directed=False)
        if k2 < 2:
            return None
        labels = merge[labels]
        counts, _ = _block_sums(counts, merge, k2)
        sizes = np.bincount(merge, weights=sizes, minlength=k2).astype(np.int64)
        k = k2
    return labels


def _partition_from_matrix(M: np.ndarray, r: int) -> Optional[GallaiPartition]:
    if r == 1:
        pairs = [frozenset({1})]
    else:
        pairs = color_pairs(r)
    for Q in pairs:
        qs = sorted(Q)
        a, b = qs[0], qs[-1]
        labels = _coarsen_pair(M, a, b)
        if labels is None:
            continue
        groups: dict[int, list[int]] = {}
        for v, lab in enumerate(labels.tolist()):
            groups.setdefault(lab, []).append(v)
        parts = tuple(sorted((tuple(g) for g in groups.values()), key=lambda p: p[0]))
        reps = [p[0] for p in parts]
        qm = M[np.ix_(reps, reps)]
        quotient = EdgeColoring(len(parts), r, qm, validate=False)
        return GallaiPartition(parts, frozenset(Q) if r > 1 else frozenset({1}), quotient)
    return None


def find_gallai_partition(F: EdgeColoring) -> Optional[GallaiPartition]:
    """A nontrivial Gallai partition of F, or None.

    For each color pair {a, b} in lexicographic order: components of the graph of
    edges colored outside {a, b}, then merge parts whose cross edges are not
    monochromatic.  The first pair leaving at least two parts wins.  The result
    is the finest partition whose quotient uses only that pair, so when every
    pair collapses no valid partition exists at all.
    """
    if F.n < 2:
        raise InputError("a Gallai partition needs at least two vertices")
    return _partition_from_matrix(F.matrix, F.r)


def validate_partition(F: EdgeColoring, P: GallaiPartition) -> bool:
    parts = P.parts
    if len(parts) < 2 or any(len(p) == 0 for p in parts):
        return False
    seen = sorted(v for p in parts for v in p)
    if seen != list(range(F.n)):
        return False
    if P.quotient.n != len(parts):
        return False
    if not P.quotient.used_colors <= frozenset(P.Q):
        return False
    M = F.matrix
    for i, j in combinations(range(len(parts)), 2):
        block = M[np.ix_(parts[i], parts[j])]
        if not np.all(block == P.quotient.color(i, j)):
            return False
    return True


# decomposition trees ------------------------------------------------------------

@dataclass(eq=False)
class DecompNode:
    """A node of a recursive Gallai decomposition.

    ``vertices`` are global vertex ids.  Internal nodes carry the color pair
    ``Q`` and the quotient on their children; leaves hold a single vertex.
    """

    vertices: np.ndarray
    Q: Optional[frozenset] = None
    quotient: Optional[EdgeColoring] = None
    children: list = field(default_factory=list)

    @property
    def size(self) -> int:
        return int(self.vertices.size)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def postorder(self) -> Iterator["DecompNode"]:
        stack = [(self, False)]
        while stack:
            node, done = stack.pop()
            if done or node.is_leaf:
                yield node
                continue
            stack.append((node, True))
            for c in reversed(node.children):
                stack.append((c, False))

    def depth(self) -> int:
        best = 0
        stack = [(self, 0)]
        while stack:
            node, d = stack.pop()
            best = max(best, d)
            stack.extend((c, d + 1) for c in node.children)
        return best


def _locate_rainbow(F, vertices: np.ndarray):
    if vertices.size <= 400:
        sub = EdgeColoring(vertices.size, F.r, F.submatrix(vertices), validate=False)
        tri = find_rainbow_triangle(sub)
        if tri is not None:
            return tuple(int(vertices[i]) for i in tri)
    return None


def build_decomposition(F) -> DecompNode:
    """Full recursive Gallai decomposition of an EdgeColoring or a product tree.

    Raises NotGallaiError when some block admits no Gallai partition, which
    happens exactly when the coloring contains a rainbow triangle.
    """
    from .products import Leaf, Prod, Sub  # local import to keep modules acyclic

    if isinstance(F, (Leaf, Prod, Sub)):
        return _decompose_tree(F)
    root = DecompNode(np.arange(F.n, dtype=np.int64))
    stack = [root]
    while stack:
        node = stack.pop()
        if node.size < 2:
            continue
        sub = F.submatrix(node.vertices) if node.size < F.n else F.matrix
        part = _partition_from_matrix(np.asarray(sub), F.r)
        if part is None:
            raise NotGallaiError(triangle=_locate_rainbow(F, node.vertices))
        node.Q = part.Q
        node.quotient = part.quotient
        node.children = [DecompNode(node.vertices[list(p)]) for p in part.parts]
        stack.extend(node.children)
    return root


def _shift(node: DecompNode, mapping) -> DecompNode:
    out = DecompNode(mapping(node.vertices), node.Q, node.quotient)
    out.children = [_shift(c, mapping) for c in node.children]
    return out


def _graft(outer: DecompNode, inner_for_vertex) -> DecompNode:
    """Replace each leaf vertex u of ``outer`` by the decomposition ``inner_for_vertex(u)``."""
    if outer.is_leaf:
        return inner_for_vertex(int(outer.vertices[0]))
    kids = [_graft(c, inner_for_vertex) for c in outer.children]
    verts = np.sort(np.concatenate([k.vertices for k in kids]))
    return DecompNode(verts, outer.Q, outer.quotient, kids)


def _decompose_tree(tree) -> DecompNode:
    from .products import Leaf, Prod

    if isinstance(tree, Leaf):
        return build_decomposition(tree.coloring)
    if isinstance(tree, Prod):
        outer = _decompose_tree(tree.left)
        inner = _decompose_tree(tree.right)
        nb = tree.right.n
        return _graft(outer, lambda u: _shift(inner, lambda vs, u=u: vs + u * nb))
    # substitution: decompose the quotient, then graft the children into its leaves
    offsets = tree.offsets
    kids = [_decompose_tree(c) for c in tree.children]
    shifted = [_shift(k, lambda vs, o=int(offsets[i]): vs + o) for i, k in enumerate(kids)]
    if tree.quotient.n == 1:
        return shifted[0]
    outer = build_decomposition(tree.quotient)
    return _graft(outer, lambda u: shifted[u])


# cotrees ---------------------------------------------------------------------------

@dataclass(eq=False)
class Cotree:
    kind: str  # "J", "U" or "v"
    children: list = field(default_factory=list)
    vertex: int = -1

    @classmethod
    def leaf(cls, v: int) -> "Cotree":
        return cls("v", [], int(v))

    def postorder(self) -> Iterator["Cotree"]:
        stack = [(self, False)]
        while stack:
            node, done = stack.pop()
            if done or node.kind == "v":
                yield node
                continue
            stack.append((node, True))
            for c in reversed(node.children):
                stack.append((c, False))

    def vertices(self) -> list[int]:
        return sorted(node.vertex for node in self.postorder() if node.kind == "v")

    def to_sexpr(self) -> str:
        parts: dict[int, str] = {}
        for node in self.postorder():
            if node.kind == "v":
                parts[id(node)] = f"(v {node.vertex})"
            else:
                inner = " ".join(parts.pop(id(c)) for c in node.children)
                parts[id(node)] = f"({node.kind} {inner})"
        return parts[id(self)]

    def adjacency(self, n: int) -> list[int]:
        """Bitmask adjacency of the realized cograph on vertex range [0, n)."""
        adj = [0] * n
        verts: dict[int, int] = {}
        for node in self.postorder():
            if node.kind == "v":
                verts[id(node)] = 1 << node.vertex
                continue
            masks = [verts.pop(id(c)) for c in node.children]
            if node.kind == "J":
                total = 0
                for mk in masks:
                    total |= mk
                for mk in masks:
                    others = total & ~mk
                    v = mk
                    while v:
                        low = v & -v
                        adj[low.bit_length() - 1] |= others
                        v ^= low
                verts[id(node)] = total
            else:
                total = 0
                for mk in masks:
                    total |= mk
                verts[id(node)] = total
        return adj


def _cotree_optimum(T: Cotree, within: Optional[set], clique: bool) -> list[int]:
    best: dict[int, list[int]] = {}
    for node in T.postorder():
        if node.kind == "v":
            best[id(node)] = [node.vertex] if within is None or node.vertex in within else []
            continue
        vals = [best.pop(id(c)) for c in node.children]
        summing = (node.kind == "J") == clique
        if summing:
            out: list[int] = []
            for v in vals:
                out.extend(v)
            best[id(node)] = out
        else:
            best[id(node)] = max(vals, key=len)
    return sorted(best[id(T)])


def cotree_max_clique(T: Cotree, within: Optional[Sequence[int]] = None) -> list[int]:
    """Maximum clique: JOIN sums its children, UNION keeps the best child."""
    return _cotree_optimum(T, set(within) if within is not None else None, True)


def cotree_max_independent(T: Cotree, within: Optional[Sequence[int]] = None) -> list[int]:
    """Maximum independent set: UNION sums its children, JOIN keeps the best child."""
    return _cotree_optimum(T, set(within) if within is not None else None, False)


def cotrees_from_decomposition(root: DecompNode) -> dict[frozenset, Cotree]:
    """Three cotrees, one per color pair of a 3-coloring, built bottom-up."""
    pairs = color_pairs(3)
    built: dict[int, dict[frozenset, Cotree]] = {}
    for node in root.postorder():
        if node.is_leaf:
            leaf = Cotree.leaf(int(node.vertices[0]))
            built[id(node)] = {P: leaf for P in pairs}
            continue
        kids = [built.pop(id(c)) for c in node.children]
        out = {}
        for P in pairs:
            kind = "J" if P == node.Q else "U"
            out[P] = Cotree(kind, [k[P] for k in kids])
        built[id(node)] = out
    return built[id(root)]


def cograph_edge_partition(F) -> dict[frozenset, Cotree]:
    """Split the edges of a Gallai 3-coloring into three cographs indexed by color pairs."""
    if F.r != 3:
        raise InputError("the three-cograph partition needs exactly three colors")
    return cotrees_from_decomposition(build_decomposition(F))
