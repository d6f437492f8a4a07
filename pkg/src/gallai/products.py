"""Lexicographic products, substitutions, product trees and the random Gallai generator."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Mapping, Sequence, Union

import numpy as np

from .cliques import max_weight_clique
from .coloring import EdgeColoring, decode, encode
from .errors import InputError


def lex_product(F1: EdgeColoring, F2: EdgeColoring) -> EdgeColoring:
    """Vertex (u, v) becomes u*n2 + v; blocks inherit F1, the inside of a block F2."""
    if F1.r != F2.r:
        raise InputError(f"palette mismatch: {F1.r} vs {F2.r}")
    n2 = F2.n
    m = np.kron(F1.matrix, np.ones((n2, n2), dtype=np.uint8))
    m += np.kron(np.eye(F1.n, dtype=np.uint8), F2.matrix)
    return EdgeColoring(F1.n * n2, F1.r, m, validate=False)


def substitute(quotient: EdgeColoring, children: Sequence[EdgeColoring]) -> EdgeColoring:
    """Blow up quotient vertex i into ``children[i]``; vertices are numbered block by block."""
    if len(children) != quotient.n:
        raise InputError(f"quotient has {quotient.n} vertices but {len(children)} children were given")
    if any(c.r != quotient.r for c in children):
        raise InputError("palette mismatch between quotient and children")
    sizes = [c.n for c in children]
    block = np.repeat(np.arange(quotient.n), sizes)
    m = quotient.matrix[np.ix_(block, block)].copy()
    start = 0
    for child in children:
        m[start:start + child.n, start:start + child.n] = child.matrix
        start += child.n
    return EdgeColoring(int(sum(sizes)), quotient.r, m, validate=False)


# product trees ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Leaf:
    coloring: EdgeColoring

    @property
    def n(self) -> int:
        return self.coloring.n

    @property
    def r(self) -> int:
        return self.coloring.r

    def _pairs(self, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
        return self.coloring.matrix[us, vs]


@dataclass(frozen=True, eq=False)
class Prod:
    left: "ProductTree"
    right: "ProductTree"

    def __post_init__(self):
        if self.left.r != self.right.r:
            raise InputError("palette mismatch inside product tree")

    @cached_property
    def n(self) -> int:
        return self.left.n * self.right.n

    @property
    def r(self) -> int:
        return self.left.r

    def _pairs(self, us, vs):
        nb = self.right.n
        hu, lu = np.divmod(us, nb)
        hv, lv = np.divmod(vs, nb)
        same = hu == hv
        out = np.zeros(us.shape, dtype=np.uint8)
        cross = ~same
        if cross.any():
            out[cross] = self.left._pairs(hu[cross], hv[cross])
        inner = same & (lu != lv)
        if inner.any():
            out[inner] = self.right._pairs(lu[inner], lv[inner])
        return out


@dataclass(frozen=True, eq=False)
class Sub:
    quotient: EdgeColoring
    children: tuple

    def __post_init__(self):
        if len(self.children) != self.quotient.n:
            raise InputError("substitution arity mismatch")
        if any(c.r != self.quotient.r for c in self.children):
            raise InputError("palette mismatch inside product tree")

    @cached_property
    def offsets(self) -> np.ndarray:
        return np.concatenate([[0], np.cumsum([c.n for c in self.children])]).astype(np.int64)

    @cached_property
    def n(self) -> int:
        return int(self.offsets[-1])

    @property
    def r(self) -> int:
        return self.quotient.r

    def _pairs(self, us, vs):
        off = self.offsets
        pu = np.searchsorted(off, us, side="right") - 1
        pv = np.searchsorted(off, vs, side="right") - 1
        out = np.zeros(us.shape, dtype=np.uint8)
        cross = pu != pv
        if cross.any():
            out[cross] = self.quotient.matrix[pu[cross], pv[cross]]
        inner = (~cross) & (us != vs)
        if inner.any():
            for i in np.unique(pu[inner]):
                sel = inner & (pu == i)
                out[sel] = self.children[i]._pairs(us[sel] - off[i], vs[sel] - off[i])
        return out


ProductTree = Union[Leaf, Prod, Sub]


def tree_submatrix(tree: ProductTree, vertices: Sequence[int]) -> np.ndarray:
    idx = np.asarray(vertices, dtype=np.int64)
    k = idx.size
    us = np.repeat(idx, k)
    vs = np.tile(idx, k)
    return tree._pairs(us, vs).reshape(k, k)


class LazyColoring:
    """Read-only coloring view of a product tree that never materializes the matrix."""

    def __init__(self, tree: ProductTree):
        self.tree = tree
        self.n = tree.n
        self.r = tree.r

    def color(self, u: int, v: int) -> int:
        if u == v:
            raise InputError("a vertex has no loop color")
        return int(self.tree._pairs(np.array([u]), np.array([v]))[0])

    def submatrix(self, vertices: Sequence[int]) -> np.ndarray:
        return tree_submatrix(self.tree, vertices)


def flatten(tree: ProductTree) -> EdgeColoring:
    if isinstance(tree, Leaf):
        return tree.coloring
    if isinstance(tree, Prod):
        return lex_product(flatten(tree.left), flatten(tree.right))
    return substitute(tree.quotient, [flatten(c) for c in tree.children])


def product_of(factors: Sequence[EdgeColoring]) -> ProductTree:
    """Right-nested product tree F1 ⊗ (F2 ⊗ (...))."""
    if not factors:
        raise InputError("need at least one factor")
    tree: ProductTree = Leaf(factors[-1])
    for F in reversed(factors[:-1]):
        tree = Prod(Leaf(F), tree)
    return tree


def leaves(tree: ProductTree) -> list[Leaf]:
    out: list[Leaf] = []
    stack = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            out.append(node)
        elif isinstance(node, Prod):
            stack.extend([node.right, node.left])
        else:
            stack.extend(reversed(node.children))
    return out


def g_of_product(tree: ProductTree, S, leaf_g: Union[Callable, Mapping]) -> int:
    """Exact g(flatten(tree), S) from exact leaf values.

    Binary products multiply.  A substitution node takes the heaviest clique of
    the quotient graph formed by S-colored edges, each block weighted by its
    child's value; this is exact because every cross-block edge set is
    monochromatic.
    """
    S = frozenset(S)

    def leaf_value(leaf: Leaf) -> int:
        if callable(leaf_g):
            return int(leaf_g(leaf.coloring, S))
        for key in (leaf, leaf.coloring):
            try:
                return int(leaf_g[key])
            except (KeyError, TypeError):
                continue
        raise InputError("missing g value for a leaf")

    def go(node) -> int:
        if isinstance(node, Leaf):
            return leaf_value(node)
        if isinstance(node, Prod):
            return go(node.left) * go(node.right)
        vals = [go(c) for c in node.children]
        adj = node.quotient.adjacency(S)
        best, _ = max_weight_clique(adj, vals)
        return best

    return go(tree)


# s-expressions -----------------------------------------------------------------

def _gal_inline(F: EdgeColoring) -> str:
    return encode(F).strip().replace("\n", " | ")


def to_sexpr(tree: ProductTree) -> str:
    if isinstance(tree, Leaf):
        return f"(leaf {_gal_inline(tree.coloring)})"
    if isinstance(tree, Prod):
        return f"(prod {to_sexpr(tree.left)} {to_sexpr(tree.right)})"
    kids = " ".join(f"(child {to_sexpr(c)})" for c in tree.children)
    return f"(sub (q {_gal_inline(tree.quotient)}) {kids})"


def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def parse_sexpr(text: str) -> ProductTree:
    """Parse ``(leaf n r | colors...)``, ``(prod A B)``, ``(sub (q ...) (child T) ...)``.

    Inside ``leaf``/``q`` the header and color list may be separated by ``|`` or
    a newline.
    """
    toks = _tokenize(text)
    pos = 0

    def expect(tok):
        nonlocal pos
        if pos >= len(toks) or toks[pos] != tok:
            got = toks[pos] if pos < len(toks) else "end of input"
            raise InputError(f"malformed tree: expected {tok!r}, got {got!r}")
        pos += 1

    def gal():
        nonlocal pos
        body = []
        while pos < len(toks) and toks[pos] != ")":
            if toks[pos] != "|":
                body.append(toks[pos])
            pos += 1
        if len(body) < 2:
            raise InputError("malformed tree: coloring needs 'n r' header")
        return decode(f"{body[0]} {body[1]}\n{' '.join(body[2:])}\n")

    def node():
        nonlocal pos
        expect("(")
        if pos >= len(toks):
            raise InputError("malformed tree: unexpected end")
        head = toks[pos]
        pos += 1
        if head == "leaf":
            out = Leaf(gal())
        elif head == "prod":
            a = node()
            b = node()
            out = Prod(a, b)
        elif head == "sub":
            expect("(")
            expect("q")
            q = gal()
            expect(")")
            kids = []
            while pos < len(toks) and toks[pos] == "(":
                expect("(")
                expect("child")
                kids.append(node())
                expect(")")
            out = Sub(q, tuple(kids))
        else:
            raise InputError(f"malformed tree: unknown node {head!r}")
        expect(")")
        return out

    tree = node()
    if pos != len(toks):
        raise InputError("malformed tree: trailing tokens")
    return tree


# random generator ----------------------------------------------------------------

def random_gallai(n: int, r: int, seed: int, *, max_parts: int = 8, shuffle: bool = True) -> EdgeColoring:
    """Random Gallai r-coloring of K_n by recursive substitution.

    Each block of size >= 2 is split into t in [2, min(size, max_parts)] parts
    by a uniform random composition, joined by a random 2-coloring on a random
    color pair.  Vertex labels are finally permuted at random.  Randomness comes
    from ``numpy.random.default_rng(seed)`` (PCG64).
    """
    if n < 1:
        raise InputError("n must be positive")
    if r < 1:
        raise InputError("r must be positive")
    rng = np.random.default_rng(seed)
    m = np.zeros((n, n), dtype=np.uint8)
    stack = [(0, n)]
    while stack:
        lo, hi = stack.pop()
        size = hi - lo
        if size < 2:
            continue
        t = int(rng.integers(2, min(size, max_parts) + 1))
        cuts = np.sort(rng.choice(np.arange(1, size), size=t - 1, replace=False)) + lo
        bounds = [lo, *cuts.tolist(), hi]
        if r == 1:
            pair = (1, 1)
        else:
            pair = tuple(int(c) + 1 for c in rng.choice(r, size=2, replace=False))
        for i in range(t):
            for j in range(i + 1, t):
                c = pair[int(rng.integers(0, 2))]
                m[bounds[i]:bounds[i + 1], bounds[j]:bounds[j + 1]] = c
                m[bounds[j]:bounds[j + 1], bounds[i]:bounds[i + 1]] = c
        for i in range(t):
            stack.append((bounds[i], bounds[i + 1]))
    if shuffle and n > 1:
        perm = rng.permutation(n)
        m = m[np.ix_(perm, perm)]
    return EdgeColoring(n, r, m, validate=False)


def random_coloring(n: int, r: int, seed: int) -> EdgeColoring:
    """Uniformly random r-coloring (not necessarily Gallai)."""
    rng = np.random.default_rng(seed)
    flat = rng.integers(1, r + 1, size=n * (n - 1) // 2)
    return EdgeColoring.from_flat(n, r, flat)


def random_two_coloring(t: int, colors: tuple[int, int], r: int, rng: np.random.Generator) -> EdgeColoring:
    flat = np.where(rng.integers(0, 2, size=t * (t - 1) // 2) == 0, colors[0], colors[1])
    return EdgeColoring.from_flat(t, r, flat)
