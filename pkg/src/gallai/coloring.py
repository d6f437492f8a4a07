"""Edge-colorings of complete graphs, rainbow triangles, witnesses, serialization.

Vertices are 0-based, colors are 1-based.  A coloring stores a symmetric
``uint8`` matrix with a zero diagonal; the canonical flat form lists the pairs
(0,1), (0,2), ..., (n-2, n-1) in row-major upper-triangular order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

ColorSet = frozenset

MAX_COLORS = 255


def color_set(colors: Iterable[int], r: int | None = None) -> frozenset[int]:
    cs = frozenset(int(c) for c in colors)
    if r is not None and any(c < 1 or c > r for c in cs):
        raise InputError(f"color set {sorted(cs)} is not a subset of [1, {r}]")
    return cs


def color_pairs(r: int) -> list[frozenset[int]]:
    """All 2-subsets of [r] in lexicographic order."""
    return [frozenset(p) for p in combinations(range(1, r + 1), 2)]


def color_subsets(r: int, s: int) -> list[frozenset[int]]:
    return [frozenset(c) for c in combinations(range(1, r + 1), s)]


def fmt_colors(cs: Iterable[int]) -> str:
    return ",".join(str(c) for c in sorted(cs))


class EdgeColoring:
    """An r-coloring of the edges of K_n.  Immutable."""

    def __init__(self, n: int, r: int, matrix: np.ndarray, *, validate: bool = True):
        if n < 1:
            raise InputError("a coloring needs at least one vertex")
        if r < 1 or r > MAX_COLORS:
            raise InputError(f"palette size must lie in [1, {MAX_COLORS}], got {r}")
        m = np.asarray(matrix, dtype=np.uint8)
        if validate:
            if m.shape != (n, n):
                raise InputError(f"expected a {n}x{n} color matrix, got shape {m.shape}")
            if np.any(np.diagonal(m) != 0):
                raise InputError("diagonal entries must be 0")
            if not np.array_equal(m, m.T):
                raise InputError("color matrix must be symmetric")
            if n > 1:
                off = m[~np.eye(n, dtype=bool)]
                lo, hi = int(off.min()), int(off.max())
                if lo < 1 or hi > r:
                    bad = hi if hi > r else lo
                    raise InputError(f"color {bad} outside the palette [1, {r}]")
        m.setflags(write=False)
        self.n = n
        self.r = r
        self._m = m

    # construction -------------------------------------------------------
    @classmethod
    def from_flat(cls, n: int, r: int, colors: Sequence[int]) -> "EdgeColoring":
        expected = n * (n - 1) // 2
        if len(colors) != expected:
            raise InputError(f"expected {expected} edge colors for n={n}, got {len(colors)}")
        flat = np.asarray(colors, dtype=np.int64)
        if expected and (flat.min() < 1 or flat.max() > r):
            bad = int(flat.max()) if flat.max() > r else int(flat.min())
            raise InputError(f"color {bad} exceeds the palette r={r}" if bad > r
                             else f"color {bad} is not a positive color")
        m = np.zeros((n, n), dtype=np.uint8)
        iu = np.triu_indices(n, 1)
        m[iu] = flat
        m.T[iu] = flat
        return cls(n, r, m, validate=False)

    @classmethod
    def from_function(cls, n: int, r: int, fn) -> "EdgeColoring":
        return cls.from_flat(n, r, [fn(u, v) for u, v in combinations(range(n), 2)])

    @classmethod
    def monochromatic(cls, n: int, r: int, color: int = 1) -> "EdgeColoring":
        if not 1 <= color <= r:
            raise InputError(f"color {color} outside [1, {r}]")
        m = np.full((n, n), color, dtype=np.uint8)
        np.fill_diagonal(m, 0)
        return cls(n, r, m, validate=False)

    # access ---------------------------------------------------------------
    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @cached_property
    def flat(self) -> np.ndarray:
        return self._m[np.triu_indices(self.n, 1)].copy()

    @cached_property
    def rows(self) -> list[list[int]]:
        """Plain nested lists; fast element access for small colorings."""
        return self._m.tolist()

    def color(self, u: int, v: int) -> int:
        if u == v:
            raise InputError("a vertex has no loop color")
        return int(self._m[u, v])

    def submatrix(self, vertices: Sequence[int]) -> np.ndarray:
        idx = np.asarray(vertices, dtype=np.int64)
        return self._m[np.ix_(idx, idx)]

    def restrict(self, vertices: Sequence[int]) -> "EdgeColoring":
        """Induced coloring on ``vertices``, relabelled 0..k-1 in the given order."""
        if len(vertices) == 0:
            raise InputError("cannot restrict to an empty vertex set")
        return EdgeColoring(len(vertices), self.r, self.submatrix(vertices), validate=False)

    def with_palette(self, r: int) -> "EdgeColoring":
        return EdgeColoring(self.n, r, self._m, validate=True)

    @cached_property
    def used_colors(self) -> frozenset[int]:
        if self.n < 2:
            return frozenset()
        return frozenset(int(c) for c in np.unique(self.flat))

    def adjacency(self, colors: Iterable[int]) -> list[int]:
        """Bitmask adjacency of the graph whose edges have colors in ``colors``."""
        cs = frozenset(colors)
        out = [0] * self.n
        for c in cs:
            masks = self.color_masks[c] if 1 <= c <= self.r else None
            if masks is None:
                continue
            for v in range(self.n):
                out[v] |= masks[v]
        return out

    @cached_property
    def color_masks(self) -> dict[int, list[int]]:
        """Per-color bitmask adjacency, materialized once."""
        out: dict[int, list[int]] = {}
        n = self.n
        for c in range(1, self.r + 1):
            eq = self._m == c
            if not eq.any():
                out[c] = [0] * n
                continue
            packed = np.packbits(eq, axis=1, bitorder="little")
            out[c] = [int.from_bytes(row.tobytes(), "little") for row in packed]
        return out

    # comparison -------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeColoring):
            return NotImplemented
        return self.n == other.n and self.r == other.r and np.array_equal(self._m, other._m)

    def __hash__(self) -> int:
        return hash((self.n, self.r, self._m.tobytes()))

    def __repr__(self) -> str:
        return f"EdgeColoring(n={self.n}, r={self.r})"


@dataclass(frozen=True)
class Witness:
    """A vertex set claimed to be subchromatic for ``colors``."""

    vertices: tuple[int, ...]
    colors: frozenset[int]

    def __post_init__(self):
        vs = tuple(sorted(int(v) for v in self.vertices))
        if len(set(vs)) != len(vs):
            raise InputError("witness vertices must be distinct")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "colors", frozenset(self.colors))

    @property
    def size(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def to_json(self) -> dict:
        return {"colors": sorted(self.colors), "size": self.size, "vertices": list(self.vertices)}


def _rainbow_small(F: EdgeColoring):
    rows = F.rows
    n = F.n
    for u in range(n):
        ru = rows[u]
        for v in range(u + 1, n):
            a = ru[v]
            rv = rows[v]
            for w in range(v + 1, n):
                b = ru[w]
                if a != b:
                    c = rv[w]
                    if c != a and c != b:
                        return (u, v, w)
    return None


def find_rainbow_triangle(F: EdgeColoring):
    """Lexicographically least rainbow triple (u, v, w), or None for a Gallai coloring."""
    n = F.n
    if n < 3:
        return None
    if n <= 40:
        return _rainbow_small(F)
    m = F.matrix
    for u in range(n - 2):
        a = m[u, u + 1:]
        sub = m[u + 1:, u + 1:]
        bad = (a[:, None] != a[None, :]) & (sub != a[:, None]) & (sub != a[None, :])
        bad = np.triu(bad, 1)
        hits = np.flatnonzero(bad)
        if hits.size:
            k = int(hits[0])
            size = n - u - 1
            return (u, u + 1 + k // size, u + 1 + k % size)
    return None


def is_gallai(F: EdgeColoring) -> bool:
    return find_rainbow_triangle(F) is None


def check_witness(F, W: Witness) -> bool:
    """True iff every edge inside ``W.vertices`` has a color in ``W.colors``.

    ``F`` may be any coloring object exposing ``n`` and ``submatrix``.
    """
    vs = W.vertices
    if any(v < 0 or v >= F.n for v in vs):
        raise InputError(f"witness vertex out of range [0, {F.n})")
    if len(vs) < 2:
        return True
    sub = np.asarray(F.submatrix(vs))
    allowed = np.zeros(256, dtype=bool)
    for c in W.colors:
        if 0 < c < 256:
            allowed[c] = True
    allowed[0] = True  # diagonal
    return bool(allowed[sub].all())


# serialization -------------------------------------------------------------

def encode(F: EdgeColoring) -> str:
    """Canonical ``.gal`` text: header line then the flat color list."""
    return f"{F.n} {F.r}\n" + " ".join(str(int(c)) for c in F.flat) + "\n"


def decode(text: str) -> EdgeColoring:
    lines = text.strip("\n").split("\n") if text.strip() else []
    if not lines:
        raise InputError("empty input")
    header = lines[0].split()
    if len(header) != 2:
        raise InputError("malformed header: expected 'n r'")
    try:
        n, r = int(header[0]), int(header[1])
    except ValueError as exc:
        raise InputError("malformed header: expected two integers") from exc
    if n < 1 or r < 1:
        raise InputError("header values must be positive")
    body = " ".join(lines[1:]).split()
    try:
        colors = [int(tok) for tok in body]
    except ValueError as exc:
        raise InputError("edge colors must be integers") from exc
    return EdgeColoring.from_flat(n, r, colors)


def to_json(F: EdgeColoring) -> dict:
    return {"n": F.n, "r": F.r, "colors": [int(c) for c in F.flat]}


def from_json(obj) -> EdgeColoring:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        return EdgeColoring.from_flat(int(obj["n"]), int(obj["r"]), list(obj["colors"]))
    except (KeyError, TypeError) as exc:
        raise InputError("JSON coloring needs keys n, r, colors") from exc


def load(path: str) -> EdgeColoring:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return from_json(text)
    return decode(text)
