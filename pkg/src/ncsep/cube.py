"""The m-cube graph, Harper's vertex-isoperimetric order, and level-set separators.

Vertices of the m-cube are stored as Python ints: coordinate ``i`` (0-based)
is bit ``i``.  The weight of a vertex is its number of 1-bits.

Harper order lists vertices by weight, and inside a weight layer
lexicographically on the bit word read from coordinate 0 upwards with 1
ordered before 0.  Equivalently, the 1-positions of a layer-k vertex are the
k-subsets of ``range(m)`` in ``itertools.combinations`` order.  Initial
segments of this order minimise the vertex boundary ``|N(S)|`` among all sets
of the same size.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import ceil, comb

import numpy as np

from . import _kernels

MAX_CUBE_DIM = 62
# Materialised adjacency / full profiles beyond this are not attempted.
MAX_DENSE_DIM = 26
BRUTEFORCE_MAX_DIM = 4


class InfeasibleError(ValueError):
    """Raised when an exhaustive computation is too large to run."""


def weight(v: int) -> int:
    return v.bit_count()


def bits(v: int, m: int) -> tuple[int, ...]:
    """Bit word of ``v`` as a tuple, coordinate 0 first."""
    return tuple((v >> i) & 1 for i in range(m))


def from_bits(word) -> int:
    v = 0
    for i, b in enumerate(word):
        if b not in (0, 1):
            raise ValueError(f"not a bit: {b!r}")
        v |= b << i
    return v


def _check_dim(m: int, limit: int = MAX_CUBE_DIM) -> None:
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise ValueError(f"cube dimension must be a positive integer, got {m!r}")
    if m > limit:
        raise ValueError(f"cube dimension {m} exceeds the supported limit {limit}")


@dataclass(frozen=True)
class HypercubeGraph:
    """Implicit graph of the m-cube: ``u ~ v`` iff they differ in one bit."""

    m: int

    def __post_init__(self):
        _check_dim(self.m)

    @property
    def n(self) -> int:
        return 1 << self.m

    @property
    def n_edges(self) -> int:
        return self.m << (self.m - 1)

    def has_edge(self, u: int, v: int) -> bool:
        x = u ^ v
        return 0 <= u < self.n and 0 <= v < self.n and x != 0 and x & (x - 1) == 0

    def neighbors(self, v: int) -> list[int]:
        return [v ^ (1 << i) for i in range(self.m)]

    def edges(self):
        """Yield each edge once as ``(u, v, direction)`` with bit ``direction`` clear in ``u``."""
        for i in range(self.m):
            bit = 1 << i
            for u in range(self.n):
                if not u & bit:
                    yield u, u | bit, i

    @property
    def adj(self) -> np.ndarray:
        if self.m > MAX_DENSE_DIM:
            raise InfeasibleError(f"dense adjacency for m={self.m} is too large")
        v = np.arange(self.n, dtype=np.int64)[:, None]
        return v ^ (np.int64(1) << np.arange(self.m, dtype=np.int64))[None, :]

    def edge_array(self) -> np.ndarray:
        adj = self.adj
        u = np.repeat(np.arange(self.n, dtype=np.int64), self.m)
        w = adj.ravel()
        keep = u < w
        return np.stack([u[keep], w[keep]], axis=1)


def cube_graph(m: int) -> HypercubeGraph:
    return HypercubeGraph(m)


def layer(m: int, k: int) -> list[int]:
    """Weight-k vertices in Harper (lexicographic, 1-first) order."""
    return [sum(1 << i for i in c) for c in combinations(range(m), k)]


def harper_order(m: int):
    """Iterate over all vertices of the m-cube in Harper order."""
    for k in range(m + 1):
        yield from layer(m, k)


def _split_size(m: int, s: int) -> tuple[int, int]:
    """Return ``(k, r)``: the segment is all layers ``< k`` plus ``r`` vertices of layer ``k``."""
    k = 0
    while k <= m and s >= comb(m, k):
        s -= comb(m, k)
        k += 1
    return k, s


def _check_size(m: int, s: int) -> None:
    if not 0 <= s <= 1 << m:
        raise ValueError(f"segment size {s} outside [0, 2^{m}]")


def harper_initial_segment(m: int, s: int) -> list[int]:
    """First ``s`` vertices of the m-cube in Harper order."""
    _check_dim(m, MAX_DENSE_DIM)
    _check_size(m, s)
    k, r = _split_size(m, s)
    out = [v for j in range(k) for v in layer(m, j)]
    if r:
        out.extend(sum(1 << i for i in c) for c, _ in zip(combinations(range(m), k), range(r)))
    return out


@lru_cache(maxsize=None)
def _upper_shadow(m: int, k: int, r: int) -> int:
    # Size of the upper shadow of the first r k-subsets of an m-set in lex order.
    if r == 0 or k >= m:
        return 0
    if k == 0:
        return m
    with_first = comb(m - 1, k - 1)
    if r <= with_first:
        return _upper_shadow(m - 1, k - 1, r)
    return comb(m - 1, k) + _upper_shadow(m - 1, k, r - with_first)


def harper_boundary(m: int, s: int) -> int:
    """``|N(S)|`` for the Harper initial segment ``S`` of size ``s``.

    The neighbourhood of layers ``< k`` plus the first ``r`` vertices of layer
    ``k`` is the rest of layer ``k`` together with the upper shadow of those
    ``r`` vertices, and the upper shadow of a lex initial segment has a short
    recursive count.
    """
    _check_dim(m)
    _check_size(m, s)
    if s == 0 or s == 1 << m:
        return 0
    k, r = _split_size(m, s)
    return comb(m, k) - r + _upper_shadow(m, k, r)


def neighborhood(m: int, vertices) -> set[int]:
    """Vertex boundary ``N(S)`` computed by direct expansion."""
    s = set(vertices)
    out = set()
    for v in s:
        for i in range(m):
            w = v ^ (1 << i)
            if w not in s:
                out.add(w)
    return out


@lru_cache(maxsize=8)
def _profile_cached(m: int) -> np.ndarray:
    prof = _kernels.harper_profile(m)
    prof.setflags(write=False)
    return prof


@dataclass(frozen=True)
class HarperProfile:
    """``boundary[s] = |N(S_s)|`` for every Harper segment size ``s`` in ``[0, 2^m]``."""

    m: int
    boundary: np.ndarray

    def __getitem__(self, s: int) -> int:
        return int(self.boundary[s])


def harper_profile(m: int) -> HarperProfile:
    _check_dim(m, MAX_DENSE_DIM)
    return HarperProfile(m, _profile_cached(m))


def min_boundary_bruteforce(m: int, s: int) -> int:
    """Exact minimum of ``|N(S)|`` over all ``s``-subsets of the m-cube, by enumeration."""
    _check_dim(m)
    if m > BRUTEFORCE_MAX_DIM:
        raise InfeasibleError(
            f"exhaustive enumeration is limited to m <= {BRUTEFORCE_MAX_DIM}, got m={m}"
        )
    _check_size(m, s)
    n = 1 << m
    closed = [(1 << v) | sum(1 << (v ^ (1 << i)) for i in range(m)) for v in range(n)]
    best = n
    for subset in combinations(range(n), s):
        mask = 0
        grown = 0
        for v in subset:
            mask |= 1 << v
            grown |= closed[v]
        b = (grown & ~mask).bit_count()
        if b < best:
            best = b
            if best == 0:
                break
    return best if s else 0


def _as_fraction(c) -> Fraction:
    c = Fraction(c)
    if not 0 < c < Fraction(1, 2):
        raise ValueError(f"separation constant must lie in (0, 1/2), got {c}")
    return c


def cube_separator_lower_bound(m: int, c) -> int:
    """Smallest ``|C|`` any ``(A, B, C)`` separator of ``C_m`` with constant ``c`` can have.

    For such a separator ``N(A) ⊆ C`` with ``c·2^m <= |A| <= 2^(m-1)``, so the
    minimum of the Harper boundary over that window is a valid bound.  The
    window is scanned explicitly since the profile is not monotone.
    """
    c = _as_fraction(c)
    _check_dim(m, MAX_DENSE_DIM)
    lo = ceil(c * (1 << m))
    hi = 1 << (m - 1)
    if lo > hi:
        raise ValueError(f"no admissible segment sizes for m={m}, c={c}")
    prof = harper_profile(m).boundary
    return int(prof[lo : hi + 1].min())


def level_set_separator(m: int, k: int):
    """Separator of ``C_m`` whose middle part is the weight-k layer."""
    from .separators import Separator

    _check_dim(m, MAX_DENSE_DIM)
    if not 1 <= k <= m - 1:
        raise ValueError(f"level {k} outside [1, {m - 1}]")
    w = np.array([weight(v) for v in range(1 << m)])
    below = np.flatnonzero(w < k)
    above = np.flatnonzero(w > k)
    mid = np.flatnonzero(w == k)
    a, b = (below, above) if len(below) <= len(above) else (above, below)
    return Separator(
        a, b, mid, Fraction(len(a), 1 << m), {"method": "level-set", "level": k}
    )
