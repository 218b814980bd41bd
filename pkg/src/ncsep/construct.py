"""Graph model of the doubly truncated neighbourly cubical polytope, and cube products.

Vertex ``(v, (i, j))`` is the dart ``(i, j)`` of the blueprint inside the
cluster of cube vertex ``v``.  Its integer id is ``v * F + d`` where ``d`` is
the dart's index in sorted order and ``F = 6m - 12`` the cluster size.

Adjacency rows have a fixed slot layout:

* slot 0: the inter-cluster edge to ``(v ^ 2^i, (i, j))``
* slot 1: the reverse dart ``(v, (j, i))``
* slots 2, 3: previous / next dart on the truncation cycle around ``i``
* slots 4.. (products only): flips of the extra cube coordinates
"""
from __future__ import annotations

from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .cube import MAX_DENSE_DIM
from .planar import ClusterGraph, Triangulation, stacked_triangulation, truncate

INTER_SLOT = 0


class _ClusteredGraph:
    m: int
    fiber: int
    degree: int

    @property
    def n(self) -> int:
        return self.fiber << self.m

    @property
    def n_edges(self) -> int:
        return self.n * self.degree // 2

    @property
    def n_clusters(self) -> int:
        return 1 << self.m

    @cached_property
    def adj(self) -> np.ndarray:
        a = self.rows(0, self.n_clusters)
        a.setflags(write=False)
        return a

    def iter_rows(self, clusters_per_chunk: int | None = None):
        """Yield ``(first_vertex, rows)`` chunks without materialising ``adj``."""
        if "adj" in self.__dict__:
            yield 0, self.adj
            return
        step = clusters_per_chunk or max(1, (1 << 20) // self.fiber)
        for c0 in range(0, self.n_clusters, step):
            c1 = min(c0 + step, self.n_clusters)
            yield c0 * self.fiber, self.rows(c0, c1)

    def cluster_of(self, vertex: int) -> int:
        if not 0 <= vertex < self.n:
            raise KeyError(f"vertex {vertex} not in graph with {self.n} vertices")
        return vertex // self.fiber

    def cluster_ids(self) -> np.ndarray:
        return np.arange(self.n, dtype=np.int64) // self.fiber

    def edge_array(self) -> np.ndarray:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        parts = []
        for start, rows in self.iter_rows():
            u = np.repeat(np.arange(start, start + len(rows), dtype=np.int64), self.degree)
            w = np.sort(rows, axis=1).ravel()
            keep = u < w
            parts.append(np.stack([u[keep], w[keep]], axis=1))
        return np.concatenate(parts)

    def is_connected(self) -> bool:
        e = self.edge_array()
        g = csr_matrix((np.ones(len(e), dtype=np.int8), (e[:, 0], e[:, 1])), shape=(self.n, self.n))
        return connected_components(g, directed=False, return_labels=False) == 1


class TruncatedCubeGraph(_ClusteredGraph):
    """4-regular graph on ``(6m - 12) 2^m`` vertices: one truncated blueprint per cube vertex."""

    degree = 4
    k = 0

    def __init__(self, m: int, blueprint: Triangulation, seed=None):
        if blueprint.m != m:
            raise ValueError(
                f"blueprint has {blueprint.m} vertices but the cube has {m} directions"
            )
        if not 4 <= m <= MAX_DENSE_DIM:
            raise ValueError(f"m must lie in [4, {MAX_DENSE_DIM}], got {m}")
        self.m = m
        self.blueprint = blueprint
        self.seed = seed
        self.cluster: ClusterGraph = truncate(blueprint)
        self.fiber = self.cluster.n

    def __repr__(self):
        return f"TruncatedCubeGraph(m={self.m}, n={self.n}, seed={self.seed})"

    def rows(self, c0: int, c1: int) -> np.ndarray:
        cl = self.cluster
        F = self.fiber
        v = np.arange(c0, c1, dtype=np.int64)[:, None]
        base = v * F
        out = np.empty((c1 - c0, F, 4), dtype=np.int64)
        out[..., 0] = (v ^ (np.int64(1) << cl.tail)[None, :]) * F + np.arange(F)
        out[..., 1] = base + cl.rev
        out[..., 2] = base + cl.prev
        out[..., 3] = base + cl.next
        return out.reshape(-1, 4)

    def vertex_id(self, v: int, dart: tuple[int, int]) -> int:
        return v * self.fiber + self.cluster.index[dart]

    def vertex_label(self, vertex: int) -> tuple[int, tuple[int, int]]:
        v = self.cluster_of(vertex)
        return v, self.cluster.darts[vertex - v * self.fiber]

    def direction_of(self) -> np.ndarray:
        """Cube direction of each vertex's inter-cluster edge."""
        return np.tile(self.cluster.tail, self.n_clusters)


class ProductGraph(_ClusteredGraph):
    """Cartesian product of a ``TruncatedCubeGraph`` with the k-cube.

    Vertex ``(b, w)`` has id ``b * 2^k + w``, so each cluster (a blueprint
    cluster times the k-cube) occupies a contiguous id range.
    """

    def __init__(self, base: TruncatedCubeGraph, k: int):
        if k < 0:
            raise ValueError(f"extra cube dimension must be >= 0, got {k}")
        self.base = base
        self.k = k
        self.m = base.m
        self.fiber = base.fiber << k
        self.degree = base.degree + k
        self.blueprint = base.blueprint
        self.seed = base.seed

    def __repr__(self):
        return f"ProductGraph(m={self.m}, k={self.k}, n={self.n})"

    def rows(self, c0: int, c1: int) -> np.ndarray:
        k = self.k
        b = self.base.rows(c0, c1)
        nb = len(b)
        w = np.arange(1 << k, dtype=np.int64)
        out = np.empty((nb, 1 << k, self.degree), dtype=np.int64)
        out[:, :, :4] = (b[:, None, :] << k) + w[None, :, None]
        ids = (np.arange(c0 * self.base.fiber, c1 * self.base.fiber, dtype=np.int64)[:, None] << k) + w
        for t in range(k):
            out[:, :, 4 + t] = ids ^ (1 << t)
        return out.reshape(-1, self.degree)

    def base_vertex(self, vertex: int) -> int:
        return vertex >> self.k


def build_ncc_graph(m: int, blueprint: Triangulation | None = None, seed=0) -> TruncatedCubeGraph:
    """Assemble the graph; a stacked blueprint from ``seed`` is used when none is given."""
    if blueprint is None:
        if m < 4:
            raise ValueError(f"m must be >= 4, got {m}")
        blueprint = stacked_triangulation(m, seed)
    else:
        seed = None
    return TruncatedCubeGraph(m, blueprint, seed)


def cartesian_product_with_cube(g: TruncatedCubeGraph, k: int) -> ProductGraph:
    return ProductGraph(g, k)


def cluster_of(g: _ClusteredGraph, vertex: int) -> int:
    return g.cluster_of(vertex)


def edge_split(g: _ClusteredGraph) -> tuple[int, int, np.ndarray]:
    """Count intra- and inter-cluster edges from the adjacency.

    Returns ``(intra, inter, per_direction)`` where ``per_direction[i]`` is the
    number of inter-cluster edges along cube direction ``i``.
    """
    e = g.edge_array()
    x = (e[:, 0] // g.fiber) ^ (e[:, 1] // g.fiber)
    inter = x != 0
    dirs = np.log2(x[inter]).astype(np.int64)
    if np.any((np.int64(1) << dirs) != x[inter]):
        raise AssertionError("inter-cluster edge joins non-adjacent cube vertices")
    return int((~inter).sum()), int(inter.sum()), np.bincount(dirs, minlength=g.m)
