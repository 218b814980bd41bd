"""Maximal planar graphs with rotation systems, and their vertex truncations.

A ``Triangulation`` on vertices ``0..m-1`` stores, for every vertex, the
counter-clockwise cyclic order of its neighbours.  Faces are traced with the
rule ``(u, v) -> (v, succ_v(u))``.

Truncating a triangulation replaces vertex ``i`` by a cycle on its darts
``(i, j)``; the result is the cubic "cluster" graph on ``6m - 12`` vertices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np


class InvalidTriangulation(ValueError):
    pass


@dataclass(frozen=True)
class Triangulation:
    rotation: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.rotation)

    @cached_property
    def _succ(self) -> list[dict[int, int]]:
        return [
            {r[t]: r[(t + 1) % len(r)] for t in range(len(r))} for r in self.rotation
        ]

    def succ(self, v: int, u: int) -> int:
        """Neighbour following ``u`` counter-clockwise around ``v``."""
        return self._succ[v][u]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def edges(self) -> list[tuple[int, int]]:
        return sorted((i, j) for i, r in enumerate(self.rotation) for j in r if i < j)

    def darts(self) -> list[tuple[int, int]]:
        return sorted((i, j) for i, r in enumerate(self.rotation) for j in r)

    def faces(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for d in self.darts():
            if d in seen:
                continue
            face = []
            u, v = d
            while (u, v) not in seen:
                seen.add((u, v))
                face.append(u)
                u, v = v, self.succ(v, u)
            out.append(tuple(face))
        return out

    def validate(self) -> None:
        m = self.m
        if m < 4:
            raise InvalidTriangulation(f"need at least 4 vertices, got {m}")
        nbrs = []
        for i, r in enumerate(self.rotation):
            s = set(r)
            if len(s) != len(r):
                raise InvalidTriangulation(f"vertex {i}: repeated neighbour in rotation {r}")
            if i in s or not s <= set(range(m)):
                raise InvalidTriangulation(f"vertex {i}: bad neighbour in rotation {r}")
            if not 3 <= len(r) <= m - 1:
                raise InvalidTriangulation(f"vertex {i}: degree {len(r)} outside [3, {m - 1}]")
            nbrs.append(s)
        for i, s in enumerate(nbrs):
            for j in s:
                if i not in nbrs[j]:
                    raise InvalidTriangulation(f"edge {i}-{j} is not symmetric")
        n_edges = sum(len(s) for s in nbrs) // 2
        if n_edges != 3 * m - 6:
            raise InvalidTriangulation(f"{n_edges} edges, expected {3 * m - 6}")
        faces = self.faces()
        if len(faces) != 2 * m - 4 or any(len(f) != 3 for f in faces):
            raise InvalidTriangulation(
                f"rotation system gives faces of lengths {sorted(len(f) for f in faces)}, "
                f"expected {2 * m - 4} triangles"
            )

    def to_text(self) -> str:
        """Rotation-system text, one line ``i: j1 j2 ... jd`` per vertex, 1-based."""
        return "".join(
            f"{i + 1}: {' '.join(str(j + 1) for j in r)}\n" for i, r in enumerate(self.rotation)
        )

    @classmethod
    def from_text(cls, text: str) -> "Triangulation":
        rows = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            head, sep, tail = line.partition(":")
            try:
                if not sep:
                    raise ValueError
                i = int(head)
                nb = tuple(int(t) - 1 for t in tail.split())
            except ValueError:
                raise InvalidTriangulation(f"line {lineno}: expected 'i: j1 j2 ...', got {line!r}")
            if i in rows:
                raise InvalidTriangulation(f"line {lineno}: vertex {i} listed twice")
            rows[i] = nb
        if sorted(rows) != list(range(1, len(rows) + 1)):
            raise InvalidTriangulation("vertices must be labelled 1..m")
        h = cls(tuple(rows[i] for i in range(1, len(rows) + 1)))
        h.validate()
        return h


def _k4_rotation() -> list[list[int]]:
    # outer triangle 0, 1, 2 (counter-clockwise) with 3 in the middle
    return [[1, 3, 2], [2, 3, 0], [0, 3, 1], [0, 1, 2]]


def stacked_triangulation(m: int, seed=0) -> Triangulation:
    """Random stacked triangulation on ``m`` vertices.

    Starting from K4, each new vertex is stacked into a uniformly chosen face.
    Deterministic for fixed ``(m, seed)``.
    """
    if m < 4:
        raise ValueError(f"a triangulation needs m >= 4 vertices, got {m}")
    rng = np.random.default_rng(seed)
    rot = _k4_rotation()
    faces = list(Triangulation(tuple(map(tuple, rot))).faces())
    for x in range(4, m):
        f = int(rng.integers(len(faces)))
        a, b, c = faces[f]
        # face traced a -> b -> c: the wedge at b runs from a to c, etc.
        rot[b].insert(rot[b].index(a) + 1, x)
        rot[c].insert(rot[c].index(b) + 1, x)
        rot[a].insert(rot[a].index(c) + 1, x)
        rot.append([a, c, b])
        faces[f] = (a, b, x)
        faces.extend([(b, c, x), (c, a, x)])
    return Triangulation(tuple(map(tuple, rot)))


def degree_profile(h: Triangulation) -> list[int]:
    return [len(r) for r in h.rotation]


@dataclass(frozen=True)
class ClusterGraph:
    """Truncation of a triangulation: one vertex per dart ``(i, j)``.

    Darts are indexed in sorted order.  ``rev[d]`` is the reverse dart and
    ``prev[d]``/``next[d]`` its neighbours on the truncation cycle around the
    dart's tail.
    """

    base: Triangulation
    darts: tuple[tuple[int, int], ...]
    rev: np.ndarray
    prev: np.ndarray
    next: np.ndarray
    index: dict = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.darts)

    @property
    def tail(self) -> np.ndarray:
        return np.array([i for i, _ in self.darts], dtype=np.int64)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted pairs of dart indices: reverse-dart edges, then cycle edges."""
        out = set()
        for d in range(self.n):
            for e in (self.rev[d], self.next[d]):
                out.add((min(d, int(e)), max(d, int(e))))
        return sorted(out)

    def adjacency(self) -> np.ndarray:
        return np.stack([self.rev, self.prev, self.next], axis=1)


def truncate(h: Triangulation) -> ClusterGraph:
    h.validate()
    darts = tuple(h.darts())
    index = {d: t for t, d in enumerate(darts)}
    rev = np.array([index[(j, i)] for i, j in darts], dtype=np.int64)
    nxt = np.array([index[(i, h.succ(i, j))] for i, j in darts], dtype=np.int64)
    prv = np.empty_like(nxt)
    prv[nxt] = np.arange(len(darts))
    return ClusterGraph(h, darts, rev, prv, nxt, index)
