"""Separators of the cluster graphs: construction, verification, and certified lower bounds.

A separator ``(A, B, C)`` with constant ``c`` partitions the vertices so that
no edge joins ``A`` and ``B`` and ``c·n <= |A| <= |B| <= (1-c)·n``.

The lower-bound certificate maps a separator to a labelling of the m-cube
(cluster entirely in ``A`` -> a, entirely in ``B`` -> b, otherwise c) and
combines two facts: every c-cluster holds a vertex of ``C``; and either many
clusters are labelled c, or the a/b labels form a separator of the cube,
whose middle part is bounded below by Harper's theorem.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .cube import HypercubeGraph, cube_separator_lower_bound, level_set_separator

A_LABEL, B_LABEL, C_LABEL = 0, 1, 2
DEFAULT_C = Fraction(1, 3)
_MAX_LISTED = 20


class InvalidSeparator(ValueError):
    pass


class CertificateError(AssertionError):
    """A certificate contradicts its own separator: an implementation bug."""


def _frac(c) -> Fraction:
    c = Fraction(c)
    if not 0 < c < Fraction(1, 2):
        raise ValueError(f"separation constant must lie in (0, 1/2), got {c}")
    return c


@dataclass
class Separator:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    c: Fraction = DEFAULT_C
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.A = np.asarray(self.A, dtype=np.int64).ravel()
        self.B = np.asarray(self.B, dtype=np.int64).ravel()
        self.C = np.asarray(self.C, dtype=np.int64).ravel()
        self.c = Fraction(self.c)

    @classmethod
    def from_labels(cls, labels: np.ndarray, c, provenance=None) -> "Separator":
        """Build from a per-vertex label array, orienting so that ``|A| <= |B|``."""
        a = np.flatnonzero(labels == A_LABEL)
        b = np.flatnonzero(labels == B_LABEL)
        if len(a) > len(b):
            a, b = b, a
        return cls(a, b, np.flatnonzero(labels == C_LABEL), c, dict(provenance or {}))

    @property
    def size(self) -> int:
        return len(self.C)

    def sizes(self) -> tuple[int, int, int]:
        return len(self.A), len(self.B), len(self.C)

    def labels(self, n: int) -> np.ndarray:
        lab = np.full(n, -1, dtype=np.int8)
        lab[self.A] = A_LABEL
        lab[self.B] = B_LABEL
        lab[self.C] = C_LABEL
        return lab

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "c": str(self.c),
            "sizes": {"A": len(self.A), "B": len(self.B), "C": len(self.C)},
            "A": np.sort(self.A).tolist(),
            "B": np.sort(self.B).tolist(),
            "C": np.sort(self.C).tolist(),
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Separator":
        try:
            return cls(
                np.array(data["A"], dtype=np.int64),
                np.array(data["B"], dtype=np.int64),
                np.array(data["C"], dtype=np.int64),
                Fraction(data.get("c", DEFAULT_C)),
                data.get("provenance", {}),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidSeparator(f"malformed separator data: {exc}") from exc


@dataclass
class VerificationReport:
    n: int
    c: Fraction
    sizes: tuple[int, int, int]
    violations: list[str]
    ab_edges: list[tuple[int, int]]
    n_ab_edges: int

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid

    def summary(self) -> str:
        a, b, cc = self.sizes
        head = f"n={self.n} |A|={a} |B|={b} |C|={cc} c={self.c}"
        if self.valid:
            return f"valid separator: {head}"
        return "INVALID separator: " + head + "".join(f"\n  - {v}" for v in self.violations)

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "n": self.n,
            "c": str(self.c),
            "sizes": dict(zip("ABC", self.sizes)),
            "violations": self.violations,
            "ab_edges": [list(e) for e in self.ab_edges],
            "n_ab_edges": self.n_ab_edges,
        }


def verify_separator(g, sep: Separator, c=None) -> VerificationReport:
    """Check partition, the absence of A-B edges (full scan) and balance; never raises."""
    n = g.n
    c = Fraction(sep.c if c is None else c)
    sizes = sep.sizes()
    viol = []
    ab_list: list[tuple[int, int]] = []
    n_ab = 0
    parts = {"A": sep.A, "B": sep.B, "C": sep.C}
    for name, idx in parts.items():
        bad = idx[(idx < 0) | (idx >= n)]
        if len(bad):
            viol.append(f"{name} contains {len(bad)} ids outside [0, {n}): {bad[:_MAX_LISTED].tolist()}")
    if viol:
        return VerificationReport(n, c, sizes, viol, ab_list, n_ab)

    count = np.bincount(np.concatenate([sep.A, sep.B, sep.C]), minlength=n)
    dup = np.flatnonzero(count > 1)
    missing = np.flatnonzero(count == 0)
    if len(dup):
        viol.append(f"{len(dup)} vertices in more than one part: {dup[:_MAX_LISTED].tolist()}")
    if len(missing):
        viol.append(f"{len(missing)} vertices in no part: {missing[:_MAX_LISTED].tolist()}")

    in_b = np.zeros(n, dtype=bool)
    in_b[sep.B] = True
    if len(sep.A):
        rows = g.adj[sep.A]
        hit = in_b[rows]
        r, s = np.nonzero(hit)
        n_ab = len(r)
        ab_list = [(int(sep.A[i]), int(rows[i, j])) for i, j in zip(r[:_MAX_LISTED], s[:_MAX_LISTED])]
        if n_ab:
            shown = ", ".join(f"{u}-{v}" for u, v in ab_list)
            viol.append(f"{n_ab} edges join A and B, e.g. {shown}")

    a, b, _ = sizes
    if not 0 < c < Fraction(1, 2):
        viol.append(f"separation constant {c} not in (0, 1/2)")
    if a < c * n:
        viol.append(f"|A|={a} < c*n={float(c * n):g}")
    if a > b:
        viol.append(f"|A|={a} > |B|={b}")
    if b > (1 - c) * n:
        viol.append(f"|B|={b} > (1-c)*n={float((1 - c) * n):g}")
    return VerificationReport(n, c, sizes, viol, ab_list, n_ab)


def _require_valid(g, sep: Separator) -> None:
    rep = verify_separator(g, sep)
    if not rep.valid:
        raise InvalidSeparator(rep.summary())


# -- constructions -----------------------------------------------------------

def _crossing(g) -> tuple[np.ndarray, np.ndarray]:
    """Per vertex: its cluster, and the cube direction of its inter-cluster edge."""
    cl = g.cluster_ids()
    x = cl ^ (g.adj[:, 0] // g.fiber)
    return cl, np.log2(x).astype(np.int64)


def coordinate_cut_separator(g, i: int) -> Separator:
    """Split clusters by cube coordinate ``i`` (0-based); ``C`` = crossing-edge endpoints on the 1-side."""
    if not 0 <= i < g.m:
        raise ValueError(f"direction {i} outside [0, {g.m})")
    cl, dirs = _crossing(g)
    side = (cl >> i) & 1
    labels = np.where(side == 1, A_LABEL, B_LABEL).astype(np.int8)
    labels[(side == 1) & (dirs == i)] = C_LABEL
    # the 1-side loses |C| vertices, so it is the smaller part
    return Separator(
        np.flatnonzero(labels == A_LABEL),
        np.flatnonzero(labels == B_LABEL),
        np.flatnonzero(labels == C_LABEL),
        DEFAULT_C,
        {"method": "coordinate", "direction": i},
    )


def coordinate_cut_sizes(g) -> np.ndarray:
    """``|C|`` of the coordinate cut in every direction."""
    cl, dirs = _crossing(g)
    return np.bincount(dirs, minlength=g.m) // 2


def predicted_cut_sizes(blueprint, k: int = 0) -> list[int]:
    """Coordinate-cut sizes ``2^(m-1+k) * deg(i)`` read off the blueprint alone."""
    m = blueprint.m
    return [len(r) << (m - 1 + k) for r in blueprint.rotation]


def best_coordinate_cut(g) -> Separator:
    return coordinate_cut_separator(g, int(np.argmin(coordinate_cut_sizes(g))))


# -- cube labellings ---------------------------------------------------------

@dataclass
class CubeLabeling:
    m: int
    codes: np.ndarray  # uint8 per cube vertex: 0 = a, 1 = b, 2 = c

    def counts(self) -> dict[str, int]:
        bc = np.bincount(self.codes, minlength=3)
        return {"a": int(bc[0]), "b": int(bc[1]), "c": int(bc[2])}

    def ab_edges(self) -> list[tuple[int, int]]:
        out = []
        v = np.arange(1 << self.m)
        for i in range(self.m):
            w = v ^ (1 << i)
            bad = (self.codes == 0) & (self.codes[w] == 1)
            out.extend(zip(v[bad].tolist(), w[bad].tolist()))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, CubeLabeling)
            and self.m == other.m
            and np.array_equal(self.codes, other.codes)
        )


def quotient_labeling(g, sep: Separator) -> CubeLabeling:
    _require_valid(g, sep)
    lab = sep.labels(g.n).reshape(g.n_clusters, g.fiber)
    codes = np.full(g.n_clusters, 2, dtype=np.uint8)
    codes[(lab == A_LABEL).all(axis=1)] = 0
    codes[(lab == B_LABEL).all(axis=1)] = 1
    out = CubeLabeling(g.m, codes)
    if out.ab_edges():
        raise CertificateError("quotient labelling has an a-b cube edge")
    return out


def labeling_from_cube_separator(m: int, sep: Separator) -> CubeLabeling:
    _require_valid(HypercubeGraph(m), sep)
    codes = sep.labels(1 << m).astype(np.uint8)
    return CubeLabeling(m, codes)


def lift_cube_separator(g, labeling: CubeLabeling, c=None) -> Separator:
    """Blow each cube label up to its whole cluster.

    With ``c=None`` the separator carries its natural balance ``|A|/n``.
    """
    if labeling.m != g.m:
        raise ValueError(f"labelling is for m={labeling.m}, graph has m={g.m}")
    if labeling.ab_edges():
        raise InvalidSeparator("labelling has an a-b cube edge")
    cnt = labeling.counts()
    if cnt["a"] == 0 or cnt["b"] == 0:
        raise InvalidSeparator(f"unbalanced labelling {cnt}: both sides must be non-empty")
    lab = np.repeat(labeling.codes.astype(np.int8), g.fiber)
    small = min(cnt["a"], cnt["b"])
    if c is None:
        c = Fraction(small * g.fiber, g.n)
    sep = Separator.from_labels(lab, c, {"method": "lift"})
    rep = verify_separator(g, sep)
    if not rep.valid:
        raise InvalidSeparator(rep.summary())
    return sep


def level_lift_separator(g, c=DEFAULT_C) -> Separator:
    """Lift of the cheapest cube level set whose lift is ``c``-balanced.

    Falls back to the middle level at its natural balance when no level
    qualifies (small m).
    """
    c = _frac(c)
    m = g.m
    sizes = [(math.comb(m, k), k) for k in range(1, m)]
    for _, k in sorted(sizes):
        below = sum(math.comb(m, j) for j in range(k))
        if min(below, (1 << m) - below - math.comb(m, k)) >= c * (1 << m):
            lab = labeling_from_cube_separator(m, level_set_separator(m, k))
            sep = lift_cube_separator(g, lab, c)
            sep.provenance = {"method": "level-lift", "level": k}
            return sep
    k = (m + 1) // 2
    sep = lift_cube_separator(g, labeling_from_cube_separator(m, level_set_separator(m, k)))
    sep.provenance = {"method": "level-lift", "level": k, "natural_balance": str(sep.c)}
    return sep


def lift_separator_to_product(p, sep: Separator) -> Separator:
    """Separator ``(A x C_k, B x C_k, C x C_k)`` of the product graph."""
    w = np.arange(1 << p.k, dtype=np.int64)

    def up(idx):
        return ((idx[:, None] << p.k) + w[None, :]).ravel()

    return Separator(up(sep.A), up(sep.B), up(sep.C), sep.c,
                     dict(sep.provenance, product_k=p.k))


# -- certification -----------------------------------------------------------

@dataclass
class BoundCertificate:
    labeling: CubeLabeling
    c: Fraction
    c_prime: Fraction
    separator_size: int
    c_clusters: int
    linear_threshold: int
    harper_bound: int
    verdict: str  # "linear" or "harper"

    @property
    def bound(self) -> int:
        return min(self.linear_threshold, self.harper_bound)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "c": str(self.c),
            "c_prime": str(self.c_prime),
            "labels": self.labeling.counts(),
            "separator_size": self.separator_size,
            "c_clusters": self.c_clusters,
            "linear_threshold": self.linear_threshold,
            "harper_bound": self.harper_bound,
            "certified_bound": self.bound,
            "verdict": self.verdict,
        }


def universal_lower_bound(m: int, c=DEFAULT_C, c_prime=None) -> tuple[int, int]:
    """``(linear_threshold, harper_bound)`` valid for every ``c``-separator.

    If ``k`` clusters are labelled c, then ``#a >= c·2^m - k`` (a cluster not
    labelled a contributes no more than its own size to ``A``), same for b.
    So either ``k >= (c - c')·2^m``, or both label classes exceed ``c'·2^m``
    and ``k`` is at least the cube bound at ``c'``.
    """
    c = _frac(c)
    c_prime = c / 2 if c_prime is None else _frac(c_prime)
    if not c_prime < c:
        raise ValueError(f"need c' < c, got c'={c_prime}, c={c}")
    linear = math.ceil((c - c_prime) * (1 << m))
    return linear, cube_separator_lower_bound(m, c_prime)


def certify_lower_bound(g, sep: Separator, c_prime=None) -> BoundCertificate:
    c = _frac(sep.c)
    c_prime = c / 2 if c_prime is None else _frac(c_prime)
    labeling = quotient_labeling(g, sep)
    codes = labeling.codes
    k = int((codes == 2).sum())

    lab = sep.labels(g.n).reshape(g.n_clusters, g.fiber)
    has_c = (lab == C_LABEL).any(axis=1)
    if np.any((codes == 2) & ~has_c):
        raise CertificateError("a c-labelled cluster contains no separator vertex")

    linear, harper = universal_lower_bound(g.m, c, c_prime)
    cnt = labeling.counts()
    if k >= linear:
        verdict = "linear"
    else:
        verdict = "harper"
        floor_ab = c_prime * (1 << g.m)
        if cnt["a"] <= floor_ab or cnt["b"] <= floor_ab:
            raise CertificateError(f"label counts {cnt} below c'·2^m with only {k} c-clusters")
        if k < harper:
            raise CertificateError(f"{k} c-clusters beat the cube bound {harper}")
    cert = BoundCertificate(labeling, c, c_prime, sep.size, k, linear, harper, verdict)
    if not cert.bound <= k <= sep.size:
        raise CertificateError(
            f"certified bound {cert.bound} <= c-clusters {k} <= |C| {sep.size} fails"
        )
    return cert


# -- refinement --------------------------------------------------------------

def refine_separator(g, sep: Separator, passes: int = 5, seed=0) -> Separator:
    """Greedy local moves of separator vertices; never returns a larger or invalid separator."""
    _require_valid(g, sep)
    n = g.n
    labels = sep.labels(n)
    lo = math.ceil(sep.c * n)
    hi = math.floor((1 - sep.c) * n)
    rng = np.random.default_rng(seed)
    adj = np.ascontiguousarray(g.adj, dtype=np.int64)
    done = 0
    for _ in range(passes):
        before = labels.copy()
        order = rng.permutation(np.flatnonzero(labels == C_LABEL))
        _kernels.refine_pass(adj, labels, order, lo, hi)
        done += 1
        if np.array_equal(before, labels):
            break
    out = Separator.from_labels(
        labels, sep.c, dict(sep.provenance, refined=True, passes=done, seed=seed)
    )
    rep = verify_separator(g, out)
    if not rep.valid or out.size > sep.size:
        raise CertificateError("refinement produced an invalid or larger separator: " + rep.summary())
    return out


def reference_values(n: int) -> dict[str, float]:
    """Scale references with natural logarithms."""
    ln = math.log(n)
    return {"n": n, "n/ln n": n / ln, "n/ln^1.5 n": n / ln ** 1.5}
