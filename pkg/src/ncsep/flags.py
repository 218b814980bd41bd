"""Flag vectors ``(f0, f1, f2, f3; f03)`` of NC4(m), its vertex truncation NC4(m)'
and the subsequent edge truncation NC4(m)''.

Two independent routes are kept side by side: the published closed forms
(``flag_nc4*``), and reconstructions from the facet census and the
truncation arithmetic (``derive_*``).  ``cross_check`` compares them entry by
entry.  All arithmetic is exact Python integers.
"""
from __future__ import annotations

from dataclasses import dataclass

from .planar import Triangulation, degree_profile

MAX_M = 10_000


class FlagMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class FlagVector:
    f0: int
    f1: int
    f2: int
    f3: int
    f03: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.f0, self.f1, self.f2, self.f3, self.f03)

    @property
    def euler_residual(self) -> int:
        return self.f0 - self.f1 + self.f2 - self.f3

    def factored(self, m: int) -> tuple[int, ...] | None:
        """Entries divided by ``2^(m-2)``, or None if they are not all divisible."""
        q = 1 << (m - 2)
        t = self.as_tuple()
        if any(x % q for x in t):
            return None
        return tuple(x // q for x in t)

    def __str__(self):
        return f"({self.f0}, {self.f1}, {self.f2}, {self.f3}; {self.f03})"


@dataclass(frozen=True)
class FacetFamily:
    name: str
    count: int
    fvector: tuple[int, int, int] | None
    # polygon-size range for prism families whose f-vector is not pinned down
    k_range: tuple[int, int] | None = None


@dataclass(frozen=True)
class FacetCensus:
    families: tuple[FacetFamily, ...]

    @property
    def total(self) -> int:
        return sum(f.count for f in self.families)

    def __iter__(self):
        return iter(self.families)


def _check_m(m: int) -> None:
    if not isinstance(m, int) or m < 4:
        raise ValueError(f"m must be an integer >= 4, got {m!r}")
    if m > MAX_M:
        raise ValueError(f"m={m} exceeds the supported maximum {MAX_M}")


def _scaled(m: int, a: int, b: int, c: int, d: int, e: int) -> FlagVector:
    q = 1 << (m - 2)
    return FlagVector(a * q, b * q, c * q, d * q, e * q)


def flag_nc4(m: int) -> FlagVector:
    _check_m(m)
    return _scaled(m, 4, 2 * m, 3 * m - 6, m - 2, 8 * m - 16)


def flag_nc4_prime(m: int) -> FlagVector:
    _check_m(m)
    return _scaled(m, 4 * m, 14 * m - 24, 11 * m - 22, m + 2, 28 * m - 24)


def flag_nc4_double_prime(m: int) -> FlagVector:
    _check_m(m)
    return _scaled(m, 24 * m - 48, 48 * m - 96, 27 * m - 46, 3 * m + 2, 28 * m - 48)


def complete_cubical_flag(f0: int, f1: int) -> FlagVector:
    """Complete ``(f0, f1)`` of a cubical 4-polytope using Euler and ``f2 = 3 f3``, ``f03 = 8 f3``.

    Rejects inputs that no cubical 4-polytope can have.
    """
    diff = f1 - f0
    if diff <= 0 or diff % 2:
        raise ValueError(f"f1 - f0 = {diff} must be positive and even")
    if f1 < 2 * f0:
        raise ValueError(f"f1 = {f1} < 2 f0 = {2 * f0}: some vertex would have degree < 4")
    f3 = diff // 2
    return FlagVector(f0, f1, 3 * f3, f3, 8 * f3)


def facet_census_prime(m: int) -> FacetCensus:
    _check_m(m)
    q = 1 << (m - 2)
    return FacetCensus((
        FacetFamily("vertex-truncated cube", (m - 2) * q, (24, 36, 14)),
        FacetFamily("vertex figure", 1 << m, (m, 3 * m - 6, 2 * m - 4)),
    ))


def facet_census_double_prime(m: int, blueprint: Triangulation | None = None) -> FacetCensus:
    """Facet families of NC4(m)''.

    Edge prisms are split by polygon size when a blueprint is given (cube
    direction ``i`` contributes ``2^(m-1)`` prisms over ``deg(i)``-gons);
    otherwise a single family with unknown f-vector and ``k`` in ``[3, m-1]``.
    """
    _check_m(m)
    q = 1 << (m - 2)
    fams = [
        FacetFamily("doubly truncated cube", (m - 2) * q, (48, 72, 26)),
        FacetFamily("truncated vertex figure", 1 << m, (6 * m - 12, 9 * m - 18, 3 * m - 4)),
    ]
    if blueprint is None:
        fams.append(FacetFamily("edge prism", m << (m - 1), None, (3, m - 1)))
    else:
        if blueprint.m != m:
            raise ValueError(f"blueprint has {blueprint.m} vertices, expected {m}")
        degs = degree_profile(blueprint)
        for k in sorted(set(degs)):
            fams.append(FacetFamily(
                f"{k}-gon prism", degs.count(k) << (m - 1), (2 * k, 3 * k, k + 2)
            ))
    return FacetCensus(tuple(fams))


def derive_prime_census(m: int) -> FlagVector:
    """NC4(m)' recomputed from the vertex-truncation arithmetic and its facet census.

    * one new vertex per vertex-edge incidence of NC4(m)
    * edges: the shortened old edges plus the edges of every vertex figure
    * 2-faces: each is shared by two facets, so half the census 2-face sum
    * f03: census sum of facet vertex counts
    """
    old = flag_nc4(m)
    census = facet_census_prime(m)
    f0 = 2 * old.f1
    f1 = old.f1 + old.f0 * (3 * m - 6)
    f3 = census.total
    f2 = sum(fam.count * fam.fvector[2] for fam in census) // 2
    f03 = sum(fam.count * fam.fvector[0] for fam in census)
    if f0 - f1 + f2 - f3:
        raise FlagMismatch(f"census for m={m} violates Euler's relation")
    return FlagVector(f0, f1, f2, f3, f03)


def derive_double_prime_census(m: int) -> FlagVector:
    """NC4(m)'' recomputed by truncating the shortened original edges of NC4(m)'.

    Writing ``K`` for the sum over original edges of the number of 2-faces
    through the edge (``= 4 f2`` of NC4(m)), each edge becomes a prism over a
    ``k_e``-gon, contributing ``2 k_e`` vertices, ``3 k_e`` edges and
    ``k_e + 2`` two-faces; the original edge disappears.
    """
    old = flag_nc4(m)
    mid = derive_prime_census(m)
    K = 4 * old.f2
    f0 = 2 * K
    f1 = (mid.f1 - old.f1) + 3 * K
    f2 = mid.f2 + K + 2 * old.f1
    f3 = mid.f3 + old.f1
    prism_vertices = 2 * K
    fams = facet_census_double_prime(m)
    f03 = prism_vertices + sum(f.count * f.fvector[0] for f in fams if f.fvector is not None)
    if f3 != fams.total:
        raise FlagMismatch(f"facet count {f3} disagrees with census total {fams.total}")
    if f0 - f1 + f2 - f3:
        raise FlagMismatch(f"derived flag vector for m={m} violates Euler's relation")
    return FlagVector(f0, f1, f2, f3, f03)


def is_simple_flag(fv: FlagVector, d: int = 4) -> bool:
    if d != 4:
        raise NotImplementedError(f"simplicity test only supported for d=4, got d={d}")
    return fv.f1 == 2 * fv.f0


_ENTRIES = ("f0", "f1", "f2", "f3", "f03")


def cross_check(m: int) -> list[str]:
    """Entry-wise disagreements between closed forms and census derivations (empty if none)."""
    out = []
    pairs = [
        ("NC4(m)", flag_nc4(m), complete_cubical_flag(1 << m, m << (m - 1))),
        ("NC4(m)'", flag_nc4_prime(m), derive_prime_census(m)),
        ("NC4(m)''", flag_nc4_double_prime(m), derive_double_prime_census(m)),
    ]
    for name, closed, derived in pairs:
        for key in _ENTRIES:
            a, b = getattr(closed, key), getattr(derived, key)
            if a != b:
                out.append(f"{name} {key}: closed form {a} != census {b} (m={m})")
    return out
