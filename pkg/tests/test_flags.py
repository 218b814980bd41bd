from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.spatial import HalfspaceIntersection

from ncsep.flags import (
    FlagVector,
    complete_cubical_flag,
    cross_check,
    derive_double_prime_census,
    derive_prime_census,
    facet_census_double_prime,
    facet_census_prime,
    flag_nc4,
    flag_nc4_double_prime,
    flag_nc4_prime,
    is_simple_flag,
)
from ncsep.planar import stacked_triangulation

# Published values at m=4 and m=5, as (f0, f1, f2, f3; f03).
PUBLISHED = {
    (flag_nc4, 4): (16, 32, 24, 8, 64),
    (flag_nc4, 5): (32, 80, 72, 24, 192),
    (flag_nc4_prime, 4): (64, 128, 88, 24, 352),
    (flag_nc4_prime, 5): (160, 368, 264, 56, 928),
    (flag_nc4_double_prime, 4): (192, 384, 248, 56, 256),
    (flag_nc4_double_prime, 5): (576, 1152, 712, 136, 736),
}


@pytest.mark.parametrize("fn,m", list(PUBLISHED))
def test_published_values(fn, m):
    assert fn(m).as_tuple() == PUBLISHED[fn, m]


@pytest.mark.parametrize("fn", [flag_nc4, flag_nc4_prime, flag_nc4_double_prime])
def test_euler_for_all_m(fn):
    for m in range(4, 31):
        assert fn(m).euler_residual == 0, m


@pytest.mark.parametrize("fn", [flag_nc4, flag_nc4_prime, flag_nc4_double_prime])
def test_factored_form(fn):
    for m in range(4, 12):
        t = fn(m).factored(m)
        assert t is not None and all(isinstance(x, int) for x in t)


def test_flag_str():
    assert str(flag_nc4(4)) == "(16, 32, 24, 8; 64)"


@pytest.mark.parametrize("m", [3, 0, 10 ** 6, 4.0])
def test_bad_m_rejected(m):
    with pytest.raises(ValueError):
        flag_nc4_prime(m)


def test_large_m_exact():
    fv = flag_nc4_double_prime(1000)
    assert fv.f0 == (24 * 1000 - 48) * 2 ** 998
    assert fv.euler_residual == 0


@pytest.mark.parametrize(
    "f0,f1,expected",
    [
        (16, 32, (16, 32, 24, 8, 64)),
        (32, 80, (32, 80, 72, 24, 192)),
    ],
)
def test_complete_cubical_flag(f0, f1, expected):
    assert complete_cubical_flag(f0, f1).as_tuple() == expected


@pytest.mark.parametrize("f0,f1", [(8, 12), (16, 31), (16, 16), (16, 10)])
def test_complete_cubical_flag_rejects(f0, f1):
    with pytest.raises(ValueError):
        complete_cubical_flag(f0, f1)


@given(st.integers(4, 40))
def test_nc4_is_complete_cubical(m):
    fv = flag_nc4(m)
    assert complete_cubical_flag(fv.f0, fv.f1) == fv


def test_census_totals():
    for m in range(4, 20):
        assert facet_census_prime(m).total == flag_nc4_prime(m).f3
        assert facet_census_double_prime(m).total == flag_nc4_double_prime(m).f3


@given(st.integers(4, 25), st.integers(0, 50))
def test_double_prime_census_with_blueprint(m, seed):
    h = stacked_triangulation(m, seed)
    fams = facet_census_double_prime(m, h)
    assert fams.total == flag_nc4_double_prime(m).f3
    # prisms over the blueprint's polygons: total vertex count is 2 * sum deg * 2^(m-1)
    prism_v = sum(f.count * f.fvector[0] for f in fams if "prism" in f.name)
    assert prism_v == 2 * (6 * m - 12) * 2 ** (m - 1)


def test_census_rejects_wrong_blueprint():
    with pytest.raises(ValueError):
        facet_census_double_prime(6, stacked_triangulation(5))


@given(st.integers(4, 200))
def test_derived_agrees_on_f0_to_f3(m):
    for closed, derived in [(flag_nc4_prime(m), derive_prime_census(m)),
                            (flag_nc4_double_prime(m), derive_double_prime_census(m))]:
        assert closed.as_tuple()[:4] == derived.as_tuple()[:4]


def test_derived_f03_values():
    # the census disagrees with the closed forms on f03 only
    for m in range(4, 20):
        q = 2 ** (m - 2)
        assert derive_prime_census(m).f03 == (28 * m - 48) * q
        assert derive_double_prime_census(m).f03 == 4 * flag_nc4_double_prime(m).f0


def test_cross_check_reports_only_f03():
    for m in (4, 5, 9):
        lines = cross_check(m)
        assert len(lines) == 2
        assert all(" f03:" in line for line in lines)


def test_simplicity():
    for m in range(4, 15):
        assert is_simple_flag(flag_nc4_double_prime(m))
        # vertex truncation leaves degree 1 + deg(vertex figure) at new vertices
        assert is_simple_flag(flag_nc4_prime(m)) == (m == 4)
    assert is_simple_flag(flag_nc4(4))  # the tesseract
    assert not is_simple_flag(flag_nc4(5))


def test_simple_flag_other_dimension_unsupported():
    with pytest.raises(NotImplementedError):
        is_simple_flag(flag_nc4(4), d=3)


# Geometric oracle: NC4(4) is the 4-cube, so its truncations can be built as
# halfspace intersections and their face numbers counted from incidences.

def _polytope_flags(halfspaces: np.ndarray) -> FlagVector:
    hs = HalfspaceIntersection(halfspaces, np.zeros(4))
    pts = np.unique(np.round(hs.intersections, 6), axis=0)
    A, b = halfspaces[:, :4], halfspaces[:, 4]
    norms = np.linalg.norm(A, axis=1)
    on = np.abs((pts @ A.T + b) / norms) < 1e-4
    facets = on[:, on.sum(axis=0) >= 4]
    f0, f3 = len(pts), facets.shape[1]
    common = facets.astype(int) @ facets.T.astype(int)
    f1 = int(np.sum(np.triu(common >= 3, 1)))
    # 2-faces: facet pairs whose common vertices span a plane (>= 3 vertices)
    shared = facets.T.astype(int) @ facets.astype(int)
    f2 = int(np.sum(np.triu(shared >= 3, 1)))
    return FlagVector(f0, f1, f2, f3, int(facets.sum()))


def _cube_halfspaces():
    rows = []
    for i in range(4):
        for s in (1, -1):
            a = np.zeros(4)
            a[i] = s
            rows.append([*a, -1.0])
    return rows


def _vertex_cuts():
    return [[*s, -3.5] for s in product((1, -1), repeat=4)]


def _edge_cuts():
    # one cut per cube edge: both endpoints give the same normal
    normals = set()
    for s in product((1, -1), repeat=4):
        for i in range(4):
            normals.add(s[:i] + (0,) + s[i + 1:])
    return [[*a, -2.9] for a in sorted(normals)]


def test_geometric_tesseract():
    fv = _polytope_flags(np.array(_cube_halfspaces()))
    assert fv == flag_nc4(4)


def test_geometric_vertex_truncation():
    fv = _polytope_flags(np.array(_cube_halfspaces() + _vertex_cuts()))
    assert fv.as_tuple() == derive_prime_census(4).as_tuple() == (64, 128, 88, 24, 256)
    assert fv.as_tuple()[:4] == flag_nc4_prime(4).as_tuple()[:4]


def test_geometric_edge_truncation():
    hs = np.array(_cube_halfspaces() + _vertex_cuts() + _edge_cuts())
    fv = _polytope_flags(hs)
    assert fv.f03 == 4 * fv.f0  # simple: every vertex on exactly 4 facets
    assert fv.as_tuple() == derive_double_prime_census(4).as_tuple() == (192, 384, 248, 56, 768)
    assert fv.as_tuple()[:4] == flag_nc4_double_prime(4).as_tuple()[:4]


def test_edge_count_of_simple_polytope():
    for m in range(4, 10):
        fv = derive_double_prime_census(m)
        assert 2 * fv.f1 == 4 * fv.f0


def test_flag_vector_fields():
    fv = FlagVector(1, 2, 3, 4, 5)
    assert fv.as_tuple() == (1, 2, 3, 4, 5)
    assert fv.factored(4) is None
