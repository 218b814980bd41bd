from fractions import Fraction
from itertools import combinations
from math import comb, sqrt

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ncsep.cube import (
    InfeasibleError,
    bits,
    cube_graph,
    cube_separator_lower_bound,
    from_bits,
    harper_boundary,
    harper_initial_segment,
    harper_order,
    harper_profile,
    level_set_separator,
    min_boundary_bruteforce,
    neighborhood,
)
from ncsep.separators import verify_separator


def brute_window_min(m, c):
    """min |N(A)| over all A with c*2^m <= |A| <= 2^(m-1), by enumeration."""
    n = 1 << m
    best = None
    for s in range(n + 1):
        if c * n <= s <= n // 2:
            b = min_boundary_bruteforce(m, s)
            best = b if best is None else min(best, b)
    return best


def brute_min_separator(m, c):
    """Smallest |C| over all genuine separators of the m-cube, or None."""
    n = 1 << m
    best = None
    for s in range(n + 1):
        if not c * n <= s <= n // 2:
            continue
        for a in combinations(range(n), s):
            nb = neighborhood(m, a)
            b = n - s - len(nb)
            if b >= s and b <= (1 - c) * n:
                best = len(nb) if best is None else min(best, len(nb))
    return best


@pytest.mark.parametrize("m,nv,ne", [(1, 2, 1), (4, 16, 32), (10, 1024, 5120)])
def test_cube_graph_counts(m, nv, ne):
    g = cube_graph(m)
    assert (g.n, g.n_edges) == (nv, ne)
    assert sum(1 for _ in g.edges()) == ne
    if m <= 10:
        assert len(g.edge_array()) == ne


def test_cube_graph_adjacency_is_hamming_one():
    g = cube_graph(5)
    for u in range(32):
        for v in range(32):
            assert g.has_edge(u, v) == (bin(u ^ v).count("1") == 1)
        assert sorted(g.neighbors(u)) == sorted(w for w in range(32) if g.has_edge(u, w))


@pytest.mark.parametrize("m", [0, -1, 63])
def test_cube_graph_rejects_bad_dimension(m):
    with pytest.raises(ValueError):
        cube_graph(m)


def test_bits_round_trip():
    assert bits(0b1011, 4) == (1, 1, 0, 1)
    assert from_bits((1, 1, 0, 1)) == 0b1011


def test_harper_segment_examples():
    assert harper_initial_segment(4, 0) == []
    assert sorted(harper_initial_segment(4, 5)) == [0, 1, 2, 4, 8]
    seg = harper_initial_segment(4, 6)
    # weight <= 1 plus the first weight-2 word 1100 (coordinates 1 and 2)
    assert sorted(seg) == [0, 1, 2, 3, 4, 8]
    assert len(neighborhood(4, seg)) == min_boundary_bruteforce(4, 6)


def test_harper_order_is_weight_then_one_first_lex():
    order = list(harper_order(4))
    assert len(set(order)) == 16
    keys = [(bin(v).count("1"), tuple(1 - b for b in bits(v, 4))) for v in order]
    assert keys == sorted(keys)


@pytest.mark.parametrize("m", [-1, 4])
def test_harper_segment_size_out_of_range(m):
    with pytest.raises(ValueError):
        harper_initial_segment(4, 17 if m > 0 else -1)


@pytest.mark.parametrize("m,s,expected", [(3, 4, 3), (4, 5, 6), (4, 16, 0), (7, 128, 0), (5, 1, 5)])
def test_harper_boundary_values(m, s, expected):
    assert harper_boundary(m, s) == expected


@pytest.mark.parametrize("m,s,expected", [(3, 4, 3), (2, 2, 2), (4, 1, 4), (3, 1, 3), (4, 0, 0)])
def test_bruteforce_values(m, s, expected):
    assert min_boundary_bruteforce(m, s) == expected


def test_bruteforce_refuses_large_m():
    with pytest.raises(InfeasibleError):
        min_boundary_bruteforce(5, 3)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_harper_equals_bruteforce(m):
    for s in range(2 ** m + 1):
        assert harper_boundary(m, s) == min_boundary_bruteforce(m, s), s


@pytest.mark.parametrize("m", range(1, 11))
def test_three_boundary_routes_agree(m):
    prof = harper_profile(m).boundary
    for s in range(2 ** m + 1):
        direct = len(neighborhood(m, harper_initial_segment(m, s)))
        assert harper_boundary(m, s) == direct == prof[s], s


@given(st.integers(1, 30).flatmap(lambda m: st.tuples(st.just(m), st.integers(-1, m))))
def test_full_ball_boundary_is_next_layer(md):
    m, d = md
    s = sum(comb(m, j) for j in range(d + 1))
    expected = comb(m, d + 1) if 0 <= d + 1 <= m and s else 0
    assert harper_boundary(m, s) == expected


@given(st.integers(1, 16).flatmap(lambda m: st.tuples(st.just(m), st.integers(0, 2 ** m))))
@settings(max_examples=200)
def test_profile_invariants(ms):
    m, s = ms
    b = harper_boundary(m, s)
    assert 0 <= b <= 2 ** m - s
    assert harper_profile(m)[s] == b


def test_profile_endpoints():
    p = harper_profile(9)
    assert p[0] == 0 and p[2 ** 9] == 0 and p[1] == 9


def test_lower_bound_m4():
    prof = harper_profile(4)
    assert cube_separator_lower_bound(4, Fraction(1, 3)) == min(prof[s] for s in (6, 7, 8)) == 6
    assert cube_separator_lower_bound(4, Fraction(1, 3)) == brute_window_min(4, Fraction(1, 3))


def test_lower_bound_m2_matches_brute_force():
    # no genuine 1/3-separator of the 4-cycle exists; the window minimum is 2
    assert cube_separator_lower_bound(2, Fraction(1, 3)) == 2 == brute_window_min(2, Fraction(1, 3))
    assert brute_min_separator(2, Fraction(1, 3)) is None


@pytest.mark.parametrize("m,c", [(3, Fraction(1, 8)), (3, Fraction(1, 4)), (4, Fraction(1, 4)), (4, Fraction(1, 5))])
def test_lower_bound_below_true_minimum(m, c):
    lb = cube_separator_lower_bound(m, c)
    assert lb == brute_window_min(m, c)
    true = brute_min_separator(m, c) if m == 3 else None
    if true is not None:
        assert lb <= true


@pytest.mark.parametrize("m", range(2, 16))
def test_lower_bound_below_middle_binomial(m):
    assert cube_separator_lower_bound(m, Fraction(1, 3)) <= comb(m, (m + 1) // 2)


@pytest.mark.parametrize("c", [0, Fraction(1, 2), -1, 0.7])
def test_lower_bound_rejects_bad_constant(c):
    with pytest.raises(ValueError):
        cube_separator_lower_bound(6, c)


def test_lower_bound_constant_band():
    vals = [cube_separator_lower_bound(m, Fraction(1, 3)) * sqrt(m) / 2 ** m for m in range(6, 21)]
    assert max(vals) / min(vals) < 3


@pytest.mark.parametrize("m,k,sizes", [(4, 2, (5, 5, 6)), (3, 1, (1, 4, 3))])
def test_level_set_separator(m, k, sizes):
    sep = level_set_separator(m, k)
    assert sep.sizes() == sizes
    g = cube_graph(m)
    assert verify_separator(g, sep).valid
    assert verify_separator(g, sep, Fraction(len(sep.A), 2 ** m)).valid


@given(st.integers(2, 12).flatmap(lambda m: st.tuples(st.just(m), st.integers(1, m - 1))))
def test_level_set_always_verifies(mk):
    m, k = mk
    sep = level_set_separator(m, k)
    assert sep.size == comb(m, k)
    assert verify_separator(cube_graph(m), sep).valid


@pytest.mark.parametrize("k", [0, 4])
def test_level_set_rejects_bad_level(k):
    with pytest.raises(ValueError):
        level_set_separator(4, k)


def test_dense_adjacency_matches_implicit():
    g = cube_graph(6)
    adj = g.adj
    assert adj.shape == (64, 6)
    for v in range(64):
        assert sorted(adj[v].tolist()) == sorted(g.neighbors(v))
    assert np.all(np.sort(g.edge_array(), axis=0)[:, 0] >= 0)
