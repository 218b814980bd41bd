from collections import Counter

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from ncsep.planar import (
    InvalidTriangulation,
    Triangulation,
    degree_profile,
    stacked_triangulation,
    truncate,
)


def as_nx(h: Triangulation) -> nx.Graph:
    return nx.Graph(h.edges())


def test_k4_base_case():
    h = stacked_triangulation(4)
    h.validate()
    assert len(h.edges()) == 6
    assert len(h.faces()) == 4
    assert degree_profile(h) == [3, 3, 3, 3]
    assert nx.is_isomorphic(as_nx(h), nx.complete_graph(4))


def test_m5_degrees():
    h = stacked_triangulation(5, seed=3)
    assert sorted(degree_profile(h), reverse=True) == [4, 4, 4, 3, 3]


def test_m20_counts():
    h = stacked_triangulation(20, seed=1)
    h.validate()
    assert len(h.edges()) == 54
    assert len(h.faces()) == 36


@given(st.integers(4, 50), st.integers(0, 2 ** 32 - 1))
def test_stacked_is_valid_triangulation(m, seed):
    h = stacked_triangulation(m, seed)
    h.validate()
    assert sum(degree_profile(h)) == 6 * m - 12
    assert min(degree_profile(h)) == 3
    assert nx.check_planarity(as_nx(h))[0]


@given(st.integers(4, 30), st.integers(0, 1000))
def test_stacked_is_deterministic(m, seed):
    assert stacked_triangulation(m, seed) == stacked_triangulation(m, seed)


def test_different_seeds_differ_somewhere():
    hs = {stacked_triangulation(12, s).rotation for s in range(10)}
    assert len(hs) > 1


@given(st.integers(4, 30), st.integers(0, 1000))
def test_text_round_trip(m, seed):
    h = stacked_triangulation(m, seed)
    assert Triangulation.from_text(h.to_text()) == h


def test_text_format_is_one_based_with_comments():
    text = "# K4\n1: 2 4 3\n2: 3 4 1\n3: 1 4 2\n\n4: 1 2 3  # centre\n"
    h = Triangulation.from_text(text)
    assert h == stacked_triangulation(4)


@pytest.mark.parametrize(
    "text",
    [
        "1: 2 3\n2: 1 3\n3: 1 2\n",  # too small
        "1: 2 4 3\n2: 3 4 1\n3: 1 4 2\n4: 1 3 2\n",  # reversed rotation at 4: faces break
        "1: 2 4 3\n2: 3 4 1\n3: 1 4 2\n5: 1 2 3\n",  # labels skip 4
        "1: 2 4 3\n2: 3 4\n3: 1 4 2\n4: 1 2 3\n",  # asymmetric
        "1: 2 4 3\n1: 2 4 3\n",
        "1 2 4 3\n",
        "1: 2 2 3\n2: 3 4 1\n3: 1 4 2\n4: 1 2 3\n",
    ],
)
def test_invalid_rotations_rejected(text):
    with pytest.raises(InvalidTriangulation):
        Triangulation.from_text(text)


def test_octahedron_is_accepted_and_not_stacked():
    # octahedron: vertices 0/5 poles, 1..4 equator
    rot = ((1, 2, 3, 4), (0, 4, 5, 2), (0, 1, 5, 3), (0, 2, 5, 4), (0, 3, 5, 1), (1, 4, 3, 2))
    h = Triangulation(rot)
    h.validate()
    assert degree_profile(h) == [4] * 6


def test_stacked_rejects_small_m():
    with pytest.raises(ValueError):
        stacked_triangulation(3)


def test_truncated_k4_is_truncated_tetrahedron():
    t = truncate(stacked_triangulation(4))
    assert t.n == 12
    assert nx.is_isomorphic(nx.Graph(t.edges()), nx.truncated_tetrahedron_graph())


@given(st.integers(4, 59), st.integers(0, 100))
def test_truncation_counts(m, seed):
    t = truncate(stacked_triangulation(m, seed))
    edges = t.edges()
    assert t.n == 6 * m - 12
    assert len(edges) == 9 * m - 18
    deg = Counter(x for e in edges for x in e)
    assert set(deg.values()) == {3}


def test_truncation_cycles_follow_rotation():
    h = stacked_triangulation(9, 2)
    t = truncate(h)
    for d, (i, j) in enumerate(t.darts):
        assert t.darts[t.rev[d]] == (j, i)
        assert t.darts[t.next[d]] == (i, h.succ(i, j))
        assert t.prev[t.next[d]] == d
