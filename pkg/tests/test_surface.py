from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skeinlab.cluster import mutate_matrix
from skeinlab.surface import (
    NOTCHED,
    PLAIN,
    CutError,
    SurfaceError,
    SurfaceSpec,
    TaggedTriangulation,
    adjacency_matrix,
    base_triangulation,
    cut_along,
    puncture_weight,
    tagged_flip,
)

SURFACES = [(1, 1), (1, 2), (0, 4), (0, 3), (2, 1), (0, 5), (1, 3)]


@pytest.mark.parametrize("g,p", SURFACES)
def test_counts(g, p):
    spec = SurfaceSpec(g, p)
    T = base_triangulation(spec)
    T.validate()
    assert T.n == 6 * g - 6 + 3 * p
    assert len(T.ideal.triangles) == 4 * g - 4 + 2 * p
    # every arc has two sides, every puncture is a vertex
    for k in range(T.n):
        assert len(T.ideal.slots(k)) == 2
    for q in range(p):
        assert T.ideal.corners(q)


@pytest.mark.parametrize("g,p", [(1, 0), (0, 2), (-1, 3), (0, 0)])
def test_bad_surfaces(g, p):
    with pytest.raises(SurfaceError):
        SurfaceSpec(g, p)


def test_markov_matrix():
    T = base_triangulation(SurfaceSpec(1, 1))
    assert adjacency_matrix(T) == ((0, 2, -2), (-2, 0, 2), (2, -2, 0))


def flip_path(T, path):
    for k in path:
        T = tagged_flip(T, k)
    return T


def _ends(T, k):
    arc = T.tagged_arc(k)
    return sorted(zip(arc.ends, arc.tags))


paths = st.lists(st.integers(0, 5), max_size=8)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(1, 2), (0, 4)]), paths)
def test_flip_is_involution_and_mutation(gp, path):
    T = flip_path(base_triangulation(SurfaceSpec(*gp)), path)
    T.validate()
    for k in range(T.n):
        U = tagged_flip(T, k)
        U.validate()
        assert adjacency_matrix(U) == mutate_matrix(adjacency_matrix(T), k)
        back = tagged_flip(U, k)
        assert back.ideal == T.ideal and back.signs == T.signs
        # arcs other than k keep their ends and tags
        assert all(_ends(U, j) == _ends(T, j) for j in range(T.n) if j != k)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(1, 1), (1, 2), (0, 4)]), paths)
def test_json_round_trip(gp, path):
    T = flip_path(base_triangulation(SurfaceSpec(*gp)), [k % (3 if gp == (1, 1) else 6) for k in path])
    U = TaggedTriangulation.from_json(T.to_json())
    assert U.to_json() == T.to_json()
    assert adjacency_matrix(U) == adjacency_matrix(T)


@settings(max_examples=30, deadline=None)
@given(paths)
def test_weights_sum_to_two(path):
    T = flip_path(base_triangulation(SurfaceSpec(0, 4)), path)
    for k in range(T.n):
        assert sum(puncture_weight(T, k, q) for q in range(4)) == 2


def _self_folded_sphere():
    """Base triangulation of the four-punctured sphere flipped into a self-folded triangle."""
    T = base_triangulation(SurfaceSpec(0, 4))
    for path in ([0], [1], [2], [3], [4], [5], [0, 1], [3, 4], [4, 5], [0, 3]):
        U = flip_path(T, path)
        if U.ideal.folds():
            return U
    raise AssertionError("no self-folded triangulation found")


def test_self_folded_replacement_rule():
    T = _self_folded_sphere()
    loop, radius, base, q = T.ideal.folds()[0]
    # replacement: the loop stands for the radius notched at the interior puncture
    assert T.tagged_arc(radius).tags == (PLAIN, PLAIN)
    assert T.tagged_arc(loop).ends == T.tagged_arc(radius).ends
    assert T.tagged_arc(loop).tags == (PLAIN, NOTCHED)
    # the two arcs of the pair are indistinguishable to every other arc
    B = adjacency_matrix(T)
    assert B[loop][radius] == 0
    assert [B[loop][j] for j in range(T.n) if j not in (loop, radius)] == [
        B[radius][j] for j in range(T.n) if j not in (loop, radius)
    ]


def test_radius_flip_changes_tags():
    T = _self_folded_sphere()
    _, radius, _, q = T.ideal.folds()[0]
    U = tagged_flip(T, radius)
    assert NOTCHED in U.tagged_arc(radius).tags or U.signs[q] == -1


def test_cut_split_identity():
    for g, p in [(0, 5), (1, 3), (1, 2)]:
        T = base_triangulation(SurfaceSpec(g, p))
        B = adjacency_matrix(T)
        for k in range(T.n):
            if T.fold_of(k) is not None:
                continue
            res = cut_along(T, k)
            assert res.split_identity_holds(B)
            assert sum(len(pc.frozen) for pc in res.pieces) == 2


def test_cut_rejects_fold_arcs():
    T = _self_folded_sphere()
    loop, radius, _, _ = T.ideal.folds()[0]
    with pytest.raises(CutError):
        cut_along(T, loop)
    with pytest.raises(CutError):
        cut_along(T, radius)


def test_from_dict_rejects_garbage():
    with pytest.raises(SurfaceError):
        TaggedTriangulation.from_dict({"surface": {"g": 1, "p": 1}})
