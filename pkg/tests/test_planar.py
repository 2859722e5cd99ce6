"""Plane embeddings, face levels, and tree-cotree duality."""

from __future__ import annotations

from collections import Counter

import pytest

from treestretch.families import RectGrid, TriGrid, TriRectGrid
from treestretch.planar import (
    Cube,
    cotree_dual_tree,
    dual,
    dual_fundamental_cut,
    embed_grid,
    face_levels,
    is_dual_spanning_tree,
    lambda_max_formula,
    make_plane_graph,
    overlay_dot,
    stretch_lower_bound,
)
from treestretch.graphs import (
    DomainError,
    ParameterError,
    ValidationError,
    fundamental_cycle_edges,
    make_graph,
    spanning_tree,
)
from treestretch.solver import enumerate_spanning_trees


def triangle_with_faces():
    g = make_graph(3, [(0, 1), (0, 2), (1, 2)])
    return g, [(0, 2, 1), (0, 2, 1)]


class TestMakePlaneGraph:
    def test_triangle(self):
        g, faces = triangle_with_faces()
        plane = make_plane_graph(g, faces, outer_face=1)
        assert plane.n_faces == 2
        assert plane.bounded_faces == [0]
        assert plane.edge_faces == ((0, 1), (0, 1), (0, 1))

    def test_euler_mismatch_rejected(self):
        g, faces = triangle_with_faces()
        with pytest.raises(ValidationError):
            make_plane_graph(g, faces[:1], outer_face=0)

    def test_non_closed_walk_rejected(self):
        g, _ = triangle_with_faces()
        with pytest.raises(ValidationError):
            make_plane_graph(g, [(0, 1), (0, 2, 1)], outer_face=1)

    def test_bridge_rejected(self):
        g = make_graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
        faces = [(0, 2, 1), (0, 2, 3, 3, 1)]
        with pytest.raises(ValidationError):
            make_plane_graph(g, faces, outer_face=1)

    def test_outer_face_index_checked(self):
        g, faces = triangle_with_faces()
        with pytest.raises(ValidationError):
            make_plane_graph(g, faces, outer_face=2)


class TestEmbeddings:
    @pytest.mark.parametrize(
        "m,n", [(m, n) for m in range(2, 7) for n in range(m, 7)]
    )
    def test_rect_face_count(self, m, n):
        plane = embed_grid(RectGrid(m, n))
        assert len(plane.bounded_faces) == (m - 1) * (n - 1)
        assert plane.family == "rect-grid"

    @pytest.mark.parametrize("n", range(1, 7))
    def test_tri_face_count(self, n):
        plane = embed_grid(TriGrid(n))
        assert len(plane.bounded_faces) == n * n

    @pytest.mark.parametrize("m,n", [(2, 2), (2, 4), (3, 3), (3, 5), (4, 4), (5, 5)])
    def test_tri_rect_face_count(self, m, n):
        plane = embed_grid(TriRectGrid(m, n))
        assert len(plane.bounded_faces) == 2 * (m - 1) * (n - 1)

    def test_cube_face_count(self):
        plane = embed_grid(Cube())
        assert plane.graph.n == 8 and plane.graph.m == 12
        assert len(plane.bounded_faces) == 5

    def test_outer_face_is_last(self):
        for spec in (RectGrid(2, 3), TriGrid(2), TriRectGrid(2, 2)):
            plane = embed_grid(spec)
            assert plane.outer_face == plane.n_faces - 1


class TestFaceLevels:
    def test_rect_4_5_frozen(self):
        plane = embed_grid(RectGrid(4, 5))
        fl = face_levels(plane)
        bounded = sorted(fl.level[f] for f in plane.bounded_faces)
        assert bounded == [1] * 10 + [2] * 2
        assert fl.lambda_max == 2
        assert fl.level[plane.outer_face] == 0

    def test_tri_2_frozen(self):
        plane = embed_grid(TriGrid(2))
        fl = face_levels(plane)
        assert sorted(fl.level[f] for f in plane.bounded_faces) == [1, 1, 1, 2]

    def test_tri_4_frozen(self):
        plane = embed_grid(TriGrid(4))
        fl = face_levels(plane)
        counts = Counter(fl.level[f] for f in plane.bounded_faces)
        assert counts == Counter({1: 9, 2: 6, 3: 1})
        assert fl.lambda_max == 3

    def test_cube_frozen(self):
        plane = embed_grid(Cube())
        fl = face_levels(plane)
        assert sorted(fl.level[f] for f in plane.bounded_faces) == [1, 1, 1, 1, 2]

    def test_predecessor_points_one_level_down(self):
        plane = embed_grid(RectGrid(3, 4))
        fl = face_levels(plane)
        for f in range(plane.n_faces):
            if f == plane.outer_face:
                assert fl.predecessor[f] == -1
            else:
                assert fl.level[fl.predecessor[f]] == fl.level[f] - 1


class TestLambdaFormulas:
    def test_rect(self):
        for m in range(2, 8):
            for n in range(m, 8):
                spec = RectGrid(m, n)
                assert face_levels(embed_grid(spec)).lambda_max == m // 2
                assert lambda_max_formula(spec) == m // 2

    def test_tri(self):
        for n in range(1, 9):
            spec = TriGrid(n)
            expected = (2 * n + 2) // 3
            assert face_levels(embed_grid(spec)).lambda_max == expected
            assert lambda_max_formula(spec) == expected

    def test_tri_rect(self):
        for m in range(2, 7):
            for n in range(m, 7):
                spec = TriRectGrid(m, n)
                assert face_levels(embed_grid(spec)).lambda_max == m - 1
                assert lambda_max_formula(spec) == m - 1

    def test_no_formula_for_cube(self):
        with pytest.raises(ParameterError):
            lambda_max_formula(Cube())


class TestStretchLowerBound:
    def test_rect(self):
        assert stretch_lower_bound(embed_grid(RectGrid(4, 5))) == 5

    def test_tri(self):
        assert stretch_lower_bound(embed_grid(TriGrid(4))) == 4

    def test_tri_rect(self):
        assert stretch_lower_bound(embed_grid(TriRectGrid(3, 4))) == 3

    def test_untagged_family_refused(self):
        with pytest.raises(DomainError):
            stretch_lower_bound(embed_grid(Cube()))


class TestDualGraph:
    def test_cube_dual_is_octahedron(self):
        plane = embed_grid(Cube())
        dg = dual(plane)
        assert dg.n_faces == 6
        degrees = [len(dg.adjacency[f]) for f in range(6)]
        assert degrees == [4] * 6
        neighbor_sets = [{other for _, other in dg.adjacency[f]} for f in range(6)]
        for f in range(6):
            assert f not in neighbor_sets[f]
            assert len(neighbor_sets[f]) == 4  # opposite face missing, no multi-edges

    def test_edge_correspondence_is_identity(self):
        plane = embed_grid(RectGrid(2, 2))
        dg = dual(plane)
        assert dg.edge_correspondence == tuple(range(plane.graph.m))


class TestDuality:
    def test_rejects_foreign_tree(self):
        plane = embed_grid(RectGrid(2, 2))
        other = make_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
        t = spanning_tree(other, [0, 1, 2])
        with pytest.raises(ValidationError):
            cotree_dual_tree(plane, t)

    def test_not_a_dual_tree(self):
        plane = embed_grid(RectGrid(2, 3))
        dg = dual(plane)
        ok, reason = is_dual_spanning_tree(dg, frozenset({0}))
        assert not ok and "cannot span" in reason

    def test_cut_requires_dual_tree_edge(self):
        plane = embed_grid(RectGrid(2, 2))
        t = spanning_tree(plane.graph, [0, 1, 2])
        dtree = cotree_dual_tree(plane, t)
        tree_edge = next(iter(t.tree_edges))
        with pytest.raises(DomainError):
            dual_fundamental_cut(dtree, tree_edge)

    def test_cycle_equals_cut_exhaustive_small(self):
        plane = embed_grid(RectGrid(2, 2))
        g = plane.graph

        trees = []
        enumerate_spanning_trees(g, visitor=lambda t: trees.append(t))
        assert len(trees) == 4
        for edge_set in trees:
            t = spanning_tree(g, edge_set)
            dtree = cotree_dual_tree(plane, t)
            for e in sorted(t.cotree_edges):
                cyc = fundamental_cycle_edges(g, t, e)
                cut = dual_fundamental_cut(dtree, e)
                assert cyc == cut


class TestOverlayDot:
    def test_contains_both_layers(self):
        plane = embed_grid(RectGrid(2, 2))
        text = overlay_dot(plane)
        assert "v0" in text and "f0" in text
        assert "style=dotted" in text
