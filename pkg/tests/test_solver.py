"""Exact solver: enumeration, Kirchhoff counting, pruning, and caps."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treestretch.graphs import (
    DomainError,
    ResourceLimitError,
    ValidationError,
    is_connected,
    make_graph,
    stretch,
)
from treestretch.solver import (
    count_spanning_trees_kirchhoff,
    enumerate_spanning_trees,
    lower_bound_girth,
    sigma_exact,
)


def cycle_graph(n):
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return make_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(m, n):
    return make_graph(m + n, [(u, m + v) for u in range(m) for v in range(n)])


def petersen_graph():
    return make_graph(
        10,
        [(i, (i + 1) % 5) for i in range(5)]
        + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        + [(i, 5 + i) for i in range(5)],
    )


def rect_grid(m, n):
    def vid(i, j):
        return i * n + j

    edges = [(vid(i, j), vid(i, j + 1)) for i in range(m) for j in range(n - 1)]
    edges += [(vid(i, j), vid(i + 1, j)) for i in range(m - 1) for j in range(n)]
    return make_graph(m * n, edges)


# Counts verified against an independent Laplacian-determinant computation.
FROZEN_TREE_COUNTS = {
    "K4": (complete_graph(4), 16),
    "K5": (complete_graph(5), 125),
    "K6": (complete_graph(6), 1296),
    "C5": (cycle_graph(5), 5),
    "K33": (complete_bipartite(3, 3), 81),
    "petersen": (petersen_graph(), 2000),
    "rect22": (rect_grid(2, 2), 4),
    "rect23": (rect_grid(2, 3), 15),
    "rect33": (rect_grid(3, 3), 192),
    "rect34": (rect_grid(3, 4), 2415),
    "rect44": (rect_grid(4, 4), 100352),
}


class TestCounting:
    @pytest.mark.parametrize("name", sorted(FROZEN_TREE_COUNTS))
    def test_kirchhoff_frozen(self, name):
        g, expected = FROZEN_TREE_COUNTS[name]
        assert count_spanning_trees_kirchhoff(g) == expected

    @pytest.mark.parametrize(
        "name", ["K4", "K5", "C5", "K33", "petersen", "rect22", "rect23", "rect33"]
    )
    def test_enumeration_matches_kirchhoff(self, name):
        g, expected = FROZEN_TREE_COUNTS[name]
        assert enumerate_spanning_trees(g) == expected

    def test_every_enumerated_set_is_a_tree(self):
        g = complete_graph(5)
        from treestretch.graphs import is_spanning_tree

        seen = set()

        def check(edge_set):
            ok, _ = is_spanning_tree(g, edge_set)
            assert ok
            seen.add(frozenset(edge_set))

        count = enumerate_spanning_trees(g, visitor=check)
        assert count == 125
        assert len(seen) == 125

    def test_disconnected_rejected(self):
        g = make_graph(4, [(0, 1), (2, 3)])
        with pytest.raises(ValidationError):
            count_spanning_trees_kirchhoff(g)
        with pytest.raises(ValidationError):
            enumerate_spanning_trees(g)

    def test_single_vertex(self):
        g = make_graph(1, [])
        assert count_spanning_trees_kirchhoff(g) == 1

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_kirchhoff_matches_enumeration_random(self, data):
        n = data.draw(st.integers(2, 6))
        all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        chosen = data.draw(
            st.lists(st.sampled_from(all_pairs), unique=True, max_size=len(all_pairs))
        )
        g = make_graph(n, chosen)
        if not is_connected(g):
            return
        assert enumerate_spanning_trees(g) == count_spanning_trees_kirchhoff(g)


class TestLowerBoundGirth:
    def test_values(self):
        assert lower_bound_girth(complete_graph(4)) == 2
        assert lower_bound_girth(cycle_graph(7)) == 6
        assert lower_bound_girth(petersen_graph()) == 4

    def test_forest_refused(self):
        g = make_graph(3, [(0, 1), (1, 2)])
        with pytest.raises(DomainError):
            lower_bound_girth(g)


class TestSigmaExact:
    def test_cycle(self):
        for n in range(3, 9):
            res = sigma_exact(cycle_graph(n))
            assert res.sigma == n - 1

    def test_complete(self):
        res = sigma_exact(complete_graph(5))
        assert res.sigma == 2
        assert stretch(complete_graph(5), res.optimal_tree).stretch == 2

    def test_girth_floor_stops_early(self):
        res = sigma_exact(complete_graph(6))
        assert res.sigma == 2
        assert res.lower_bound_used == 2
        assert res.trees_enumerated < 1296

    def test_tree_input_shortcut(self):
        g = make_graph(4, [(0, 1), (1, 2), (2, 3)])
        res = sigma_exact(g)
        assert res.sigma == 1
        assert res.trees_enumerated == 1
        assert res.optimal_tree.tree_edges == frozenset(range(3))

    def test_single_vertex(self):
        res = sigma_exact(make_graph(1, []))
        assert res.sigma == 0

    def test_disconnected_rejected(self):
        with pytest.raises(ValidationError):
            sigma_exact(make_graph(3, [(0, 1)]))

    def test_cap_exceeded(self):
        with pytest.raises(ResourceLimitError) as exc_info:
            sigma_exact(complete_graph(5), use_pruning=False, max_trees=10)
        assert exc_info.value.partial_count == 10

    def test_cap_not_hit_when_pruning_finishes_first(self):
        res = sigma_exact(complete_graph(5), max_trees=10)
        assert res.sigma == 2

    def test_pruned_and_unpruned_agree(self):
        cases = [
            cycle_graph(6),
            complete_bipartite(2, 3),
            petersen_graph(),
            rect_grid(2, 3),
            make_graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]),
        ]
        for g in cases:
            fast = sigma_exact(g)
            slow = sigma_exact(g, use_pruning=False)
            assert fast.sigma == slow.sigma
            assert fast.optimal_tree.tree_edges == slow.optimal_tree.tree_edges
            assert slow.pruned is False
            assert fast.trees_enumerated <= slow.trees_enumerated

    @settings(max_examples=25, deadline=None)
    @given(st.data())
    def test_pruned_matches_unpruned_random(self, data):
        n = data.draw(st.integers(3, 6))
        all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        chosen = data.draw(
            st.lists(
                st.sampled_from(all_pairs),
                unique=True,
                min_size=n - 1,
                max_size=len(all_pairs),
            )
        )
        g = make_graph(n, chosen)
        if not is_connected(g):
            return
        fast = sigma_exact(g)
        slow = sigma_exact(g, use_pruning=False)
        assert fast.sigma == slow.sigma
        assert fast.optimal_tree.tree_edges == slow.optimal_tree.tree_edges

    def test_optimal_tree_attains_sigma(self):
        g = petersen_graph()
        res = sigma_exact(g)
        assert res.sigma == 4
        assert stretch(g, res.optimal_tree).stretch == 4
