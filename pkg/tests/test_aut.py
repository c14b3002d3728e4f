import math

import pytest
from hypothesis import given, settings

from helpers import all_connected_graphs, brute_force_group_order, connected_graphs
from orbigraph.aut import (
    Partition,
    Permutation,
    automorphism_group,
    brute_force_orbits,
    equitable_refinement,
    is_edge_transitive,
    is_vertex_transitive,
    orbit_partition,
    unit_partition,
)
from orbigraph.constructions import (
    circular_ladder,
    complete,
    cycle,
    moebius_ladder,
    path,
    star,
)
from orbigraph.graph_core import Graph


class TestPartitionType:
    def test_validation(self):
        with pytest.raises(ValueError):
            Partition(((0, 1), (1, 2)))  # overlap
        with pytest.raises(ValueError):
            Partition(((0, 2),))  # not dense
        with pytest.raises(ValueError):
            Partition(((1, 0),))  # unsorted cell

    def test_canonical_order(self):
        p = Partition.from_cells([[2], [1, 3], [0, 4]])
        assert p.canonical().cells == ((0, 4), (1, 3), (2,))

    def test_refines(self):
        fine = Partition.from_cells([[0], [1], [2, 3]])
        coarse = Partition.from_cells([[0, 1], [2, 3]])
        assert fine.refines(coarse)
        assert not coarse.refines(fine)


class TestPermutationType:
    def test_bijection_required(self):
        with pytest.raises(ValueError):
            Permutation((0, 0, 1))

    def test_compose_inverse(self):
        p = Permutation((1, 2, 0))
        assert p.compose(p.inverse()).image == (0, 1, 2)

    def test_preserves_edges(self):
        assert Permutation((4, 3, 2, 1, 0)).preserves_edges(path(5))
        assert not Permutation((1, 2, 3, 4, 0)).preserves_edges(path(5))


class TestEquitableRefinement:
    def test_regular_graph_single_cell(self):
        assert equitable_refinement(cycle(6)).cells == ((0, 1, 2, 3, 4, 5),)

    def test_path5_hand_refinement(self):
        assert equitable_refinement(path(5)).cells == ((0, 4), (1, 3), (2,))

    def test_star_degree_split(self):
        assert equitable_refinement(star(3)).cells == ((1, 2, 3), (0,))

    def test_seed_respected(self):
        seed = Partition.from_cells([[0], [1, 2, 3, 4, 5]])
        refined = equitable_refinement(cycle(6), seed)
        # individualizing one cycle vertex splits the rest by distance
        assert refined.cells == ((1, 5), (2, 4), (0,), (3,))

    def test_bad_seed(self):
        with pytest.raises(ValueError):
            equitable_refinement(cycle(6), unit_partition(5))


class TestAutomorphismGroup:
    def test_path5(self):
        group = automorphism_group(path(5))
        assert group.order == 2
        assert group.orbits.cells == ((0, 4), (1, 3), (2,))

    def test_cycle4_dihedral(self):
        group = automorphism_group(cycle(4))
        assert group.order == brute_force_group_order(cycle(4)) == 8
        assert len(group.orbits) == 1

    @pytest.mark.parametrize("n", range(1, 7))
    def test_complete_graph_full_symmetric(self, n):
        assert automorphism_group(complete(n)).order == math.factorial(n)

    def test_asymmetric_tree_seven_vertices(self):
        # spider with legs of lengths 1, 2, 3: the smallest asymmetric tree
        spider = Graph.from_edges(7, [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)])
        assert brute_force_group_order(spider) == 1
        group = automorphism_group(spider)
        assert group.order == 1
        assert len(group.orbits) == 7

    def test_asymmetric_six_vertex_graph(self):
        found = None
        for g in all_connected_graphs(6):
            if brute_force_group_order(g) == 1:
                found = g
                break
        assert found is not None
        group = automorphism_group(found)
        assert group.order == 1
        assert len(group.orbits) == 6

    def test_generators_are_automorphisms(self):
        g = circular_ladder(4)
        for gen in automorphism_group(g).generators:
            assert gen.preserves_edges(g)

    def test_empty_graph_rejected(self):
        with pytest.raises(ValueError):
            automorphism_group(Graph(0, frozenset()))


class TestOrbitPartition:
    def test_cycle_single_orbit(self):
        assert orbit_partition(cycle(7)).cells == (tuple(range(7)),)

    def test_path5(self):
        assert orbit_partition(path(5)).cells == ((0, 4), (1, 3), (2,))

    def test_star_center_apart(self):
        assert orbit_partition(star(4)).cells == ((1, 2, 3, 4), (0,))


class TestBruteForce:
    def test_path4(self):
        assert brute_force_orbits(path(4)).cells == ((0, 3), (1, 2))

    def test_cycle5(self):
        assert brute_force_orbits(cycle(5)).cells == (tuple(range(5)),)

    def test_path3(self):
        assert brute_force_orbits(path(3)).cells == ((0, 2), (1,))

    def test_refuses_large(self):
        with pytest.raises(ValueError):
            brute_force_orbits(path(9))


class TestTransitivity:
    def test_vertex_transitive(self):
        assert is_vertex_transitive(cycle(9))
        assert not is_vertex_transitive(path(5))
        assert is_vertex_transitive(moebius_ladder(5))

    def test_edge_transitive(self):
        assert is_edge_transitive(circular_ladder(4))
        assert not is_edge_transitive(circular_ladder(3))
        assert is_edge_transitive(star(3))

    def test_edgeless_rejected(self):
        with pytest.raises(ValueError):
            is_edge_transitive(Graph(1, frozenset()))


def test_exhaustive_oracle_n4():
    for g in all_connected_graphs(4):
        assert orbit_partition(g) == brute_force_orbits(g)


@settings(max_examples=120, deadline=None)
@given(connected_graphs(max_n=7))
def test_orbits_match_brute_force(g):
    assert orbit_partition(g) == brute_force_orbits(g)


@settings(max_examples=80, deadline=None)
@given(connected_graphs(max_n=7))
def test_group_properties(g):
    group = automorphism_group(g)
    assert math.factorial(g.n) % group.order == 0
    assert group.orbits.refines(equitable_refinement(g))
    for gen in group.generators:
        assert gen.preserves_edges(g)
    deg = g.degrees()
    for cell in group.orbits.cells:
        assert len({deg[v] for v in cell}) == 1
