from fractions import Fraction

import pytest
from hypothesis import given, settings

from helpers import connected_graphs, tied_star, vertex_permutations
from orbigraph.aut import Partition, orbit_partition, unit_partition
from orbigraph.constructions import complete, cycle, generalized_sun, path, star, strong_prism
from orbigraph.graph_core import Graph
from orbigraph.orbital import (
    DivisorMatrix,
    divisor_matrix,
    entropy_of,
    omega_from_divisor,
    orbit_divisor_matrix,
    orbit_profile,
    orbitally_homothetic,
    orbitally_similar,
)

F = Fraction

SPATH = ((0, 1, 0), (1, 0, 1), (0, 2, 0))
STIED = ((1, 0, 1), (0, 0, 1), (2, 2, 0))


class TestDivisorMatrix:
    def test_path5(self):
        dm = orbit_divisor_matrix(path(5))
        assert dm.entries == SPATH
        assert dm.sizes == (2, 2, 1)

    def test_vertex_transitive_scalar(self):
        dm = divisor_matrix(cycle(8), unit_partition(8))
        assert dm.entries == ((2,),)

    def test_tied_star(self):
        g = tied_star()
        assert orbit_partition(g).cells == ((0, 4), (2, 3), (1,))
        assert orbit_divisor_matrix(g).entries == STIED

    def test_row_sums_are_degrees(self):
        dm = orbit_divisor_matrix(star(4))
        assert dm.row_sums() == (1, 4)

    def test_not_equitable_reported(self):
        with pytest.raises(ValueError, match="not equitable"):
            divisor_matrix(path(5), unit_partition(5))

    def test_disconnected_rejected(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        with pytest.raises(ValueError):
            divisor_matrix(g, unit_partition(4))

    def test_wrong_vertex_count(self):
        with pytest.raises(ValueError):
            divisor_matrix(path(5), unit_partition(4))

    def test_json_round_trip(self):
        dm = orbit_divisor_matrix(path(5))
        assert DivisorMatrix.from_dict(dm.as_dict()) == dm


class TestEntropy:
    def test_half_quarter_quarter(self):
        assert entropy_of((F(2, 4), F(1, 4), F(1, 4))) == pytest.approx(1.5, abs=1e-12)

    def test_single_cell(self):
        assert entropy_of((F(1),)) == 0.0

    def test_two_fifths_value(self):
        assert entropy_of((F(8, 20), F(8, 20), F(4, 20))) == pytest.approx(1.5219, abs=5e-5)

    def test_equal_vectors_bit_identical(self):
        a = entropy_of((F(2, 5), F(2, 5), F(1, 5)))
        b = entropy_of((F(4, 10), F(4, 10), F(2, 10)))
        assert a == b

    def test_rejects_non_probability(self):
        with pytest.raises(ValueError):
            entropy_of((F(1, 2), F(1, 4)))
        with pytest.raises(ValueError):
            entropy_of((F(3, 2), F(-1, 2)))
        with pytest.raises(ValueError):
            entropy_of(())


class TestOrbitProfile:
    def test_path5(self):
        prof = orbit_profile(path(5))
        assert prof.omega == (F(2, 5), F(2, 5), F(1, 5))
        assert prof.entropy == pytest.approx(1.5219, abs=5e-5)

    def test_vertex_transitive(self):
        prof = orbit_profile(cycle(11))
        assert prof.omega == (F(1),)
        assert prof.entropy == 0.0

    def test_disconnected_rejected(self):
        with pytest.raises(ValueError):
            orbit_profile(Graph.from_edges(4, [(0, 1), (2, 3)]))


class TestSimilarity:
    def test_cycles_similar(self):
        verdict = orbitally_similar(cycle(4), cycle(8))
        assert verdict.similar
        assert verdict.common_matrix.entries == ((2,),)

    def test_path_vs_tied_star_dissimilar(self):
        assert not orbitally_similar(path(5), tied_star()).similar

    def test_reflexive_identity_witness(self):
        g = tied_star()
        verdict = orbitally_similar(g, g)
        assert verdict.similar and verdict.witness == (0, 1, 2)

    def test_strong_prisms_of_similar_bases(self):
        verdict = orbitally_similar(strong_prism(cycle(4)), strong_prism(cycle(8)))
        assert verdict.similar
        assert verdict.common_matrix.entries == ((5,),)

    def test_witness_equalizes_matrices(self):
        g, h = generalized_sun(3, 1), generalized_sun(5, 1)
        verdict = orbitally_similar(g, h)
        assert verdict.similar
        sg = orbit_divisor_matrix(g)
        sh = orbit_divisor_matrix(h)
        pi = verdict.witness
        for i in range(sh.ell):
            for j in range(sh.ell):
                assert sg.entries[pi[i]][pi[j]] == sh.entries[i][j]

    def test_symmetric(self):
        assert orbitally_similar(tied_star(), path(5)).similar == orbitally_similar(
            path(5), tied_star()
        ).similar

    def test_cell_count_cap(self):
        with pytest.raises(ValueError, match="cap"):
            orbitally_similar(path(25), path(25))

    def test_disconnected_rejected(self):
        with pytest.raises(ValueError):
            orbitally_similar(Graph.from_edges(4, [(0, 1), (2, 3)]), path(4))


class TestHomothety:
    def test_path_vs_tied_star(self):
        assert orbitally_homothetic(path(5), tied_star())

    def test_single_orbit_graphs(self):
        assert orbitally_homothetic(complete(3), cycle(10))

    def test_path_vs_star(self):
        assert not orbitally_homothetic(path(5), star(4))


class TestOmegaFromDivisor:
    def test_worked_example(self):
        assert omega_from_divisor([[2, 1, 0], [3, 0, 1], [0, 1, 0]]) == (F(3, 5), F(1, 5), F(1, 5))

    def test_scalar(self):
        assert omega_from_divisor([[7]]) == (F(1),)

    def test_path5(self):
        assert omega_from_divisor(SPATH) == (F(2, 5), F(2, 5), F(1, 5))

    def test_not_strongly_connected(self):
        with pytest.raises(ValueError, match="strongly connected"):
            omega_from_divisor([[1, 0], [0, 2]])

    def test_one_sided_arc(self):
        with pytest.raises(ValueError, match="inconsistent"):
            omega_from_divisor([[0, 1], [0, 0]])

    def test_inconsistent_cycle_ratios(self):
        with pytest.raises(ValueError, match="inconsistent size ratios"):
            omega_from_divisor([[0, 1, 1], [2, 0, 1], [1, 1, 0]])

    def test_rejects_negative_and_ragged(self):
        with pytest.raises(ValueError):
            omega_from_divisor([[0, -1], [1, 0]])
        with pytest.raises(ValueError):
            omega_from_divisor([[0, 1], [1]])


@settings(max_examples=80, deadline=None)
@given(connected_graphs(max_n=7))
def test_edge_count_balance(g):
    dm = orbit_divisor_matrix(g)
    for i in range(dm.ell):
        for j in range(dm.ell):
            assert dm.sizes[i] * dm.entries[i][j] == dm.sizes[j] * dm.entries[j][i]
    # row sums are the per-cell degrees
    deg = g.degrees()
    for i, cell in enumerate(orbit_partition(g).cells):
        assert sum(dm.entries[i]) == deg[cell[0]]


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=7))
def test_omega_recovery_matches_profile(g):
    dm = orbit_divisor_matrix(g)
    recovered = omega_from_divisor(dm.entries)
    assert sorted(recovered, reverse=True) == list(orbit_profile(g).omega)
    assert recovered == tuple(F(s, g.n) for s in dm.sizes)


@settings(max_examples=40, deadline=None)
@given(connected_graphs(min_n=2, max_n=6), vertex_permutations(6))
def test_isomorphic_graphs_similar_same_order(g, perm):
    image = [p for p in perm if p < g.n]
    h = g.relabel(image)
    verdict = orbitally_similar(g, h)
    assert verdict.similar
    assert g.n == h.n
    assert orbitally_homothetic(g, h)
    assert orbit_profile(g).entropy == orbit_profile(h).entropy


def test_similarity_implies_homothety_implies_entropy():
    pairs = [(cycle(3), cycle(10)), (path(5), path(7)), (star(3), star(5))]
    for g, h in pairs:
        if orbitally_similar(g, h).similar:
            assert orbitally_homothetic(g, h)
        if orbitally_homothetic(g, h):
            assert orbit_profile(g).entropy == pytest.approx(
                orbit_profile(h).entropy, abs=1e-12
            )


def test_divisor_with_explicit_alternative_order():
    # relabeling the two equal-size orbits of the path permutes the matrix
    cells = [[1, 3], [0, 4], [2]]
    dm = divisor_matrix(path(5), Partition.from_cells(cells))
    assert dm.entries == ((0, 1, 1), (1, 0, 0), (2, 0, 0))
