import math

import numpy as np
import pytest
from hypothesis import given, settings

from helpers import connected_graphs, tied_star
from orbigraph.aut import orbit_partition, unit_partition
from orbigraph.constructions import complete, cycle, cycle_with_cliques, path, star
from orbigraph.graph_core import Graph, degree_stats
from orbigraph.orbital import DivisorMatrix, orbit_divisor_matrix
from orbigraph.spectral import (
    check_orbit_constancy,
    principal_ratio,
    spectral_radius_adjacency,
    spectral_radius_divisor,
)


def rho_dense_oracle(graph: Graph) -> float:
    """Independent route: dense symmetric eigensolver on the adjacency matrix."""
    a = np.zeros((graph.n, graph.n))
    for u, v in graph.edges:
        a[u, v] = a[v, u] = 1.0
    return float(np.linalg.eigvalsh(a)[-1])


def rho_charpoly_oracle(entries) -> float:
    """Largest real root of the characteristic polynomial, ell <= 3 only."""
    ell = len(entries)
    m = [list(map(int, row)) for row in entries]
    if ell == 1:
        return float(m[0][0])
    if ell == 2:
        tr = m[0][0] + m[1][1]
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        return (tr + math.sqrt(tr * tr - 4 * det)) / 2
    a, b, c = m[0], m[1], m[2]
    trace = a[0] + b[1] + c[2]
    minors = (
        b[1] * c[2] - b[2] * c[1] + a[0] * c[2] - a[2] * c[0] + a[0] * b[1] - a[1] * b[0]
    )
    det = (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )
    roots = np.roots([1.0, -trace, minors, -det])
    return float(max(r.real for r in roots if abs(r.imag) < 1e-9))


class TestAdjacencyRadius:
    @pytest.mark.parametrize("n", [3, 5, 8, 12])
    def test_cycles(self, n):
        assert spectral_radius_adjacency(cycle(n)).rho == pytest.approx(2.0, abs=1e-9)

    @pytest.mark.parametrize("n", [2, 4, 7])
    def test_complete(self, n):
        assert spectral_radius_adjacency(complete(n)).rho == pytest.approx(n - 1, abs=1e-9)

    def test_path5_closed_form(self):
        assert spectral_radius_adjacency(path(5)).rho == pytest.approx(
            2 * math.cos(math.pi / 6), abs=1e-9
        )

    def test_single_vertex(self):
        data = spectral_radius_adjacency(Graph(1, frozenset()))
        assert data.rho == 0.0 and data.vector == (1.0,) and data.gamma == 1.0

    def test_vector_normalized_positive(self):
        data = spectral_radius_adjacency(tied_star())
        assert sum(data.vector) == pytest.approx(1.0, abs=1e-12)
        assert all(t > 0 for t in data.vector)

    def test_residual_small(self):
        g = tied_star()
        data = spectral_radius_adjacency(g)
        a = np.zeros((5, 5))
        for u, v in g.edges:
            a[u, v] = a[v, u] = 1.0
        x = np.array(data.vector)
        assert float(np.max(np.abs(a @ x - data.rho * x))) < 1e-11

    def test_disconnected_rejected(self):
        with pytest.raises(ValueError):
            spectral_radius_adjacency(Graph.from_edges(4, [(0, 1), (2, 3)]))


class TestDivisorRadius:
    def test_scalar(self):
        assert spectral_radius_divisor(DivisorMatrix(1, ((2,),), (5,))) == 2.0

    def test_two_by_two_sun_matrix(self):
        dm = DivisorMatrix(2, ((0, 1), (1, 2)), (4, 4))
        assert spectral_radius_divisor(dm) == pytest.approx(1 + math.sqrt(2), abs=1e-9)

    def test_tied_star_cross_oracle(self):
        g = tied_star()
        dm = orbit_divisor_matrix(g)
        rho_div = spectral_radius_divisor(dm)
        assert rho_div == pytest.approx(spectral_radius_adjacency(g).rho, abs=1e-9)
        assert rho_div == pytest.approx(rho_charpoly_oracle(dm.entries), abs=1e-9)

    def test_reducible_rejected(self):
        with pytest.raises(ValueError, match="reducible"):
            spectral_radius_divisor(DivisorMatrix(2, ((1, 0), (0, 2)), (1, 1)))
        with pytest.raises(ValueError, match="reducible"):
            spectral_radius_divisor(DivisorMatrix(2, ((0, 1), (0, 1)), (1, 1)))


class TestPrincipalRatio:
    def test_vertex_transitive_is_one(self):
        assert principal_ratio(cycle(6)) == pytest.approx(1.0, abs=1e-12)

    def test_path3_sqrt2(self):
        assert principal_ratio(path(3)) == pytest.approx(math.sqrt(2), abs=1e-9)

    def test_isomorphism_invariant(self):
        g = path(5)
        h = g.relabel([4, 2, 0, 1, 3])
        assert principal_ratio(g) == pytest.approx(principal_ratio(h), abs=1e-9)


class TestOrbitConstancy:
    def test_path5(self):
        report = check_orbit_constancy(path(5))
        assert report.ok and report.max_spread < 1e-9

    def test_cycle6_single_cell(self):
        report = check_orbit_constancy(cycle(6))
        assert report.ok and len(report.cell_spreads) == 1

    def test_generalized_sun_quotient_residual(self):
        report = check_orbit_constancy(cycle_with_cliques(5, 2, 3))
        assert report.ok and report.quotient_residual < 1e-9

    def test_non_orbit_partition_flagged(self):
        # the unit partition of a non-regular graph is not even equitable
        with pytest.raises(ValueError):
            check_orbit_constancy(path(5), unit_partition(5))


@settings(max_examples=60, deadline=None)
@given(connected_graphs(min_n=2, max_n=7))
def test_lemma_agreement_and_degree_sandwich(g):
    data = spectral_radius_adjacency(g)
    rho_div = spectral_radius_divisor(orbit_divisor_matrix(g))
    assert abs(data.rho - rho_div) < 1e-9
    assert data.rho == pytest.approx(rho_dense_oracle(g), abs=1e-9)
    stats = degree_stats(g)
    assert stats.min_degree - 1e-9 <= data.rho <= stats.max_degree + 1e-9
    assert data.gamma >= 1.0 - 1e-12


@settings(max_examples=40, deadline=None)
@given(connected_graphs(min_n=2, max_n=7))
def test_orbit_constancy_property(g):
    report = check_orbit_constancy(g, orbit_partition(g))
    assert report.ok
