"""Spectral radius and principal eigenvector, by adjacency and by divisor matrix.

Power iteration is used throughout, always on the matrix shifted by the
identity: connected graphs can be bipartite and divisor matrices periodic,
and the shift makes the iteration matrix primitive in both cases while
moving the Perron root by exactly one.  The divisor route uses the
Collatz-Wielandt quotient bounds as its stopping rule because the matrix
need not be symmetric.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

import numpy as np

from .aut import Partition, orbit_partition
from .graph_core import Graph, is_connected
from .orbital import DivisorMatrix, divisor_matrix

DEFAULT_TOL = 1e-12
MAX_ITERATIONS = 10**6


class ConvergenceError(RuntimeError):
    """Power iteration failed to converge within the iteration cap."""


@dataclass(frozen=True)
class PerronData:
    """Spectral radius with the normalized positive eigenvector.

    vector sums to 1 and is constant on every orbit; orbit_values collects
    the per-orbit constants (cell means) and gamma is the largest over the
    smallest component.
    """

    rho: float
    vector: tuple[float, ...]
    gamma: float
    orbit_values: tuple[float, ...]

    def as_dict(self) -> dict:
        return {
            "rho": self.rho,
            "vector": list(self.vector),
            "gamma": self.gamma,
            "orbit_values": list(self.orbit_values),
        }

    def dumps(self) -> str:
        return json.dumps(self.as_dict(), separators=(", ", ": "))


@dataclass(frozen=True)
class OrbitConstancyReport:
    """In-orbit spread of the principal eigenvector and the quotient residual."""

    cell_spreads: tuple[float, ...]
    max_spread: float
    quotient_residual: float
    ok: bool


def _adjacency_array(graph: Graph) -> np.ndarray:
    a = np.zeros((graph.n, graph.n))
    for u, v in graph.edges:
        a[u, v] = 1.0
        a[v, u] = 1.0
    return a


def spectral_radius_adjacency(
    graph: Graph, tol: float = DEFAULT_TOL, partition: Partition | None = None
) -> PerronData:
    """Perron data of a connected graph via shifted power iteration.

    Converged when successive eigenvalue estimates differ by less than tol,
    the residual ||A x - rho x||_inf drops below tol, and the per-component
    Collatz-Wielandt quotients of the shifted matrix agree within tol; the
    last condition bounds the relative error of every component, which the
    principal ratio needs because its denominator is the smallest one.  The
    orbit partition is computed when not supplied.
    """
    if not is_connected(graph):
        raise ValueError("spectral radius defined here for connected graphs only")
    if graph.n == 0:
        raise ValueError("empty graph")
    if partition is None:
        partition = orbit_partition(graph)
    if graph.n == 1:
        return PerronData(rho=0.0, vector=(1.0,), gamma=1.0, orbit_values=(1.0,))
    a = _adjacency_array(graph)
    x = np.full(graph.n, 1.0 / graph.n)
    prev = np.inf
    converged = False
    for _ in range(MAX_ITERATIONS):
        y = a @ x
        z = y + x
        quotients = z / x
        rho = float(x @ y / (x @ x))
        residual = float(np.max(np.abs(y - rho * x)))
        spread = float(quotients.max() - quotients.min())
        converged = abs(rho - prev) < tol and residual < tol and spread < tol
        prev = rho
        x = z / z.sum()
        if converged:
            break
    if not converged:
        raise ConvergenceError(f"no convergence within {MAX_ITERATIONS} iterations")
    y = a @ x
    rho = float(x @ y / (x @ x))
    x = x / x.sum()
    vector = tuple(float(t) for t in x)
    alpha = tuple(float(np.mean([x[v] for v in cell])) for cell in partition.cells)
    gamma = float(max(vector) / min(vector))
    return PerronData(rho=rho, vector=vector, gamma=gamma, orbit_values=alpha)


def _is_irreducible(entries: tuple[tuple[int, ...], ...]) -> bool:
    ell = len(entries)
    for transpose in (False, True):
        seen = [False] * ell
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for v in range(ell):
                value = entries[v][u] if transpose else entries[u][v]
                if v != u and value > 0 and not seen[v]:
                    seen[v] = True
                    count += 1
                    queue.append(v)
        if count != ell:
            return False
    return True


def spectral_radius_divisor(dm: DivisorMatrix, tol: float = DEFAULT_TOL) -> float:
    """Largest eigenvalue of an irreducible nonnegative divisor matrix.

    Power iteration on the identity-shifted matrix; the Collatz-Wielandt
    bounds min(y/x) <= rho <= max(y/x) bracket the answer, so iteration
    stops once the bracket is narrower than tol.
    """
    if not _is_irreducible(dm.entries):
        raise ValueError("divisor matrix is reducible; spectral radius not computed")
    if dm.ell == 1:
        return float(dm.entries[0][0])
    b = np.array(dm.entries, dtype=float) + np.eye(dm.ell)
    x = np.full(dm.ell, 1.0 / dm.ell)
    for _ in range(MAX_ITERATIONS):
        y = b @ x
        quotients = y / x
        lo = float(quotients.min())
        hi = float(quotients.max())
        x = y / y.sum()
        if hi - lo < tol:
            return (lo + hi) / 2.0 - 1.0
    raise ConvergenceError(f"no convergence within {MAX_ITERATIONS} iterations")


def principal_ratio(graph: Graph, tol: float = DEFAULT_TOL) -> float:
    """Largest over smallest component of the principal eigenvector (>= 1)."""
    return spectral_radius_adjacency(graph, tol).gamma


def check_orbit_constancy(
    graph: Graph, partition: Partition | None = None, tol: float = 1e-9
) -> OrbitConstancyReport:
    """Verify the principal eigenvector is constant on each orbit cell and
    that the per-cell constants form an eigenvector of the divisor matrix."""
    if partition is None:
        partition = orbit_partition(graph)
    data = spectral_radius_adjacency(graph, partition=partition)
    x = data.vector
    spreads = tuple(max(x[v] for v in cell) - min(x[v] for v in cell) for cell in partition.cells)
    dm = divisor_matrix(graph, partition)
    s = np.array(dm.entries, dtype=float)
    alpha = np.array(data.orbit_values)
    residual = float(np.max(np.abs(s @ alpha - data.rho * alpha)))
    max_spread = max(spreads)
    return OrbitConstancyReport(
        cell_spreads=spreads,
        max_spread=max_spread,
        quotient_residual=residual,
        ok=max_spread < tol and residual < tol,
    )
