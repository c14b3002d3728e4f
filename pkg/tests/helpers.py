"""Shared builders and hypothesis strategies for the test suite."""

from __future__ import annotations

from itertools import combinations

import hypothesis.strategies as st

from orbigraph.graph_core import Graph, is_connected


def tied_star() -> Graph:
    """Hub adjacent to all four other vertices, plus one rim edge (0-4).

    Orbits {0,4}, {2,3}, {1}; same orbit size distribution as the path P5
    but a different divisor matrix.
    """
    return Graph.from_edges(5, [(0, 1), (0, 4), (1, 2), (1, 3), (1, 4)])


def all_graphs(n: int):
    """Every labeled graph on 0..n-1."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))


def all_connected_graphs(n: int):
    return (g for g in all_graphs(n) if is_connected(g))


def brute_force_group_order(graph: Graph) -> int:
    """Count edge-preserving permutations directly (test oracle, n <= 7)."""
    from itertools import permutations

    assert graph.n <= 7
    count = 0
    edges = graph.edges
    for img in permutations(range(graph.n)):
        if all(((img[u], img[v]) if img[u] < img[v] else (img[v], img[u])) in edges for u, v in edges):
            count += 1
    return count


@st.composite
def connected_graphs(draw, min_n: int = 1, max_n: int = 7):
    """Random connected graph: random edge mask patched with a spanning path."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.integers(min_value=0, max_value=(1 << len(pairs)) - 1))
    edges = {p for i, p in enumerate(pairs) if mask >> i & 1}
    g = Graph(n, frozenset(edges))
    if not is_connected(g):
        order = draw(st.permutations(range(n)))
        for a, b in zip(order, order[1:]):
            edges.add((min(a, b), max(a, b)))
        g = Graph(n, frozenset(edges))
    return g


@st.composite
def vertex_permutations(draw, n: int):
    return tuple(draw(st.permutations(range(n))))
