"""Equitable refinement, automorphism groups, orbits, and transitivity tests.

The automorphism search is a classic individualization-refinement
backtracking: refine the current partition with color refinement, pick the
first smallest non-singleton cell, branch on its members in ascending
order, and prune subtrees whose refinement trace differs from the first
path or whose branch vertex is already known to lie in the orbit of an
earlier candidate.  The group order is the product, along the first path,
of the orbit sizes of the branch vertices under the stabilizer of the
preceding branch vertices (orbit-stabilizer chaining); no Schreier-Sims
machinery is needed at this scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _all_permutations
from typing import Iterable, Sequence

from .graph_core import Graph


@dataclass(frozen=True)
class Partition:
    """Ordered partition of {0, ..., n-1} into disjoint nonempty sorted cells."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for cell in self.cells:
            if not cell:
                raise ValueError("empty cell in partition")
            if list(cell) != sorted(cell):
                raise ValueError(f"cell {cell} not sorted ascending")
            if seen & set(cell):
                raise ValueError("cells are not disjoint")
            seen.update(cell)
        if seen != set(range(len(seen))) or (seen and max(seen) != len(seen) - 1):
            raise ValueError("cells do not cover a dense vertex range 0..n-1")

    @classmethod
    def from_cells(cls, cells: Iterable[Iterable[int]]) -> "Partition":
        return cls(tuple(tuple(sorted(cell)) for cell in cells))

    @property
    def n(self) -> int:
        return sum(len(cell) for cell in self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def cell_index(self) -> list[int]:
        """Map vertex -> index of its cell."""
        idx = [0] * self.n
        for i, cell in enumerate(self.cells):
            for v in cell:
                idx[v] = i
        return idx

    def canonical(self) -> "Partition":
        """Cells reordered by size descending, then smallest vertex ascending."""
        return Partition(tuple(sorted(self.cells, key=lambda c: (-len(c), c[0]))))

    def as_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(cell) for cell in self.cells)

    def refines(self, coarser: "Partition") -> bool:
        """True iff every cell of self is contained in one cell of coarser."""
        idx = coarser.cell_index()
        return all(len({idx[v] for v in cell}) == 1 for cell in self.cells)


@dataclass(frozen=True)
class Permutation:
    """Bijection on 0..n-1 in one-line notation."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError("image is not a bijection on 0..n-1")

    def __call__(self, v: int) -> int:
        return self.image[v]

    def __len__(self) -> int:
        return len(self.image)

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: v -> self(other(v))."""
        return Permutation(tuple(self.image[other.image[v]] for v in range(len(self.image))))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for v, w in enumerate(self.image):
            inv[w] = v
        return Permutation(tuple(inv))

    def preserves_edges(self, graph: Graph) -> bool:
        img = self.image
        return all((min(img[u], img[v]), max(img[u], img[v])) in graph.edges for u, v in graph.edges)


@dataclass(frozen=True)
class AutGroup:
    """Automorphism group given by generators, with order and vertex orbits."""

    generators: tuple[Permutation, ...]
    order: int
    orbits: Partition


def unit_partition(n: int) -> Partition:
    return Partition((tuple(range(n)),))


class _UnionFind:
    def __init__(self, items: Iterable) -> None:
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def groups(self) -> list[list]:
        by_root: dict = {}
        for x in self.parent:
            by_root.setdefault(self.find(x), []).append(x)
        return list(by_root.values())


def _refine(adj: Sequence[Sequence[int]], cells: list[list[int]]) -> tuple[list[list[int]], tuple]:
    """Coarsest equitable refinement of `cells`, plus a label-invariant trace.

    Vertices are regrouped by the multiset of their neighbors' cell indices
    until stable.  Sub-cells are ordered by their (sorted) neighbor-color
    keys, which depend only on cell positions, never on vertex labels, so
    the trace can be compared across isomorphic search branches.
    """
    n = sum(len(c) for c in cells)
    color = [0] * n
    for i, cell in enumerate(cells):
        for v in cell:
            color[v] = i
    trace: list[tuple] = []
    while True:
        split_events: list[tuple] = []
        new_cells: list[list[int]] = []
        for i, cell in enumerate(cells):
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                key = tuple(sorted(color[w] for w in adj[v]))
                groups.setdefault(key, []).append(v)
            if len(groups) == 1:
                new_cells.append(cell)
                continue
            parts = sorted(groups.items())
            split_events.append((i, tuple((key, len(vs)) for key, vs in parts)))
            new_cells.extend(vs for _, vs in parts)
        if not split_events:
            break
        trace.append(tuple(split_events))
        cells = new_cells
        for i, cell in enumerate(cells):
            for v in cell:
                color[v] = i
    trace.append(tuple(len(c) for c in cells))
    return cells, tuple(trace)


def equitable_refinement(graph: Graph, seed: Partition | None = None) -> Partition:
    """Coarsest equitable partition refining `seed` (trivial seed by default).

    Cells of the result are in canonical order (size descending, smallest
    vertex ascending).
    """
    if seed is None:
        seed = unit_partition(graph.n)
    if seed.n != graph.n:
        raise ValueError(f"seed partitions {seed.n} vertices, graph has {graph.n}")
    cells, _ = _refine(graph.adjacency(), [list(c) for c in seed.cells])
    return Partition.from_cells(cells).canonical()


def _target_cell(cells: list[list[int]]) -> int:
    """Index of the first non-singleton cell of minimum size, or -1 if discrete."""
    best = -1
    best_size = None
    for i, cell in enumerate(cells):
        if len(cell) > 1 and (best_size is None or len(cell) < best_size):
            best, best_size = i, len(cell)
    return best


def _individualize(cells: list[list[int]], cell_pos: int, v: int) -> list[list[int]]:
    cell = cells[cell_pos]
    rest = [w for w in cell if w != v]
    return cells[:cell_pos] + [[v], rest] + cells[cell_pos + 1 :]


def _orbit_of(v: int, generators: list[tuple[int, ...]]) -> set[int]:
    orbit = {v}
    frontier = [v]
    while frontier:
        u = frontier.pop()
        for g in generators:
            w = g[u]
            if w not in orbit:
                orbit.add(w)
                frontier.append(w)
    return orbit


class _AutSearch:
    """One individualization-refinement run over a fixed graph."""

    def __init__(self, graph: Graph) -> None:
        self.graph = graph
        self.adj = graph.adjacency()
        self.edges = graph.edges
        self.generators: list[tuple[int, ...]] = []
        self.first_leaf: list[int] | None = None
        self.first_traces: dict[int, tuple] = {}
        self.base: list[int] = []  # branch vertices along the first path

    def run(self) -> None:
        self._search([list(range(self.graph.n))], 0, True)

    def _is_automorphism(self, image: list[int]) -> bool:
        edges = self.edges
        for u, v in edges:
            a, b = image[u], image[v]
            if ((a, b) if a < b else (b, a)) not in edges:
                return False
        return True

    def _search(self, cells: list[list[int]], level: int, on_first_path: bool):
        cells, trace = _refine(self.adj, cells)
        if on_first_path:
            self.first_traces[level] = trace
        elif trace != self.first_traces.get(level):
            return None
        target = _target_cell(cells)
        if target < 0:
            leaf = [v for cell in cells for v in cell]
            if self.first_leaf is None:
                self.first_leaf = leaf
                return None
            image = [0] * len(leaf)
            for a, b in zip(self.first_leaf, leaf):
                image[a] = b
            if self._is_automorphism(image):
                g = tuple(image)
                self.generators.append(g)
                return g
            return None
        members = cells[target]
        if on_first_path:
            b = members[0]
            self.base.append(b)
            prefix = self.base[:-1]
            self._search(_individualize(cells, target, b), level + 1, True)
            for v in members[1:]:
                fixing = [g for g in self.generators if all(g[p] == p for p in prefix)]
                if v in _orbit_of(b, fixing):
                    continue
                self._search(_individualize(cells, target, v), level + 1, False)
            return None
        for v in members:
            found = self._search(_individualize(cells, target, v), level + 1, False)
            if found is not None:
                # Bubble up to the first-path ancestor: one automorphism per
                # branch candidate suffices for orbit closure there.
                return found
        return None


@lru_cache(maxsize=256)
def automorphism_group(graph: Graph) -> AutGroup:
    """Generators, order, and vertex orbits of Aut(graph).

    Intended for desk scale: arbitrary graphs up to a few dozen vertices,
    refinement-friendly graphs well beyond.
    """
    if graph.n == 0:
        raise ValueError("automorphism group undefined for the empty graph")
    search = _AutSearch(graph)
    search.run()
    generators = search.generators
    order = 1
    for i, b in enumerate(search.base):
        prefix = search.base[:i]
        fixing = [g for g in generators if all(g[p] == p for p in prefix)]
        order *= len(_orbit_of(b, fixing))
    uf = _UnionFind(range(graph.n))
    for g in generators:
        for v in range(graph.n):
            uf.union(v, g[v])
    orbits = Partition.from_cells(uf.groups()).canonical()
    return AutGroup(
        generators=tuple(Permutation(g) for g in generators),
        order=order,
        orbits=orbits,
    )


def orbit_partition(graph: Graph) -> Partition:
    """Vertex orbits under Aut(graph), cells in canonical order."""
    return automorphism_group(graph).orbits


def brute_force_orbits(graph: Graph) -> Partition:
    """Orbit partition by exhaustive enumeration of all n! permutations (n <= 8)."""
    if graph.n > 8:
        raise ValueError(f"brute force refused for n={graph.n} > 8")
    if graph.n == 0:
        raise ValueError("empty graph")
    edges = graph.edges
    uf = _UnionFind(range(graph.n))
    for img in _all_permutations(range(graph.n)):
        ok = True
        for u, v in edges:
            a, b = img[u], img[v]
            if ((a, b) if a < b else (b, a)) not in edges:
                ok = False
                break
        if ok:
            for v in range(graph.n):
                uf.union(v, img[v])
    return Partition.from_cells(uf.groups()).canonical()


def is_vertex_transitive(graph: Graph) -> bool:
    """True iff the automorphism group has a single vertex orbit."""
    return len(orbit_partition(graph)) == 1


def is_edge_transitive(graph: Graph) -> bool:
    """True iff Aut(graph) acts transitively on the (unordered) edge set."""
    if graph.m == 0:
        raise ValueError("edge transitivity undefined for edgeless graphs")
    group = automorphism_group(graph)
    uf = _UnionFind(graph.edges)
    for g in group.generators:
        img = g.image
        for u, v in graph.edges:
            a, b = img[u], img[v]
            uf.union((u, v), ((a, b) if a < b else (b, a)))
    return len(uf.groups()) == 1
