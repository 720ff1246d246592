"""
Exact automorphism group order by individualisation and refinement.

The search follows the first path of the search tree down to a discrete partition.
At each level the orbit of the individualised vertex under the pointwise stabiliser of
the vertices above it is found by searching the sibling subtrees for a leaf equivalent
to the first leaf; the group order is the product of those orbit lengths.
"""

from collections import defaultdict
from dataclasses import dataclass
from itertools import permutations
from math import prod
from typing import Iterator, Sequence, TypeAlias

from .exceptions import SizeLimitExceeded
from .graph import Graph, bits, mask_of

NAIVE_LIMIT = 8

Cell: TypeAlias = tuple[int, ...]
Partition: TypeAlias = tuple[Cell, ...]
Permutation: TypeAlias = tuple[int, ...]


@dataclass(frozen=True)
class AutResult:
    order: int
    orbits: tuple[Cell, ...]
    generators: tuple[Permutation, ...]

    def orbit_of(self, v: int) -> Cell:
        for orbit in self.orbits:
            if v in orbit:
                return orbit
        raise ValueError(f'vertex {v} is in no orbit')


def is_automorphism(g: Graph, perm: Sequence[int]) -> bool:
    return all(
        mask_of(perm[u] for u in bits(row)) == g.adj[perm[v]] for v, row in enumerate(g.adj)
    )


def refine(g: Graph, partition: Partition) -> Partition:
    """
    Refine an ordered partition to the coarsest equitable partition below it.

    Cells are split by the number of neighbours each vertex has in a splitter cell, with
    fragments ordered by that count, so the result depends on vertex labels only through
    the input partition.
    """
    cells = list(partition)
    splitter = 0
    while splitter < len(cells):
        target = mask_of(cells[splitter])
        refined: list[Cell] = []
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            by_count: defaultdict[int, list[int]] = defaultdict(list)
            for v in cell:
                by_count[(g.adj[v] & target).bit_count()].append(v)
            refined.extend(tuple(by_count[count]) for count in sorted(by_count))
        if len(refined) > len(cells):
            cells = refined
            splitter = 0
        else:
            splitter += 1
    return tuple(cells)


def individualise(partition: Partition, v: int) -> Partition:
    cells: list[Cell] = []
    for cell in partition:
        if v in cell:
            cells.append((v,))
            cells.append(tuple(u for u in cell if u != v))
        else:
            cells.append(cell)
    return tuple(cells)


def target_cell(partition: Partition) -> int | None:
    """Index of the first largest non-singleton cell, or None if the partition is discrete."""
    best = None
    for index, cell in enumerate(partition):
        if len(cell) > 1 and (best is None or len(cell) > len(partition[best])):
            best = index
    return best


def node_invariant(g: Graph, partition: Partition) -> tuple[tuple[int, ...], ...]:
    """Cell sizes and the quotient matrix of an equitable partition."""
    masks = [mask_of(cell) for cell in partition]
    return tuple(
        (len(cell), *((g.adj[cell[0]] & mask).bit_count() for mask in masks))
        for cell in partition
    )


def search_leaves(g: Graph, partition: Partition) -> Iterator[Partition]:
    """Yield every discrete partition below ``partition``, in search order."""
    index = target_cell(partition)
    if index is None:
        yield partition
        return
    for v in partition[index]:
        yield from search_leaves(g, refine(g, individualise(partition, v)))


class _Orbits:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, v: int) -> int:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def merge(self, perm: Permutation) -> None:
        for v, image in enumerate(perm):
            a, b = self.find(v), self.find(image)
            if a != b:
                self.parent[max(a, b)] = min(a, b)

    def cells(self) -> tuple[Cell, ...]:
        groups: defaultdict[int, list[int]] = defaultdict(list)
        for v in range(len(self.parent)):
            groups[self.find(v)].append(v)
        return tuple(tuple(group) for group in sorted(groups.values()))


class _Search:
    def __init__(self, g: Graph) -> None:
        self.g = g
        self.path: list[Partition] = [refine(g, (tuple(range(g.n)),))]
        self.invariants = [node_invariant(g, self.path[0])]
        self.chosen: list[int] = []
        self.cells: list[Cell] = []
        while (index := target_cell(self.path[-1])) is not None:
            self.cells.append(self.path[-1][index])
            v = min(self.cells[-1])
            self.chosen.append(v)
            self.path.append(refine(g, individualise(self.path[-1], v)))
            self.invariants.append(node_invariant(self.g, self.path[-1]))
        self.first_leaf = [cell[0] for cell in self.path[-1]]

    def find_automorphism(self, partition: Partition, depth: int) -> Permutation | None:
        if node_invariant(self.g, partition) != self.invariants[depth]:
            return None
        index = target_cell(partition)
        if index is None:
            perm = [0] * self.g.n
            for source, (image,) in zip(self.first_leaf, partition):
                perm[source] = image
            return tuple(perm) if is_automorphism(self.g, perm) else None
        for v in partition[index]:
            found = self.find_automorphism(refine(self.g, individualise(partition, v)), depth + 1)
            if found is not None:
                return found
        return None


def aut_order(g: Graph) -> AutResult:
    """Exact order, vertex orbits and a generating set of the automorphism group."""
    search = _Search(g)
    generators: list[Permutation] = []
    orbit_lengths = []
    for depth in reversed(range(len(search.chosen))):
        parent = search.path[depth]
        v = search.chosen[depth]
        cell = search.cells[depth]
        orbits = _Orbits(g.n)
        for perm in generators:
            orbits.merge(perm)
        rejected: set[int] = set()
        for w in cell:
            root = orbits.find(w)
            if root == orbits.find(v) or root in rejected:
                continue
            found = search.find_automorphism(refine(g, individualise(parent, w)), depth + 1)
            if found is None:
                rejected.add(root)
            else:
                generators.append(found)
                orbits.merge(found)
                rejected = {orbits.find(r) for r in rejected}
        orbit_lengths.append(sum(1 for w in cell if orbits.find(w) == orbits.find(v)))

    orbits = _Orbits(g.n)
    for perm in generators:
        orbits.merge(perm)
    return AutResult(prod(orbit_lengths), orbits.cells(), tuple(generators))


def aut_order_naive(g: Graph) -> int:
    """Count automorphisms by trying every permutation of the vertices."""
    if g.n > NAIVE_LIMIT:
        raise SizeLimitExceeded('naive automorphism counting', g.n, NAIVE_LIMIT)
    return sum(1 for perm in permutations(range(g.n)) if is_automorphism(g, perm))


def orbit_size(g: Graph, v: int) -> int:
    g.check_vertex(v)
    return len(aut_order(g).orbit_of(v))
