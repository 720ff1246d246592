import logging
from collections import Counter
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import factorial, prod
from typing import Iterable, Iterator, Self

from .exceptions import DisconnectedGraph, GraphError, SizeLimitExceeded
from .graph import Edge, Graph, bits, is_connected

ENUMERATION_LIMIT = 7


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SpanningTree:
    host_n: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if len(self.edges) != self.host_n - 1:
            raise GraphError(
                f'a spanning tree on {self.host_n} vertices needs {self.host_n - 1} edges, '
                f'got {len(self.edges)}'
            )
        if any(u >= v for u, v in self.edges):
            raise GraphError('tree edges must be stored as (u, v) with u < v')
        if not is_connected(self.as_graph()):
            raise GraphError('tree edges do not connect every vertex')

    @classmethod
    def from_host(cls, g: Graph, edges: Iterable[Edge]) -> Self:
        normalised = frozenset(_edge(u, v) for u, v in edges)
        for u, v in sorted(normalised):
            if not g.has_edge(u, v):
                raise GraphError(f'({u}, {v}) is not an edge of the host graph')
        return cls(g.n, normalised)

    def as_graph(self) -> Graph:
        return Graph.from_edges(self.host_n, self.edges)

    @cached_property
    def tree_degrees(self) -> tuple[int, ...]:
        degrees = [0] * self.host_n
        for u, v in self.edges:
            degrees[u] += 1
            degrees[v] += 1
        return tuple(degrees)

    @cached_property
    def delta_max_t(self) -> int:
        return max(self.tree_degrees)

    @cached_property
    def _neighbours(self) -> tuple[tuple[int, ...], ...]:
        graph = self.as_graph()
        return tuple(graph.neighbours(v) for v in range(self.host_n))

    def centroids(self) -> tuple[int, ...]:
        """The one or two vertices whose removal leaves no component above n/2."""
        order = [0]
        parent = {0: -1}
        for v in order:
            for u in self._neighbours[v]:
                if u not in parent:
                    parent[u] = v
                    order.append(u)
        size = [1] * self.host_n
        heaviest = [0] * self.host_n
        for v in reversed(order[1:]):
            size[parent[v]] += size[v]
            heaviest[parent[v]] = max(heaviest[parent[v]], size[v])
        n = self.host_n
        return tuple(v for v in range(n) if 2 * max(heaviest[v], n - size[v]) <= n)

    def _rooted(self, v: int, parent: int) -> tuple[str, int]:
        children = [self._rooted(u, v) for u in self._neighbours[v] if u != parent]
        forms = sorted(form for form, _ in children)
        count = prod(c for _, c in children) * prod(map(factorial, Counter(forms).values()))
        return '(' + ''.join(forms) + ')', count

    def _halves(self) -> list[tuple[str, int]]:
        centroids = self.centroids()
        if len(centroids) == 1:
            return [self._rooted(centroids[0], -1)]
        a, b = centroids
        return [self._rooted(a, b), self._rooted(b, a)]

    def canonical_form(self) -> str:
        """A string equal for two trees exactly when they are isomorphic."""
        return '-'.join(sorted(form for form, _ in self._halves()))


@dataclass(frozen=True)
class GreedyTree:
    tree: SpanningTree
    sequence: tuple[int, ...]
    step_edges: tuple[tuple[Edge, ...], ...]

    @property
    def v0(self) -> int:
        return self.sequence[0]

    def validate(self, g: Graph) -> None:
        """Raise an ExceptionGroup listing every construction invariant that does not hold."""
        errors: list[Exception] = []
        v0 = self.v0
        expected_star = {_edge(v0, u) for u in bits(g.adj[v0])}
        if set(self.step_edges[0]) != expected_star:
            errors.append(ValueError(f'step 0 is not the full star at {v0}'))

        in_tree = 1 << v0 | g.adj[v0]
        degrees = [0] * g.n
        for u, v in self.step_edges[0]:
            degrees[u] += 1
            degrees[v] += 1
        for step, (v, edges) in enumerate(zip(self.sequence[1:], self.step_edges[1:]), 1):
            if not (in_tree >> v & 1 and degrees[v] == 1):
                errors.append(ValueError(f'step {step}: {v} is not a leaf of the tree so far'))
            outside = g.adj[v] & ~in_tree
            expected = {_edge(v, u) for u in bits(outside)}
            if not expected:
                errors.append(ValueError(f'step {step}: {v} has no edge leaving the tree'))
            if set(edges) != expected:
                errors.append(
                    ValueError(f'step {step}: edges are not those from {v} to new vertices')
                )
            for u, w in edges:
                degrees[u] += 1
                degrees[w] += 1
            in_tree |= outside

        for v in bits(in_tree):
            if degrees[v] == 1 and g.adj[v] & ~in_tree:
                errors.append(ValueError(f'construction stopped while leaf {v} could still grow'))
        if in_tree != (1 << g.n) - 1:
            errors.append(ValueError('the tree does not span the host graph'))
        if {e for edges in self.step_edges for e in edges} != self.tree.edges:
            errors.append(ValueError('step edges do not add up to the tree'))
        total = 1 + g.degrees[v0] + sum(self.tree.tree_degrees[v] - 1 for v in self.sequence[1:])
        if total != g.n:
            errors.append(ValueError(f'degree identity gives {total}, expected n={g.n}'))
        if errors:
            raise ExceptionGroup(f'greedy tree from {v0} is invalid', errors)


class TieBreak(StrEnum):
    LOWEST = 'lowest'
    HIGHEST = 'highest'


@dataclass
class _Growth:
    """A greedy tree part way through construction."""

    g: Graph
    in_tree: int
    degrees: list[int]
    sequence: list[int]
    steps: list[tuple[Edge, ...]]

    @classmethod
    def start(cls, g: Graph, v0: int) -> Self:
        growth = cls(g, 1 << v0, [0] * g.n, [], [])
        growth.grow(v0)
        return growth

    def eligible(self) -> list[int]:
        return [
            v
            for v in bits(self.in_tree)
            if self.degrees[v] == 1 and self.g.adj[v] & ~self.in_tree
        ]

    def grow(self, v: int) -> None:
        outside = self.g.adj[v] & ~self.in_tree
        edges = tuple(_edge(v, u) for u in bits(outside))
        for u in bits(outside):
            self.degrees[u] = 1
        self.degrees[v] += len(edges)
        self.in_tree |= outside
        self.sequence.append(v)
        self.steps.append(edges)

    def copy(self) -> '_Growth':
        return _Growth(
            self.g, self.in_tree, list(self.degrees), list(self.sequence), list(self.steps)
        )

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(e for edges in self.steps for e in edges)

    def finish(self) -> GreedyTree:
        # on a connected host no eligible leaf means every vertex has been reached
        assert self.in_tree == (1 << self.g.n) - 1, 'greedy construction did not span'
        return GreedyTree(
            SpanningTree(self.g.n, self.edge_set()), tuple(self.sequence), tuple(self.steps)
        )


def _check_start(g: Graph, v0: int) -> None:
    g.check_vertex(v0)
    if not is_connected(g):
        raise DisconnectedGraph('a spanning tree needs a connected graph')


def greedy_spanning_tree(
    g: Graph, v0: int, tie_break: TieBreak = TieBreak.LOWEST
) -> GreedyTree:
    """
    Start from the full star at ``v0`` and repeatedly grow an eligible leaf by every
    host edge that reaches a vertex not yet in the tree, until no leaf is eligible.
    """
    _check_start(g, v0)
    growth = _Growth.start(g, v0)
    while eligible := growth.eligible():
        growth.grow(eligible[0] if tie_break is TieBreak.LOWEST else eligible[-1])
    return growth.finish()


def greedy_spanning_trees(g: Graph, v0: int) -> Iterator[GreedyTree]:
    """Yield every distinct greedy spanning tree from ``v0`` over all choices of leaf."""
    _check_start(g, v0)
    seen: set[frozenset[Edge]] = set()
    finished: set[frozenset[Edge]] = set()
    pending = [_Growth.start(g, v0)]
    while pending:
        growth = pending.pop()
        eligible = growth.eligible()
        if not eligible:
            edges = growth.edge_set()
            if edges not in finished:
                finished.add(edges)
                yield growth.finish()
            continue
        for v in reversed(eligible):
            branch = growth.copy()
            branch.grow(v)
            key = branch.edge_set()
            if key not in seen:
                seen.add(key)
                pending.append(branch)


def bfs_tree(g: Graph, root: int) -> SpanningTree:
    _check_start(g, root)
    seen = 1 << root
    queue = [root]
    edges = []
    for v in queue:
        for u in bits(g.adj[v] & ~seen):
            seen |= 1 << u
            edges.append(_edge(v, u))
            queue.append(u)
    return SpanningTree(g.n, frozenset(edges))


def dfs_tree(g: Graph, root: int) -> SpanningTree:
    _check_start(g, root)
    seen = 1 << root
    stack = [root]
    edges = []
    while stack:
        unseen = g.adj[stack[-1]] & ~seen
        if not unseen:
            stack.pop()
            continue
        u = (unseen & -unseen).bit_length() - 1
        seen |= 1 << u
        edges.append(_edge(stack[-1], u))
        stack.append(u)
    return SpanningTree(g.n, frozenset(edges))


def tree_aut_exact(t: SpanningTree) -> int:
    """
    Count the automorphisms of ``t`` from rooted canonical forms at its centroid: each
    vertex contributes the factorial of the multiplicity of every class of isomorphic
    child subtrees, and two isomorphic halves at a centroid edge can be swapped.
    """
    halves = t._halves()
    count = prod(c for _, c in halves)
    if len(halves) == 2 and halves[0][0] == halves[1][0]:
        count *= 2
    return count


def tree_aut_upper(t: SpanningTree) -> int:
    # a single edge has two automorphisms but the product gives one
    if t.host_n < 3:
        raise GraphError('the tree automorphism estimate needs at least three vertices')
    return t.delta_max_t * prod(factorial(d - 1) for d in t.tree_degrees)


def embedding_upper_fs(g: Graph) -> Fraction:
    """Upper estimate for the number of copies of a spanning tree: prod d(v) / max degree."""
    if g.n < 2:
        raise GraphError('the spanning tree copy estimate needs at least two vertices')
    if not is_connected(g):
        raise DisconnectedGraph('the spanning tree copy estimate needs a connected graph')
    return Fraction(prod(g.degrees), max(g.degrees))


@dataclass(frozen=True)
class SpanningTrees:
    trees: tuple[SpanningTree, ...]
    truncated: bool

    def __iter__(self) -> Iterator[SpanningTree]:
        return iter(self.trees)

    def __len__(self) -> int:
        return len(self.trees)


def _is_forest(n: int, edges: Iterable[Edge]) -> bool:
    parent = list(range(n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in edges:
        a, b = find(u), find(v)
        if a == b:
            return False
        parent[a] = b
    return True


def all_spanning_trees(g: Graph, cap: int | None = None) -> SpanningTrees:
    """
    Every spanning tree of ``g`` exactly once, by trying each set of n-1 edges.
    Graphs above the enumeration limit are only accepted with an explicit cap.
    """
    if cap is None and g.n > ENUMERATION_LIMIT:
        raise SizeLimitExceeded('spanning tree enumeration without a cap', g.n, ENUMERATION_LIMIT)
    trees: list[SpanningTree] = []
    for subset in combinations(list(g.edges()), g.n - 1):
        if _is_forest(g.n, subset):
            if cap is not None and len(trees) == cap:
                logging.warning(f'spanning tree enumeration stopped at the cap of {cap}')
                return SpanningTrees(tuple(trees), truncated=True)
            trees.append(SpanningTree(g.n, frozenset(subset)))
    return SpanningTrees(tuple(trees), truncated=False)


def spanning_tree_count(g: Graph) -> int:
    """Kirchhoff's count: any cofactor of the Laplacian, by exact elimination."""
    size = g.n - 1
    matrix = [
        [Fraction(g.degrees[i]) if i == j else Fraction(-(g.adj[i] >> j & 1)) for j in range(size)]
        for i in range(size)
    ]
    determinant = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if matrix[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            matrix[col], matrix[pivot] = matrix[pivot], matrix[col]
            determinant = -determinant
        determinant *= matrix[col][col]
        for r in range(col + 1, size):
            factor = matrix[r][col] / matrix[col][col]
            if factor:
                for c in range(col, size):
                    matrix[r][c] -= factor * matrix[col][c]
    return int(determinant)
