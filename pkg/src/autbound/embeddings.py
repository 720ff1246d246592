from dataclasses import dataclass
from itertools import combinations

from .automorphisms import aut_order, aut_order_naive
from .exceptions import GraphError, SizeLimitExceeded
from .graph import Graph, bits

EMBEDDING_LIMIT = 8


@dataclass(frozen=True)
class EmbeddingCount:
    labeled: int
    copies: int
    aut_f: int

    @property
    def consistent(self) -> bool:
        return self.labeled == self.copies * self.aut_f


@dataclass(frozen=True)
class Theorem1Check:
    aut_g: int
    labeled: int
    copies: int
    aut_f: int

    @property
    def holds(self) -> bool:
        return self.aut_g <= self.labeled

    @property
    def tight(self) -> bool:
        return self.aut_g == self.labeled


def _check_pair(f: Graph, g: Graph) -> None:
    if f.n != g.n:
        raise GraphError(f'spanning subgraph has {f.n} vertices, host has {g.n}')
    if g.n > EMBEDDING_LIMIT:
        raise SizeLimitExceeded('embedding counting', g.n, EMBEDDING_LIMIT)


def _search_order(f: Graph) -> list[int]:
    """Vertices of ``f`` so that each one after a component's first has an earlier neighbour."""
    order: list[int] = []
    placed = 0
    while len(order) < f.n:
        root = max((v for v in range(f.n) if not placed >> v & 1), key=lambda v: f.degrees[v])
        placed |= 1 << root
        order.append(root)
        queue = [root]
        for v in queue:
            for u in bits(f.adj[v] & ~placed):
                placed |= 1 << u
                order.append(u)
                queue.append(u)
    return order


def _maps(f: Graph, g: Graph, degree_matched: bool, stop_at_first: bool) -> int:
    """
    Count bijections mapping every edge of ``f`` onto an edge of ``g``.
    With ``degree_matched`` each vertex may only go to a vertex of the same degree.
    """
    order = _search_order(f)
    earlier = []
    seen = 0
    for v in order:
        earlier.append(list(bits(f.adj[v] & seen)))
        seen |= 1 << v
    images = [0] * f.n
    full = (1 << f.n) - 1

    def extend(i: int, used: int) -> int:
        if i == f.n:
            return 1
        v = order[i]
        candidates = full & ~used
        for u in earlier[i]:
            candidates &= g.adj[images[u]]
        total = 0
        for w in bits(candidates):
            if degree_matched and g.degrees[w] != f.degrees[v]:
                continue
            images[v] = w
            total += extend(i + 1, used | 1 << w)
            if total and stop_at_first:
                break
        return total

    return extend(0, 0)


def count_labeled_embeddings(f: Graph, g: Graph) -> int:
    """|F -> G|: the number of labelled copies of ``f`` in ``g``."""
    _check_pair(f, g)
    return _maps(f, g, degree_matched=False, stop_at_first=False)


def _isomorphic(a: Graph, b: Graph) -> bool:
    if a.e != b.e or sorted(a.degrees) != sorted(b.degrees):
        return False
    # a bijection sending each edge of a to an edge of b is an isomorphism when e(a) = e(b)
    return _maps(a, b, degree_matched=True, stop_at_first=True) > 0


def count_embeddings(f: Graph, g: Graph) -> EmbeddingCount:
    """
    Count labelled copies by bijection search, subgraph copies by trying every edge subset
    of ``g`` of the right size, and the automorphisms of ``f`` by brute force, so that
    ``labeled == copies * aut_f`` is a genuine cross-check.
    """
    _check_pair(f, g)
    copies = sum(
        1
        for subset in combinations(list(g.edges()), f.e)
        if _isomorphic(f, Graph.from_edges(g.n, subset))
    )
    return EmbeddingCount(
        labeled=count_labeled_embeddings(f, g),
        copies=copies,
        aut_f=aut_order_naive(f),
    )


def verify_theorem1(g: Graph, f: Graph) -> Theorem1Check:
    """Compare the automorphism group order of ``g`` with the labelled copies of ``f`` in it."""
    _check_pair(f, g)
    for u, v in f.edges():
        if not g.has_edge(u, v):
            raise GraphError(f'({u}, {v}) is an edge of the subgraph but not of the host')
    count = count_embeddings(f, g)
    return Theorem1Check(
        aut_g=aut_order(g).order,
        labeled=count.labeled,
        copies=count.copies,
        aut_f=count.aut_f,
    )
