"""
Small-graph corpora for the verification suites.

Connected graphs on ``n`` vertices are generated by adding a vertex to each connected graph
on ``n - 1`` vertices in every possible way and keeping one graph per isomorphism class.
Every connected graph arises like this, since removing a leaf of any spanning tree leaves
a connected graph.
"""

import logging
from functools import cache
from pathlib import Path
from random import Random
from typing import Iterable, Iterator

from .automorphisms import refine, search_leaves
from .exceptions import SizeLimitExceeded
from .graph import Graph, bits, is_connected, mask_of, parse_graph6

CORPUS_LIMIT = 7
CONNECTED_GRAPH_COUNTS = (1, 1, 2, 6, 21, 112, 853)


def canonical_graph(g: Graph) -> Graph:
    """
    Relabel ``g`` so that isomorphic graphs become identical: the largest adjacency
    encoding over every leaf of the refinement search tree.
    """
    best: tuple[int, ...] = ()
    for leaf in search_leaves(g, refine(g, (tuple(range(g.n)),))):
        order = [cell[0] for cell in leaf]
        position = {v: i for i, v in enumerate(order)}
        code = tuple(mask_of(position[u] for u in bits(g.adj[v])) for v in order)
        best = max(best, code)
    return Graph(g.n, best)


def _extensions(g: Graph) -> Iterator[Graph]:
    new = 1 << g.n
    for neighbours in range(1, new):
        adj = tuple(row | new if neighbours >> v & 1 else row for v, row in enumerate(g.adj))
        yield Graph(g.n + 1, adj + (neighbours,))


@cache
def connected_graphs(n: int) -> tuple[Graph, ...]:
    """One canonically labelled representative of each connected graph on ``n`` vertices."""
    if not 1 <= n <= CORPUS_LIMIT:
        raise SizeLimitExceeded('connected graph enumeration', n, CORPUS_LIMIT)
    if n == 1:
        return (Graph(1, (0,)),)
    found: dict[tuple[int, ...], Graph] = {}
    for smaller in connected_graphs(n - 1):
        for candidate in _extensions(smaller):
            canonical = canonical_graph(candidate)
            found.setdefault(canonical.adj, canonical)
    graphs = tuple(found[key] for key in sorted(found))
    logging.info(f'{len(graphs)} connected graphs on {n} vertices')
    return graphs


def corpus(nmax: int) -> Iterator[Graph]:
    for n in range(1, nmax + 1):
        yield from connected_graphs(n)


def random_graphs(
    n: int, count: int, seed: int, connected: bool = False, density: float = 0.5
) -> Iterator[Graph]:
    """``count`` random graphs on ``n`` vertices, reproducible for a given ``seed``."""
    random = Random(f'{seed}:{n}')
    produced = 0
    while produced < count:
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if random.random() < density]
        g = Graph.from_edges(n, edges)
        if connected and not is_connected(g):
            continue
        produced += 1
        yield g


def external_corpus(paths: Iterable[Path], max_vertices: int) -> Iterator[Graph]:
    """Connected graphs read from graph6 files, one per non-blank line."""
    for path in paths:
        with path.open() as source:
            for number, line in enumerate(source, 1):
                if not line.strip():
                    continue
                g = parse_graph6(line, max_vertices)
                if is_connected(g):
                    yield g
                else:
                    logging.info(f'{path}:{number}: skipping disconnected graph')
