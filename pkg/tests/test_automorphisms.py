from math import factorial

import pytest
from hypothesis import given, settings
from networkx.algorithms.isomorphism import GraphMatcher
from testfixtures import ShouldRaise, compare

from autbound.automorphisms import (
    AutResult,
    aut_order,
    aut_order_naive,
    is_automorphism,
    orbit_size,
    refine,
)
from autbound.corpus import corpus
from autbound.exceptions import GraphError, SizeLimitExceeded
from autbound.graph import (
    Graph,
    complement,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    hypercube_graph,
    parse_graph6,
    path_graph,
    petersen_graph,
    relabel,
    star_graph,
)

from .test_graph import as_networkx, graphs, relabellings


class TestAutOrder:
    @pytest.mark.parametrize('n', range(1, 8))
    def test_complete(self, n: int) -> None:
        compare(aut_order(complete_graph(n)).order, expected=factorial(n))

    @pytest.mark.parametrize('n', range(3, 10))
    def test_cycle(self, n: int) -> None:
        compare(aut_order(cycle_graph(n)).order, expected=2 * n)

    @pytest.mark.parametrize('n', range(2, 8))
    def test_path(self, n: int) -> None:
        compare(aut_order(path_graph(n)).order, expected=2)

    @pytest.mark.parametrize(('p', 'q'), [(1, 3), (2, 3), (2, 2), (3, 3), (4, 4), (3, 5)])
    def test_complete_bipartite(self, p: int, q: int) -> None:
        expected = factorial(p) * factorial(q) * (2 if p == q else 1)
        compare(aut_order(complete_bipartite_graph(p, q)).order, expected=expected)

    def test_petersen(self) -> None:
        result = aut_order(petersen_graph())
        compare(result.order, expected=120)
        compare(result.orbits, expected=(tuple(range(10)),))

    def test_cube(self) -> None:
        compare(aut_order(hypercube_graph(3)).order, expected=48)

    def test_star_orbits(self) -> None:
        result = aut_order(star_graph(3))
        compare(result.order, expected=6)
        compare(result.orbits, expected=((0,), (1, 2, 3)))
        compare(result.orbit_of(2), expected=(1, 2, 3))

    def test_disconnected(self) -> None:
        compare(aut_order(parse_graph6('C`')).order, expected=8)

    def test_rigid(self) -> None:
        # the smallest asymmetric graphs have six vertices
        g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (2, 5)])
        result = aut_order(g)
        compare(result.order, expected=1)
        compare(result.orbits, expected=tuple((v,) for v in range(6)))
        compare(result.generators, expected=())

    def test_generators_are_automorphisms(self) -> None:
        g = petersen_graph()
        for perm in aut_order(g).generators:
            compare(is_automorphism(g, perm), expected=True)

    def test_matches_naive_on_corpus(self) -> None:
        for g in corpus(5):
            compare(aut_order(g).order, expected=aut_order_naive(g))

    @given(graphs(max_n=7))
    @settings(deadline=None)
    def test_matches_networkx(self, g: Graph) -> None:
        graph = as_networkx(g)
        expected = sum(1 for _ in GraphMatcher(graph, graph).isomorphisms_iter())
        compare(aut_order(g).order, expected=expected)

    @given(relabellings(max_n=9))
    @settings(deadline=None)
    def test_relabelling(self, case: tuple[Graph, list[int]]) -> None:
        g, perm = case
        compare(aut_order(relabel(g, perm)).order, expected=aut_order(g).order)

    def test_complement_on_corpus(self) -> None:
        for g in corpus(6):
            compare(aut_order(complement(g)).order, expected=aut_order(g).order)

    @given(graphs(max_n=7))
    @settings(deadline=None)
    def test_complement(self, g: Graph) -> None:
        compare(aut_order(complement(g)).order, expected=aut_order(g).order)


class TestOrbitOf:
    def test_unknown_vertex(self) -> None:
        with ShouldRaise(ValueError('vertex 5 is in no orbit')):
            AutResult(1, ((0,),), ()).orbit_of(5)


class TestNaive:
    def test_small(self) -> None:
        compare(aut_order_naive(cycle_graph(5)), expected=10)

    def test_too_large(self) -> None:
        with ShouldRaise(SizeLimitExceeded('naive automorphism counting', 9, 8)):
            aut_order_naive(path_graph(9))


class TestOrbitSize:
    def test_star(self) -> None:
        compare(orbit_size(star_graph(3), 0), expected=1)
        compare(orbit_size(star_graph(3), 3), expected=3)

    def test_divides_order(self) -> None:
        for g in corpus(5):
            order = aut_order(g).order
            for v in range(g.n):
                compare(order % orbit_size(g, v), expected=0)

    def test_bad_vertex(self) -> None:
        with ShouldRaise(GraphError('vertex 3 is out of range for n=3')):
            orbit_size(path_graph(3), 3)


class TestIsAutomorphism:
    def test_cycle(self) -> None:
        g = cycle_graph(4)
        compare(is_automorphism(g, [1, 2, 3, 0]), expected=True)
        compare(is_automorphism(g, [1, 0, 2, 3]), expected=False)


class TestRefine:
    def test_splits_by_degree(self) -> None:
        compare(refine(star_graph(3), ((0, 1, 2, 3),)), expected=((1, 2, 3), (0,)))

    def test_regular_graph_is_equitable(self) -> None:
        compare(refine(cycle_graph(5), ((0, 1, 2, 3, 4),)), expected=((0, 1, 2, 3, 4),))

    def test_path(self) -> None:
        compare(refine(path_graph(4), ((0, 1, 2, 3),)), expected=((0, 3), (1, 2)))
