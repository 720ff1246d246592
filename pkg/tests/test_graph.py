from fractions import Fraction

import networkx as nx
from hypothesis import given, strategies as st
from testfixtures import LogCapture, ShouldRaise, compare

from autbound.exceptions import GraphError, GraphFormatError, SizeLimitExceeded
from autbound.graph import (
    DegreeStats,
    Graph,
    complement,
    complete_graph,
    cycle_graph,
    degree_stats,
    generate_named,
    hypercube_graph,
    is_connected,
    parse_edgelist,
    parse_graph6,
    path_graph,
    petersen_graph,
    relabel,
    star_graph,
    write_graph6,
)


@st.composite
def graphs(draw: st.DrawFn, max_n: int = 12) -> Graph:
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [pair for pair, keep in zip(pairs, chosen) if keep])


@st.composite
def relabellings(draw: st.DrawFn, max_n: int = 12) -> tuple[Graph, list[int]]:
    g = draw(graphs(max_n))
    return g, draw(st.permutations(range(g.n)))


def as_networkx(g: Graph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(g.n))
    graph.add_edges_from(g.edges())
    return graph


class TestGraph:
    def test_from_edges(self) -> None:
        g = Graph.from_edges(3, [(0, 1), (2, 1)])
        compare(g.adj, expected=(0b010, 0b101, 0b010))
        compare(g.degrees, expected=(1, 2, 1))
        compare(g.e, expected=2)
        compare(list(g.edges()), expected=[(0, 1), (1, 2)])
        compare(g.neighbours(1), expected=(0, 2))
        compare(g.has_edge(2, 1), expected=True)
        compare(g.has_edge(0, 2), expected=False)

    def test_loop(self) -> None:
        with ShouldRaise(GraphError('loop at vertex 1')):
            Graph.from_edges(3, [(1, 1)])

    def test_edge_out_of_range(self) -> None:
        with ShouldRaise(GraphError('edge (0, 3) is out of range for n=3')):
            Graph.from_edges(3, [(0, 3)])

    def test_not_symmetric(self) -> None:
        with ShouldRaise(GraphError('adjacency is not symmetric for 0 -> 1')):
            Graph(2, (0b10, 0b00))

    def test_no_vertices(self) -> None:
        with ShouldRaise(GraphError('a graph needs at least one vertex, got n=0')):
            Graph(0, ())

    def test_check_vertex(self) -> None:
        with ShouldRaise(GraphError('vertex 4 is out of range for n=4')):
            complete_graph(4).check_vertex(4)


class TestParseGraph6:
    def test_complete(self) -> None:
        compare(parse_graph6('C~'), expected=complete_graph(4))

    def test_cycle(self) -> None:
        compare(parse_graph6('Dhc'), expected=cycle_graph(5))

    def test_single_vertex(self) -> None:
        compare(parse_graph6('@'), expected=Graph(1, (0,)))

    def test_single_edge(self) -> None:
        compare(parse_graph6('A_'), expected=complete_graph(2))

    def test_trailing_newline_and_header(self) -> None:
        compare(parse_graph6('>>graph6<<C~\n'), expected=complete_graph(4))

    def test_long_size_header(self) -> None:
        g = path_graph(63)
        text = write_graph6(g)
        compare(text[:4], expected='~??~')
        compare(parse_graph6(text), expected=g)

    def test_invalid_byte(self) -> None:
        with ShouldRaise(GraphFormatError("invalid graph6 byte ' '", 1)):
            parse_graph6('C ~')

    def test_undecoded_byte(self) -> None:
        text = b'C\xff~'.decode('utf-8', errors='surrogateescape')
        with ShouldRaise(GraphFormatError("invalid graph6 byte '\\udcff'", 1)):
            parse_graph6(text)

    def test_empty(self) -> None:
        with ShouldRaise(GraphFormatError('empty graph6 string', 0)):
            parse_graph6('\n')

    def test_no_vertices(self) -> None:
        with ShouldRaise(GraphFormatError('graph6 string encodes a graph with no vertices', 0)):
            parse_graph6('?')

    def test_truncated(self) -> None:
        with ShouldRaise(GraphFormatError('truncated bit section: expected 2 bytes, got 1', 2)):
            parse_graph6('Dh')

    def test_trailing_garbage(self) -> None:
        with ShouldRaise(GraphFormatError('trailing garbage after graph6 data', 2)):
            parse_graph6('C~~')

    def test_nonzero_padding(self) -> None:
        with ShouldRaise(GraphFormatError('non-zero padding bits', 1)):
            parse_graph6('A`')

    def test_truncated_size_header(self) -> None:
        with ShouldRaise(GraphFormatError('truncated size header', 2)):
            parse_graph6('~?')

    def test_too_many_vertices(self) -> None:
        with ShouldRaise(SizeLimitExceeded('graph6 parsing', 4, 3)):
            parse_graph6('C~', max_vertices=3)


class TestWriteGraph6:
    def test_examples(self) -> None:
        compare(write_graph6(complete_graph(4)), expected='C~')
        compare(write_graph6(cycle_graph(5)), expected='Dhc')
        compare(write_graph6(Graph(1, (0,))), expected='@')
        compare(write_graph6(star_graph(3)), expected='Cs')

    @given(graphs(max_n=20))
    def test_matches_networkx(self, g: Graph) -> None:
        expected = nx.to_graph6_bytes(as_networkx(g), header=False).decode().strip()
        compare(write_graph6(g), expected=expected)

    @given(graphs())
    def test_parses_back(self, g: Graph) -> None:
        compare(parse_graph6(write_graph6(g)), expected=g)


class TestParseEdgelist:
    def test_minimal(self) -> None:
        compare(parse_edgelist('3\n0 1\n\n1 2\n'), expected=path_graph(3))

    def test_isolated_vertices(self) -> None:
        compare(parse_edgelist('2\n'), expected=Graph(2, (0, 0)))

    def test_duplicate_edge(self) -> None:
        with LogCapture() as log:
            g = parse_edgelist('3\n0 1\n1 0\n1 2\n')
        compare(g, expected=path_graph(3))
        log.check(('root', 'WARNING', 'duplicate edge (1, 0) on line 3 ignored'))

    def test_empty(self) -> None:
        with ShouldRaise(GraphFormatError('empty edge list', 1)):
            parse_edgelist('\n\n')

    def test_bad_count(self) -> None:
        with ShouldRaise(GraphFormatError("expected a vertex count, got '0 1'", 1)):
            parse_edgelist('0 1\n')

    def test_bad_edge(self) -> None:
        with ShouldRaise(GraphFormatError("expected \"u v\", got '0 x'", 3)):
            parse_edgelist('3\n0 1\n0 x\n')

    def test_non_ascii_digits(self) -> None:
        with ShouldRaise(GraphFormatError("expected \"u v\", got '0 ²'", 2)):
            parse_edgelist('3\n0 ²\n')
        with ShouldRaise(GraphFormatError("expected a vertex count, got '٣'", 1)):
            parse_edgelist('٣\n0 1\n')

    def test_out_of_range(self) -> None:
        with ShouldRaise(GraphFormatError('edge (0, 3) is out of range for n=3', 2)):
            parse_edgelist('3\n0 3\n')

    def test_loop(self) -> None:
        with ShouldRaise(GraphFormatError('loop at vertex 2', 2)):
            parse_edgelist('3\n2 2\n')


class TestDegreeStats:
    def test_path(self) -> None:
        compare(
            degree_stats(path_graph(3)),
            expected=DegreeStats(degrees=(1, 2, 1), delta_max=2, delta_min=1, d_avg=Fraction(4, 3)),
        )

    def test_petersen(self) -> None:
        stats = degree_stats(petersen_graph())
        compare((stats.delta_max, stats.delta_min, stats.d_avg), expected=(3, 3, 3))


class TestIsConnected:
    def test_connected(self) -> None:
        compare(is_connected(cycle_graph(5)), expected=True)
        compare(is_connected(Graph(1, (0,))), expected=True)

    def test_disconnected(self) -> None:
        compare(is_connected(parse_graph6('C`')), expected=False)
        compare(is_connected(Graph(2, (0, 0))), expected=False)

    @given(graphs())
    def test_matches_networkx(self, g: Graph) -> None:
        compare(is_connected(g), expected=nx.is_connected(as_networkx(g)))


class TestTransforms:
    def test_complement(self) -> None:
        compare(complement(complete_graph(4)), expected=Graph(4, (0, 0, 0, 0)))
        compare(complement(cycle_graph(5)), expected=relabel(cycle_graph(5), [0, 3, 1, 4, 2]))

    def test_relabel(self) -> None:
        compare(relabel(path_graph(3), [1, 0, 2]), expected=Graph.from_edges(3, [(1, 0), (0, 2)]))

    def test_relabel_not_permutation(self) -> None:
        with ShouldRaise(GraphError('[0, 0, 1] is not a permutation of 0..2')):
            relabel(path_graph(3), [0, 0, 1])

    @given(graphs())
    def test_complement_twice(self, g: Graph) -> None:
        compare(complement(complement(g)), expected=g)


class TestGenerateNamed:
    def test_complete(self) -> None:
        for n in range(1, 11):
            g = generate_named('complete', n)
            compare((g.e, is_connected(g)), expected=(n * (n - 1) // 2, True))

    def test_families(self) -> None:
        compare(generate_named('cycle', 4).e, expected=4)
        compare(generate_named('path', 4).e, expected=3)
        compare(generate_named('star', 3), expected=star_graph(3))
        compare(generate_named('complete_bipartite', 2, 3).degrees, expected=(3, 3, 2, 2, 2))
        compare(generate_named('petersen').degrees, expected=(3,) * 10)
        compare(generate_named('hypercube', 3), expected=hypercube_graph(3))

    def test_unknown_family(self) -> None:
        with ShouldRaise(GraphError(
            "unknown graph family 'wheel', expected one of "
            'complete, complete_bipartite, cycle, path, star, petersen, hypercube'
        )):
            generate_named('wheel', 5)

    def test_wrong_arity(self) -> None:
        with ShouldRaise(GraphError('cycle takes 1 parameter(s), got 2')):
            generate_named('cycle', 4, 5)

    def test_below_minimum(self) -> None:
        with ShouldRaise(GraphError('cycle parameters must be at least 3, got (2,)')):
            generate_named('cycle', 2)

    def test_too_large(self) -> None:
        with ShouldRaise(SizeLimitExceeded('complete generation', 65, 64)):
            generate_named('complete', 65)
