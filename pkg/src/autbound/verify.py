"""
Property sweeps over small graphs.

Each suite checks one family of properties over a corpus of graphs and returns a
:class:`SuiteResult` listing every violation found. Graphs are visited in order of
increasing size, so the first violation of a suite is a smallest counterexample.
"""

import logging
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field
from itertools import chain

from .arithmetic import SOUNDNESS_SLACK
from .automorphisms import aut_order, aut_order_naive
from .bounds import (
    BoundId,
    BoundValue,
    CorollaryMode,
    ReportOptions,
    compose_report,
    eval_thm3,
)
from .corpus import CONNECTED_GRAPH_COUNTS, connected_graphs, corpus, random_graphs
from .embeddings import count_embeddings
from .graph import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    write_graph6,
)
from .trees import (
    SpanningTree,
    all_spanning_trees,
    embedding_upper_fs,
    greedy_spanning_trees,
    tree_aut_exact,
    tree_aut_upper,
)

EMBEDDING_SWEEP_LIMIT = 6
ORACLE_SWEEP_LIMIT = 6
RANDOM_SIZES = (7, 8)


@dataclass(frozen=True)
class Violation:
    graph6: str
    message: str


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def fail(self, g: Graph, message: str) -> None:
        self.violations.append(Violation(write_graph6(g, max_vertices=g.n), message))


Tracker = Callable[[str, Iterable[Graph]], Iterable[Graph]]


def _untracked(name: str, graphs: Iterable[Graph]) -> Iterable[Graph]:
    return graphs


@dataclass
class Sweep:
    """What a verification run covers."""

    nmax: int = 6
    random_count: int = 200
    seed: int = 0
    external: tuple[Graph, ...] | None = None
    track: Tracker = _untracked

    def graphs(self, name: str, limit: int | None = None) -> Iterable[Graph]:
        nmax = self.nmax if limit is None else min(self.nmax, limit)
        if self.external is not None:
            graphs: Iterable[Graph] = (g for g in self.external if g.n <= nmax)
        else:
            graphs = corpus(nmax)
        return self.track(name, graphs)


Suite = Callable[[Sweep], SuiteResult]


def _worst_plain_thm3(g: Graph) -> int:
    return max(
        int(eval_thm3(g, gt).exact_value or 0)
        for v0 in range(g.n)
        for gt in greedy_spanning_trees(g, v0)
    )


def check_soundness(sweep: Sweep) -> SuiteResult:
    result = SuiteResult('soundness')
    options = ReportOptions(corollary_mode=CorollaryMode.BOTH, exhaustive_start=True)
    for g in sweep.graphs(result.name):
        result.checked += 1
        report = compose_report(g, options)
        for value in report.violations():
            result.fail(g, f'{value.key} is below aut={report.aut_exact}')
        values = {value.key: value for value in report.bounds}
        orbit, plain = values[BoundId.THM3_ORBIT], values[BoundId.THM3_PLAIN]
        if orbit.exact_value is not None and plain.exact_value is not None:
            if orbit.exact_value > plain.exact_value:
                result.fail(g, 'orbit form of the greedy tree bound exceeds the plain form')
        corrected = values[f'{BoundId.COROLLARY}:{CorollaryMode.CORRECTED}']
        if corrected.exact_value is not None and _worst_plain_thm3(g) > corrected.exact_value:
            result.fail(g, 'a greedy tree bound exceeds the corrected corollary')
    return result


DEGREE_BOUNDS = frozenset(
    {
        BoundId.EQ1,
        BoundId.EQ2,
        BoundId.EQ3,
        BoundId.EQ4,
        BoundId.EQ5,
        BoundId.EQ6,
        BoundId.EQ7,
        BoundId.EQ8,
    }
)


def _exactness_cases() -> Iterator[tuple[str, Graph, bool]]:
    """Named graphs and whether eq1 is exact on them."""
    for n in range(3, 8):
        yield f'K_{n}', complete_graph(n), True
    for m in range(2, 5):
        # K_2,2 is the 4-cycle, on which eq1 is exact
        yield f'K_{m},{m}', complete_bipartite_graph(m, m), m == 2
    for q in range(2, 6):
        for p in range(1, q):
            yield f'K_{p},{q}', complete_bipartite_graph(p, q), False


def _strictly_above(value: BoundValue, aut: int) -> bool:
    if value.exact_value is not None:
        return value.exact_value > aut
    gap = value.gap(aut)
    return gap is not None and bool(gap > SOUNDNESS_SLACK)


def check_exactness(sweep: Sweep) -> SuiteResult:
    """
    The greedy tree bound with its best start vertex is exact on complete and complete
    bipartite graphs. The degree and structure bounds are not, except eq1 where noted.
    """
    result = SuiteResult('exactness')
    options = ReportOptions(bounds=frozenset({BoundId.THM3_ORBIT}), exhaustive_start=True)
    others = ReportOptions(bounds=DEGREE_BOUNDS)
    for name, g, eq1_exact in _exactness_cases():
        result.checked += 1
        report = compose_report(g, options, graph_id=name)
        (value,) = report.bounds
        aut = report.aut_exact
        assert aut is not None
        if value.exact_value != aut:
            result.fail(g, f'{name}: {value.key}={value.exact_value}, aut={aut}')
        for value in compose_report(g, others, graph_id=name).bounds:
            if not value.applicable:
                continue
            if value.bound_id is BoundId.EQ1 and eq1_exact:
                if value.exact_value != aut:
                    result.fail(g, f'{name}: {value.key}={value.exact_value}, aut={aut}')
            elif not _strictly_above(value, aut):
                result.fail(g, f'{name}: {value.key} is not strictly above aut={aut}')
    return result


def check_improvement(sweep: Sweep) -> SuiteResult:
    """Count the graphs where the greedy tree bound from vertex 0 beats eq1 and eq2."""
    result = SuiteResult('improvement')
    options = ReportOptions(bounds=frozenset({BoundId.THM3_ORBIT, BoundId.EQ1, BoundId.EQ2}))
    for bound_id in (BoundId.EQ1, BoundId.EQ2):
        result.counts[f'{BoundId.THM3_ORBIT} < {bound_id}'] = 0
    for g in sweep.graphs(result.name):
        result.checked += 1
        values = {value.bound_id: value for value in compose_report(g, options).bounds}
        tree = values[BoundId.THM3_ORBIT].exact_value
        for bound_id in (BoundId.EQ1, BoundId.EQ2):
            other = values[bound_id].exact_value
            if tree is not None and other is not None and tree < other:
                result.counts[f'{BoundId.THM3_ORBIT} < {bound_id}'] += 1
    return result


def check_oracle(sweep: Sweep) -> SuiteResult:
    """The refinement search agrees with counting over every permutation."""
    result = SuiteResult('oracle')
    randoms = chain.from_iterable(
        random_graphs(n, sweep.random_count, sweep.seed) for n in RANDOM_SIZES
    )
    graphs = chain(
        sweep.graphs(result.name, ORACLE_SWEEP_LIMIT), sweep.track('oracle (random)', randoms)
    )
    for g in graphs:
        result.checked += 1
        fast, naive = aut_order(g).order, aut_order_naive(g)
        if fast != naive:
            result.fail(g, f'refinement search gives {fast}, permutations give {naive}')
    return result


def check_orbits(sweep: Sweep) -> SuiteResult:
    result = SuiteResult('orbits')
    for g in sweep.graphs(result.name):
        result.checked += 1
        aut = aut_order(g)
        for orbit in aut.orbits:
            if aut.order % len(orbit):
                result.fail(g, f'orbit {orbit} does not divide aut={aut.order}')
    return result


def _tree_classes(g: Graph) -> dict[str, SpanningTree]:
    classes: dict[str, SpanningTree] = {}
    for t in all_spanning_trees(g):
        classes.setdefault(t.canonical_form(), t)
    return classes


def check_theorem1(sweep: Sweep) -> SuiteResult:
    """Labelled copies of every spanning tree number at least the automorphisms of the host."""
    result = SuiteResult('theorem1')
    for g in sweep.graphs(result.name, EMBEDDING_SWEEP_LIMIT):
        result.checked += 1
        aut = aut_order(g).order
        for form, t in _tree_classes(g).items():
            count = count_embeddings(t.as_graph(), g)
            if not count.consistent:
                result.fail(
                    g,
                    f'tree {form}: {count.labeled} labelled copies, '
                    f'{count.copies} copies with {count.aut_f} automorphisms',
                )
            if count.labeled < aut:
                result.fail(g, f'tree {form}: {count.labeled} labelled copies < aut={aut}')
    return result


def check_estimates(sweep: Sweep) -> SuiteResult:
    """Degree-product estimates bound tree copies and tree automorphisms."""
    result = SuiteResult('estimates')
    for g in sweep.graphs(result.name, EMBEDDING_SWEEP_LIMIT):
        if g.n < 2:
            continue
        result.checked += 1
        copies_bound = embedding_upper_fs(g)
        for form, t in _tree_classes(g).items():
            copies = count_embeddings(t.as_graph(), g).copies
            if copies > copies_bound:
                result.fail(g, f'tree {form}: {copies} copies > estimate {copies_bound}')
            if g.n < 3:
                continue
            exact, upper = tree_aut_exact(t), tree_aut_upper(t)
            if exact > upper:
                result.fail(g, f'tree {form}: aut={exact} > estimate {upper}')
    return result


def check_greedy(sweep: Sweep) -> SuiteResult:
    result = SuiteResult('greedy')
    for g in sweep.graphs(result.name):
        result.checked += 1
        for v0 in range(g.n):
            for gt in greedy_spanning_trees(g, v0):
                try:
                    gt.validate(g)
                except ExceptionGroup as group:
                    for error in group.exceptions:
                        result.fail(g, f'{group.message}: {error}')
    return result


def check_corpus(sweep: Sweep) -> SuiteResult:
    """Generated corpora have the known number of connected graphs at each size."""
    result = SuiteResult('corpus')
    for n in range(1, sweep.nmax + 1):
        result.checked += 1
        graphs = connected_graphs(n)
        expected = CONNECTED_GRAPH_COUNTS[n - 1]
        if len(graphs) != expected:
            result.fail(graphs[0], f'{len(graphs)} graphs on {n} vertices, not {expected}')
    return result


SUITES: dict[str, Suite] = {
    'soundness': check_soundness,
    'exactness': check_exactness,
    'improvement': check_improvement,
    'oracle': check_oracle,
    'theorem1': check_theorem1,
    'estimates': check_estimates,
    'greedy': check_greedy,
    'orbits': check_orbits,
    'corpus': check_corpus,
}


def run_suites(names: Iterable[str], sweep: Sweep) -> list[SuiteResult]:
    results = []
    for name in names:
        logging.info(f'running the {name} suite')
        results.append(SUITES[name](sweep))
    return results

