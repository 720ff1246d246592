"""
Upper bounds on the order of a graph's automorphism group.

Each ``eval_*`` function evaluates one bound and returns a :class:`BoundValue`; a bound
whose hypotheses are not met is returned with ``applicable=False`` and a reason code
rather than raising. :func:`compose_report` evaluates a selection of bounds for one graph
through the :data:`EVALUATORS` registry and compares them with the exact group order.
"""

from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from functools import cached_property
from math import factorial, prod
from typing import Any, Callable, Iterable, Self, TypeAlias

from gmpy2 import mpfr

from .arithmetic import (
    SOUNDNESS_SLACK,
    difference,
    log2_factorial,
    log2_of,
    mpfr_fraction,
    path_cover_log2_base,
    scaled,
    total,
)
from .automorphisms import AutResult, aut_order
from .embeddings import EMBEDDING_LIMIT, count_labeled_embeddings
from .exceptions import GraphError
from .graph import DegreeStats, Graph, degree_stats, is_connected, write_graph6
from .structure import (
    STRUCTURE_LIMIT,
    PathCoverResult,
    StarFreeParam,
    has_hamiltonian_path,
    path_cover_number,
    star_free_parameter,
)
from .trees import (
    GreedyTree,
    SpanningTree,
    bfs_tree,
    dfs_tree,
    embedding_upper_fs,
    greedy_spanning_tree,
    greedy_spanning_trees,
    tree_aut_upper,
)


class BoundId(StrEnum):
    THM1_TREE = 'thm1_tree'
    EQ1 = 'eq1_nashwilliams'
    EQ2 = 'eq2_tree_product'
    EQ3 = 'eq3_pathcover'
    EQ4 = 'eq4_degree_exponent'
    EQ5 = 'eq5_special_class'
    EQ6 = 'eq6_starfree'
    EQ7 = 'eq7_hamiltonian'
    EQ8 = 'eq8_hampath_edges'
    THM3_ORBIT = 'thm3_orbit'
    THM3_PLAIN = 'thm3_plain'
    COROLLARY = 'corollary'


ALIASES: dict[str, BoundId] = {
    'thm1': BoundId.THM1_TREE,
    'eq1': BoundId.EQ1,
    'eq2': BoundId.EQ2,
    'eq3': BoundId.EQ3,
    'eq4': BoundId.EQ4,
    'eq5': BoundId.EQ5,
    'eq6': BoundId.EQ6,
    'eq7': BoundId.EQ7,
    'eq8': BoundId.EQ8,
    'thm3': BoundId.THM3_ORBIT,
}


def resolve_bound(name: str) -> BoundId:
    name = name.strip().lower()
    if name in ALIASES:
        return ALIASES[name]
    try:
        return BoundId(name)
    except ValueError:
        raise ValueError(f'unknown bound {name!r}') from None


class CorollaryMode(StrEnum):
    VERBATIM = 'verbatim'
    CORRECTED = 'corrected'
    BOTH = 'both'


class TreeKind(StrEnum):
    GREEDY = 'greedy'
    BFS = 'bfs'
    DFS = 'dfs'


class Reason(StrEnum):
    DISCONNECTED = 'disconnected'
    SINGLE_VERTEX = 'single_vertex'
    TOO_FEW_VERTICES = 'too_few_vertices'
    MIN_DEGREE_BELOW_2 = 'min_degree_below_2'
    MAX_DEGREE_BELOW_2 = 'max_degree_below_2'
    MAX_DEGREE_BELOW_3 = 'max_degree_below_3'
    CLASS_NOT_ASSERTED = 'class_not_asserted'
    NO_HAMILTONIAN_PATH = 'no_hamiltonian_path'
    M_BELOW_3 = 'm_below_3'
    NOT_STAR_FREE = 'not_star_free'
    ORACLE_SUPPRESSED = 'oracle_suppressed'
    SIZE_LIMIT = 'size_limit'


@dataclass(frozen=True)
class BoundValue:
    bound_id: BoundId
    applicable: bool
    reason: Reason | None = None
    exact_value: Fraction | None = None
    log2_value: mpfr | None = None
    context: dict[str, Any] = field(default_factory=dict, compare=False)
    variant: str | None = None

    @classmethod
    def exact(cls, bound_id: BoundId, value: Fraction | int, **context: Any) -> Self:
        value = Fraction(value)
        variant = context.pop('variant', None)
        return cls(bound_id, True, None, value, log2_of(value), context, variant)

    @classmethod
    def logarithmic(
        cls, bound_id: BoundId, log2_value: mpfr, exact: Fraction | None = None, **context: Any
    ) -> Self:
        return cls(bound_id, True, None, exact, log2_value, context)

    @classmethod
    def inapplicable(cls, bound_id: BoundId, reason: Reason, **context: Any) -> Self:
        variant = context.pop('variant', None)
        return cls(bound_id, False, reason, None, None, context, variant)

    @property
    def key(self) -> str:
        return self.bound_id if self.variant is None else f'{self.bound_id}:{self.variant}'

    def gap(self, aut: int) -> mpfr | None:
        if not self.applicable or self.log2_value is None:
            return None
        return difference(self.log2_value, log2_of(aut))

    def is_sound(self, aut: int) -> bool:
        """Exact values are compared exactly, log2 values with a small slack."""
        if not self.applicable:
            return True
        if self.exact_value is not None:
            return self.exact_value >= aut
        gap = self.gap(aut)
        assert gap is not None
        return bool(gap >= -SOUNDNESS_SLACK)


# degree and structure bounds

def eval_eq1(stats: DegreeStats, n: int) -> BoundValue:
    """n * D! * (D-1)^(n-D-1) for maximum degree D; 0^0 counts as 1."""
    delta = stats.delta_max
    value = n * factorial(delta) * (delta - 1) ** (n - delta - 1)
    return BoundValue.exact(BoundId.EQ1, value, delta_max=delta)


def eval_eq2(g: Graph, t: SpanningTree) -> BoundValue:
    if g.n < 3:
        return BoundValue.inapplicable(BoundId.EQ2, Reason.TOO_FEW_VERTICES)
    stats = degree_stats(g)
    value = (
        Fraction(t.delta_max_t, stats.delta_max)
        * stats.d_avg**g.n
        * prod(factorial(d - 1) for d in t.tree_degrees)
    )
    return BoundValue.exact(BoundId.EQ2, value, tree=sorted(t.edges), delta_t=t.delta_max_t)


def _path_cover_value(bound_id: BoundId, g: Graph, p: int) -> BoundValue:
    excess = g.e - g.n
    log2_value = total(
        log2_of(2 * p), scaled(2 * p, log2_of(g.n)), scaled(excess, path_cover_log2_base())
    )
    exact = Fraction(2 * p * g.n ** (2 * p)) if excess == 0 else None
    return BoundValue.logarithmic(bound_id, log2_value, exact, p=p, e_minus_n=excess)


def eval_eq3(g: Graph, p: int) -> BoundValue:
    """2p * n^(2p) * (2^(7/8) 6^(1/24))^(e-n) for path covering number p."""
    if p < 1:
        raise GraphError(f'path covering number must be at least 1, got {p}')
    return _path_cover_value(BoundId.EQ3, g, p)


def eval_eq4(g: Graph, stats: DegreeStats) -> BoundValue:
    if stats.delta_min < 2:
        return BoundValue.inapplicable(BoundId.EQ4, Reason.MIN_DEGREE_BELOW_2)
    if stats.delta_max < 3:
        return BoundValue.inapplicable(BoundId.EQ4, Reason.MAX_DEGREE_BELOW_3)
    delta, small = stats.delta_max, stats.delta_min
    exponent = Fraction(g.e - g.n + 3 - 2 * small, (small - 1) * (delta - 2))
    log2_value = total(
        scaled(g.n, log2_of(stats.d_avg)), scaled(exponent, log2_factorial(delta - 1))
    )
    exact = None
    if exponent.denominator == 1 and exponent >= 0:
        exact = stats.d_avg**g.n * factorial(delta - 1) ** exponent.numerator
    return BoundValue.logarithmic(BoundId.EQ4, log2_value, exact, exponent=exponent)


def eval_eq5(g: Graph, class_asserted: bool) -> BoundValue:
    """3 * 2^((n-2)/2) * d^n / D for squares and three-connected planar graphs."""
    if not class_asserted:
        return BoundValue.inapplicable(BoundId.EQ5, Reason.CLASS_NOT_ASSERTED)
    if g.n < 2:
        return BoundValue.inapplicable(BoundId.EQ5, Reason.SINGLE_VERTEX)
    stats = degree_stats(g)
    log2_value = total(
        log2_of(3),
        mpfr_fraction(Fraction(g.n - 2, 2)),
        scaled(g.n, log2_of(stats.d_avg)),
        -log2_of(stats.delta_max),
    )
    exact = None
    if g.n % 2 == 0:
        exact = 3 * 2 ** ((g.n - 2) // 2) * stats.d_avg**g.n / stats.delta_max
    return BoundValue.logarithmic(BoundId.EQ5, log2_value, exact, class_asserted=True)


def eval_eq6(g: Graph, m: int) -> BoundValue:
    """(m-1)! * ((m-2)!)^(n/(m-2)) * d^n / D for graphs with no induced K_{1,m}."""
    if m < 3:
        return BoundValue.inapplicable(BoundId.EQ6, Reason.M_BELOW_3, m=m)
    if g.n < 2:
        return BoundValue.inapplicable(BoundId.EQ6, Reason.SINGLE_VERTEX, m=m)
    stats = degree_stats(g)
    exponent = Fraction(g.n, m - 2)
    base = factorial(m - 2)
    log2_value = total(
        log2_factorial(m - 1),
        scaled(exponent, log2_of(base)),
        scaled(g.n, log2_of(stats.d_avg)),
        -log2_of(stats.delta_max),
    )
    exact = None
    if exponent.denominator == 1 or base == 1:
        exact = (
            factorial(m - 1)
            * Fraction(base) ** (exponent.numerator // exponent.denominator)
            * stats.d_avg**g.n
            / stats.delta_max
        )
    return BoundValue.logarithmic(BoundId.EQ6, log2_value, exact, m=m, exponent=exponent)


def eval_eq7(g: Graph, ham: bool) -> BoundValue:
    """n * (e/(n-1))^(n-1) when a Hamiltonian path exists."""
    if not ham:
        return BoundValue.inapplicable(BoundId.EQ7, Reason.NO_HAMILTONIAN_PATH)
    if g.n < 2:
        return BoundValue.inapplicable(BoundId.EQ7, Reason.SINGLE_VERTEX)
    return BoundValue.exact(BoundId.EQ7, g.n * Fraction(g.e, g.n - 1) ** (g.n - 1))


def eval_eq8(g: Graph, ham: bool) -> BoundValue:
    """The path cover bound with a single covering path."""
    if not ham:
        return BoundValue.inapplicable(BoundId.EQ8, Reason.NO_HAMILTONIAN_PATH)
    value = _path_cover_value(BoundId.EQ8, g, 1)
    assert value.log2_value == eval_eq3(g, 1).log2_value
    return value


# greedy tree bounds

def eval_thm3(
    g: Graph, gt: GreedyTree, n1: int | None = None, aut: AutResult | None = None
) -> BoundValue:
    """
    n1 * d(v0)! * prod over later construction vertices of (d_T(v)-1)!, where n1 is the
    orbit length of v0. Without ``n1`` the orbit length is replaced by n.
    """
    if n1 is None:
        bound_id, n1 = BoundId.THM3_PLAIN, g.n
    else:
        bound_id = BoundId.THM3_ORBIT
        if not 1 <= n1 <= g.n:
            raise GraphError(f'orbit length {n1} is impossible for n={g.n}')
        if aut is not None and n1 != len(aut.orbit_of(gt.v0)):
            raise GraphError(
                f'orbit length {n1} does not match the orbit of {gt.v0}: '
                f'{len(aut.orbit_of(gt.v0))}'
            )
    value = (
        n1
        * factorial(g.degrees[gt.v0])
        * prod(factorial(gt.tree.tree_degrees[v] - 1) for v in gt.sequence[1:])
    )
    return BoundValue.exact(bound_id, value, v0=gt.v0, n1=n1, sequence=list(gt.sequence))


def eval_corollary(stats: DegreeStats, n: int, mode: CorollaryMode) -> BoundValue:
    """
    n * a! * D! * ((D-1)!)^r with r = floor((n-D-1)/(D-1)).
    ``verbatim`` takes a = n - r(D-1); ``corrected`` takes a = n - D - 1 - r(D-1), the
    remainder left after the full factorial blocks.
    """
    if mode is CorollaryMode.BOTH:
        raise ValueError('evaluate the corollary one mode at a time')
    delta = stats.delta_max
    if delta < 2:
        return BoundValue.inapplicable(
            BoundId.COROLLARY, Reason.MAX_DEGREE_BELOW_2, variant=mode.value
        )
    r = (n - delta - 1) // (delta - 1)
    if mode is CorollaryMode.VERBATIM:
        alpha = n - r * (delta - 1)
    else:
        alpha = n - delta - 1 - r * (delta - 1)
    if alpha < 0:
        raise AssertionError(f'negative alpha={alpha} for n={n}, delta={delta}')
    value = n * factorial(alpha) * factorial(delta) * factorial(delta - 1) ** r
    return BoundValue.exact(
        BoundId.COROLLARY, value, variant=mode.value, r=r, alpha=alpha, mode=mode.value
    )


def eval_thm1_tree(g: Graph, t: SpanningTree) -> BoundValue:
    """
    Labelled copies of the spanning tree in ``g``: counted exactly for small graphs, and
    otherwise estimated as (copies estimate) * (tree automorphism estimate).
    """
    if g.n <= EMBEDDING_LIMIT:
        value = Fraction(count_labeled_embeddings(t.as_graph(), g))
        method = 'exact'
    else:
        value = embedding_upper_fs(g) * tree_aut_upper(t)
        method = 'estimate'
    return BoundValue.exact(BoundId.THM1_TREE, value, method=method, tree=sorted(t.edges))


# reports

@dataclass(frozen=True)
class ReportOptions:
    bounds: frozenset[BoundId] = frozenset(BoundId)
    exact_aut: bool = True
    exhaustive_start: bool = False
    class5_asserted: bool = False
    corollary_mode: CorollaryMode = CorollaryMode.CORRECTED
    tree: TreeKind = TreeKind.GREEDY
    start_vertex: int = 0
    star_free_m: int | None = None


@dataclass(frozen=True)
class BoundReport:
    graph_id: str
    graph6: str
    n: int
    e: int
    aut_exact: int | None
    bounds: tuple[BoundValue, ...]
    note: str | None = None

    @property
    def gaps(self) -> dict[str, mpfr]:
        if self.aut_exact is None:
            return {}
        gaps = {}
        for value in self.bounds:
            gap = value.gap(self.aut_exact)
            if gap is not None:
                gaps[value.key] = gap
        return gaps

    def violations(self) -> list[BoundValue]:
        if self.aut_exact is None:
            return []
        aut = self.aut_exact
        return [value for value in self.bounds if not value.is_sound(aut)]


class Analysis:
    """The graph parameters bounds are built from, each computed at most once."""

    def __init__(self, g: Graph, options: ReportOptions, aut: AutResult | None) -> None:
        self.g = g
        self.options = options
        self.aut = aut

    @cached_property
    def stats(self) -> DegreeStats:
        return degree_stats(self.g)

    @cached_property
    def within_structure_limit(self) -> bool:
        return self.g.n <= STRUCTURE_LIMIT

    @cached_property
    def path_cover(self) -> PathCoverResult:
        return path_cover_number(self.g)

    @cached_property
    def hamiltonian(self) -> bool:
        return has_hamiltonian_path(self.g)

    @cached_property
    def star_free(self) -> StarFreeParam:
        return star_free_parameter(self.g)

    @cached_property
    def greedy(self) -> GreedyTree:
        return greedy_spanning_tree(self.g, self.options.start_vertex)

    @cached_property
    def tree(self) -> SpanningTree:
        match self.options.tree:
            case TreeKind.GREEDY:
                return self.greedy.tree
            case TreeKind.BFS:
                return bfs_tree(self.g, self.options.start_vertex)
            case TreeKind.DFS:
                return dfs_tree(self.g, self.options.start_vertex)

    def orbit_length(self, v: int) -> int:
        assert self.aut is not None
        return len(self.aut.orbit_of(v))

    def all_greedy_trees(self) -> Iterable[GreedyTree]:
        for v0 in range(self.g.n):
            yield from greedy_spanning_trees(self.g, v0)


Evaluator: TypeAlias = Callable[[Analysis], Iterable[BoundValue]]


def _structural(bound_id: BoundId, evaluate: Evaluator) -> Evaluator:
    def gated(analysis: Analysis) -> Iterable[BoundValue]:
        if not analysis.within_structure_limit:
            return [BoundValue.inapplicable(bound_id, Reason.SIZE_LIMIT, limit=STRUCTURE_LIMIT)]
        return evaluate(analysis)

    return gated


def _eq6(analysis: Analysis) -> Iterable[BoundValue]:
    m_min = analysis.star_free.m_min
    m = analysis.options.star_free_m
    if m is None:
        m = max(3, m_min)
    elif m < m_min:
        return [BoundValue.inapplicable(BoundId.EQ6, Reason.NOT_STAR_FREE, m=m, m_min=m_min)]
    value = eval_eq6(analysis.g, m)
    value.context['m_min'] = m_min
    return [value]


def _thm3(analysis: Analysis, orbit: bool) -> Iterable[BoundValue]:
    def evaluate(gt: GreedyTree) -> BoundValue:
        n1 = analysis.orbit_length(gt.v0) if orbit else None
        return eval_thm3(analysis.g, gt, n1, analysis.aut)

    default = evaluate(analysis.greedy)
    if not analysis.options.exhaustive_start:
        return [default]
    best = min(
        (evaluate(gt) for gt in analysis.all_greedy_trees()),
        key=lambda value: value.exact_value or 0,
    )
    best.context['default_value'] = default.exact_value
    best.context['exhaustive'] = True
    return [best]


def _thm3_orbit(analysis: Analysis) -> Iterable[BoundValue]:
    if analysis.aut is None:
        return [BoundValue.inapplicable(BoundId.THM3_ORBIT, Reason.ORACLE_SUPPRESSED)]
    return _thm3(analysis, orbit=True)


def _corollary_modes(mode: CorollaryMode) -> list[CorollaryMode]:
    if mode is CorollaryMode.BOTH:
        return [CorollaryMode.CORRECTED, CorollaryMode.VERBATIM]
    return [mode]


def _corollary(analysis: Analysis) -> Iterable[BoundValue]:
    modes = _corollary_modes(analysis.options.corollary_mode)
    return [eval_corollary(analysis.stats, analysis.g.n, mode) for mode in modes]


EVALUATORS: dict[BoundId, Evaluator] = {
    BoundId.THM1_TREE: lambda a: [eval_thm1_tree(a.g, a.tree)],
    BoundId.EQ1: lambda a: [eval_eq1(a.stats, a.g.n)],
    BoundId.EQ2: lambda a: [eval_eq2(a.g, a.tree)],
    BoundId.EQ3: _structural(BoundId.EQ3, lambda a: [eval_eq3(a.g, a.path_cover.p)]),
    BoundId.EQ4: lambda a: [eval_eq4(a.g, a.stats)],
    BoundId.EQ5: lambda a: [eval_eq5(a.g, a.options.class5_asserted)],
    BoundId.EQ6: _structural(BoundId.EQ6, _eq6),
    BoundId.EQ7: _structural(BoundId.EQ7, lambda a: [eval_eq7(a.g, a.hamiltonian)]),
    BoundId.EQ8: _structural(BoundId.EQ8, lambda a: [eval_eq8(a.g, a.hamiltonian)]),
    BoundId.THM3_ORBIT: _thm3_orbit,
    BoundId.THM3_PLAIN: lambda a: _thm3(a, orbit=False),
    BoundId.COROLLARY: _corollary,
}

DISCONNECTED_NOTE = 'graph is disconnected: every bound here assumes a connected graph'


def compose_report(
    g: Graph, options: ReportOptions = ReportOptions(), graph_id: str = ''
) -> BoundReport:
    """Evaluate the selected bounds for ``g``, ordered by bound id, alongside the exact order."""
    g.check_vertex(options.start_vertex)
    aut = aut_order(g) if options.exact_aut else None
    connected = is_connected(g)
    analysis = Analysis(g, options, aut)
    values: list[BoundValue] = []
    for bound_id in sorted(options.bounds):
        if connected:
            values.extend(EVALUATORS[bound_id](analysis))
        elif bound_id is BoundId.COROLLARY:
            values.extend(
                BoundValue.inapplicable(bound_id, Reason.DISCONNECTED, variant=mode.value)
                for mode in _corollary_modes(options.corollary_mode)
            )
        else:
            values.append(BoundValue.inapplicable(bound_id, Reason.DISCONNECTED))
    values.sort(key=lambda value: value.key)
    return BoundReport(
        graph_id=graph_id,
        graph6=write_graph6(g, max_vertices=g.n),
        n=g.n,
        e=g.e,
        aut_exact=aut.order if aut is not None else None,
        bounds=tuple(values),
        note=None if connected else DISCONNECTED_NOTE,
    )


def report_keys(options: ReportOptions) -> list[str]:
    """The keys of the bound values :func:`compose_report` returns for these options."""
    keys = []
    for bound_id in options.bounds:
        if bound_id is BoundId.COROLLARY:
            keys.extend(f'{bound_id}:{mode}' for mode in _corollary_modes(options.corollary_mode))
        else:
            keys.append(str(bound_id))
    return sorted(keys)
