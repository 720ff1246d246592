import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import Any, Iterable, Iterator

import click
import enlighten
from rich import box
from rich.console import Console
from rich.table import Table

from .bounds import (
    BoundId,
    BoundReport,
    CorollaryMode,
    ReportOptions,
    TreeKind,
    compose_report,
    report_keys,
    resolve_bound,
)
from .corpus import CORPUS_LIMIT, connected_graphs, external_corpus
from .exceptions import GraphError, GraphFormatError, SizeLimitExceeded
from .graph import (
    DEFAULT_MAX_VERTICES,
    FAMILIES,
    Graph,
    generate_named,
    parse_edgelist,
    parse_graph6,
    write_graph6,
)
from .render import BATCH_RENDERERS, RENDERERS, OutputFormat
from .stream import ERRORS, graph6_stream
from .verify import SUITES, Sweep, run_suites


class InputError(click.ClickException):
    exit_code = 2


class SizeRefusal(click.ClickException):
    exit_code = 3


@dataclass(frozen=True)
class Settings:
    max_vertices: int = DEFAULT_MAX_VERTICES
    oracle_limit: int = 32

    def check_oracle(self, g: Graph, exact_aut: bool) -> None:
        if exact_aut and g.n > self.oracle_limit:
            raise SizeLimitExceeded('exact automorphism search', g.n, self.oracle_limit)


@click.group()
@click.option(
    '-l',
    '--log-level',
    type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']),
)
@click.option(
    '--max-vertices',
    type=click.IntRange(1),
    default=DEFAULT_MAX_VERTICES,
    show_default=True,
    help='Refuse input graphs with more vertices than this.',
)
@click.option(
    '--oracle-limit',
    type=click.IntRange(1),
    default=32,
    show_default=True,
    help='Refuse exact automorphism search above this many vertices.',
)
@click.pass_context
def cli(ctx: click.Context, log_level: str | None, max_vertices: int, oracle_limit: int) -> None:
    ctx.obj = Settings(max_vertices, oracle_limit)
    if log_level:
        logging.basicConfig(level=getattr(logging, log_level))


class BoundsType(click.ParamType):
    name = 'bounds'

    def convert(
        self, value: Any, param: click.Parameter | None, ctx: click.Context | None
    ) -> frozenset[BoundId]:
        if isinstance(value, frozenset):
            return value
        if value.strip().lower() == 'all':
            return frozenset(BoundId)
        try:
            return frozenset(resolve_bound(name) for name in value.split(',') if name.strip())
        except ValueError as e:
            self.fail(str(e), param, ctx)


def report_options(func: Any) -> Any:
    for option in reversed(
        (
            click.option(
                '--bounds',
                type=BoundsType(),
                default='all',
                help='Comma-separated bound ids or aliases such as eq1,thm3, or "all".',
            ),
            click.option(
                '--exact-aut/--no-exact-aut',
                default=True,
                help='Compute the exact automorphism group order to compare bounds against.',
            ),
            click.option(
                '--exhaustive-start',
                is_flag=True,
                default=False,
                help='Take the greedy tree bound at its best start vertex and leaf choices.',
            ),
            click.option(
                '--assert-class5',
                is_flag=True,
                default=False,
                help='Assert the graph is a square or three-connected planar, enabling eq5.',
            ),
            click.option(
                '--corollary-mode',
                type=click.Choice(CorollaryMode, case_sensitive=False),
                default=CorollaryMode.CORRECTED,
            ),
            click.option(
                '--tree',
                type=click.Choice(TreeKind, case_sensitive=False),
                default=TreeKind.GREEDY,
                help='The spanning tree used by eq2 and thm1_tree.',
            ),
            click.option(
                '--star-free-m',
                type=click.IntRange(3),
                help='Evaluate eq6 at this m rather than the smallest one the graph allows.',
            ),
        )
    ):
        func = option(func)
    return func


def make_options(
    bounds: frozenset[BoundId],
    exact_aut: bool,
    exhaustive_start: bool,
    assert_class5: bool,
    corollary_mode: CorollaryMode,
    tree: TreeKind,
    star_free_m: int | None,
    start_vertex: int = 0,
) -> ReportOptions:
    return ReportOptions(
        bounds=bounds,
        exact_aut=exact_aut,
        exhaustive_start=exhaustive_start,
        class5_asserted=assert_class5,
        corollary_mode=corollary_mode,
        tree=tree,
        start_vertex=start_vertex,
        star_free_m=star_free_m,
    )


PARSERS = {'graph6': parse_graph6, 'edgelist': parse_edgelist}


@cli.command()
@click.argument('source', type=click.File('r', errors=ERRORS), default='-')
@click.option(
    '--format',
    'format_',
    type=click.Choice(list(PARSERS)),
    default='graph6',
    help='How the input graph is written.',
)
@click.option(
    '--output',
    type=click.Choice(OutputFormat, case_sensitive=False),
    default=OutputFormat.TABLE,
)
@click.option('--start-vertex', type=click.IntRange(0), default=0)
@report_options
@click.pass_obj
def analyze(
    settings: Settings,
    /,
    source: Any,
    format_: str,
    output: OutputFormat,
    start_vertex: int,
    **options: Any,
) -> None:
    """Evaluate every bound for one graph and compare them with its automorphism group."""
    try:
        g = PARSERS[format_](source.read(), settings.max_vertices)
        report_opts = make_options(start_vertex=start_vertex, **options)
        settings.check_oracle(g, report_opts.exact_aut)
        report = compose_report(g, report_opts, graph_id=source.name)
    except SizeLimitExceeded as e:
        raise SizeRefusal(str(e))
    except (GraphError, OSError) as e:
        raise InputError(str(e))
    RENDERERS[output](report)


def _report(graph: tuple[str, Graph], options: ReportOptions) -> BoundReport:
    graph_id, g = graph
    try:
        return compose_report(g, options, graph_id=graph_id)
    except Exception as e:
        e.add_note(f'while analysing {graph_id}')
        raise


@cli.command()
@click.argument('paths', nargs=-1, required=True)
@click.option(
    '--output',
    type=click.Choice([OutputFormat.CSV, OutputFormat.JSON], case_sensitive=False),
    default=OutputFormat.CSV,
)
@click.option(
    '-j',
    '--jobs',
    type=click.IntRange(1),
    default=1,
    help='Analyse graphs in this many processes; output keeps the input order.',
)
@report_options
@click.pass_obj
def batch(
    settings: Settings,
    /,
    paths: tuple[str, ...],
    output: OutputFormat,
    jobs: int,
    **options: Any,
) -> None:
    """
    Analyse graph6 files, one graph per line, writing one record per graph.

    Paths may be globs such as graphs/*.g6, and - reads standard input.
    Malformed lines are reported on stderr and skipped.
    """
    report_opts = make_options(**options)

    def graphs() -> Iterator[tuple[str, Graph]]:
        for line in graph6_stream(paths):
            try:
                g = parse_graph6(line.text, settings.max_vertices)
                settings.check_oracle(g, report_opts.exact_aut)
            except GraphError as e:
                click.echo(f'{line.graph_id}: {e}', err=True)
                continue
            yield line.graph_id, g

    analyse = partial(_report, options=report_opts)
    render = BATCH_RENDERERS[output]
    keys = report_keys(report_opts)
    try:
        if jobs == 1:
            render(map(analyse, graphs()), keys)
        else:
            with ProcessPoolExecutor(jobs) as pool:
                render(pool.map(analyse, graphs()), keys)
    except OSError as e:
        raise InputError(str(e))


@cli.command()
@click.argument('family', type=click.Choice(list(FAMILIES)))
@click.argument('params', type=int, nargs=-1)
@click.pass_obj
def generate(settings: Settings, family: str, params: tuple[int, ...]) -> None:
    """Write a named graph, such as complete 4 or complete_bipartite 2 3, as graph6."""
    try:
        g = generate_named(family, *params, max_vertices=settings.max_vertices)
    except SizeLimitExceeded as e:
        raise SizeRefusal(str(e))
    except GraphError as e:
        raise InputError(str(e))
    print(write_graph6(g, settings.max_vertices))


def _tracker(manager: Any) -> Any:
    def track(name: str, graphs: Iterable[Graph]) -> Iterable[Graph]:
        counter = manager.counter(desc=name, unit='graphs', leave=False)
        yield from counter(graphs)
        counter.close()

    return track


@cli.command()
@click.option(
    '--nmax',
    type=click.IntRange(1, CORPUS_LIMIT),
    default=6,
    show_default=True,
    help='Largest number of vertices in the exhaustive sweeps.',
)
@click.option(
    '-s',
    '--suite',
    'suites',
    type=click.Choice(list(SUITES)),
    multiple=True,
    help='Run only these suites; all of them by default.',
)
@click.option('--random-count', type=click.IntRange(0), default=200, show_default=True)
@click.option('--seed', type=int, default=0, show_default=True)
@click.option(
    '--corpus',
    'corpus_paths',
    type=click.Path(exists=True, dir_okay=False, readable=True, path_type=Path),
    multiple=True,
    help='Sweep the connected graphs in these graph6 files instead of generating them.',
)
@click.pass_obj
def verify(
    settings: Settings,
    nmax: int,
    suites: tuple[str, ...],
    random_count: int,
    seed: int,
    corpus_paths: tuple[Path, ...],
) -> None:
    """Check the bounds and the algorithms behind them over every small connected graph."""
    console = Console()
    external = None
    if corpus_paths:
        try:
            external = tuple(external_corpus(corpus_paths, settings.max_vertices))
        except GraphFormatError as e:
            raise InputError(str(e))
        console.print(f'{len(external)} connected graphs read from {len(corpus_paths)} file(s)')
    else:
        for n in range(1, nmax + 1):
            console.print(f'n = {n}: {len(connected_graphs(n))} connected graphs')

    manager = enlighten.get_manager()
    sweep = Sweep(nmax, random_count, seed, external, _tracker(manager))
    results = run_suites(suites or SUITES, sweep)
    manager.stop()

    table = Table(box=box.ROUNDED)
    table.add_column('suite')
    table.add_column('checked', justify='right')
    table.add_column('violations', justify='right')
    table.add_column('result')
    for result in results:
        table.add_row(
            result.name,
            str(result.checked),
            str(len(result.violations)),
            '[green]✓ pass[/green]' if result.passed else '[red]✗ fail[/red]',
        )
    console.print(table)
    for result in results:
        for label, count in result.counts.items():
            console.print(f'{result.name}: {label} on {count} of {result.checked} graphs')

    failed = [result for result in results if not result.passed]
    for result in failed:
        first = result.violations[0]
        console.print(f'{result.name}: counterexample {first.graph6}', markup=False)
        console.print(f'  {first.message}', markup=False)
        for violation in result.violations[1:]:
            logging.info(f'{result.name}: {violation.graph6}: {violation.message}')
    if failed:
        raise click.ClickException(f'{len(failed)} suite(s) found violations')
