import csv
import json
import sys
from enum import StrEnum
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence, TypeAlias

from gmpy2 import mpfr
from rich import box
from rich.console import Console
from rich.table import Table

from .arithmetic import format_log2, log2_of
from .bounds import BoundReport, BoundValue

SCHEMA = 'autbound.report/1'

REPORT_COLUMNS = (
    'graph_id',
    'graph6',
    'n',
    'e',
    'aut_exact',
    'bound_id',
    'variant',
    'applicable',
    'reason',
    'exact_value',
    'log2_value',
    'gap',
)
BATCH_COLUMNS = ('graph_id', 'graph6', 'n', 'e', 'aut_exact')


class OutputFormat(StrEnum):
    TABLE = 'table'
    CSV = 'csv'
    JSON = 'json'


class ReportEncoder(json.JSONEncoder):
    def default(self, obj: Any) -> Any:
        if isinstance(obj, Fraction):
            return str(obj)
        elif isinstance(obj, mpfr):
            return format_log2(obj)
        raise TypeError(f'Unexpected type: {type(obj)}, {obj!r}')


def cell(value: Any) -> str:
    """Text for one CSV field: exact values as decimal strings, log2 values to 17 digits."""
    if value is None:
        return ''
    elif isinstance(value, bool):
        return 'true' if value else 'false'
    elif isinstance(value, mpfr):
        return format_log2(value)
    return str(value)


def bound_record(value: BoundValue, aut: int | None) -> dict[str, Any]:
    return {
        'bound_id': value.bound_id,
        'variant': value.variant,
        'applicable': value.applicable,
        'reason': value.reason,
        'exact_value': value.exact_value,
        'log2_value': value.log2_value,
        'gap': None if aut is None else value.gap(aut),
        'context': value.context,
    }


def report_record(report: BoundReport) -> dict[str, Any]:
    aut = report.aut_exact
    return {
        'schema': SCHEMA,
        'graph_id': report.graph_id,
        'graph6': report.graph6,
        'n': report.n,
        'e': report.e,
        'aut_exact': None if aut is None else str(aut),
        'log2_aut': None if aut is None else log2_of(aut),
        'note': report.note,
        'bounds': [bound_record(value, aut) for value in report.bounds],
    }


def as_json(report: BoundReport, indent: int | None = None) -> str:
    return json.dumps(report_record(report), cls=ReportEncoder, indent=indent)


def show_json(report: BoundReport) -> None:
    print(as_json(report, indent=2))


def show_csv(report: BoundReport) -> None:
    writer = csv.writer(sys.stdout, lineterminator='\n')
    writer.writerow(REPORT_COLUMNS)
    header = [report.graph_id, report.graph6, report.n, report.e, report.aut_exact]
    for value in report.bounds:
        record = bound_record(value, report.aut_exact)
        row = [*header, *(record[column] for column in REPORT_COLUMNS[len(header) :])]
        writer.writerow(cell(v) for v in row)


def _shown(value: mpfr | None) -> str:
    return '' if value is None else f'{float(value):.6f}'


def show_table(report: BoundReport) -> None:
    console = Console()
    if report.graph_id:
        console.print(report.graph_id, markup=False)
    console.print(f'n = {report.n}, e = {report.e}, graph6 = {report.graph6}', markup=False)
    if report.aut_exact is not None:
        console.print(f'aut = {report.aut_exact}')
    table = Table(box=box.ROUNDED)
    table.add_column('bound', no_wrap=True)
    table.add_column('exact', justify='right')
    table.add_column('log2', justify='right')
    table.add_column('gap', justify='right')
    table.add_column('status')
    for value in report.bounds:
        gap = None if report.aut_exact is None else value.gap(report.aut_exact)
        table.add_row(
            value.key,
            cell(value.exact_value),
            _shown(value.log2_value),
            _shown(gap),
            'ok' if value.applicable else str(value.reason),
        )
    console.print(table)
    if report.note:
        console.print(f'[yellow]{report.note}[/yellow]')


Renderer: TypeAlias = Callable[[BoundReport], None]

RENDERERS: dict[OutputFormat, Renderer] = {
    OutputFormat.TABLE: show_table,
    OutputFormat.CSV: show_csv,
    OutputFormat.JSON: show_json,
}


def batch_csv(reports: Iterable[BoundReport], keys: Sequence[str]) -> None:
    """One row per report with the log2 value of each bound; the header comes with the first row."""
    writer = csv.writer(sys.stdout, lineterminator='\n')
    for i, report in enumerate(reports):
        if not i:
            writer.writerow([*BATCH_COLUMNS, *keys])
        values = {value.key: value.log2_value for value in report.bounds}
        writer.writerow(
            [
                cell(report.graph_id),
                cell(report.graph6),
                cell(report.n),
                cell(report.e),
                cell(report.aut_exact),
                *(cell(values.get(key)) for key in keys),
            ]
        )


def batch_json(reports: Iterable[BoundReport], keys: Sequence[str]) -> None:
    for report in reports:
        print(as_json(report))


BATCH_RENDERERS: dict[OutputFormat, Callable[[Iterable[BoundReport], Sequence[str]], None]] = {
    OutputFormat.CSV: batch_csv,
    OutputFormat.JSON: batch_json,
}
