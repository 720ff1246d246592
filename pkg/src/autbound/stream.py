import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, TextIO

import click

STDIN = '-'
# undecodable bytes survive as lone surrogates, which graph6 parsing rejects
ERRORS = 'surrogateescape'


@dataclass(frozen=True)
class Line:
    source: str
    number: int
    text: str

    @property
    def graph_id(self) -> str:
        return f'{self.source}:{self.number}'


def _paths(path_or_glob: Path | str) -> Iterable[Path]:
    if isinstance(path_or_glob, Path) or not any(c in path_or_glob for c in '*?['):
        return [Path(path_or_glob)]
    glob_path = Path(path_or_glob)
    if glob_path.is_absolute():
        return glob_path.parent.glob(glob_path.name)
    return Path().glob(path_or_glob)


def _lines(source: str, stream: TextIO) -> Iterator[Line]:
    for number, text in enumerate(stream, 1):
        text = text.strip()
        if text:
            yield Line(source, number, text)


def graph6_stream(paths_or_globs: Iterable[Path | str]) -> Iterator[Line]:
    """
    The non-blank lines of each file in turn, with files matching a glob taken in sorted
    order. ``-`` reads standard input.
    """
    for path_or_glob in paths_or_globs:
        if path_or_glob == STDIN:
            yield from _lines('<stdin>', click.get_text_stream('stdin', errors=ERRORS))
            continue
        for path in sorted(_paths(path_or_glob)):
            logging.info(f'opening {path}')
            with path.open(errors=ERRORS) as source:
                yield from _lines(str(path), source)
