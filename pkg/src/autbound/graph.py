import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Iterator, Self, Sequence, TypeAlias

from .exceptions import GraphError, GraphFormatError, SizeLimitExceeded

DEFAULT_MAX_VERTICES = 64
GRAPH6_HEADER = '>>graph6<<'

Edge: TypeAlias = tuple[int, int]


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    """
    An immutable simple undirected graph on the vertices ``0..n-1``.

    ``adj[v]`` is a bitrow: bit ``u`` is set when ``u`` and ``v`` are adjacent.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError(f'a graph needs at least one vertex, got n={self.n}')
        if len(self.adj) != self.n:
            raise GraphError(f'expected {self.n} adjacency rows, got {len(self.adj)}')
        outside = ~((1 << self.n) - 1)
        for v, row in enumerate(self.adj):
            if row & outside:
                raise GraphError(f'vertex {v} is adjacent to a vertex outside 0..{self.n - 1}')
            if row >> v & 1:
                raise GraphError(f'loop at vertex {v}')
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f'adjacency is not symmetric for {v} -> {u}')

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> Self:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f'edge ({u}, {v}) is out of range for n={n}')
            if u == v:
                raise GraphError(f'loop at vertex {u}')
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adj)

    @cached_property
    def e(self) -> int:
        return sum(self.degrees) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return tuple(bits(self.adj[v]))

    def edges(self) -> Iterator[Edge]:
        """Yield each edge once as ``(u, v)`` with ``u < v``, in lexicographic order."""
        for u, row in enumerate(self.adj):
            for v in bits(row >> (u + 1)):
                yield u, u + 1 + v

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f'vertex {v} is out of range for n={self.n}')


@dataclass(frozen=True)
class DegreeStats:
    degrees: tuple[int, ...]
    delta_max: int
    delta_min: int
    d_avg: Fraction


def degree_stats(g: Graph) -> DegreeStats:
    return DegreeStats(
        degrees=g.degrees,
        delta_max=max(g.degrees),
        delta_min=min(g.degrees),
        d_avg=Fraction(2 * g.e, g.n),
    )


def is_connected(g: Graph) -> bool:
    seen = frontier = 1
    while frontier:
        reached = 0
        for v in bits(frontier):
            reached |= g.adj[v]
        frontier = reached & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Return the graph in which vertex ``v`` of ``g`` is renamed ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise GraphError(f'{list(perm)} is not a permutation of 0..{g.n - 1}')
    rows = [0] * g.n
    for v, row in enumerate(g.adj):
        rows[perm[v]] = mask_of(perm[u] for u in bits(row))
    return Graph(g.n, tuple(rows))


# graph6

def _check_size(operation: str, n: int, max_vertices: int) -> None:
    if n > max_vertices:
        raise SizeLimitExceeded(operation, n, max_vertices)


def _encode_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return '~' + ''.join(chr((n >> shift & 63) + 63) for shift in (12, 6, 0))
    return '~~' + ''.join(chr((n >> shift & 63) + 63) for shift in (30, 24, 18, 12, 6, 0))


def _decode_size(data: str, start: int) -> tuple[int, int]:
    if data[0] != '~':
        return ord(data[0]) - 63, 1
    width, pos = (6, 2) if data[1:2] == '~' else (3, 1)
    if len(data) < pos + width:
        raise GraphFormatError('truncated size header', start + len(data))
    n = 0
    for ch in data[pos : pos + width]:
        n = n << 6 | (ord(ch) - 63)
    return n, pos + width


def parse_graph6(text: str, max_vertices: int = DEFAULT_MAX_VERTICES) -> Graph:
    """
    Parse one graph6 line. A trailing newline and a leading ``>>graph6<<`` header are
    accepted; anything else that is not part of the encoding is an error.
    """
    line = text.rstrip('\r\n')
    start = len(GRAPH6_HEADER) if line.startswith(GRAPH6_HEADER) else 0
    data = line[start:]
    if not data:
        raise GraphFormatError('empty graph6 string', start)
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f'invalid graph6 byte {ch!r}', start + i)

    n, pos = _decode_size(data, start)
    if n == 0:
        raise GraphFormatError('graph6 string encodes a graph with no vertices', start)
    _check_size('graph6 parsing', n, max_vertices)

    bit_count = n * (n - 1) // 2
    byte_count = (bit_count + 5) // 6
    body = data[pos:]
    if len(body) < byte_count:
        raise GraphFormatError(
            f'truncated bit section: expected {byte_count} bytes, got {len(body)}',
            start + len(data),
        )
    if len(body) > byte_count:
        raise GraphFormatError('trailing garbage after graph6 data', start + pos + byte_count)

    value = 0
    for ch in body:
        value = value << 6 | (ord(ch) - 63)
    padding = byte_count * 6 - bit_count
    if value & ((1 << padding) - 1):
        raise GraphFormatError('non-zero padding bits', start + pos + byte_count - 1)
    value >>= padding

    rows = [0] * n
    k = bit_count
    for j in range(1, n):
        for i in range(j):
            k -= 1
            if value >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def write_graph6(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> str:
    _check_size('graph6 writing', g.n, max_vertices)
    bit_count = g.n * (g.n - 1) // 2
    byte_count = (bit_count + 5) // 6
    value = 0
    for j in range(1, g.n):
        for i in range(j):
            value = value << 1 | (g.adj[i] >> j & 1)
    value <<= byte_count * 6 - bit_count
    body = ''.join(
        chr((value >> (6 * (byte_count - 1 - b)) & 63) + 63) for b in range(byte_count)
    )
    return _encode_size(g.n) + body


# edge lists

def _is_index(field: str) -> bool:
    return field.isascii() and field.isdigit()


def parse_edgelist(text: str, max_vertices: int = DEFAULT_MAX_VERTICES) -> Graph:
    """
    Parse a vertex count on the first line followed by one ``u v`` pair per line.
    Blank lines are ignored; duplicate edges are logged and ignored.
    """
    lines = [(number, line.split()) for number, line in enumerate(text.splitlines(), 1)]
    lines = [(number, fields) for number, fields in lines if fields]
    if not lines:
        raise GraphFormatError('empty edge list', 1)

    number, fields = lines[0]
    if len(fields) != 1 or not _is_index(fields[0]):
        raise GraphFormatError(f'expected a vertex count, got {" ".join(fields)!r}', number)
    n = int(fields[0])
    if n == 0:
        raise GraphFormatError('an edge list needs at least one vertex', number)
    _check_size('edge list parsing', n, max_vertices)

    rows = [0] * n
    for number, fields in lines[1:]:
        if len(fields) != 2 or not all(_is_index(f) for f in fields):
            raise GraphFormatError(f'expected "u v", got {" ".join(fields)!r}', number)
        u, v = int(fields[0]), int(fields[1])
        if u >= n or v >= n:
            raise GraphFormatError(f'edge ({u}, {v}) is out of range for n={n}', number)
        if u == v:
            raise GraphFormatError(f'loop at vertex {u}', number)
        if rows[u] >> v & 1:
            logging.warning(f'duplicate edge ({u}, {v}) on line {number} ignored')
            continue
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


# named families

def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def complete_bipartite_graph(p: int, q: int) -> Graph:
    return Graph.from_edges(p + q, ((u, p + v) for u in range(p) for v in range(q)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((v, (v + 1) % n) for v in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((v, v + 1) for v in range(n - 1)))


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, v) for v in range(1, leaves + 1)))


def petersen_graph() -> Graph:
    outer = ((v, (v + 1) % 5) for v in range(5))
    spokes = ((v, v + 5) for v in range(5))
    inner = ((5 + v, 5 + (v + 2) % 5) for v in range(5))
    return Graph.from_edges(10, [*outer, *spokes, *inner])


def hypercube_graph(d: int) -> Graph:
    n = 1 << d
    return Graph.from_edges(
        n, ((v, v | 1 << b) for v in range(n) for b in range(d) if not v >> b & 1)
    )


@dataclass(frozen=True)
class Family:
    build: Callable[..., Graph]
    minimums: tuple[int, ...]
    order: Callable[..., int]


FAMILIES: dict[str, Family] = {
    'complete': Family(complete_graph, (1,), lambda n: n),
    'complete_bipartite': Family(complete_bipartite_graph, (1, 1), lambda p, q: p + q),
    'cycle': Family(cycle_graph, (3,), lambda n: n),
    'path': Family(path_graph, (1,), lambda n: n),
    'star': Family(star_graph, (1,), lambda leaves: leaves + 1),
    'petersen': Family(petersen_graph, (), lambda: 10),
    'hypercube': Family(hypercube_graph, (1,), lambda d: 1 << d),
}


def generate_named(
    family: str, *params: int, max_vertices: int = DEFAULT_MAX_VERTICES
) -> Graph:
    """Build the canonical labelled instance of a named graph family."""
    entry = FAMILIES.get(family)
    if entry is None:
        raise GraphError(f'unknown graph family {family!r}, expected one of {", ".join(FAMILIES)}')
    if len(params) != len(entry.minimums):
        raise GraphError(f'{family} takes {len(entry.minimums)} parameter(s), got {len(params)}')
    for value, minimum in zip(params, entry.minimums):
        if value < minimum:
            raise GraphError(f'{family} parameters must be at least {minimum}, got {params}')
    _check_size(f'{family} generation', entry.order(*params), max_vertices)
    return entry.build(*params)
