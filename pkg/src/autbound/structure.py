from dataclasses import dataclass

from .exceptions import SizeLimitExceeded
from .graph import Graph, bits

STRUCTURE_LIMIT = 20


def _check_size(operation: str, g: Graph) -> None:
    if g.n > STRUCTURE_LIMIT:
        raise SizeLimitExceeded(operation, g.n, STRUCTURE_LIMIT)


@dataclass(frozen=True)
class PathCoverResult:
    p: int
    witness: tuple[tuple[int, ...], ...]

    def validate(self, g: Graph) -> None:
        errors: list[Exception] = []
        if len(self.witness) != self.p:
            errors.append(ValueError(f'{len(self.witness)} paths given for p={self.p}'))
        covered = [v for path in self.witness for v in path]
        if sorted(covered) != list(range(g.n)):
            errors.append(ValueError('paths do not cover each vertex exactly once'))
        for path in self.witness:
            for u, v in zip(path, path[1:]):
                if not g.has_edge(u, v):
                    errors.append(ValueError(f'path step ({u}, {v}) is not an edge'))
        if errors:
            raise ExceptionGroup('path cover witness is invalid', errors)


def path_cover_number(g: Graph) -> PathCoverResult:
    """
    The minimum number of vertex-disjoint paths covering every vertex, with a witness.

    ``cost[mask][v]`` is the fewest paths covering exactly ``mask`` where the last path
    ends at ``v``: either ``v`` extends a path ending at a neighbour, or starts a new one.
    """
    _check_size('path cover computation', g)
    n = g.n
    unreachable = n + 1
    cost = bytearray([unreachable]) * ((1 << n) * n)
    best = bytearray([unreachable]) * (1 << n)
    best[0] = 0
    for mask in range(1, 1 << n):
        lowest = unreachable
        for v in bits(mask):
            rest = mask ^ 1 << v
            here = best[rest] + 1
            for u in bits(g.adj[v] & rest):
                here = min(here, cost[rest * n + u])
            cost[mask * n + v] = here
            lowest = min(lowest, here)
        best[mask] = lowest

    def cheapest_end(mask: int) -> int:
        return min(bits(mask), key=lambda v: cost[mask * n + v])

    paths: list[tuple[int, ...]] = []
    current: list[int] = []
    mask = (1 << n) - 1
    v = cheapest_end(mask)
    while mask:
        current.append(v)
        rest = mask ^ 1 << v
        here = cost[mask * n + v]
        previous = next((u for u in bits(g.adj[v] & rest) if cost[rest * n + u] == here), None)
        if previous is None:
            paths.append(tuple(reversed(current)))
            current = []
            if rest:
                previous = cheapest_end(rest)
        mask = rest
        if previous is not None:
            v = previous
    return PathCoverResult(best[(1 << n) - 1], tuple(sorted(paths)))


def has_hamiltonian_path(g: Graph) -> bool:
    """Whether a single path visits every vertex, by the reachable-endpoints subset DP."""
    _check_size('Hamiltonian path search', g)
    ends = [0] * (1 << g.n)
    for v in range(g.n):
        ends[1 << v] = 1 << v
    for mask in range(1, 1 << g.n):
        for v in bits(ends[mask]):
            for u in bits(g.adj[v] & ~mask):
                ends[mask | 1 << u] |= 1 << u
    return ends[-1] != 0


def _max_independent(g: Graph, mask: int) -> int:
    if not mask:
        return 0
    v = (mask & -mask).bit_length() - 1
    neighbours = g.adj[v] & mask
    rest = mask ^ 1 << v
    taken = 1 << v | _max_independent(g, rest & ~neighbours)
    if not neighbours:
        return taken
    skipped = _max_independent(g, rest)
    return skipped if skipped.bit_count() > taken.bit_count() else taken


@dataclass(frozen=True)
class StarFreeParam:
    m_min: int
    witness_vertex: int | None
    witness_independent_set: tuple[int, ...]


def star_free_parameter(g: Graph) -> StarFreeParam:
    """
    The smallest m >= 2 for which ``g`` has no induced star with m leaves: one more than
    the largest independent set inside any open neighbourhood.
    """
    _check_size('star-free parameter computation', g)
    witness_vertex = None
    witness = 0
    for v in range(g.n):
        independent = _max_independent(g, g.adj[v])
        if independent.bit_count() > witness.bit_count():
            witness_vertex, witness = v, independent
    return StarFreeParam(
        m_min=max(2, witness.bit_count() + 1),
        witness_vertex=witness_vertex,
        witness_independent_set=tuple(bits(witness)),
    )
