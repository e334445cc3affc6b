"""Simple-cycle enumeration, streamable per length and indexed by vertex.

Each undirected simple cycle is produced exactly once, in canonical form:
the vertex sequence starts at its smallest vertex and runs toward the
smaller of its two neighbors on the cycle (v1 < v[k-1]). On multigraphs
the same vertex sequence may appear once per combination of parallel edge
copies; a pair of parallel edges forms a 2-cycle (bigon).
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, Sequence

from .errors import CapacityExceeded
from .graph import Graph

DEFAULT_CYCLE_BUDGET = 2_000_000


class SimpleCycle:
    """An undirected simple cycle with a fixed canonical traversal.

    ``darts_forward`` follows the canonical vertex order; ``darts_reverse``
    is the opposite traversal of the same edges.
    """

    __slots__ = ("vertices", "edge_ids", "darts_forward", "darts_reverse")

    def __init__(self, g: Graph, vertices: tuple[int, ...], edge_ids: tuple[int, ...]):
        self.vertices = vertices
        self.edge_ids = edge_ids
        darts = []
        for i, e in enumerate(edge_ids):
            u = vertices[i]
            darts.append(2 * e + (1 if g.edges[e][0] != u else 0))
        self.darts_forward = tuple(darts)
        self.darts_reverse = tuple(d ^ 1 for d in reversed(darts))

    @property
    def length(self) -> int:
        return len(self.edge_ids)

    def sort_key(self) -> tuple:
        return (len(self.edge_ids), self.vertices, self.edge_ids)

    def __repr__(self) -> str:
        return f"SimpleCycle({','.join(map(str, self.vertices))})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimpleCycle)
            and self.vertices == other.vertices
            and self.edge_ids == other.edge_ids
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edge_ids))


class OrientedCycle:
    """One traversal direction of a simple cycle, with its corner pairs.

    A corner (s, t) says: the rotation at the shared vertex must send
    out-dart s (the reverse of the arriving dart) to out-dart t.
    """

    __slots__ = ("cycle", "reverse", "darts", "corners")

    def __init__(self, cycle: SimpleCycle, reverse: bool):
        self.cycle = cycle
        self.reverse = reverse
        self.darts = cycle.darts_reverse if reverse else cycle.darts_forward
        k = len(self.darts)
        self.corners = tuple(
            (self.darts[i] ^ 1, self.darts[(i + 1) % k]) for i in range(k)
        )

    @property
    def length(self) -> int:
        return len(self.darts)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.cycle.vertices

    def __repr__(self) -> str:
        arrow = "~" if self.reverse else "-"
        return f"OrientedCycle({arrow}{','.join(map(str, self.cycle.vertices))})"


def _restricted_distances(g: Graph, s: int) -> list[int]:
    """BFS distances from s in the subgraph induced on {s} + {v > s}."""
    inf = g.n + 1
    dist = [inf] * g.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w >= s and dist[w] == inf:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _bigons_from(g: Graph, s: int) -> Iterator[SimpleCycle]:
    by_neighbor: dict[int, list[int]] = {}
    for d in g.out_darts(s):
        w = g.dart_head(d)
        if w > s:
            by_neighbor.setdefault(w, []).append(d // 2)
    for w in sorted(by_neighbor):
        copies = sorted(by_neighbor[w])
        for i in range(len(copies)):
            for j in range(i + 1, len(copies)):
                yield SimpleCycle(g, (s, w), (copies[i], copies[j]))


def find_cycles_of_length(g: Graph, k: int) -> Iterator[SimpleCycle]:
    """Yield every simple cycle of length exactly k, once, in canonical form.

    Deterministic: start vertices ascending, then lexicographic by the
    canonical vertex sequence (and edge ids on multigraphs). Paths are
    pruned when the start vertex is no longer reachable in the remaining
    steps.
    """
    if not 2 <= k <= max(g.n, 2):
        raise ValueError(f"cycle length {k} outside 2..{g.n}")
    if k == 2:
        if not g.is_simple:
            for s in range(g.n):
                yield from _bigons_from(g, s)
        return

    # incidence[v] = (w, e) pairs sorted; only w > s may be visited
    incidence: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        incidence[u].append((v, e))
        incidence[v].append((u, e))
    for lst in incidence:
        lst.sort()

    for s in range(g.n):
        dist = _restricted_distances(g, s)
        if dist[s] != 0:
            continue
        on_path = bytearray(g.n)
        on_path[s] = 1
        path = [s]
        path_edges: list[int] = []

        def extend() -> Iterator[SimpleCycle]:
            depth = len(path)
            last = path[-1]
            if depth == k:
                if path[1] < last:  # canonical orientation
                    for w, e in incidence[last]:
                        if w == s:
                            yield SimpleCycle(g, tuple(path), tuple(path_edges) + (e,))
                return
            remaining = k - depth
            for w, e in incidence[last]:
                if w <= s or on_path[w] or dist[w] > remaining:
                    continue
                on_path[w] = 1
                path.append(w)
                path_edges.append(e)
                yield from extend()
                path.pop()
                path_edges.pop()
                on_path[w] = 0

        yield from extend()


def count_cycles_by_length(g: Graph, max_length: int | None = None) -> dict[int, int]:
    """Exact census of simple cycles per length; absent keys mean zero."""
    top = g.n if max_length is None else min(max_length, g.n)
    counts: dict[int, int] = {}
    lengths: Iterable[int] = range(2, top + 1) if not g.is_simple else range(3, top + 1)
    for k in lengths:
        c = sum(1 for _ in find_cycles_of_length(g, k))
        if c:
            counts[k] = c
    return counts


class CycleIndex:
    """Cycles of selected lengths, indexed by length, vertex, and dart.

    ``by_vertex`` lists are ordered by (length, canonical sequence); the
    dart index maps each dart to the (cycle, reversed?) candidates whose
    oriented traversal uses that dart, in the same order. Lengths can be
    added later; appending longer lengths keeps every list ordered.
    """

    def __init__(self, g: Graph, lengths: Iterable[int] = (), max_cycles: int = DEFAULT_CYCLE_BUDGET):
        self.graph = g
        self.max_cycles = max_cycles
        self.by_length: dict[int, list[SimpleCycle]] = {}
        self.by_vertex: dict[int, list[SimpleCycle]] = {v: [] for v in range(g.n)}
        self.counts: dict[int, int] = {}
        self._by_dart: dict[int, list[OrientedCycle]] = {d: [] for d in range(2 * g.m)}
        self._total = 0
        for k in sorted(set(lengths)):
            self.add_length(k)

    def add_length(self, k: int) -> None:
        if k in self.by_length:
            return
        if self.by_length and k < max(self.by_length):
            raise ValueError("lengths must be added in increasing order")
        bucket: list[SimpleCycle] = []
        for cycle in find_cycles_of_length(self.graph, k):
            bucket.append(cycle)
            self._total += 1
            if self._total > self.max_cycles:
                raise CapacityExceeded(
                    f"cycle index budget of {self.max_cycles} cycles exceeded at length {k}"
                )
        self.by_length[k] = bucket
        self.counts[k] = len(bucket)
        for cycle in bucket:
            for v in cycle.vertices:
                self.by_vertex[v].append(cycle)
            forward = OrientedCycle(cycle, False)
            backward = OrientedCycle(cycle, True)
            for d in forward.darts:
                self._by_dart[d].append(forward)
            for d in backward.darts:
                self._by_dart[d].append(backward)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(sorted(self.by_length))

    def candidates_for_dart(self, d: int) -> Sequence[OrientedCycle]:
        """Oriented cycles whose traversal uses dart d, shortest first."""
        return self._by_dart[d]

    def total_cycles(self) -> int:
        return self._total


def build_cycle_index(g: Graph, lengths: Iterable[int], max_cycles: int = DEFAULT_CYCLE_BUDGET) -> CycleIndex:
    """Index every simple cycle of the requested lengths.

    Raises CapacityExceeded when the cycle count passes ``max_cycles``;
    callers can fall back to the streaming enumerator.
    """
    wanted = sorted(set(lengths))
    lo = 2 if not g.is_simple else 3
    for k in wanted:
        if not lo <= k <= g.n:
            raise ValueError(f"cycle length {k} outside {lo}..{g.n}")
    return CycleIndex(g, wanted, max_cycles=max_cycles)
