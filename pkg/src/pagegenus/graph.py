"""Immutable connected multigraphs: parsing, generators, genus formulas.

Vertices are dense integers 0..n-1 so the hot loops downstream can index
plain arrays. Edges are unordered pairs carrying a stable integer id (their
position in the edge list); parallel edges are distinct ids. Every edge id
``e`` yields two darts (directed edge instances): dart ``2*e`` runs from
``edges[e][0]`` to ``edges[e][1]`` and dart ``2*e + 1`` runs the opposite
way, so ``d ^ 1`` flips a dart.
"""

from __future__ import annotations

import hashlib
from collections import deque
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    DisconnectedGraph,
    InvalidParameters,
    MalformedGraph6,
    MalformedLine,
    SelfLoop,
)


class DirectedEdge(NamedTuple):
    """One traversal direction of an undirected edge."""

    edge_id: int
    tail: int
    head: int

    @property
    def dart(self) -> int:
        return 2 * self.edge_id + (1 if self.tail > self.head else 0)


class Graph:
    """Connected multigraph, immutable after construction.

    Parallel edges are allowed (each copy keeps its own id); self-loops and
    disconnected inputs are rejected. Safe for shared concurrent reads.
    """

    __slots__ = ("n", "m", "edges", "adjacency", "_degrees", "_out_darts", "_dart_tail", "_dart_head")

    def __init__(self, n: int, edges: Sequence[tuple[int, int]]):
        if n < 1:
            raise InvalidParameters("graph needs at least one vertex")
        edges = tuple((int(u), int(v)) for u, v in edges)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameters(f"edge ({u}, {v}) references a vertex outside 0..{n - 1}")
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
        self.n = n
        self.m = len(edges)
        self.edges = edges

        incident: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        dart_tail = [0] * (2 * self.m)
        dart_head = [0] * (2 * self.m)
        for e, (u, v) in enumerate(edges):
            incident[u].append((v, e))
            incident[v].append((u, e))
            dart_tail[2 * e] = u
            dart_head[2 * e] = v
            dart_tail[2 * e + 1] = v
            dart_head[2 * e + 1] = u
        self._dart_tail = dart_tail
        self._dart_head = dart_head

        adjacency = []
        out_darts = []
        for v in range(n):
            incident[v].sort()
            adjacency.append(tuple(w for w, _ in incident[v]))
            out_darts.append(tuple(2 * e + (1 if edges[e][0] != v else 0) for _, e in incident[v]))
        self.adjacency = tuple(adjacency)
        self._out_darts = tuple(out_darts)
        self._degrees = tuple(len(a) for a in self.adjacency)

        if not self._is_connected():
            raise DisconnectedGraph("graph is not connected")

    def _is_connected(self) -> bool:
        if self.n == 1:
            return True
        seen = bytearray(self.n)
        seen[0] = 1
        queue = deque([0])
        count = 1
        while queue:
            v = queue.popleft()
            for w in self.adjacency[v]:
                if not seen[w]:
                    seen[w] = 1
                    count += 1
                    queue.append(w)
        return count == self.n

    # -- views ---------------------------------------------------------

    def degree(self, v: int) -> int:
        return self._degrees[v]

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def out_darts(self, v: int) -> tuple[int, ...]:
        """Darts leaving v, sorted by (head vertex, edge id)."""
        return self._out_darts[v]

    def dart_tail(self, d: int) -> int:
        return self._dart_tail[d]

    def dart_head(self, d: int) -> int:
        return self._dart_head[d]

    def directed_edge(self, d: int) -> DirectedEdge:
        return DirectedEdge(d // 2, self._dart_tail[d], self._dart_head[d])

    @property
    def is_simple(self) -> bool:
        pairs = {(min(u, v), max(u, v)) for u, v in self.edges}
        return len(pairs) == self.m

    def edge_ids_between(self, u: int, v: int) -> tuple[int, ...]:
        return tuple(e for e, (a, b) in enumerate(self.edges) if {a, b} == {u, v})

    # -- identity ------------------------------------------------------

    def edge_list_hash(self) -> str:
        """Stable 16-hex-digit hash of the sorted normalized edge list."""
        canon = sorted((min(u, v), max(u, v)) for u, v in self.edges)
        text = ";".join(f"{u},{v}" for u, v in canon)
        return hashlib.sha256(text.encode("ascii")).hexdigest()[:16]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- parsing -----------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse "u v" lines into a Graph, relabeling vertices densely.

    Blank lines and '#'-prefixed comment lines are ignored. Vertex labels
    may be arbitrary nonnegative integers; they are renumbered 0..n-1 in
    order of first appearance. Duplicate lines become parallel edges.
    """
    labels: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise MalformedLine(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise MalformedLine(f"line {lineno}: non-integer vertex in {line!r}") from None
        if a < 0 or b < 0:
            raise MalformedLine(f"line {lineno}: negative vertex in {line!r}")
        if a == b:
            raise SelfLoop(f"line {lineno}: self-loop at vertex {a}")
        for x in (a, b):
            if x not in labels:
                labels[x] = len(labels)
        edges.append((labels[a], labels[b]))
    if not labels:
        raise MalformedLine("no edges in input")
    return Graph(len(labels), edges)


# -- graph6 ------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def _g6_bytes_to_bits(data: bytes, need: int) -> list[int]:
    bits: list[int] = []
    for ch in data:
        if not (63 <= ch <= 126):
            raise MalformedGraph6(f"byte {ch} outside graph6 range 63..126")
        x = ch - 63
        bits.extend((x >> shift) & 1 for shift in range(5, -1, -1))
    if len(bits) < need:
        raise MalformedGraph6("encoding shorter than the adjacency matrix requires")
    return bits


def parse_graph6(text: str) -> Graph:
    """Decode a standard graph6 string into a simple connected Graph."""
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):].strip()
    if not s:
        raise MalformedGraph6("empty graph6 string")
    data = s.encode("ascii", errors="replace")
    if data[0] == 126:  # '~'
        if len(data) >= 2 and data[1] == 126:
            if len(data) < 8:
                raise MalformedGraph6("truncated 8-byte vertex count")
            chunk, rest = data[2:8], data[8:]
        else:
            if len(data) < 4:
                raise MalformedGraph6("truncated 4-byte vertex count")
            chunk, rest = data[1:4], data[4:]
        n = 0
        for ch in chunk:
            if not (63 <= ch <= 126):
                raise MalformedGraph6("vertex count byte outside graph6 range")
            n = (n << 6) | (ch - 63)
    else:
        if not (63 <= data[0] <= 125):
            raise MalformedGraph6("vertex count byte outside graph6 range")
        n, rest = data[0] - 63, data[1:]
    if n < 1:
        raise MalformedGraph6("graph6 string encodes an empty graph")
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    if len(rest) != expected:
        raise MalformedGraph6(f"expected {expected} adjacency bytes for n={n}, got {len(rest)}")
    bits = _g6_bytes_to_bits(rest, nbits)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    if any(bits[nbits:]):
        raise MalformedGraph6("nonzero padding bits")
    return Graph(n, edges)


def encode_graph6(g: Graph) -> str:
    """Encode a simple Graph as a standard graph6 string."""
    if not g.is_simple:
        raise InvalidParameters("graph6 cannot express parallel edges")
    n = g.n
    if n <= 62:
        head = chr(n + 63)
    elif n <= 258047:
        head = "~" + "".join(chr(((n >> shift) & 63) + 63) for shift in (12, 6, 0))
    else:
        head = "~~" + "".join(chr(((n >> shift) & 63) + 63) for shift in (30, 24, 18, 12, 6, 0))
    adj = [[False] * n for _ in range(n)]
    for u, v in g.edges:
        adj[u][v] = adj[v][u] = True
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if adj[i][j] else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = []
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = (x << 1) | b
        chars.append(chr(x + 63))
    return head + "".join(chars)


# -- generators --------------------------------------------------------


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise InvalidParameters("complete graph needs n >= 1")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise InvalidParameters("complete bipartite graph needs both sides nonempty")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def complete_multipartite_graph(sizes: Sequence[int]) -> Graph:
    sizes = list(sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise InvalidParameters("multipartite part sizes must be positive")
    starts = [0]
    for s in sizes:
        starts.append(starts[-1] + s)
    n = starts[-1]
    part = [0] * n
    for p, (lo, s) in enumerate(zip(starts, sizes)):
        for v in range(lo, lo + s):
            part[v] = p
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if part[i] != part[j]]
    if n > 1 and not edges:
        raise InvalidParameters("a single part gives an edgeless graph")
    return Graph(n, edges)


def circulant_graph(n: int, connections: Iterable[int]) -> Graph:
    """Circulant over Z_n: vertex i adjacent to i +/- s for each connection s.

    Connections are normalized to min(s, n - s); duplicates collapse, so the
    result is always simple.
    """
    conns = set()
    for s in connections:
        s = int(s)
        if s <= 0 or s >= n:
            raise InvalidParameters(f"circulant connection {s} outside 1..{n - 1}")
        conns.add(min(s, n - s))
    if not conns:
        raise InvalidParameters("circulant needs at least one connection")
    edges = []
    for s in sorted(conns):
        if 2 * s == n:
            edges.extend((i, i + s) for i in range(s))
        else:
            edges.extend((i, (i + s) % n) for i in range(n))
    return Graph(n, edges)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParameters("cycle graph needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise InvalidParameters("path graph needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def generate(spec: str) -> Graph:
    """Build a named-family graph from a CLI spec string.

    Formats: ``complete:7``, ``bipartite:3,3``, ``multipartite:2,2,2,2``,
    ``circulant:14:1,2,3,6``, ``cycle:6``, ``path:5``.
    """
    def ints(csv: str) -> list[int]:
        try:
            return [int(tok) for tok in csv.split(",") if tok != ""]
        except ValueError:
            raise InvalidParameters(f"non-integer parameter in {csv!r}") from None

    parts = spec.strip().split(":")
    family, args = parts[0], parts[1:]
    try:
        if family == "complete" and len(args) == 1:
            return complete_graph(int(args[0]))
        if family == "bipartite" and len(args) == 1 and len(ints(args[0])) == 2:
            a, b = ints(args[0])
            return complete_bipartite_graph(a, b)
        if family == "multipartite" and len(args) == 1:
            return complete_multipartite_graph(ints(args[0]))
        if family == "circulant" and len(args) == 2:
            return circulant_graph(int(args[0]), ints(args[1]))
        if family == "cycle" and len(args) == 1:
            return cycle_graph(int(args[0]))
        if family == "path" and len(args) == 1:
            return path_graph(int(args[0]))
    except ValueError:
        raise InvalidParameters(f"non-integer parameter in generator spec {spec!r}") from None
    raise InvalidParameters(f"unrecognized generator spec {spec!r}")


# -- closed-form genus values ------------------------------------------


def genus_formula_complete(n: int) -> int:
    """Minimum orientable genus of the complete graph K_n, n >= 3."""
    if n < 3:
        raise InvalidParameters("formula defined for n >= 3")
    return -((-(n - 3) * (n - 4)) // 12)


def genus_formula_complete_bipartite(a: int, b: int) -> int:
    """Minimum orientable genus of K_{a,b}, a, b >= 2."""
    if a < 2 or b < 2:
        raise InvalidParameters("formula defined for a, b >= 2")
    return -((-(a - 2) * (b - 2)) // 4)


# -- structure ---------------------------------------------------------


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, or None for an acyclic graph.

    Parallel edges give girth 2. Uses one truncated BFS per vertex.
    """
    pair_count: dict[tuple[int, int], int] = {}
    for u, v in g.edges:
        key = (min(u, v), max(u, v))
        pair_count[key] = pair_count.get(key, 0) + 1
    if any(c > 1 for c in pair_count.values()):
        return 2
    best: int | None = None
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] >= best:
                continue
            for w in g.adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    cand = dist[u] + dist[w] + 1
                    if best is None or cand < best:
                        best = cand
    return best


def biconnected_blocks(g: Graph) -> list[list[int]]:
    """Partition edge ids into biconnected blocks.

    Bridges come back as single-edge blocks. Order is deterministic:
    blocks are emitted as the DFS retreats, then sorted by smallest edge id.
    """
    if g.m == 0:
        return []
    disc = [-1] * g.n
    low = [0] * g.n
    incidence: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        incidence[u].append((v, e))
        incidence[v].append((u, e))
    for lst in incidence:
        lst.sort()

    blocks: list[list[int]] = []
    edge_stack: list[int] = []
    timer = 0
    # frames: (vertex, incoming edge id, index into incidence list)
    stack = [(0, -1, 0)]
    disc[0] = low[0] = timer
    timer += 1
    while stack:
        v, pe, i = stack[-1]
        if i < len(incidence[v]):
            stack[-1] = (v, pe, i + 1)
            w, e = incidence[v][i]
            if e == pe:
                continue
            if disc[w] == -1:
                edge_stack.append(e)
                disc[w] = low[w] = timer
                timer += 1
                stack.append((w, e, 0))
            elif disc[w] < disc[v]:
                edge_stack.append(e)
                if disc[w] < low[v]:
                    low[v] = disc[w]
        else:
            stack.pop()
            if stack:
                u = stack[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
                if low[v] >= disc[u]:
                    block = []
                    while True:
                        e = edge_stack.pop()
                        block.append(e)
                        if e == pe:
                            break
                    blocks.append(sorted(block))
    blocks.sort(key=lambda b: b[0])
    return blocks


def subgraph_of_edges(g: Graph, edge_ids: Sequence[int]) -> tuple[Graph, list[int], list[int]]:
    """Extract the subgraph spanned by the given edges with dense labels.

    Returns (subgraph, vertex_map, edge_map) where vertex_map[new] = old
    vertex and edge_map[new] = old edge id. Stored endpoint order is
    preserved so dart direction bits carry over unchanged.
    """
    edge_ids = sorted(edge_ids)
    verts = sorted({v for e in edge_ids for v in g.edges[e]})
    relabel = {old: new for new, old in enumerate(verts)}
    edges = [(relabel[g.edges[e][0]], relabel[g.edges[e][1]]) for e in edge_ids]
    return Graph(len(verts), edges), verts, list(edge_ids)
