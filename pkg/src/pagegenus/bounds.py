"""Progressive genus bounds: a bracket that only ever narrows.

Lower bounds come from counting: every face of an embedding of a graph
with minimum degree 2 has length at least the girth, so F <= 2m/girth,
and genus adds over biconnected blocks, so block-wise bounds sum. Upper
bounds come from certificates: any embedding found (random rotation
sampling, or the exact search) caps the genus from above. A refinement
step runs one face-count level of the exact search; a level fully
exhausted raises the lower bound, a fit closes the bracket.
"""

from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from typing import Optional

from .certificate import EmbeddingCertificate, make_certificate
from .graph import Graph, biconnected_blocks, girth, subgraph_of_edges
from .rotation import (
    face_vertex_walk,
    genus_of_face_count,
    random_rotation,
    trace_faces,
)
from .search import Budget

logger = logging.getLogger(__name__)


def naive_density_lower_bound(g: Graph) -> int:
    """(m - 4n/3 + 2) / 2, floored: a density heuristic, NOT always sound.

    K_4 already beats it (the value is 1, the genus 0), so it is logged for
    comparison but never trusted in a bracket.
    """
    return (3 * g.m - 4 * g.n + 6) // 6


def _block_girth_lower_bound(n: int, m: int, block_girth: int | None) -> int:
    if m == 0 or block_girth is None:
        return 0
    # faces of length >= girth: F <= floor(2m/girth), needs min degree >= 2
    fmax = (2 * m) // block_girth
    return max(0, -((-(m - n + 2 - fmax)) // 2))


def sound_lower_bound(g: Graph) -> int:
    """Girth-based Euler lower bound, summed over biconnected blocks.

    Per-block it is safe because blocks have minimum degree 2 (bridges
    count 0), and genus is additive over blocks of a connected graph.
    """
    total = 0
    for block_edges in biconnected_blocks(g):
        if len(block_edges) == 1:
            continue
        sub, _, _ = subgraph_of_edges(g, block_edges)
        total += _block_girth_lower_bound(sub.n, sub.m, girth(sub))
    return total


def upper_bound_formula(g: Graph) -> int:
    """floor((m - n + 2) / 2) summed over blocks, clamped at 0."""
    total = 0
    for block_edges in biconnected_blocks(g):
        sub, _, _ = subgraph_of_edges(g, block_edges)
        total += max(0, (sub.m - sub.n + 2) // 2)
    return total


def initial_bounds(g: Graph) -> tuple[int, int]:
    """Constant-time starting bracket (lower, upper).

    The naive density bound is computed and logged for comparison only;
    the reported lower bound is the sound girth-based one.
    """
    naive = naive_density_lower_bound(g)
    lower = sound_lower_bound(g)
    upper = upper_bound_formula(g)
    logger.debug(
        "initial bounds: lower=%d upper=%d (naive density value %d, not used)",
        lower, upper, naive,
    )
    return lower, upper


@dataclass
class BoundsState:
    """Bracket [lower, upper] with its refinement history."""

    lower: int
    upper: int
    iteration: int = 0
    history: list[tuple[int, int, int, float]] = field(default_factory=list)
    certificate: Optional[EmbeddingCertificate] = None
    _session: object = field(default=None, repr=False, compare=False)

    @property
    def closed(self) -> bool:
        return self.lower == self.upper


def start_bounds(g: Graph, seed: int = 0) -> BoundsState:
    lower, upper = initial_bounds(g)
    state = BoundsState(lower=lower, upper=upper)
    state.history.append((0, lower, upper, time.time()))
    state._session = _Session(g, seed)
    return state


def heuristic_upper_bound(
    g: Graph, tries: int, seed: int
) -> tuple[int, EmbeddingCertificate]:
    """Best embedding among ``tries`` uniform random rotation systems.

    Faces come from standard face tracing, so the returned certificate
    always verifies; the genus is an upper bound, never below the sound
    lower bound.
    """
    if tries < 1:
        raise ValueError("need at least one try")
    if g.m == 0:
        return 0, make_certificate(g, [], 0)
    rng = random.Random(seed)
    best_genus: int | None = None
    best_faces: list[tuple[int, ...]] | None = None
    for _ in range(tries):
        rot = random_rotation(g, rng)
        faces = trace_faces(g, rot)
        genus = genus_of_face_count(g.n, g.m, len(faces))
        if best_genus is None or genus < best_genus:
            best_genus = genus
            best_faces = [face_vertex_walk(g, f) for f in faces]
            if best_genus == 0:
                break
    assert best_genus is not None and best_faces is not None
    return best_genus, make_certificate(g, best_faces, best_genus)


class _Session:
    """Carries the per-block level solvers between refine calls."""

    def __init__(self, g: Graph, seed: int):
        self.graph = g
        self.seed = seed
        self.solvers = None  # built lazily on first refine
        self.heuristic_done = False
        self.heuristic_genus: int | None = None
        self.heuristic_cert: EmbeddingCertificate | None = None

    def ensure_solvers(self):
        if self.solvers is None:
            from .engine import BlockSolver, split_blocks

            self.solvers = [
                BlockSolver(sub, vmap, emap) for sub, vmap, emap in split_blocks(self.graph)
            ]
        return self.solvers


def refine(
    g: Graph,
    state: BoundsState,
    budget: Budget | None = None,
    *,
    heuristic_tries: int = 16,
) -> BoundsState:
    """Advance the bracket by at most one face-count level.

    The first call also samples random rotations for a quick upper bound.
    A fully exhausted level raises the lower bound by one; a fit fixes a
    block's genus exactly. On budget exhaustion only the history grows.
    Lower bounds never decrease and upper bounds never increase.
    """
    if state.closed:
        return state
    session: _Session = state._session or _Session(g, 0)
    state._session = session

    from .engine import merged_certificate
    from .search import BudgetClock

    clock = BudgetClock(budget)

    if not session.heuristic_done:
        session.heuristic_done = True
        h_genus, h_cert = heuristic_upper_bound(g, heuristic_tries, session.seed)
        session.heuristic_genus = h_genus
        session.heuristic_cert = h_cert
        if h_genus < state.upper:
            state.upper = h_genus
            state.certificate = h_cert

    solvers = session.ensure_solvers()
    target = next((s for s in solvers if not s.done), None)
    if target is not None:
        target.run_level(clock)

    lower = sum(s.lower_genus() for s in solvers)
    upper = sum(s.upper_genus() for s in solvers)
    if session.heuristic_genus is not None:
        upper = min(upper, session.heuristic_genus)
    state.lower = max(state.lower, lower)
    state.upper = min(state.upper, upper)
    state.iteration += 1
    state.history.append((state.iteration, state.lower, state.upper, time.time()))

    if state.closed:
        if all(s.done for s in solvers):
            state.certificate = merged_certificate(g, solvers)
        elif session.heuristic_cert is not None and session.heuristic_genus == state.lower:
            state.certificate = session.heuristic_cert
    return state
