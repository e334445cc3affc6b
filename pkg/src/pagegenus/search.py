"""Backtracking search for a face set realizing one cycle distribution.

A candidate face is an oriented simple cycle. A face set is valid when it
uses every dart exactly once and the corners it induces form a single
cyclic rotation at each vertex. The search covers one specific unused dart
at a time (so sibling branches partition the solution space), picks that
dart at the most-constrained vertex, and prunes on dart reuse, vertex face
quotas, and corner conflicts.

Corner bookkeeping: when a face arrives at v along dart a and leaves along
dart b, the rotation at v must send rev(a) to b. All corners live in one
flat ``sigma`` array keyed by the out-dart rev(a); a completed fit is a
valid embedding iff sigma restricted to each vertex is one cyclic orbit.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Sequence

from .cycles import CycleIndex, OrientedCycle
from .distributions import CycleDistribution
from .errors import NoUnsatisfiedVertex
from .graph import Graph

FOUND = "found"
EXHAUSTED = "exhausted"
BUDGET_EXCEEDED = "budget_exceeded"


class SearchState:
    """Mutable state of one search: dart usage, quotas, corners, parts."""

    __slots__ = ("graph", "used", "remaining_quota", "sigma", "remaining_parts", "chosen")

    def __init__(self, graph: Graph, dist: CycleDistribution):
        self.graph = graph
        self.used = bytearray(2 * graph.m)
        self.remaining_quota = list(graph.degrees)
        self.sigma = [-1] * (2 * graph.m)
        self.remaining_parts = dist.as_dict()
        self.chosen: list[OrientedCycle] = []

    @property
    def used_count(self) -> int:
        return sum(self.used)


@dataclass
class Budget:
    """Optional wall-clock and node limits."""

    max_seconds: float | None = None
    max_nodes: int | None = None


class BudgetClock:
    """Shared countdown across several searches (one genus computation)."""

    __slots__ = ("deadline", "max_nodes", "nodes", "cancelled")

    def __init__(self, budget: Budget | None = None):
        budget = budget or Budget()
        self.deadline = (
            time.monotonic() + budget.max_seconds if budget.max_seconds is not None else None
        )
        self.max_nodes = budget.max_nodes
        self.nodes = 0
        self.cancelled: Callable[[], bool] | None = None

    def exceeded(self) -> bool:
        if self.max_nodes is not None and self.nodes >= self.max_nodes:
            return True
        if (self.nodes & 0x3FF) == 0:
            if self.deadline is not None and time.monotonic() > self.deadline:
                return True
            if self.cancelled is not None and self.cancelled():
                return True
        return False


@dataclass
class SearchResult:
    status: str
    faces: list[OrientedCycle] | None = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == FOUND


class _BudgetHit(Exception):
    pass


def potential_max_fit(state: SearchState, candidate: OrientedCycle) -> bool:
    """Early rejection test for adding one oriented cycle to a partial fit.

    True iff (a) none of the candidate's darts is already used, (b) every
    vertex on it still needs at least one more face, and (c) its corners
    keep the per-vertex corner maps injective and never reverse an existing
    corner at a vertex of degree above 2 (two faces may traverse the same
    corner in opposite directions only where the degree is 2).
    """
    used = state.used
    for d in candidate.darts:
        if used[d]:
            return False
    quota = state.remaining_quota
    for v in candidate.vertices:
        if quota[v] < 1:
            return False
    sigma = state.sigma
    tail = state.graph._dart_tail
    degrees = state.graph.degrees
    for s, t in candidate.corners:
        if sigma[s] != -1:
            return False
        if degrees[tail[t]] > 2 and sigma[t] == s:
            return False
    return True


def select_branch_vertex(state: SearchState) -> int:
    """The vertex to satisfy next: partially used, smallest quota, then id.

    Falls back to the smallest-id untouched vertex; raises
    NoUnsatisfiedVertex when every quota is zero (the fit is complete).
    """
    best = -1
    best_quota = state.graph.n + 1
    first_unsatisfied = -1
    quota = state.remaining_quota
    degrees = state.graph.degrees
    for v in range(state.graph.n):
        q = quota[v]
        if q <= 0:
            continue
        if first_unsatisfied == -1:
            first_unsatisfied = v
        if q < degrees[v] and q < best_quota:
            best = v
            best_quota = q
    if best != -1:
        return best
    if first_unsatisfied != -1:
        return first_unsatisfied
    raise NoUnsatisfiedVertex("all vertices carry their full face quota")


def verify_rotation(state: SearchState) -> bool:
    """Final check on a completed fit: one cyclic rotation orbit per vertex.

    Run unconditionally regardless of degrees: the incremental corner checks
    cannot rule out several orbits of length >= 3 (possible from degree 6
    up), and rechecking costs only O(m).
    """
    return rotation_is_single_orbit(state.graph, state.sigma)


def rotation_is_single_orbit(g: Graph, sigma: Sequence[int]) -> bool:
    """Does sigma restrict to a single cyclic orbit at every vertex?"""
    for v in range(g.n):
        darts = g.out_darts(v)
        if not darts:
            continue
        start = darts[0]
        d = sigma[start]
        size = 1
        while d != start:
            if d == -1 or size > len(darts):
                return False
            d = sigma[d]
            size += 1
        if size != len(darts):
            return False
    return True


def search(
    g: Graph,
    index: CycleIndex,
    dist: CycleDistribution,
    budget: Budget | None = None,
    *,
    clock: BudgetClock | None = None,
    prune_quota: bool = True,
    prune_corners: bool = True,
    on_node: Callable[[int], None] | None = None,
) -> SearchResult:
    """Decide whether some oriented cycle set realizes ``dist`` as faces.

    Returns Found with the face set, Exhausted when the whole subtree was
    searched, or BudgetExceeded. Deterministic for a fixed budget: at each
    step the first unused dart of the branch vertex must be covered, and
    candidates for it run shortest first, then canonical order, with the
    forward orientation of a cycle before its reverse.

    ``prune_quota`` / ``prune_corners`` switch off the quota and corner
    pruning; outcomes must not change, only node counts (anything the
    disabled checks would catch is re-checked by the final rotation
    verification).
    """
    if dist.edge_sum != 2 * g.m:
        raise ValueError(f"distribution covers {dist.edge_sum} darts, graph has {2 * g.m}")
    for k, _ in dist.parts:
        if k not in index.by_length:
            raise ValueError(f"cycle index is missing length {k}")

    state = SearchState(g, dist)
    clock = clock or BudgetClock(budget)

    used = state.used
    quota = state.remaining_quota
    sigma = state.sigma
    remaining = state.remaining_parts
    chosen = state.chosen
    degrees = g.degrees
    dart_tail = g._dart_tail
    out_darts = g._out_darts
    by_dart = index._by_dart
    n = g.n

    def place(oc: OrientedCycle) -> bool:
        darts = oc.darts
        for d in darts:
            if used[d]:
                return False
        verts = oc.vertices
        if prune_quota:
            for v in verts:
                if quota[v] < 1:
                    return False
        corners = oc.corners
        applied = 0
        for s, t in corners:
            if prune_corners:
                # reject corners that would close a rotation orbit early
                u = t
                size = 2
                while sigma[u] != -1:
                    u = sigma[u]
                    size += 1
                if u == s and size - 1 != degrees[dart_tail[t]]:
                    for s2, _t2 in corners[:applied]:
                        sigma[s2] = -1
                    return False
            sigma[s] = t
            applied += 1
        for d in darts:
            used[d] = 1
        for v in verts:
            quota[v] -= 1
        remaining[oc.length] -= 1
        chosen.append(oc)
        return True

    def unplace(oc: OrientedCycle) -> None:
        chosen.pop()
        remaining[oc.length] += 1
        for v in oc.vertices:
            quota[v] += 1
        for d in oc.darts:
            used[d] = 0
        for s, _t in oc.corners:
            sigma[s] = -1

    def descend() -> bool:
        clock.nodes += 1
        if clock.exceeded():
            raise _BudgetHit
        if on_node is not None:
            on_node(clock.nodes)

        best = -1
        best_q = n + 1
        first_unsat = -1
        for v in range(n):
            q = quota[v]
            if q <= 0:
                continue
            if first_unsat == -1:
                first_unsat = v
            if q < degrees[v] and q < best_q:
                best = v
                best_q = q
        if best == -1:
            if first_unsat == -1:
                return verify_rotation(state)
            best = first_unsat

        branch_dart = -1
        for d in out_darts[best]:
            if not used[d]:
                branch_dart = d
                break
        if branch_dart == -1:  # quota > 0 but all darts used: dead branch
            return False

        for oc in by_dart[branch_dart]:
            if remaining.get(oc.length, 0) <= 0:
                continue
            if place(oc):
                if descend():
                    return True
                unplace(oc)
        return False

    try:
        if descend():
            return SearchResult(FOUND, faces=list(chosen), nodes=clock.nodes)
        return SearchResult(EXHAUSTED, nodes=clock.nodes)
    except _BudgetHit:
        return SearchResult(BUDGET_EXCEEDED, nodes=clock.nodes)


def sigma_of_faces(g: Graph, faces: Sequence[OrientedCycle]) -> list[int]:
    """Corner successor array of a completed face set."""
    sigma = [-1] * (2 * g.m)
    for oc in faces:
        for s, t in oc.corners:
            sigma[s] = t
    return sigma
