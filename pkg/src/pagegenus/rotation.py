"""Rotation systems and face tracing.

A rotation system assigns each vertex a cyclic order of its incident darts
(directed edge instances leaving the vertex). It determines an embedding on
an orientable surface: after traversing dart (u, v), the face continues
along the dart that follows (v, u) in v's cyclic order. Faces are the
orbits of that successor rule and the genus follows from Euler's formula
n - m + F = 2 - 2g.
"""

from __future__ import annotations

import random
from typing import Sequence

from .graph import Graph


class RotationSystem:
    """Per-vertex cyclic orders of incident darts."""

    __slots__ = ("graph", "orders")

    def __init__(self, graph: Graph, orders: Sequence[Sequence[int]]):
        if len(orders) != graph.n:
            raise ValueError("need one cyclic order per vertex")
        canon = []
        for v, order in enumerate(orders):
            order = tuple(order)
            if sorted(order) != sorted(graph.out_darts(v)):
                raise ValueError(f"vertex {v}: order is not a permutation of its incident darts")
            canon.append(order)
        self.graph = graph
        self.orders = tuple(canon)

    def successor_array(self) -> list[int]:
        """succ[d] = dart following d in the cyclic order at d's tail."""
        succ = [0] * (2 * self.graph.m)
        for order in self.orders:
            k = len(order)
            for i, d in enumerate(order):
                succ[d] = order[(i + 1) % k]
        return succ

    def neighbor_cycles(self) -> list[tuple[int, ...]]:
        """Cyclic orders expressed as neighbor vertices (for display)."""
        return [tuple(self.graph.dart_head(d) for d in order) for order in self.orders]


def trace_faces(g: Graph, rot: RotationSystem) -> list[tuple[int, ...]]:
    """Partition all 2m darts into facial orbits.

    After dart d arrives at v, the face continues with the dart following
    d's reverse in v's cyclic order. Orbits are reported starting from
    their smallest dart, in increasing order of that dart.
    """
    succ = rot.successor_array()
    nd = 2 * g.m
    seen = bytearray(nd)
    faces = []
    for start in range(nd):
        if seen[start]:
            continue
        walk = []
        d = start
        while not seen[d]:
            seen[d] = 1
            walk.append(d)
            d = succ[d ^ 1]
        faces.append(tuple(walk))
    return faces


def face_vertex_walk(g: Graph, face: Sequence[int]) -> tuple[int, ...]:
    """The vertices visited by a facial orbit, one per dart."""
    return tuple(g.dart_tail(d) for d in face)


def genus_of_face_count(n: int, m: int, f: int) -> int:
    """Exact genus from Euler's formula; requires consistent inputs."""
    chi = n - m + f
    if chi % 2:
        raise ValueError(f"odd Euler characteristic n-m+F = {chi}")
    return (2 - chi) // 2


def genus_of_rotation(g: Graph, rot: RotationSystem) -> int:
    return genus_of_face_count(g.n, g.m, len(trace_faces(g, rot)))


def random_rotation(g: Graph, rng: random.Random) -> RotationSystem:
    """Uniformly random cyclic order at every vertex."""
    orders = []
    for v in range(g.n):
        darts = list(g.out_darts(v))
        rng.shuffle(darts)
        orders.append(darts)
    return RotationSystem(g, orders)


def rotation_from_successors(g: Graph, sigma: Sequence[int]) -> RotationSystem:
    """Build a RotationSystem from a flat dart-successor array.

    sigma must restrict to a single cyclic orbit on each vertex's darts.
    """
    orders = []
    for v in range(g.n):
        darts = g.out_darts(v)
        if not darts:
            orders.append(())
            continue
        start = darts[0]
        order = [start]
        d = sigma[start]
        while d != start:
            if d == -1 or len(order) > len(darts):
                raise ValueError(f"successors at vertex {v} are not a single cyclic orbit")
            order.append(d)
            d = sigma[d]
        if len(order) != len(darts):
            raise ValueError(f"successors at vertex {v} are not a single cyclic orbit")
        orders.append(order)
    return RotationSystem(g, orders)
