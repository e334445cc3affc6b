"""Independent brute-force genus by exhaustive rotation enumeration.

Every embedding of a connected graph is a choice of cyclic order at each
vertex, so there are prod (deg(v) - 1)! of them (anchor one incident dart
per vertex). Minimizing traced-face genus over all of them is the ground
truth the search engine is tested against. By default enumeration stops
once the sound girth lower bound is hit, which cannot change the result;
pass early_stop=False to force the full scan.
"""

from __future__ import annotations

from itertools import permutations
from math import factorial

from .bounds import sound_lower_bound
from .errors import CapExceeded
from .graph import Graph
from .rotation import RotationSystem

DEFAULT_CAP = 100_000_000


def rotation_space_size(g: Graph) -> int:
    size = 1
    for v in range(g.n):
        size *= factorial(max(g.degree(v) - 1, 0))
    return size


def brute_force_genus(
    g: Graph, cap: int = DEFAULT_CAP, *, early_stop: bool = True
) -> tuple[int, RotationSystem]:
    """Minimum genus over all rotation systems, with a witness rotation.

    Enumeration is lexicographic over per-vertex permutation indices, so
    the witness is the first rotation achieving the minimum. Raises
    CapExceeded when prod (deg(v) - 1)! > cap.
    """
    if g.m == 0:
        return 0, RotationSystem(g, [()] * g.n)

    space = rotation_space_size(g)
    if space > cap:
        raise CapExceeded(f"rotation space {space} exceeds cap {cap}")

    stop_at = max(0, sound_lower_bound(g)) if early_stop else 0

    n, m = g.n, g.m
    nd = 2 * m
    anchors = [g.out_darts(v) for v in range(n)]
    perms: list[list[tuple[int, ...]]] = []
    for v in range(n):
        rest = anchors[v][1:]
        perms.append([(anchors[v][0],) + p for p in permutations(rest)])

    succ = [0] * nd

    def apply(v: int, order: tuple[int, ...]) -> None:
        k = len(order)
        for i in range(k - 1):
            succ[order[i]] = order[i + 1]
        succ[order[k - 1]] = order[0]

    idx = [0] * n
    for v in range(n):
        apply(v, perms[v][0])

    stamp = [0] * nd
    tick = 0
    best_genus: int | None = None
    best_orders: list[tuple[int, ...]] | None = None
    base = 2 - n + m

    while True:
        tick += 1
        faces = 0
        for d0 in range(nd):
            if stamp[d0] == tick:
                continue
            faces += 1
            d = d0
            while stamp[d] != tick:
                stamp[d] = tick
                d = succ[d ^ 1]
        genus = (base - faces) // 2
        if best_genus is None or genus < best_genus:
            best_genus = genus
            best_orders = [perms[v][idx[v]] for v in range(n)]
            if best_genus <= stop_at:
                break
        # odometer: advance the last vertex fastest
        j = n - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < len(perms[j]):
                apply(j, perms[j][idx[j]])
                break
            idx[j] = 0
            apply(j, perms[j][0])
            j -= 1
        if j < 0:
            break

    assert best_genus is not None and best_orders is not None
    return best_genus, RotationSystem(g, best_orders)
