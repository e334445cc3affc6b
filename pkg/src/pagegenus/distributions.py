"""Cycle distributions: multisets of face lengths that cover all darts.

A candidate face set must use every directed edge exactly once, so its
lengths form a multiset summing to 2m, with each length k drawn from the
available oriented cycles (two orientations per undirected cycle). The
engine consumes distributions with the most faces first, since more faces
means lower genus.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import CapacityExceeded

DEFAULT_DISTRIBUTION_BUDGET = 1_000_000


class CycleDistribution:
    """Immutable multiset of cycle lengths with its face count and edge sum."""

    __slots__ = ("parts", "face_count", "edge_sum")

    def __init__(self, parts: Iterable[tuple[int, int]]):
        items = sorted((int(k), int(c)) for k, c in parts if c)
        if any(k < 2 or c < 0 for k, c in items):
            raise ValueError("parts must map lengths >= 2 to nonnegative counts")
        self.parts = tuple(items)
        self.face_count = sum(c for _, c in items)
        self.edge_sum = sum(k * c for k, c in items)

    @classmethod
    def from_dict(cls, parts: dict[int, int]) -> "CycleDistribution":
        return cls(parts.items())

    def as_dict(self) -> dict[int, int]:
        return dict(self.parts)

    def expanded(self) -> tuple[int, ...]:
        """All lengths ascending, with multiplicity; the sort tiebreak key."""
        out: list[int] = []
        for k, c in self.parts:
            out.extend([k] * c)
        return tuple(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, CycleDistribution) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {c}" for k, c in self.parts)
        return "{" + body + "}"


def generate_distributions(
    population: Sequence[tuple[int, int]], s: int
) -> Iterator[CycleDistribution]:
    """Stream every multiset with edge_sum == s within per-length availability.

    ``population`` lists (length, available count) with each length at most
    once. Equivalent to bounded-knapsack enumeration; recursive descent over
    lengths in decreasing order with remaining-sum feasibility pruning.
    """
    pop = sorted(((int(k), int(c)) for k, c in population if c > 0), reverse=True)
    if len({k for k, _ in pop}) != len(pop):
        raise ValueError("population lists a length more than once")
    suffix_capacity = [0] * (len(pop) + 1)
    for i in range(len(pop) - 1, -1, -1):
        k, c = pop[i]
        suffix_capacity[i] = suffix_capacity[i + 1] + k * c

    chosen: list[tuple[int, int]] = []

    def descend(i: int, remaining: int) -> Iterator[CycleDistribution]:
        if remaining == 0:
            yield CycleDistribution(chosen)
            return
        if i == len(pop) or remaining > suffix_capacity[i]:
            return
        k, avail = pop[i]
        for take in range(min(avail, remaining // k), -1, -1):
            rest = remaining - take * k
            if rest > suffix_capacity[i + 1]:
                break
            if take:
                chosen.append((k, take))
            yield from descend(i + 1, rest)
            if take:
                chosen.pop()

    if s > 0:
        yield from descend(0, s)


def distributions_for_face_count(
    population: Sequence[tuple[int, int]], s: int, face_count: int
) -> list[CycleDistribution]:
    """All distributions with edge_sum == s and exactly ``face_count`` faces.

    Returned in the consumption order for one face-count level: ascending
    lexicographic by the expanded length multiset (many short faces first).
    """
    pop = sorted(((int(k), int(c)) for k, c in population if c > 0), reverse=True)
    if not pop or face_count < 1:
        return []
    min_len = pop[-1][0]
    max_len = pop[0][0]
    suffix_capacity = [0] * (len(pop) + 1)
    for i in range(len(pop) - 1, -1, -1):
        k, c = pop[i]
        suffix_capacity[i] = suffix_capacity[i + 1] + k * c

    out: list[CycleDistribution] = []
    chosen: list[tuple[int, int]] = []

    def descend(i: int, remaining: int, faces_left: int) -> None:
        if remaining == 0:
            if faces_left == 0:
                out.append(CycleDistribution(chosen))
            return
        if i == len(pop) or faces_left <= 0 or remaining > suffix_capacity[i]:
            return
        if remaining < faces_left * min_len or remaining > faces_left * max_len:
            return
        k, avail = pop[i]
        for take in range(min(avail, faces_left, remaining // k), -1, -1):
            if take:
                chosen.append((k, take))
            descend(i + 1, remaining - take * k, faces_left - take)
            if take:
                chosen.pop()

    descend(0, s, face_count)
    out.sort(key=lambda d: d.expanded())
    return out


def order_by_face_count(
    distributions: Sequence[CycleDistribution],
    max_distributions: int = DEFAULT_DISTRIBUTION_BUDGET,
) -> list[CycleDistribution]:
    """Stable sort: face count non-increasing, then many-short-faces first.

    Ties on face count prefer the lexicographically smaller expanded length
    multiset (e.g. four triangles before three squares plus a hexagon).
    Raises CapacityExceeded past ``max_distributions``; callers then stream
    in increasing max-cycle-length order instead of sorting globally.
    """
    distributions = list(distributions)
    if len(distributions) > max_distributions:
        raise CapacityExceeded(
            f"{len(distributions)} distributions exceed the buffer budget of {max_distributions}"
        )
    return sorted(distributions, key=lambda d: (-d.face_count, d.expanded()))


def stream_by_max_length(
    population: Sequence[tuple[int, int]], s: int
) -> Iterator[CycleDistribution]:
    """Stream distributions grouped by increasing maximum cycle length.

    The fallback consumption order when the full list will not fit in the
    buffer budget: distributions whose longest face is short come first,
    and consumers track the best face count found to drop dominated ones.
    """
    pop = sorted((int(k), int(c)) for k, c in population if c > 0)
    for top_i, (top_len, top_avail) in enumerate(pop):
        head = pop[: top_i + 1]
        for take in range(1, min(top_avail, s // top_len) + 1):
            rest = s - take * top_len
            if rest == 0:
                yield CycleDistribution([(top_len, take)])
                continue
            for sub in generate_distributions(head[:-1], rest):
                yield CycleDistribution(list(sub.parts) + [(top_len, take)])
