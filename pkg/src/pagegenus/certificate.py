"""Embedding certificates: face lists that prove a genus upper bound.

A certificate records the facial walks of an embedding plus the claimed
genus and a fingerprint of the graph it belongs to. Verification is a
standalone code path on purpose: it shares only the Graph type with the
search engine, so an engine bug cannot hide inside its own checker.

File format (UTF-8, line oriented)::

    PAGE-CERT v1
    graph n=<n> m=<m> hash=<16 hex chars>
    genus <g>
    face <v0>,<v1>,...,<vk-1>
    ...
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from .errors import FingerprintMismatch, MalformedCertificate
from .graph import Graph

FORMAT_HEADER = "PAGE-CERT v1"


def genus_from_face_count(n: int, m: int, f: int) -> int:
    """max(0, 1 - (f - m + n) // 2), floor division toward minus infinity.

    Equals the Euler-formula genus whenever n - m + f = 2 - 2g exactly;
    flooring makes the clamp behave for any face count.
    """
    if n < 1 or m < 0 or f < 1:
        raise ValueError("need n >= 1, m >= 0, f >= 1")
    return max(0, 1 - (f - m + n) // 2)


@dataclass(frozen=True)
class EmbeddingCertificate:
    """Faces of an embedding, independently checkable."""

    n: int
    m: int
    graph_hash: str
    faces: tuple[tuple[int, ...], ...]
    claimed_genus: int

    @property
    def face_count(self) -> int:
        return len(self.faces)


@dataclass(frozen=True)
class Violation:
    condition: int  # 1 walks, 2 dart coverage, 3 rotation, 4 genus/parity
    message: str


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    violations: tuple[Violation, ...] = ()


def make_certificate(g: Graph, faces: Iterable[Sequence[int]], genus: int) -> EmbeddingCertificate:
    return EmbeddingCertificate(
        n=g.n,
        m=g.m,
        graph_hash=g.edge_list_hash(),
        faces=tuple(tuple(int(v) for v in face) for face in faces),
        claimed_genus=int(genus),
    )


# -- verification ------------------------------------------------------


def _edge_copies(g: Graph) -> dict[tuple[int, int], list[int]]:
    copies: dict[tuple[int, int], list[int]] = {}
    for e, (u, v) in enumerate(g.edges):
        copies.setdefault((min(u, v), max(u, v)), []).append(e)
    return copies


def _corner_orbits_ok(g: Graph, sigma: dict[int, int]) -> bool:
    for v in range(g.n):
        darts = g.out_darts(v)
        if not darts:
            continue
        start = darts[0]
        d = sigma.get(start, -1)
        size = 1
        while d != start:
            if d == -1 or size > len(darts):
                return False
            d = sigma.get(d, -1)
            size += 1
        if size != len(darts):
            return False
    return True


def _assign_darts_and_check(g: Graph, faces: Sequence[Sequence[int]]) -> bool:
    """Can the face steps be assigned to edge copies forming one rotation?

    On a simple graph each step (u, v) fixes its dart and this is a single
    pass. With parallel edges the u->v steps of a pair may permute over the
    copies, so we backtrack over the per-direction assignments (cheap for
    the small multiplicities that occur in practice).
    """
    copies = _edge_copies(g)
    by_pair: dict[tuple[int, int], list[int]] = {}  # ordered pair -> step ids
    offsets = []
    total = 0
    for fi, walk in enumerate(faces):
        offsets.append(total)
        k = len(walk)
        for i in range(k):
            u, v = walk[i], walk[(i + 1) % k]
            by_pair.setdefault((u, v), []).append(total + i)
        total += k

    # per ordered pair, traversal count must equal the copy count
    for (a, b), copy_list in copies.items():
        for pair in ((a, b), (b, a)):
            if len(by_pair.get(pair, [])) != len(copy_list):
                return False
    if sum(len(v) for v in by_pair.values()) != 2 * g.m:
        return False

    groups = sorted(by_pair.items())
    dart_of_step = [0] * total

    def corner_check() -> bool:
        sigma: dict[int, int] = {}
        for fi, walk in enumerate(faces):
            k = len(walk)
            base = offsets[fi]
            for i in range(k):
                d_in = dart_of_step[base + i]
                d_out = dart_of_step[base + (i + 1) % k]
                s = d_in ^ 1
                if s in sigma:
                    return False
                sigma[s] = d_out
        return _corner_orbits_ok(g, sigma)

    def dart_for(e: int, u: int) -> int:
        # the dart of edge e leaving u; stored endpoint order fixes the bit
        return 2 * e + (0 if g.edges[e][0] == u else 1)

    def assign(gi: int) -> bool:
        if gi == len(groups):
            return corner_check()
        (u, v), sids = groups[gi]
        copy_list = copies[(min(u, v), max(u, v))]
        if len(copy_list) == 1:
            dart_of_step[sids[0]] = dart_for(copy_list[0], u)
            return assign(gi + 1)
        for perm in permutations(copy_list):
            for sid, e in zip(sids, perm):
                dart_of_step[sid] = dart_for(e, u)
            if assign(gi + 1):
                return True
        return False

    return assign(0)


def verify_certificate(g: Graph, cert: EmbeddingCertificate) -> VerificationReport:
    """Check a certificate against a graph, reporting every failed condition.

    Conditions: (1) every face is a closed walk along edges of the graph,
    (2) the 2m darts are each used exactly once across all faces, (3) the
    induced corners form one cyclic rotation per vertex, (4) the claimed
    genus matches the face count and the Euler parity holds. Raises
    FingerprintMismatch if the certificate belongs to a different graph.
    """
    if (cert.n, cert.m) != (g.n, g.m) or cert.graph_hash != g.edge_list_hash():
        raise FingerprintMismatch(
            f"certificate is for n={cert.n} m={cert.m} hash={cert.graph_hash}, "
            f"graph is n={g.n} m={g.m} hash={g.edge_list_hash()}"
        )
    violations: list[Violation] = []

    if g.m == 0:
        # single-vertex graph: one spherical face with an empty boundary,
        # which the walk format cannot spell; accept the empty certificate
        if cert.faces:
            violations.append(Violation(1, "an edgeless graph admits no facial walks"))
        if cert.claimed_genus != 0:
            violations.append(Violation(4, f"claimed genus {cert.claimed_genus}, expected 0"))
        return VerificationReport(not violations, tuple(violations))

    copies = _edge_copies(g)
    walks_ok = True
    for fi, walk in enumerate(cert.faces):
        if len(walk) < 2:
            violations.append(Violation(1, f"face {fi} has fewer than 2 steps"))
            walks_ok = False
            continue
        for i in range(len(walk)):
            u, v = walk[i], walk[(i + 1) % len(walk)]
            if not (0 <= u < g.n) or not (0 <= v < g.n) or (min(u, v), max(u, v)) not in copies:
                violations.append(Violation(1, f"face {fi} step {i}: ({u}, {v}) is not an edge"))
                walks_ok = False

    total = sum(len(w) for w in cert.faces)
    coverage_ok = walks_ok and total == 2 * g.m
    if walks_ok and total != 2 * g.m:
        violations.append(Violation(2, f"faces cover {total} darts, graph has {2 * g.m}"))
    if walks_ok and total == 2 * g.m:
        from collections import Counter

        traversals = Counter()
        for walk in cert.faces:
            for i in range(len(walk)):
                traversals[(walk[i], walk[(i + 1) % len(walk)])] += 1
        for (a, b), copy_list in sorted(copies.items()):
            mu = len(copy_list)
            for u, v in ((a, b), (b, a)):
                c = traversals.pop((u, v), 0)
                if c != mu:
                    violations.append(
                        Violation(2, f"direction ({u}, {v}) traversed {c} times, expected {mu}")
                    )
                    coverage_ok = False

    if coverage_ok:
        if not cert.faces or not _assign_darts_and_check(g, cert.faces):
            violations.append(Violation(3, "corners do not form one cyclic rotation per vertex"))

    f = len(cert.faces)
    if f >= 1:
        expected = genus_from_face_count(g.n, g.m, f)
        if cert.claimed_genus != expected:
            violations.append(
                Violation(4, f"claimed genus {cert.claimed_genus}, face count {f} gives {expected}")
            )
        if (g.n - g.m + f) % 2:
            violations.append(Violation(4, f"face count {f} violates Euler parity"))
    else:
        violations.append(Violation(4, "certificate has no faces"))

    return VerificationReport(not violations, tuple(violations))


# -- serialization -----------------------------------------------------


def serialize_certificate(cert: EmbeddingCertificate) -> str:
    lines = [
        FORMAT_HEADER,
        f"graph n={cert.n} m={cert.m} hash={cert.graph_hash}",
        f"genus {cert.claimed_genus}",
    ]
    lines.extend("face " + ",".join(map(str, walk)) for walk in cert.faces)
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> EmbeddingCertificate:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if len(lines) < 3:
        raise MalformedCertificate("certificate needs header, graph, and genus lines")
    if lines[0].strip() != FORMAT_HEADER:
        raise MalformedCertificate(f"line 1: expected {FORMAT_HEADER!r}, got {lines[0]!r}")

    fields = lines[1].split()
    if len(fields) != 4 or fields[0] != "graph":
        raise MalformedCertificate("line 2: expected 'graph n=<n> m=<m> hash=<hex>'")
    values = {}
    for tok in fields[1:]:
        if "=" not in tok:
            raise MalformedCertificate(f"line 2: malformed field {tok!r}")
        key, _, val = tok.partition("=")
        values[key] = val
    try:
        n = int(values["n"])
        m = int(values["m"])
        graph_hash = values["hash"]
    except (KeyError, ValueError) as exc:
        raise MalformedCertificate(f"line 2: {exc}") from None

    head = lines[2].split()
    if len(head) != 2 or head[0] != "genus":
        raise MalformedCertificate("line 3: expected 'genus <g>'")
    try:
        genus = int(head[1])
    except ValueError:
        raise MalformedCertificate(f"line 3: non-integer genus {head[1]!r}") from None

    faces = []
    for lineno, raw in enumerate(lines[3:], start=4):
        line = raw.strip()
        if not line.startswith("face ") and line != "face":
            raise MalformedCertificate(f"line {lineno}: expected 'face v0,v1,...'")
        body = line[4:].strip()
        if not body:
            raise MalformedCertificate(f"line {lineno}: empty face")
        try:
            faces.append(tuple(int(tok) for tok in body.split(",")))
        except ValueError:
            raise MalformedCertificate(f"line {lineno}: non-integer vertex") from None

    return EmbeddingCertificate(n=n, m=m, graph_hash=graph_hash, faces=tuple(faces), claimed_genus=genus)
