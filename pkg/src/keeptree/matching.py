"""Bipartite maximum matching with Hall-condition certification.

Matchings are computed by deterministic augmenting-path search (vertices
scanned in ascending id order) so identical inputs give identical results.
When no matching saturates the left side, a Hall violator -- a left subset
S with |N(S) & right| < |S| -- is extracted from the set of left vertices
reachable by alternating paths from the unmatched ones, and re-checked
against the host graph before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import TheoremViolation
from .graphs import Graph, check_vertex_set, neighborhood_of_set

__all__ = [
    "Matching",
    "HallViolator",
    "check_matching",
    "max_matching",
    "saturating_matching_or_violator",
    "find_tight_set",
]


@dataclass(frozen=True)
class Matching:
    """Left-right edge pairs with no shared vertices, sorted by left vertex."""

    edges: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.edges)

    def left_vertices(self) -> frozenset[int]:
        return frozenset(a for a, _ in self.edges)

    def right_vertices(self) -> frozenset[int]:
        return frozenset(b for _, b in self.edges)

    def as_dict(self) -> dict[int, int]:
        return dict(self.edges)


@dataclass(frozen=True)
class HallViolator:
    """A left subset whose right neighborhood is strictly smaller than it."""

    subset: frozenset[int]
    neighborhood_size: int


def check_matching(g: Graph, left: Iterable[int], right: Iterable[int], m: Matching) -> list[str]:
    """Structural problems of a matching (empty list when valid)."""
    ls, rs = frozenset(left), frozenset(right)
    problems: list[str] = []
    seen: set[int] = set()
    for a, b in m.edges:
        if a not in ls:
            problems.append(f"left endpoint {a} outside the left set")
        if b not in rs:
            problems.append(f"right endpoint {b} outside the right set")
        if not (0 <= a < g.n and 0 <= b < g.n) or not g.has_edge(a, b):
            problems.append(f"({a}, {b}) is not an edge of the host graph")
        if a in seen or b in seen:
            problems.append(f"vertex reused by edge ({a}, {b})")
        seen.add(a)
        seen.add(b)
    return problems


def _check_sides(g: Graph, left: Iterable[int], right: Iterable[int]):
    ls = check_vertex_set(g, left)
    rs = check_vertex_set(g, right)
    if ls & rs:
        raise ValueError(f"left and right sets overlap at {sorted(ls & rs)[0]}")
    return ls, rs


def max_matching(g: Graph, left: Iterable[int], right: Iterable[int]) -> Matching:
    """Maximum-cardinality matching on the induced left-right bipartite structure."""
    ls, rs = _check_sides(g, left, right)
    pair_left: dict[int, int] = {}
    pair_right: dict[int, int] = {}

    def try_augment(a: int, visited: set[int]) -> bool:
        for b in sorted(g.neighbors(a) & rs):
            if b in visited:
                continue
            visited.add(b)
            if b not in pair_right or try_augment(pair_right[b], visited):
                pair_left[a] = b
                pair_right[b] = a
                return True
        return False

    for a in sorted(ls):
        try_augment(a, set())
    m = Matching(tuple(sorted(pair_left.items())))
    problems = check_matching(g, ls, rs, m)
    if problems:
        raise TheoremViolation(f"matching failed its own invariants: {problems}")
    return m


def saturating_matching_or_violator(
    g: Graph, left: Iterable[int], right: Iterable[int]
) -> Matching | HallViolator:
    """Either a matching saturating the left side, or a Hall violator.

    Exactly one of the two exists.  The violator is the alternating-
    reachability closure of the unmatched left vertices under a maximum
    matching, and its neighborhood deficiency is recounted from the graph
    before returning.
    """
    ls, rs = _check_sides(g, left, right)
    m = max_matching(g, ls, rs)
    if m.size == len(ls):
        return m
    pair_left = m.as_dict()
    pair_right = {b: a for a, b in m.edges}
    subset = {a for a in ls if a not in pair_left}
    queue = list(sorted(subset))
    while queue:
        a = queue.pop()
        for b in sorted(g.neighbors(a) & rs):
            partner = pair_right.get(b)
            if partner is not None and partner not in subset:
                subset.add(partner)
                queue.append(partner)
    neighborhood = neighborhood_of_set(g, subset) & rs
    if len(neighborhood) >= len(subset):
        raise TheoremViolation(
            f"extracted violator {sorted(subset)} fails the recount: "
            f"|N(S)| = {len(neighborhood)} >= |S| = {len(subset)}"
        )
    return HallViolator(frozenset(subset), len(neighborhood))


def find_tight_set(
    g: Graph, left: Iterable[int], right: Iterable[int], m: Matching
) -> frozenset[int] | None:
    """A nonempty left subset S with |N(S) & right| == |S|, or None.

    Requires ``m`` to be a maximum matching saturating the left side.  For
    each left vertex the minimal closed candidate is grown by following
    matched partners; hitting an unmatched right vertex proves no tight set
    contains the probe vertex.
    """
    ls, rs = _check_sides(g, left, right)
    pair_right = {b: a for a, b in m.edges}
    if m.left_vertices() != ls:
        raise ValueError("tight-set probing needs a matching saturating the left side")
    for probe in sorted(ls):
        subset = {probe}
        queue = [probe]
        closed = True
        while queue and closed:
            a = queue.pop()
            for b in sorted(g.neighbors(a) & rs):
                partner = pair_right.get(b)
                if partner is None:
                    closed = False
                    break
                if partner not in subset:
                    subset.add(partner)
                    queue.append(partner)
        if closed:
            return frozenset(subset)
    return None
