"""Tree embeddings into host graphs.

Three constructive routes cover the hypotheses the pipeline meets: a greedy
placement for hosts of minimum degree at least m-1, a bipartition-respecting
greedy for bipartite hosts, and a complete backtracking search for sparse
(girth-bounded) hosts.  A plain exhaustive search doubles as the oracle for
all of them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import (
    DEFAULT_BRUTE_GUARD,
    GuardExceeded,
    PreconditionError,
    SearchExhausted,
    TheoremViolation,
    resolve_guard,
)
from .graphs import Graph, Tree, check_vertex_set, degree_stats, girth, girth_at_least

__all__ = [
    "Embedding",
    "embedding_errors",
    "greedy_embed",
    "bipartite_embed",
    "sparse_embed",
    "exhaustive_embed",
    "iter_embeddings",
]


@dataclass(frozen=True)
class Embedding:
    """Injective map from tree vertices to host vertices preserving edges."""

    mapping: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "Embedding":
        return cls(tuple(sorted(d.items())))

    def as_dict(self) -> dict[int, int]:
        return dict(self.mapping)

    def image(self) -> frozenset[int]:
        return frozenset(h for _, h in self.mapping)

    @property
    def size(self) -> int:
        return len(self.mapping)


def embedding_errors(
    host: Graph,
    tree: Tree,
    emb: Embedding,
    x_to: frozenset[int] | None = None,
    y_to: frozenset[int] | None = None,
) -> list[str]:
    """Structural problems of an embedding (empty list when valid).

    When ``x_to``/``y_to`` are given, the tree bipartition must land inside
    those host sides.
    """
    problems: list[str] = []
    d = emb.as_dict()
    if sorted(d) != list(range(tree.order)):
        problems.append("domain is not exactly the tree vertex set")
        return problems
    values = list(d.values())
    if len(set(values)) != len(values):
        problems.append("map is not injective")
    for h in values:
        if not 0 <= h < host.n:
            problems.append(f"host vertex {h} out of range")
            return problems
    for a, b in tree.graph.edges():
        if not host.has_edge(d[a], d[b]):
            problems.append(f"tree edge ({a}, {b}) maps to non-edge ({d[a]}, {d[b]})")
    if x_to is not None:
        for a in tree.part_x:
            if d[a] not in x_to:
                problems.append(f"image of {a} leaves the designated side")
    if y_to is not None:
        for a in tree.part_y:
            if d[a] not in y_to:
                problems.append(f"image of {a} leaves the designated side")
    return problems


def _bfs_order(tree: Tree, root: int, key=None) -> tuple[list[int], list[int]]:
    """BFS vertex order from ``root`` and the parent of each vertex (-1 for root)."""
    g = tree.graph
    parent = [-1] * g.n
    order = [root]
    seen = {root}
    queue = deque([root])
    while queue:
        a = queue.popleft()
        children = sorted((b for b in g.neighbors(a) if b not in seen), key=key)
        for b in children:
            seen.add(b)
            parent[b] = a
            order.append(b)
            queue.append(b)
    return order, parent


def _certify(host: Graph, tree: Tree, mapping: dict[int, int], **sides) -> Embedding:
    emb = Embedding.from_dict(mapping)
    problems = embedding_errors(host, tree, emb, **sides)
    if problems:
        raise TheoremViolation(f"constructed embedding is invalid: {problems[0]}")
    return emb


def greedy_embed(host: Graph, tree: Tree) -> Embedding:
    """Greedy embedding for hosts with minimum degree at least m-1.

    Tree vertices are placed in BFS order from vertex 0; the root maps to
    the minimum-id host vertex and every child to the least-id unused
    neighbor of its parent's image.  With at most m-1 vertices placed and
    every image having at least m-1 neighbors, a free neighbor always
    exists.
    """
    m = tree.order
    stats = degree_stats(host)
    if stats is None:
        raise PreconditionError("empty host graph")
    if stats[0] < m - 1:
        offender = min(v for v in host.vertices() if host.degree(v) == stats[0])
        raise PreconditionError(
            f"minimum degree {stats[0]} at vertex {offender} is below m-1 = {m - 1}"
        )
    order, parent = _bfs_order(tree, 0)
    mapping = {0: 0}
    used = {0}
    for t in order[1:]:
        free = sorted(host.neighbors(mapping[parent[t]]) - used)
        if not free:
            raise TheoremViolation(f"greedy placement ran out at tree vertex {t}")
        mapping[t] = free[0]
        used.add(free[0])
    return _certify(host, tree, mapping)


def _side_min_degree(host: Graph, side: frozenset[int]) -> int | None:
    return min((host.degree(v) for v in side), default=None)


def bipartite_embed(
    host: Graph,
    u_side: Iterable[int],
    v_side: Iterable[int],
    tree: Tree,
) -> tuple[Embedding, bool]:
    """Bipartition-respecting embedding; returns (embedding, swapped).

    Tries the orientation mapping the tree part X into ``u_side`` first,
    then the swapped one, and reports which was used.  An orientation is
    usable when every ``u_side`` vertex has degree at least |Y| and every
    ``v_side`` vertex degree at least |X|.
    """
    us = check_vertex_set(host, u_side)
    vs = check_vertex_set(host, v_side)
    if us & vs or (us | vs) != frozenset(host.vertices()):
        raise ValueError("u_side and v_side must partition the host vertices")
    for a, b in host.edges():
        if (a in us) == (b in us):
            raise ValueError(f"edge ({a}, {b}) does not cross the declared sides")
    reasons = []
    for swapped in (False, True):
        tu, tv = (us, vs) if not swapped else (vs, us)
        need_u, need_v = len(tree.part_y), len(tree.part_x)
        du, dv = _side_min_degree(host, tu), _side_min_degree(host, tv)
        if not tu:
            reasons.append(f"swap={swapped}: no vertices available for the X part")
            continue
        if du is not None and du < need_u:
            reasons.append(f"swap={swapped}: X-side degree {du} below |Y| = {need_u}")
            continue
        if dv is not None and dv < need_v:
            reasons.append(f"swap={swapped}: Y-side degree {dv} below |X| = {need_v}")
            continue
        mapping = _bipartite_greedy(host, tu, tree)
        return _certify(host, tree, mapping, x_to=tu, y_to=tv), swapped
    raise PreconditionError(
        "degree conditions fail in both orientations: " + "; ".join(reasons)
    )


def _bipartite_greedy(host: Graph, x_target: frozenset[int], tree: Tree) -> dict[int, int]:
    order, parent = _bfs_order(tree, 0)
    mapping = {0: min(x_target)}
    used = {mapping[0]}
    for t in order[1:]:
        free = sorted(host.neighbors(mapping[parent[t]]) - used)
        if not free:
            raise TheoremViolation(f"bipartite placement ran out at tree vertex {t}")
        mapping[t] = free[0]
        used.add(free[0])
    return mapping


def _anchored_search(
    host: Graph,
    tree: Tree,
    order: list[int],
    parent: list[int],
    root_candidates: list[int],
    degree_prune: bool,
) -> Iterator[Embedding]:
    """Complete backtracking over injective adjacency-preserving maps.

    Tree vertices are assigned along ``order`` (each non-root after its
    parent), so candidates for a vertex are the unused neighbors of its
    parent's image.  The optional degree prune discards host vertices that
    cannot accommodate the tree vertex's full neighborhood; it never rules
    out a valid embedding.
    """
    tg = tree.graph
    m = tree.order
    image = [-1] * m
    used: set[int] = set()

    def candidates(pos: int) -> list[int]:
        t = order[pos]
        if pos == 0:
            cand = root_candidates
        else:
            cand = sorted(host.neighbors(image[parent[t]]) - used)
        good = []
        for h in cand:
            if h in used:
                continue
            if degree_prune and host.degree(h) < tg.degree(t):
                continue
            ok = True
            for tn in tg.neighbors(t):
                hn = image[tn]
                if hn != -1 and not host.has_edge(hn, h):
                    ok = False
                    break
            if ok:
                good.append(h)
        return good

    stack: list[list[int]] = [candidates(0)]
    while stack:
        pos = len(stack) - 1
        options = stack[-1]
        if not options:
            stack.pop()
            if pos > 0:
                t = order[pos - 1]
                used.discard(image[t])
                image[t] = -1
            continue
        h = options.pop(0)
        t = order[pos]
        image[t] = h
        used.add(h)
        if pos + 1 == m:
            yield Embedding.from_dict({tv: image[tv] for tv in range(m)})
            used.discard(h)
            image[t] = -1
        else:
            stack.append(candidates(pos + 1))


def sparse_embed(host: Graph, tree: Tree, t: int = 2) -> Embedding:
    """Embedding for hosts of girth at least 2t+1 via complete backtracking.

    Preconditions (t = 2): girth >= 5, minimum degree >= (m-1)/2, and
    maximum host degree at least the tree's maximum degree.  For t > 2 the
    generalized hypothesis additionally requires minimum degree at least
    the tree's maximum degree.  The search itself is complete regardless of
    the hypotheses, so exhaustion is reported distinctly from precondition
    failures.
    """
    if t < 2:
        raise ValueError("girth parameter t must be at least 2")
    m = tree.order
    stats = degree_stats(host)
    if stats is None:
        raise PreconditionError("empty host graph")
    gv = girth(host)
    if not girth_at_least(gv, 2 * t + 1):
        raise PreconditionError(f"girth {gv} is below 2t+1 = {2 * t + 1}")
    need = Fraction(m - 1, t)
    if t > 2:
        need = max(need, Fraction(tree.max_degree))
    if stats[0] < need:
        raise PreconditionError(f"minimum degree {stats[0]} is below {need}")
    if stats[1] < tree.max_degree:
        raise PreconditionError(
            f"maximum host degree {stats[1]} is below the tree's {tree.max_degree}"
        )
    root = min(range(m), key=lambda v: (-tree.graph.degree(v), v))
    order, parent = _bfs_order(tree, root, key=lambda v: (-tree.graph.degree(v), v))
    roots = [h for h in host.vertices() if host.degree(h) >= tree.graph.degree(root)]
    found = next(_anchored_search(host, tree, order, parent, roots, True), None)
    if found is None:
        raise SearchExhausted(
            "embedding search space exhausted: hypothesis violation or internal error"
        )
    problems = embedding_errors(host, tree, found)
    if problems:
        raise TheoremViolation(f"search produced an invalid embedding: {problems[0]}")
    return found


def iter_embeddings(host: Graph, tree: Tree, guard: int | None = None) -> Iterator[Embedding]:
    """All labeled embeddings of the tree into the host, in deterministic order."""
    limit = resolve_guard(guard, DEFAULT_BRUTE_GUARD)
    if host.n > limit:
        raise GuardExceeded(f"exhaustive embedding guard: {host.n} > {limit}")
    order, parent = _bfs_order(tree, 0)
    return _anchored_search(host, tree, order, parent, list(host.vertices()), False)


def exhaustive_embed(host: Graph, tree: Tree, guard: int | None = None) -> Embedding | None:
    """First embedding by full backtracking, or None when none exists."""
    return next(iter_embeddings(host, tree, guard), None)
