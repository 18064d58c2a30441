"""The connectivity-keeping-subtree pipeline and its certificate format.

Given a k-connected host meeting the case-dependent minimum-degree
threshold 2k + 2m + beta - 3, the pipeline finds a subtree isomorphic to a
given tree whose removal keeps the graph k-connected: it builds a connected
triple with parameter p = k + m - 1, refines it until a matching saturates
s1, embeds the tree into the unmatched part of the fragment with the
case-matched embedder, and re-checks connectivity of the remainder
directly.  Every run emits a certificate that an independent verifier can
re-check from scratch.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .connectivity import connectivity_at_least, global_connectivity
from .embed import (
    Embedding,
    bipartite_embed,
    embedding_errors,
    exhaustive_embed,
    greedy_embed,
    sparse_embed,
)
from .errors import (
    DEFAULT_BRUTE_GUARD,
    HypothesisFailure,
    ParseError,
    PreconditionError,
    SearchExhausted,
    TheoremViolation,
)
from .graphs import (
    Graph,
    Tree,
    bipartition,
    components,
    degree_stats,
    find_triangle,
    girth,
    girth_at_least,
    induced_delete,
    induced_subgraph,
    is_triangle_free,
    odd_cycle,
)
from .matching import Matching, check_matching
from .report import CheckReport
from .triples import ConnectedTriple, SaturatedTriple, find_triple, hall_refine, validate_triple

__all__ = [
    "CASE_TRIANGLE_FREE",
    "CASE_BIPARTITE",
    "CASE_GIRTH",
    "CaseSelector",
    "auto_case",
    "compute_beta",
    "degree_threshold",
    "HypothesisReport",
    "check_hypotheses",
    "Certificate",
    "CERTIFICATE_SCHEMA",
    "find_keeping_tree",
    "verify_certificate",
]

CASE_TRIANGLE_FREE = "triangle-free"
CASE_BIPARTITE = "bipartite"
CASE_GIRTH = "girth"
_CASES = (CASE_TRIANGLE_FREE, CASE_BIPARTITE, CASE_GIRTH)

CERTIFICATE_SCHEMA = "keeptree-cert/1"


@dataclass(frozen=True)
class CaseSelector:
    """Which structural hypothesis the run relies on.

    ``t`` only matters for the girth case (girth at least 2t+1); t = 2 is
    the plain girth-5 hypothesis.
    """

    case: str
    t: int = 2

    def __post_init__(self):
        if self.case not in _CASES:
            raise ValueError(f"unknown case {self.case!r}")
        if self.case == CASE_GIRTH and self.t < 2:
            raise ValueError("girth case requires t >= 2")

    def label(self) -> str:
        if self.case == CASE_GIRTH:
            return f"girth:{self.t}"
        return self.case


def auto_case(g: Graph) -> CaseSelector:
    """Prefer bipartite (typically the smallest threshold), then girth, then
    plain triangle-free."""
    if bipartition(g) is not None:
        return CaseSelector(CASE_BIPARTITE)
    gv = girth(g)
    if girth_at_least(gv, 5):
        t = 2 if gv is None else max(2, (gv - 1) // 2)
        return CaseSelector(CASE_GIRTH, t)
    return CaseSelector(CASE_TRIANGLE_FREE)


def compute_beta(sel: CaseSelector, tree: Tree) -> Fraction:
    """Case-dependent embedding-degree budget, kept exact.

    triangle-free: m-1; bipartite: max(|X|, |Y|); girth (parameter t):
    max((m-1)/t, max tree degree).
    """
    m = tree.order
    if sel.case == CASE_TRIANGLE_FREE:
        return Fraction(m - 1)
    if sel.case == CASE_BIPARTITE:
        return Fraction(max(len(tree.part_x), len(tree.part_y)))
    return max(Fraction(m - 1, sel.t), Fraction(tree.max_degree))


def degree_threshold(sel: CaseSelector, tree: Tree, k: int) -> Fraction:
    """Minimum-degree threshold 2k + 2m + beta - 3 for the selected case."""
    return 2 * k + 2 * tree.order + compute_beta(sel, tree) - 3


@dataclass(frozen=True)
class HypothesisReport:
    """Structured record of the hypothesis checks for one run."""

    k: int
    m: int
    case: str
    t: int
    delta: int | None
    girth_value: int | None
    triangle_free: bool
    bipartition_sizes: tuple[int, int] | None
    beta: Fraction
    threshold: Fraction
    kappa_ok: bool
    structural_ok: bool
    degree_ok: bool
    passed: bool
    failures: tuple[str, ...]

    def as_json_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "m": self.m,
            "case": self.case,
            "t": self.t,
            "delta": self.delta,
            "girth": self.girth_value,
            "triangle_free": self.triangle_free,
            "bipartition_sizes": list(self.bipartition_sizes)
            if self.bipartition_sizes is not None
            else None,
            "beta": str(self.beta),
            "threshold": str(self.threshold),
            "kappa_ok": self.kappa_ok,
            "structural_ok": self.structural_ok,
            "degree_ok": self.degree_ok,
            "passed": self.passed,
            "failures": list(self.failures),
        }


def check_hypotheses(
    g: Graph,
    tree: Tree,
    k: int,
    sel: CaseSelector,
    connectivity_hard_fail: bool = True,
) -> HypothesisReport:
    """Evaluate connectivity, the structural case condition, and the degree
    threshold, reporting each pass/fail with a witness.

    ``connectivity_hard_fail=False`` downgrades a failed connectivity check
    to a recorded warning (the degree and structural checks still gate the
    run).
    """
    if k < 1:
        raise ValueError("k must be positive")
    failures: list[str] = []
    stats = degree_stats(g)
    delta = stats[0] if stats else None
    gv = girth(g)
    tf = is_triangle_free(g)
    parts = bipartition(g)
    sizes = (len(parts[0]), len(parts[1])) if parts is not None else None
    beta = compute_beta(sel, tree)
    threshold = degree_threshold(sel, tree, k)

    kappa_ok = connectivity_at_least(g, k)
    if not kappa_ok:
        failures.append(f"connectivity below k = {k}")

    if sel.case == CASE_TRIANGLE_FREE:
        structural_ok = tf
        if not structural_ok:
            failures.append(f"triangle at {find_triangle(g)}")
    elif sel.case == CASE_BIPARTITE:
        structural_ok = parts is not None
        if not structural_ok:
            failures.append(f"odd cycle {odd_cycle(g)}")
    else:
        structural_ok = girth_at_least(gv, 2 * sel.t + 1)
        if not structural_ok:
            failures.append(f"girth {gv} below 2t+1 = {2 * sel.t + 1}")

    if delta is None:
        degree_ok = False
        failures.append("empty graph has no minimum degree")
    else:
        degree_ok = Fraction(delta) >= threshold
        if not degree_ok:
            offender = min(v for v in g.vertices() if g.degree(v) == delta)
            failures.append(
                f"minimum degree {delta} (vertex {offender}) below threshold {threshold}"
            )

    passed = structural_ok and degree_ok and (kappa_ok or not connectivity_hard_fail)
    return HypothesisReport(
        k=k,
        m=tree.order,
        case=sel.case,
        t=sel.t,
        delta=delta,
        girth_value=gv,
        triangle_free=tf,
        bipartition_sizes=sizes,
        beta=beta,
        threshold=threshold,
        kappa_ok=kappa_ok,
        structural_ok=structural_ok,
        degree_ok=degree_ok,
        passed=passed,
        failures=tuple(failures),
    )


@dataclass(frozen=True)
class Certificate:
    """Audit trail of one pipeline run, serializable to canonical JSON.

    All vertex ids refer to the original host graph's numbering; the tree's
    edge list is embedded so verification needs only the host graph and the
    certificate.
    """

    k: int
    m: int
    p: int
    case: CaseSelector
    beta: Fraction
    threshold: Fraction
    tree_order: int
    tree_edges: tuple[tuple[int, int], ...]
    embedding: Embedding
    triple: SaturatedTriple
    connectivity_after_removal: int
    hypothesis: dict[str, Any]

    def removed(self) -> frozenset[int]:
        return self.embedding.image()

    def to_json_dict(self) -> dict[str, Any]:
        t = self.triple.triple
        return {
            "schema": CERTIFICATE_SCHEMA,
            "k": self.k,
            "m": self.m,
            "p": self.p,
            "case": {"case": self.case.case, "t": self.case.t},
            "beta": str(self.beta),
            "threshold": str(self.threshold),
            "tree": {
                "order": self.tree_order,
                "edges": [list(e) for e in self.tree_edges],
            },
            "tree_image": [list(pair) for pair in self.embedding.mapping],
            "triple": {
                "p": t.p,
                "s1": sorted(t.s1),
                "s2": sorted(t.s2),
                "f": sorted(t.f),
                "matching": [list(e) for e in self.triple.matching.edges],
                "f_m": sorted(self.triple.f_m),
            },
            "connectivity_after_removal": self.connectivity_after_removal,
            "hypothesis_report": self.hypothesis,
        }

    def canonical_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"

    @staticmethod
    def from_json_dict(data: dict[str, Any]) -> "Certificate":
        try:
            if data["schema"] != CERTIFICATE_SCHEMA:
                raise ParseError(f"unsupported schema {data['schema']!r}")
            case = CaseSelector(data["case"]["case"], int(data["case"]["t"]))
            tree_edges = tuple(
                (int(u), int(v)) for u, v in data["tree"]["edges"]
            )
            embedding = Embedding(
                tuple(sorted((int(a), int(b)) for a, b in data["tree_image"]))
            )
            tr = data["triple"]
            triple = ConnectedTriple(
                int(tr["p"]),
                frozenset(int(v) for v in tr["s1"]),
                frozenset(int(v) for v in tr["s2"]),
                frozenset(int(v) for v in tr["f"]),
            )
            matching = Matching(
                tuple(sorted((int(a), int(b)) for a, b in tr["matching"]))
            )
            saturated = SaturatedTriple(
                triple, matching, frozenset(int(v) for v in tr["f_m"])
            )
            return Certificate(
                k=int(data["k"]),
                m=int(data["m"]),
                p=int(data["p"]),
                case=case,
                beta=Fraction(data["beta"]),
                threshold=Fraction(data["threshold"]),
                tree_order=int(data["tree"]["order"]),
                tree_edges=tree_edges,
                embedding=embedding,
                triple=saturated,
                connectivity_after_removal=int(data["connectivity_after_removal"]),
                hypothesis=dict(data["hypothesis_report"]),
            )
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed certificate: {exc!r}") from exc


def _case_embed(
    g: Graph,
    host: Graph,
    tree: Tree,
    sel: CaseSelector,
) -> Embedding:
    """Embed the tree into the fragment host using the case-matched embedder."""
    if sel.case == CASE_TRIANGLE_FREE:
        return greedy_embed(host, tree)
    if sel.case == CASE_BIPARTITE:
        parts = bipartition(host)
        if parts is None:
            raise PreconditionError("fragment host is not bipartite")
        emb, _ = bipartite_embed(host, parts[0], parts[1], tree)
        return emb
    return sparse_embed(host, tree, sel.t)


def find_keeping_tree(
    g: Graph,
    tree: Tree,
    k: int,
    sel: CaseSelector | None = None,
    force: bool = False,
    connectivity_hard_fail: bool = True,
) -> Certificate:
    """Find a subtree isomorphic to ``tree`` whose removal keeps the graph
    k-connected, and certify the whole run.

    Unless ``force`` is set, the hypothesis report must pass.  Forced runs
    proceed best-effort below the thresholds and report which stage failed;
    certificates they emit are verified all the same.  The one-vertex tree
    goes through the uniform path (p = k, single-vertex embedding) with the
    triple-search degree precondition relaxed, since the hypotheses then
    admit minimum degree 2k-1.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if sel is None:
        sel = auto_case(g)
    report = check_hypotheses(g, tree, k, sel, connectivity_hard_fail)
    if not report.passed and not force:
        raise HypothesisFailure(
            f"hypotheses fail: {'; '.join(report.failures)}", report
        )
    m = tree.order
    p = k + m - 1
    comps = components(g)
    if not comps:
        raise SearchExhausted("triple stage: empty graph")
    start = max(comps, key=lambda comp: (len(comp), -min(comp)))
    strict = not force and m >= 2
    try:
        base = find_triple(g, frozenset(), start, p, enforce_degree=strict)
        saturated = hall_refine(g, base, enforce_hypotheses=strict)
    except (SearchExhausted, PreconditionError) as exc:
        raise SearchExhausted(f"triple stage: {exc}") from exc

    beta = report.beta
    host, back = induced_subgraph(g, saturated.f_rest)
    host_delta = degree_stats(host)
    chain_ok = host_delta is not None and Fraction(host_delta[0]) >= beta
    if not chain_ok and not force:
        raise TheoremViolation(
            f"fragment minimum degree {host_delta} fell below beta = {beta} "
            f"despite passing hypotheses"
        )
    try:
        local = _case_embed(g, host, tree, sel)
    except (PreconditionError, SearchExhausted) as exc:
        if force and host.n <= DEFAULT_BRUTE_GUARD:
            fallback = exhaustive_embed(host, tree)
            if fallback is None:
                raise SearchExhausted(f"embedding stage (forced): {exc}") from exc
            local = fallback
        elif force:
            raise SearchExhausted(f"embedding stage (forced): {exc}") from exc
        else:
            raise TheoremViolation(
                f"embedding stage failed despite passing hypotheses: {exc}"
            ) from exc
    emb = Embedding.from_dict({tv: back[hv] for tv, hv in local.mapping})
    image = emb.image()
    if len(image) != m or p - k + 1 != m:
        raise TheoremViolation("removed set size differs from the tree order")
    remainder, _ = induced_delete(g, image)
    kappa_after = global_connectivity(remainder)
    if kappa_after < k:
        message = f"removal drops connectivity to {kappa_after} < k = {k}"
        if force:
            raise SearchExhausted(f"final check (forced): {message}")
        raise TheoremViolation(message)
    cert = Certificate(
        k=k,
        m=m,
        p=p,
        case=sel,
        beta=beta,
        threshold=report.threshold,
        tree_order=tree.order,
        tree_edges=tuple(tree.graph.edges()),
        embedding=emb,
        triple=saturated,
        connectivity_after_removal=kappa_after,
        hypothesis=report.as_json_dict(),
    )
    verification = verify_certificate(g, cert)
    if not verification.passed:
        raise TheoremViolation(
            f"self-verification failed: {verification.first_failure()}"
        )
    return cert


def verify_certificate(g: Graph, cert: Certificate | dict) -> CheckReport:
    """Re-check every certificate invariant from scratch, independent of how
    the certificate was produced.

    Malformed input (wrong schema, missing fields) raises ParseError; all
    content-level problems are reported as failing checks with witnesses.
    """
    if isinstance(cert, dict):
        cert = Certificate.from_json_dict(cert)
    checks: list[tuple[str, bool, str]] = []

    def add(name: str, ok: bool, detail: str = "ok") -> None:
        checks.append((name, ok, detail if not ok else "ok"))

    add(
        "arith-p",
        cert.p == cert.k + cert.m - 1,
        f"p = {cert.p} differs from k+m-1 = {cert.k + cert.m - 1}",
    )

    tree: Tree | None = None
    try:
        tree = Tree.from_edges(cert.tree_order, cert.tree_edges)
        add("tree-shape", True)
    except ValueError as exc:
        add("tree-shape", False, str(exc))

    if tree is not None:
        beta = compute_beta(cert.case, tree)
        threshold = degree_threshold(cert.case, tree, cert.k)
        add(
            "arith-threshold",
            cert.beta == beta and cert.threshold == threshold,
            f"recomputed beta/threshold {beta}/{threshold} differ from "
            f"{cert.beta}/{cert.threshold}",
        )
        add(
            "tree-order",
            tree.order == cert.m,
            f"embedded tree order {tree.order} differs from m = {cert.m}",
        )
    else:
        add("arith-threshold", False, "skipped: tree malformed")
        add("tree-order", False, "skipped: tree malformed")

    t = cert.triple.triple
    try:
        triple_report = validate_triple(g, t)
        add(
            "triple-valid",
            triple_report.passed,
            triple_report.first_failure() or "ok",
        )
    except ValueError as exc:
        add("triple-valid", False, str(exc))

    add(
        "triple-p",
        t.p == cert.p,
        f"triple parameter {t.p} differs from certificate p = {cert.p}",
    )

    matching = cert.triple.matching
    try:
        problems = check_matching(g, t.s1, t.f, matching)
        add("matching-valid", not problems, problems[0] if problems else "ok")
    except ValueError as exc:
        add("matching-valid", False, str(exc))
    add(
        "matching-saturates",
        matching.left_vertices() == t.s1,
        f"matched left set {sorted(matching.left_vertices())} differs from "
        f"s1 = {sorted(t.s1)}",
    )
    add(
        "f-m-consistent",
        cert.triple.f_m == matching.right_vertices(),
        "f_m differs from the matched fragment endpoints",
    )
    add(
        "fragment-surplus",
        len(t.f) > len(t.s1) and bool(t.f - cert.triple.f_m),
        f"|f| = {len(t.f)} vs |s1| = {len(t.s1)}, unmatched rest "
        f"{len(t.f - cert.triple.f_m)}",
    )

    if tree is not None:
        try:
            problems = embedding_errors(g, tree, cert.embedding)
            add("embedding-valid", not problems, problems[0] if problems else "ok")
        except ValueError as exc:
            add("embedding-valid", False, str(exc))
    else:
        add("embedding-valid", False, "skipped: tree malformed")

    image = cert.embedding.image()
    rest = t.f - cert.triple.f_m
    add(
        "image-in-fragment",
        image <= rest,
        f"image vertices {sorted(image - rest)} leave the unmatched fragment"
        if not image <= rest
        else "ok",
    )
    add(
        "removal-size",
        len(image) == cert.m == cert.p - cert.k + 1,
        f"|image| = {len(image)}, m = {cert.m}, p-k+1 = {cert.p - cert.k + 1}",
    )

    try:
        remainder, _ = induced_delete(g, image)
        kappa_after = global_connectivity(remainder)
        add(
            "connectivity-after-removal",
            kappa_after == cert.connectivity_after_removal and kappa_after >= cert.k,
            f"recomputed connectivity {kappa_after} vs certified "
            f"{cert.connectivity_after_removal}, k = {cert.k}",
        )
    except ValueError as exc:
        add("connectivity-after-removal", False, str(exc))

    return CheckReport(tuple(checks))
