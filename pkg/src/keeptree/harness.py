"""Instance corpora, the exhaustive removal oracle, the suite runner, and
the degree-threshold tightness probe.

The suite runner drives the full pipeline per instance, cross-checks small
instances against the brute-force oracle, and merges results
deterministically by instance id so identical seeds give byte-identical
reports.  Wall-clock timings are collected on the side and never enter the
canonical report unless explicitly requested.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable

from .connectivity import connectivity_at_least, is_k_connected_after_removal
from .embed import Embedding, iter_embeddings
from .errors import (
    DEFAULT_BRUTE_GUARD,
    GuardExceeded,
    HypothesisFailure,
    ParseError,
    SearchExhausted,
    TheoremViolation,
    resolve_guard,
)
from .families import (
    FamilySpec,
    complete_bipartite,
    enumerate_trees,
    gen_graph,
    hoffman_singleton,
    petersen,
    projective_incidence,
    random_bipartite,
)
from .graphs import Graph, Tree, degree_stats, girth, is_connected, is_triangle_free
from .pipeline import (
    CASE_BIPARTITE,
    CASE_GIRTH,
    CASE_TRIANGLE_FREE,
    CaseSelector,
    auto_case,
    check_hypotheses,
    degree_threshold,
    find_keeping_tree,
    verify_certificate,
)

__all__ = [
    "SuiteInstance",
    "SuiteReport",
    "TightnessRecord",
    "oracle_exists",
    "run_suite",
    "tightness_probe",
    "small_connected_graphs",
    "corpus_triangle_free",
    "corpus_bipartite",
    "corpus_girth",
    "corpus_force",
    "full_suite",
    "parse_manifest",
]

SUITE_SCHEMA = "keeptree-suite/1"

CSV_COLUMNS = (
    "instance_id",
    "family",
    "case",
    "n",
    "m",
    "k",
    "delta",
    "girth",
    "beta",
    "threshold",
    "hypothesis_pass",
    "status",
    "verified",
    "oracle",
    "f_size",
    "s1_size",
    "s2_size",
    "removed_size",
    "kappa_after",
)


def oracle_exists(g: Graph, tree: Tree, k: int, guard: int | None = None) -> Embedding | None:
    """Brute-force witness: the first labeled embedding whose removal keeps
    the graph k-connected, or None when none exists."""
    for emb in iter_embeddings(g, tree, guard):
        if is_k_connected_after_removal(g, emb.image(), k):
            return emb
    return None


def small_connected_graphs(max_n: int = 7) -> list[Graph]:
    """All connected graphs with 1..max_n vertices, one per isomorphism class.

    Backed by the graph atlas shipped with networkx (complete up to 7
    vertices); atlas node labels are already 0..n-1.
    """
    if max_n > 7:
        raise GuardExceeded("the atlas only covers graphs up to 7 vertices")
    import networkx as nx

    out = []
    for nxg in nx.graph_atlas_g():
        n = nxg.number_of_nodes()
        if n == 0 or n > max_n:
            continue
        g = Graph(n, list(nxg.edges()))
        if is_connected(g):
            out.append(g)
    return out


@dataclass(frozen=True)
class SuiteInstance:
    """One pipeline run: a host graph, a target tree, k, and the case."""

    instance_id: str
    family: str
    graph: Graph
    tree: Tree
    k: int
    sel: CaseSelector | None = None
    force: bool = False


@dataclass(frozen=True)
class TightnessRecord:
    """Empirical threshold probe for one instance (evidence only, no claim)."""

    delta: int | None
    case: str
    proven_threshold: str
    conjectured_threshold: int
    triangle_free: bool
    kappa_ok: bool
    verdict: str
    counterexample_candidate: bool


def tightness_probe(g: Graph, tree: Tree, k: int, guard: int | None = None) -> TightnessRecord:
    """Compare the proven case threshold with the conjectured k + max(|X|,|Y|)
    on one instance and record the oracle's verdict.

    A "none" verdict on a k-connected triangle-free instance whose minimum
    degree already meets the conjectured threshold is flagged as a
    counterexample candidate for manual review; nothing is asserted.
    """
    sel = auto_case(g)
    stats = degree_stats(g)
    delta = stats[0] if stats else None
    conjectured = k + max(len(tree.part_x), len(tree.part_y))
    tf = is_triangle_free(g)
    kappa_ok = connectivity_at_least(g, k)
    found = oracle_exists(g, tree, k, guard)
    verdict = "yes" if found is not None else "none"
    candidate = (
        verdict == "none"
        and tf
        and kappa_ok
        and delta is not None
        and delta >= conjectured
    )
    return TightnessRecord(
        delta=delta,
        case=sel.label(),
        proven_threshold=str(degree_threshold(sel, tree, k)),
        conjectured_threshold=conjectured,
        triangle_free=tf,
        kappa_ok=kappa_ok,
        verdict=verdict,
        counterexample_candidate=candidate,
    )


def _girth_text(value: int | None) -> str:
    return "acyclic" if value is None else str(value)


def _run_one(inst: SuiteInstance, oracle_guard: int) -> tuple[dict[str, Any], str | None, float]:
    start = time.perf_counter()
    g, tree = inst.graph, inst.tree
    sel = inst.sel if inst.sel is not None else auto_case(g)
    report = check_hypotheses(g, tree, inst.k, sel)
    record: dict[str, Any] = {
        "instance_id": inst.instance_id,
        "family": inst.family,
        "case": sel.label(),
        "n": g.n,
        "m": tree.order,
        "k": inst.k,
        "delta": report.delta,
        "girth": _girth_text(report.girth_value),
        "beta": str(report.beta),
        "threshold": str(report.threshold),
        "hypothesis_pass": report.passed,
        "force": inst.force,
        "detail": "",
        "verified": None,
        "f_size": None,
        "s1_size": None,
        "s2_size": None,
        "removed_size": None,
        "kappa_after": None,
    }
    cert_json: str | None = None
    if report.passed or inst.force:
        try:
            cert = find_keeping_tree(g, tree, inst.k, sel, force=inst.force)
            verification = verify_certificate(g, cert)
            record["status"] = "certified"
            record["verified"] = verification.passed
            t = cert.triple.triple
            record["f_size"] = len(t.f)
            record["s1_size"] = len(t.s1)
            record["s2_size"] = len(t.s2)
            record["removed_size"] = len(cert.embedding.image())
            record["kappa_after"] = cert.connectivity_after_removal
            cert_json = cert.canonical_json()
        except HypothesisFailure as exc:
            record["status"] = "skipped-hypothesis"
            record["detail"] = str(exc)
        except SearchExhausted as exc:
            record["status"] = "failed-search"
            record["detail"] = str(exc)
        except TheoremViolation as exc:
            record["status"] = "failed-violation"
            record["detail"] = str(exc)
    else:
        record["status"] = "skipped-hypothesis"
        record["detail"] = "; ".join(report.failures)

    if g.n <= oracle_guard:
        found = oracle_exists(g, tree, inst.k, guard=oracle_guard)
        record["oracle"] = "yes" if found is not None else "none"
    else:
        record["oracle"] = "guard"
    record["dominance_violation"] = (
        record["status"] == "certified" and record["oracle"] == "none"
    )
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return record, cert_json, elapsed_ms


def _worker(args: tuple[SuiteInstance, int]):
    return _run_one(*args)


@dataclass(frozen=True)
class SuiteReport:
    """Per-instance records plus aggregate counts, merged by instance id.

    ``timings`` is kept out of the canonical serialization so identical
    seeds give byte-identical reports; pass ``with_timing=True`` to include
    it explicitly.
    """

    records: tuple[dict[str, Any], ...]
    aggregate: dict[str, Any]
    certificates: dict[str, str]
    timings: dict[str, float]

    def to_json(self, with_timing: bool = False) -> str:
        records = []
        for rec in self.records:
            rec = dict(rec)
            if with_timing:
                rec["runtime_ms"] = round(self.timings[rec["instance_id"]], 3)
            records.append(rec)
        payload = {
            "schema": SUITE_SCHEMA,
            "aggregate": self.aggregate,
            "instances": records,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def to_csv(self, with_timing: bool = False) -> str:
        columns = CSV_COLUMNS + (("runtime_ms",) if with_timing else ())
        lines = [",".join(columns)]
        for rec in self.records:
            row = []
            for col in columns:
                if col == "runtime_ms":
                    value = round(self.timings[rec["instance_id"]], 3)
                else:
                    value = rec.get(col)
                row.append("" if value is None else str(value))
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"

    def by_id(self, instance_id: str) -> dict[str, Any]:
        for rec in self.records:
            if rec["instance_id"] == instance_id:
                return rec
        raise KeyError(instance_id)


def run_suite(
    instances: Iterable[SuiteInstance],
    oracle_guard: int | None = None,
    jobs: int = 1,
) -> SuiteReport:
    """Run the pipeline over a corpus and merge results by instance id.

    Instances are independent; with ``jobs > 1`` they run in a process pool
    and the merged report is identical to a sequential run.
    """
    insts = list(instances)
    ids = [inst.instance_id for inst in insts]
    if len(set(ids)) != len(ids):
        raise ValueError("instance ids must be unique")
    guard = resolve_guard(oracle_guard, DEFAULT_BRUTE_GUARD)
    args = [(inst, guard) for inst in insts]
    if jobs > 1 and len(insts) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_worker, args))
    else:
        results = [_run_one(inst, guard) for inst in insts]
    triples = sorted(
        zip(ids, results), key=lambda pair: pair[0]
    )
    records = tuple(rec for _, (rec, _, _) in triples)
    certificates = {
        instance_id: cert
        for instance_id, (_, cert, _) in triples
        if cert is not None
    }
    timings = {instance_id: ms for instance_id, (_, _, ms) in triples}
    statuses = [rec["status"] for rec in records]
    aggregate = {
        "total": len(records),
        "certified": statuses.count("certified"),
        "verified": sum(1 for rec in records if rec["verified"]),
        "skipped_hypothesis": statuses.count("skipped-hypothesis"),
        "failed": sum(1 for s in statuses if s.startswith("failed")),
        "oracle_checked": sum(1 for rec in records if rec["oracle"] != "guard"),
        "dominance_violations": sum(
            1 for rec in records if rec["dominance_violation"]
        ),
    }
    return SuiteReport(records, aggregate, certificates, timings)


# ---------------------------------------------------------------------------
# Corpora for the acceptance suites.


def _nondegenerate(d: int, k: int, m: int) -> bool:
    # A k-connected remainder needs at least k+1 vertices after removing m.
    return 2 * d >= k + m + 1


def corpus_triangle_free(random_per_cell: int = 6, base_seed: int = 52_01) -> list[SuiteInstance]:
    """Hosts meeting the triangle-free threshold 2k+3m-4 for k in {1,2} and
    every tree class of order 1..4: the pinned complete bipartite graphs
    plus seeded balanced perturbations of them."""
    out: list[SuiteInstance] = []
    for k in (1, 2):
        for m in range(1, 5):
            trees = enumerate_trees(m)
            d = 2 * k + 3 * m - 4
            for ti, tree in enumerate(trees):
                if _nondegenerate(d, k, m):
                    out.append(
                        SuiteInstance(
                            f"tf-kdd-k{k}-m{m}-t{ti}",
                            "complete-bipartite",
                            complete_bipartite(d, d),
                            tree,
                            k,
                            CaseSelector(CASE_TRIANGLE_FREE),
                        )
                    )
                # One-vertex trees admit minimum degree 2k-1, below the
                # guaranteed triple regime 2k; random hosts get the bump.
                target = max(d, 2 * k) if m == 1 else d
                for r in range(random_per_cell):
                    seed = base_seed + 97 * (k * 100 + m * 10 + ti) + r
                    g = random_bipartite(target + 1, target + 1, target, seed)
                    out.append(
                        SuiteInstance(
                            f"tf-rand-k{k}-m{m}-t{ti}-s{r}",
                            "random-bipartite",
                            g,
                            tree,
                            k,
                            CaseSelector(CASE_TRIANGLE_FREE),
                        )
                    )
    return out


def corpus_bipartite(random_per_cell: int = 6, base_seed: int = 52_02) -> list[SuiteInstance]:
    """Hosts meeting the bipartite threshold 2k+2m+max(|X|,|Y|)-3 (strictly
    below the triangle-free one), same shape as the triangle-free corpus."""
    out: list[SuiteInstance] = []
    for k in (1, 2):
        for m in range(1, 5):
            for ti, tree in enumerate(enumerate_trees(m)):
                beta = max(len(tree.part_x), len(tree.part_y))
                d = 2 * k + 2 * m + beta - 3
                if _nondegenerate(d, k, m):
                    out.append(
                        SuiteInstance(
                            f"bip-kdd-k{k}-m{m}-t{ti}",
                            "complete-bipartite",
                            complete_bipartite(d, d),
                            tree,
                            k,
                            CaseSelector(CASE_BIPARTITE),
                        )
                    )
                for r in range(random_per_cell):
                    seed = base_seed + 89 * (k * 100 + m * 10 + ti) + r
                    g = random_bipartite(d + 1, d + 1, d, seed)
                    out.append(
                        SuiteInstance(
                            f"bip-rand-k{k}-m{m}-t{ti}-s{r}",
                            "random-bipartite",
                            g,
                            tree,
                            k,
                            CaseSelector(CASE_BIPARTITE),
                        )
                    )
    return out


#: Girth-5 hosts per tree order: minimum degree 4 and 7 at 50 vertices or
#: fewer only exist via incidence-style constructions.
_GIRTH_HOSTS = {
    1: ("petersen", petersen),
    2: ("projective-incidence", lambda: projective_incidence(3)),
    3: ("hoffman-singleton", hoffman_singleton),
}


def corpus_girth(max_m: int = 3) -> tuple[list[SuiteInstance], list[str]]:
    """Girth-5 instances for k = 1 and m <= max_m, plus the cells that are
    not constructible at desk scale (reported, never silently passed)."""
    out: list[SuiteInstance] = []
    skipped: list[str] = []
    k = 1
    for m in range(1, max_m + 1):
        if m not in _GIRTH_HOSTS:
            skipped.append(f"SKIPPED-CONSTRUCTION k={k} m={m}")
            continue
        family, builder = _GIRTH_HOSTS[m]
        g = builder()
        for ti, tree in enumerate(enumerate_trees(m)):
            threshold = degree_threshold(CaseSelector(CASE_GIRTH, 2), tree, k)
            delta = degree_stats(g)[0]
            if Fraction(delta) < threshold:
                skipped.append(
                    f"SKIPPED-CONSTRUCTION k={k} m={m} t{ti} "
                    f"(best construction delta {delta} < {threshold})"
                )
                continue
            out.append(
                SuiteInstance(
                    f"g5-{family}-k{k}-m{m}-t{ti}",
                    family,
                    g,
                    tree,
                    k,
                    CaseSelector(CASE_GIRTH, 2),
                )
            )
    return out, skipped


def corpus_force(count: int = 50, base_seed: int = 52_03) -> list[SuiteInstance]:
    """Seeded below-threshold instances for forced best-effort runs.

    Hosts sit one below the triangle-free degree threshold; one-vertex
    trees are excluded because their below-threshold hosts degenerate.
    """
    out: list[SuiteInstance] = []
    cells = [
        (k, m, ti, tree)
        for k in (1, 2)
        for m in (2, 3, 4)
        for ti, tree in enumerate(enumerate_trees(m))
    ]
    i = 0
    while len(out) < count:
        k, m, ti, tree = cells[i % len(cells)]
        d = 2 * k + 3 * m - 5
        if i < len(cells):
            g = complete_bipartite(d, d)
            family = "complete-bipartite"
        else:
            seed = base_seed + i
            g = random_bipartite(d + 1, d + 1, d, seed)
            family = "random-bipartite"
        out.append(
            SuiteInstance(
                f"force-{i:03d}-k{k}-m{m}-t{ti}",
                family,
                g,
                tree,
                k,
                CaseSelector(CASE_TRIANGLE_FREE),
                force=True,
            )
        )
        i += 1
    return out


def full_suite() -> list[SuiteInstance]:
    """The canonical corpus: both theorem suites, the girth smoke cells, and
    the forced below-threshold probes."""
    girth_instances, _ = corpus_girth()
    return (
        corpus_triangle_free()
        + corpus_bipartite()
        + girth_instances
        + corpus_force()
    )


# ---------------------------------------------------------------------------
# Manifest parsing: one instance per line "family params seed ; tree ; k ; case".


def _parse_number(token: str) -> int | float:
    try:
        return int(token)
    except ValueError:
        try:
            return float(token)
        except ValueError as exc:
            raise ParseError(f"expected a number, got {token!r}") from exc


def parse_family_token(text: str) -> FamilySpec:
    """Parse "family p1 p2 ..."; seeded families take the seed last."""
    tokens = text.split()
    if not tokens:
        raise ParseError("empty family token")
    family = tokens[0]
    values = [_parse_number(tok) for tok in tokens[1:]]
    if family.startswith("random"):
        if not values or not isinstance(values[-1], int):
            raise ParseError(f"{family} needs a trailing integer seed")
        return FamilySpec(family, tuple(values[:-1]), int(values[-1]))
    return FamilySpec(family, tuple(values))


def parse_manifest(text: str) -> list[SuiteInstance]:
    """Parse a corpus manifest into suite instances.

    Line format: ``family params [seed] ; tree-family params [seed] ; k ;
    case`` where case is auto, triangle-free, bipartite, or girth:t.
    """
    instances = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(";")]
        if len(parts) != 4:
            raise ParseError(f"line {lineno}: expected 4 ';'-separated fields")
        try:
            graph_spec = parse_family_token(parts[0])
            tree_spec = parse_family_token(parts[1])
            g = gen_graph(graph_spec)
            tree = Tree(gen_graph(tree_spec))
            k = int(parts[2])
            case_token = parts[3]
            if case_token == "auto":
                sel = None
            elif case_token.startswith("girth:"):
                sel = CaseSelector(CASE_GIRTH, int(case_token.split(":", 1)[1]))
            else:
                sel = CaseSelector(case_token)
        except (ParseError, ValueError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
        instances.append(
            SuiteInstance(
                f"{lineno:04d}-{graph_spec.family}",
                graph_spec.family,
                g,
                tree,
                k,
                sel,
            )
        )
    return instances
