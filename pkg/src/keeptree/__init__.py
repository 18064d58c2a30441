"""Connectivity-keeping subtrees in triangle-free, bipartite, and high-girth
graphs, with independently checkable certificates.

The library finds, in a k-connected host meeting a case-dependent minimum-
degree threshold, a subtree isomorphic to a given tree whose removal keeps
the graph k-connected, and certifies every structural claim (connected
triples, saturating matchings, embeddings, connectivity values) so a
verifier can re-check them from scratch.
"""

from .errors import (
    GuardExceeded,
    HypothesisFailure,
    KeeptreeError,
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
    girth,
    induced_delete,
    is_triangle_free,
    min_degree_over,
    neighborhood_of_set,
)
from .connectivity import (
    PathSystem,
    Separator,
    brute_min_separator,
    global_connectivity,
    is_k_connected_after_removal,
    local_connectivity,
    set_connectivity,
)
from .matching import HallViolator, Matching, max_matching, saturating_matching_or_violator
from .embed import (
    Embedding,
    bipartite_embed,
    exhaustive_embed,
    greedy_embed,
    sparse_embed,
)
from .triples import (
    ConnectedTriple,
    SaturatedTriple,
    enumerate_triples,
    find_triple,
    hall_refine,
    removal_safety_check,
    validate_triple,
)
from .pipeline import (
    CaseSelector,
    Certificate,
    auto_case,
    check_hypotheses,
    compute_beta,
    degree_threshold,
    find_keeping_tree,
    verify_certificate,
)
from .families import FamilySpec, enumerate_trees, gen_graph, gen_tree
from .harness import oracle_exists, run_suite, tightness_probe

__version__ = "0.1.0"
