"""Exact packing-colouring toolkit.

Generators for cubic graph families, an exact decision solver for packing
k-colourings with machine-checkable certificates, i-packing bounds, periodic
colouring patterns with a verified registry, executable structural claims,
and a JSON-emitting command line.
"""

from .graphs import (
    Colouring,
    DistanceMatrix,
    Graph,
    INFINITY,
    ValidityReport,
    all_pairs_distances,
    build_graph,
    diameter,
    graph_content_hash,
    induced_subgraph,
    is_packing_colouring,
    parse_graph_text,
    power_graph,
    write_graph_text,
)
from .families import (
    cartesian_product,
    circular_ladder,
    corona,
    cycle,
    gen_h_graph,
    graph_x,
    h_graph,
    path,
    window,
)
from .packings import (
    PackingOutcome,
    PackingTimeout,
    RhoTable,
    max_i_packing,
    prop1_lower_bound,
    rho_table,
)
from .solver import (
    Budget,
    ChiRhoOutcome,
    ConstraintSet,
    NONE,
    SAT,
    SolveOutcome,
    TIMEOUT,
    UNSAT,
    brute_force_decide,
    chi_rho,
    decide,
    default_thread_count,
    find_colouring_violating,
)
from .patterns import (
    PatternSpec,
    RegistryError,
    SweepError,
    VerifyReport,
    claimed_k,
    find_entry,
    instantiate,
    load_registry,
    sweep,
    verify_case,
)
from .claims import (
    ClaimReport,
    SubCheck,
    check_appendixB,
    check_lemma6_hgraph,
    check_lemma7,
    check_lemma_graphX,
    check_level0_no45,
    normalize_colour2_to_1,
    unfold_cl_to_x,
)

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "ChiRhoOutcome",
    "ClaimReport",
    "Colouring",
    "ConstraintSet",
    "DistanceMatrix",
    "Graph",
    "INFINITY",
    "NONE",
    "PackingOutcome",
    "PackingTimeout",
    "PatternSpec",
    "RegistryError",
    "RhoTable",
    "SAT",
    "SolveOutcome",
    "SubCheck",
    "SweepError",
    "TIMEOUT",
    "UNSAT",
    "ValidityReport",
    "VerifyReport",
    "all_pairs_distances",
    "brute_force_decide",
    "build_graph",
    "cartesian_product",
    "check_appendixB",
    "check_lemma6_hgraph",
    "check_lemma7",
    "check_lemma_graphX",
    "check_level0_no45",
    "chi_rho",
    "circular_ladder",
    "claimed_k",
    "corona",
    "cycle",
    "decide",
    "default_thread_count",
    "diameter",
    "find_colouring_violating",
    "find_entry",
    "gen_h_graph",
    "graph_content_hash",
    "graph_x",
    "h_graph",
    "induced_subgraph",
    "instantiate",
    "is_packing_colouring",
    "load_registry",
    "max_i_packing",
    "normalize_colour2_to_1",
    "parse_graph_text",
    "path",
    "power_graph",
    "prop1_lower_bound",
    "rho_table",
    "sweep",
    "unfold_cl_to_x",
    "verify_case",
    "window",
    "write_graph_text",
]
