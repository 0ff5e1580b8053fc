"""Multi-proxy transitive vote delegation.

Typical use::

    from liquidtally import build_graph, preprocess, solve
    sg = preprocess(build_graph(nodes, edges))
    result = solve(sg)
    result.voter_tallies
"""

from .attribution import (
    AttributionVector,
    attribution_for_voter,
    full_attribution_matrix,
    hypothetical_tally,
)
from .errors import (
    DelegationError,
    EmptyResultError,
    GraphValidationError,
    NoConvergenceError,
    NotAVoterError,
    ParseError,
    SingularSystemError,
    TooLargeError,
)
from .extensions import DecayConfig, apply_decay, with_explicit_weights
from .formats import InputFormat, dump_edgelist, dump_json, parse_input, to_dot
from .graph import (
    Delegation,
    DelegationGraph,
    Node,
    ValidationReport,
    WeightMode,
    build_graph,
    validate,
)
from .oracle import oracle_tally, propagate_steps
from .pipeline import run_pipeline, tally_report
from .preprocess import (
    PruneReport,
    SimplifiedGraph,
    preprocess,
    prune_unreachable,
    strip_voter_edges,
)
from .solver import (
    LinearSystem,
    Method,
    SolverConfig,
    TallyResult,
    build_system,
    neumann_iterates,
    solve,
    solve_direct,
    solve_exact,
    solve_neumann,
)

__version__ = "0.1.0"
