"""Where did a voter's votes come from, and what-if tallies.

Row ``v`` of ``B^-1`` splits voter ``v``'s tally by origin: entry ``j`` is
the part of person ``j``'s vote that ends up with ``v``. Rows are obtained by
solving ``B^T y = e_v``; ``B^-1`` itself is never formed.
"""

from dataclasses import dataclass, replace

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import splu

from .errors import DelegationError, NoConvergenceError, NotAVoterError, TooLargeError
from .graph import Node
from .preprocess import preprocess
from .solver import DEFAULT_DENSE_THRESHOLD, SolverConfig, build_system, solve

ABSENT_BELOW = 1e-12


@dataclass(frozen=True)
class AttributionVector:
    voter: str
    contributions: dict
    total: float


def _check_voter(sg, voter):
    graph = sg.graph
    if voter not in graph:
        raise NotAVoterError(f"{voter!r} is not a retained node")
    if not graph.is_voter(voter):
        raise NotAVoterError(
            f"{voter!r} does not vote; attribution is only meaningful for voters"
        )


def _vector(sys, voter, y):
    contributions = {
        sys.node_order[j]: float(y[j]) for j in np.flatnonzero(np.abs(y) >= ABSENT_BELOW)
    }
    return AttributionVector(voter, contributions, float(sum(contributions.values())))


def _transpose_neumann(sys, e, tol, max_iter):
    AT = sys.A.T.tocsr()
    y = e.copy()
    for _ in range(max_iter):
        nxt = e + AT @ y
        if np.max(np.abs(nxt - y)) < tol:
            return nxt
        y = nxt
    raise NoConvergenceError("transpose iteration did not converge")


def attribution_for_voter(sg, voter, dense_threshold=DEFAULT_DENSE_THRESHOLD, tol=1e-13):
    """Per-source contributions to ``voter``'s tally.

    Small graphs use a sparse LU solve; above ``dense_threshold`` nodes the
    transposed Neumann iteration ``y <- e_v + A^T y`` is used instead.

    Raises
    ------
    NotAVoterError
        If ``voter`` is not a retained voter.
    """
    _check_voter(sg, voter)
    sys = build_system(sg)
    e = np.zeros(sys.n)
    e[sys.index[voter]] = 1.0
    if sys.n <= dense_threshold:
        y = splu(sys.B.T.tocsc()).solve(e)
    else:
        y = _transpose_neumann(sys, e, tol, 10 * sys.n + 1000)
    return _vector(sys, voter, y)


def full_attribution_matrix(sg, dense_threshold=DEFAULT_DENSE_THRESHOLD):
    """:class:`AttributionVector` for every voter, keyed by voter id.

    Factorises ``B^T`` once and solves for all voters together.
    """
    sys = build_system(sg)
    if sys.n > dense_threshold:
        raise TooLargeError(
            f"{sys.n} nodes exceeds {dense_threshold}; query voters one at a time"
        )
    voters = [v for i, v in enumerate(sys.node_order) if sys.is_voter[i]]
    if not voters:
        return {}
    cols = [sys.index[v] for v in voters]
    E = sparse.csc_matrix(
        (np.ones(len(cols)), (cols, range(len(cols)))), shape=(sys.n, len(cols))
    ).toarray()
    Y = splu(sys.B.T.tocsc()).solve(E)
    return {v: _vector(sys, v, Y[:, c]) for c, v in enumerate(voters)}


def hypothetical_tally(graph, node, config=None):
    """Votes ``node`` would hold if it cast a ballot itself.

    The whole pipeline is rerun on ``graph`` with ``node`` turned into a
    voter: its out-edges are then stripped, which changes where every vote
    passing through it flows. Reading a non-voter's entry of ``S`` is
    therefore *not* a substitute.
    """
    if node not in graph:
        raise DelegationError(f"unknown node {node!r}", code="UNKNOWN_NODE")
    if not graph.is_voter(node):
        nodes = tuple(Node(v.id, True) if v.id == node else v for v in graph.nodes)
        graph = replace(graph, nodes=nodes)
    result = solve(preprocess(graph), config or SolverConfig())
    return float(result.voter_tallies[node])
