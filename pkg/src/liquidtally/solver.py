"""Tallying a preprocessed delegation graph.

Every retained person ``i`` ends up with

    S[i] = 1 + sum_k w(k -> i) * S[k]

votes, i.e. ``(I - A) S = J`` where ``A[i, k] = w(k -> i)`` and ``J`` is all
ones. Three routes solve it:

``solve_direct``
    LU factorisation with partial pivoting of the dense ``B = I - A``
    (bounded by ``dense_threshold`` nodes).
``solve_neumann``
    the fixed point iteration ``S <- J + A S`` started from ``S = J``. Only
    sparse matrix-vector products are used, so memory is O(nodes + edges).
``solve_exact``
    fraction-valued Gaussian elimination, for small graphs where an exact
    answer is wanted.
"""

import enum
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np
import scipy.linalg
from scipy import sparse

from .errors import NoConvergenceError, SingularSystemError, TooLargeError
from .preprocess import SimplifiedGraph

DEFAULT_TOL = 1e-10
DEFAULT_DENSE_THRESHOLD = 2000
DEFAULT_EXACT_MAX_NODES = 200
DIRECT_RESIDUAL_TOL = 1e-10


class Method(str, enum.Enum):
    AUTO = "auto"
    DIRECT = "direct"
    NEUMANN = "neumann"
    EXACT = "exact"


@dataclass(frozen=True, eq=False)
class LinearSystem:
    """The sparse system ``B S = J`` in a fixed node order.

    Attributes
    ----------
    A : scipy.sparse.csr_matrix
        Delegation matrix, ``A[i, k]`` is the weight of the edge ``k -> i``.
    J : ndarray
        All-ones right-hand side.
    node_order : tuple of str
    is_voter : ndarray of bool
    graph : DelegationGraph
        The graph the system was built from (used by the exact solver).
    wasted : tuple of str
        Nodes removed by preprocessing, carried through for reporting.
    """

    A: sparse.csr_matrix
    J: np.ndarray
    node_order: tuple
    is_voter: np.ndarray
    graph: object = None
    wasted: tuple = ()

    @cached_property
    def B(self):
        n = self.n
        return (sparse.identity(n, format="csr") - self.A).tocsr()

    @cached_property
    def index(self):
        return {v: i for i, v in enumerate(self.node_order)}

    @property
    def n(self):
        return len(self.node_order)

    def residual(self, S):
        """Max-norm of ``B S - J``."""
        if self.n == 0:
            return 0.0
        return float(np.max(np.abs(S - self.A @ S - self.J)))


@dataclass
class TallyResult:
    """Solution of a delegation system.

    ``S`` holds a value for every retained node, but only entries of voters
    are real vote counts. The number a non-voter would get if they voted
    is :func:`liquidtally.attribution.hypothetical_tally`, not ``S``.
    """

    S: np.ndarray
    node_order: tuple
    voter_tallies: dict
    method: Method
    wasted: list = field(default_factory=list)
    iterations: int = 0
    residual: float = 0.0

    def raw(self):
        """All entries of ``S`` keyed by node id, voters or not."""
        return dict(zip(self.node_order, self.S))


@dataclass(frozen=True)
class SolverConfig:
    method: Method = Method.AUTO
    tol: float = DEFAULT_TOL
    max_iter: int = None
    dense_threshold: int = DEFAULT_DENSE_THRESHOLD

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))


def build_system(sg):
    """Assemble the delegation matrix and right-hand side.

    Accepts a :class:`SimplifiedGraph` or, for diagnostics, a raw
    :class:`~liquidtally.graph.DelegationGraph` (whose system may be singular).
    """
    if isinstance(sg, SimplifiedGraph):
        graph, wasted = sg.graph, tuple(sg.wasted)
    else:
        graph, wasted = sg, ()
    order = graph.node_ids
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    m = len(graph.edges)
    rows = np.empty(m, dtype=np.int64)
    cols = np.empty(m, dtype=np.int64)
    data = np.empty(m, dtype=np.float64)
    for j, e in enumerate(graph.edges):
        rows[j] = index[e.target]
        cols[j] = index[e.source]
        data[j] = float(e.weight)
    A = sparse.csr_matrix((data, (rows, cols)), shape=(n, n))
    A.sum_duplicates()
    A.sort_indices()
    is_voter = np.array([v.is_voter for v in graph.nodes], dtype=bool)
    return LinearSystem(A, np.ones(n), order, is_voter, graph, wasted)


def _result(sys, S, method, iterations, residual):
    value = (lambda x: x) if isinstance(S, list) else float
    tallies = {v: value(S[i]) for i, v in enumerate(sys.node_order) if sys.is_voter[i]}
    return TallyResult(
        S=S,
        node_order=sys.node_order,
        voter_tallies=tallies,
        method=method,
        wasted=list(sys.wasted),
        iterations=iterations,
        residual=residual,
    )


def solve_direct(sys, dense_threshold=DEFAULT_DENSE_THRESHOLD):
    """Solve ``B S = J`` by LU factorisation with partial pivoting.

    Raises
    ------
    TooLargeError
        If the system has more than ``dense_threshold`` nodes.
    SingularSystemError
        If ``B`` is singular, which means the graph was not preprocessed.
    """
    n = sys.n
    if n > dense_threshold:
        raise TooLargeError(f"{n} nodes exceeds dense threshold {dense_threshold}")
    if n == 0:
        return _result(sys, np.zeros(0), Method.DIRECT, 0, 0.0)
    lu, piv = _factor(sys.B.toarray())
    S = scipy.linalg.lu_solve((lu, piv), sys.J, check_finite=False)
    residual = sys.residual(S)
    if not np.isfinite(residual) or residual > DIRECT_RESIDUAL_TOL:
        raise SingularSystemError(f"direct solve residual {residual:.3g}; system is ill-posed")
    return _result(sys, S, Method.DIRECT, 0, residual)


def _factor(dense):
    with warnings.catch_warnings():
        warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
        try:
            lu, piv = scipy.linalg.lu_factor(dense, check_finite=False)
        except scipy.linalg.LinAlgWarning as exc:
            raise SingularSystemError(f"B is singular: {exc}") from None
    if np.any(np.diag(lu) == 0):
        raise SingularSystemError("B is singular (zero pivot)")
    return lu, piv


def neumann_iterates(sys):
    """Yield ``S(0) = J, S(1) = J + A S(0), ...`` without end.

    ``S(m)`` equals ``sum_{i<=m} A^i J``, the votes held after ``m``
    delegation steps.
    """
    A, J = sys.A, sys.J
    S = J.copy()
    while True:
        yield S
        S = J + A @ S


def solve_neumann(sys, tol=DEFAULT_TOL, max_iter=None):
    """Solve ``B S = J`` by iterating ``S <- J + A S``.

    Stops at the first step where ``max|S(m+1) - S(m)| < tol``, or where the
    step is down to a few units of float rounding of ``max|S|``.

    Parameters
    ----------
    sys : LinearSystem
    tol : float
        Max-norm step tolerance.
    max_iter : int, optional
        Defaults to ``10 * n + 1000``.

    Raises
    ------
    NoConvergenceError
        If ``max_iter`` steps pass without meeting ``tol``; on a graph that
        skipped preprocessing this flags a cycle of non-voters.
    """
    if max_iter is None:
        max_iter = 10 * sys.n + 1000
    it = neumann_iterates(sys)
    prev = next(it)
    for m in range(1, max_iter + 1):
        S = next(it)
        delta = float(np.max(np.abs(S - prev))) if sys.n else 0.0
        if not np.isfinite(delta):
            break
        # a tol below the float spacing of the largest tally is unreachable
        floor = 8 * np.finfo(float).eps * float(np.max(np.abs(S))) if sys.n else 0.0
        if delta < tol or delta <= floor:
            return _result(sys, S, Method.NEUMANN, m, sys.residual(S))
        prev = S
    raise NoConvergenceError(
        f"Neumann iteration did not reach tol={tol:g} in {max_iter} steps "
        "(is there a cycle of non-voters? run preprocess first)"
    )


def solve_exact(sys, max_nodes=DEFAULT_EXACT_MAX_NODES):
    """Exact rational solution of ``B S = J``.

    Returns a :class:`TallyResult` whose ``S`` is a list of
    :class:`~fractions.Fraction`. Edge weights are converted with
    ``Fraction(w)``, so float weights are taken at their exact binary value.
    """
    n = sys.n
    if n > max_nodes:
        raise TooLargeError(f"exact mode is limited to {max_nodes} nodes, got {n}")
    rows = _system_rows(sys)
    S = _fraction_solve([dict(r) for r in rows], [Fraction(1)] * n)

    residual = Fraction(0)
    for row in rows:
        r = sum((c * S[k] for k, c in row.items()), Fraction(0)) - 1
        residual = max(residual, abs(r))
    return _result(sys, S, Method.EXACT, 0, float(residual))


def _system_rows(sys):
    index = sys.index
    rows = [{i: Fraction(1)} for i in range(sys.n)]
    for e in sys.graph.edges:
        i, k = index[e.target], index[e.source]
        rows[i][k] = rows[i].get(k, Fraction(0)) - Fraction(e.weight)
    return rows


def _fraction_solve(rows, rhs):
    """Gaussian elimination over sparse fraction rows (modified in place)."""
    n = len(rows)
    rhs = list(rhs)
    for col in range(n):
        candidates = [r for r in range(col, n) if rows[r].get(col, 0) != 0]
        if not candidates:
            raise SingularSystemError(f"B is singular (no pivot in column {col})")
        p = max(candidates, key=lambda r: abs(rows[r][col]))
        if p != col:
            rows[col], rows[p] = rows[p], rows[col]
            rhs[col], rhs[p] = rhs[p], rhs[col]
        pivot_row = rows[col]
        pivot = pivot_row[col]
        for r in range(col + 1, n):
            factor = rows[r].get(col)
            if not factor:
                continue
            factor = factor / pivot
            target = rows[r]
            for k, c in pivot_row.items():
                v = target.get(k, 0) - factor * c
                if v:
                    target[k] = v
                else:
                    target.pop(k, None)
            rhs[r] -= factor * rhs[col]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        row = rows[i]
        acc = rhs[i] - sum((c * x[k] for k, c in row.items() if k > i), Fraction(0))
        x[i] = acc / row[i]
    return x


def solve(sg, config=None):
    """Tally a preprocessed graph, picking the method from ``config``.

    With ``method="auto"`` graphs up to ``dense_threshold`` nodes are solved
    directly and larger ones by Neumann iteration.
    """
    config = config or SolverConfig()
    sys = build_system(sg)
    method = config.method
    if method is Method.AUTO:
        method = Method.DIRECT if sys.n <= config.dense_threshold else Method.NEUMANN
    if method is Method.DIRECT:
        return solve_direct(sys, dense_threshold=max(config.dense_threshold, sys.n))
    if method is Method.EXACT:
        return solve_exact(sys)
    return solve_neumann(sys, tol=config.tol, max_iter=config.max_iter)
