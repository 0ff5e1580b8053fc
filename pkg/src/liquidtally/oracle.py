"""Brute-force vote propagation, used to cross-check the solvers.

Nothing here touches numpy or scipy: votes are pushed along plain Python
edge lists one delegation step at a time. Each round every non-voter passes
``weight * mass`` of the mass it received in the previous round along each
out-edge; voters keep (absorb) what arrives. Summing what each node has
seen over ``m`` rounds gives ``sum_{i<=m} A^i J``.
"""

from .errors import NoConvergenceError

DEFAULT_MAX_STEPS = 1 << 16


def _rounds(sg):
    graph = getattr(sg, "graph", sg)
    order = list(graph.node_ids)
    index = {v: i for i, v in enumerate(order)}
    voters = {index[v] for v in graph.voters}
    pushes = [
        (index[e.source], index[e.target], float(e.weight))
        for e in graph.edges
        if index[e.source] not in voters
    ]
    n = len(order)
    arriving = [1.0] * n
    total = list(arriving)
    yield 0, total
    step = 0
    while True:
        step += 1
        nxt = [0.0] * n
        for k, i, w in pushes:
            nxt[i] += w * arriving[k]
        for i in range(n):
            total[i] += nxt[i]
        arriving = nxt
        yield step, total


def propagate_steps(sg, steps):
    """Votes accumulated per node after ``steps`` delegation rounds.

    Returns a list aligned with ``sg.node_order``. ``steps=0`` gives all ones.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    for step, total in _rounds(sg):
        if step == steps:
            return list(total)


def oracle_tally(sg, tol=1e-10, max_steps=DEFAULT_MAX_STEPS):
    """Propagate with doubling round counts until two checkpoints agree.

    Checkpoints are taken after 1, 2, 4, 8, ... rounds; the result is
    returned once consecutive checkpoints differ by less than ``tol``.
    """
    prev = None
    checkpoint = 1
    for step, total in _rounds(sg):
        if step < checkpoint:
            continue
        if prev is not None and max(
            (abs(a - b) for a, b in zip(total, prev)), default=0.0
        ) < tol:
            return list(total)
        if step >= max_steps:
            break
        prev = list(total)
        checkpoint *= 2
    raise NoConvergenceError(
        f"vote mass still moving after {max_steps} rounds (tol={tol:g})"
    )
