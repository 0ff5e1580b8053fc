"""Bundled example graph and random graph generation."""

from importlib import resources

import numpy as np

from .formats import InputFormat, parse_input
from .graph import build_graph

FIGURE1_VOTERS = frozenset("ADEFKLMNRSXY")


def figure1(format="edgelist"):
    """The bundled 25-person example (A..Y), parsed from either shipped file."""
    fmt = InputFormat(format)
    name = "figure1.json" if fmt is InputFormat.JSON else "figure1.txt"
    data = resources.files("liquidtally").joinpath("data", name).read_bytes()
    return parse_input(data, fmt)


def figure1_path(format="edgelist"):
    name = "figure1.json" if InputFormat(format) is InputFormat.JSON else "figure1.txt"
    return resources.files("liquidtally").joinpath("data", name)


def random_graph(
    n,
    mean_outdegree=3.0,
    voter_fraction=0.3,
    rng=None,
    explicit=False,
    min_out_weight=1.0,
    min_outdegree=0,
):
    """Random delegation graph with ``n`` nodes named ``v000..``.

    Each node delegates to ``min_outdegree + Poisson(mean_outdegree -
    min_outdegree)`` random others (repeated targets are dropped, so the
    realised mean can be slightly lower). With ``explicit=True`` each source
    splits its vote with random weights summing to a value drawn from
    ``[min_out_weight, 1]``; the default ``min_out_weight=1`` makes every
    sum one.
    """
    rng = np.random.default_rng(rng)
    width = len(str(max(n - 1, 0)))
    ids = [f"v{i:0{width}d}" for i in range(n)]
    voters = rng.random(n) < voter_fraction

    if n > 1:
        degree = min_outdegree + rng.poisson(mean_outdegree - min_outdegree, size=n)
    else:
        degree = np.zeros(n, dtype=int)
    src = np.repeat(np.arange(n), degree)
    dst = rng.integers(0, max(n - 1, 1), size=src.size)
    dst = dst + (dst >= src)
    keys = np.unique(src.astype(np.int64) * n + dst)
    src, dst = keys // n, keys % n

    nodes = [(ids[i], bool(voters[i])) for i in range(n)]
    if not explicit:
        return build_graph(nodes, [(ids[s], ids[t]) for s, t in zip(src.tolist(), dst.tolist())])

    raw = rng.random(src.size) + 0.05
    bounds = np.flatnonzero(np.r_[True, src[1:] != src[:-1]]) if src.size else np.array([], int)
    totals = np.add.reduceat(raw, bounds) if src.size else raw
    counts = np.diff(np.r_[bounds, src.size])
    scale = rng.uniform(min_out_weight, 1.0, size=bounds.size) / totals
    w = raw * np.repeat(scale, counts)
    edges = [(ids[s], ids[t], float(x)) for s, t, x in zip(src.tolist(), dst.tolist(), w.tolist())]
    return build_graph(nodes, edges)
