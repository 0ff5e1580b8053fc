"""
A hundred thousand delegators
=============================

Past the dense threshold the solver switches to sparse Neumann iteration;
memory stays proportional to the number of delegations.
"""

# %%
import time

import numpy as np

from liquidtally import SolverConfig, attribution_for_voter, build_system, preprocess, solve
from liquidtally.datasets import random_graph

t = time.perf_counter()
graph = random_graph(100_000, mean_outdegree=3.0, voter_fraction=0.3, rng=1, min_outdegree=1)
print(f"built {len(graph)} nodes / {len(graph.edges)} edges in {time.perf_counter() - t:.1f} s")

# %%
t = time.perf_counter()
sg = preprocess(graph)
result = solve(sg, SolverConfig(tol=1e-8))
print(f"{result.method.value}: {result.iterations} steps, residual {result.residual:.1e}, "
      f"{time.perf_counter() - t:.1f} s")

A = build_system(sg).A
print(f"delegation matrix: {A.nnz} stored entries, "
      f"{(A.data.nbytes + A.indices.nbytes + A.indptr.nbytes) / 1e6:.1f} MB")

# %%
tallies = np.array(list(result.voter_tallies.values()))
print(f"voters: {tallies.size}, max tally {tallies.max():.1f}, "
      f"sum {tallies.sum():.3f} vs retained {len(sg)}")

# %%
# Attribution for a single voter still works at this size (iterative path).
top = max(result.voter_tallies, key=result.voter_tallies.get)
vec = attribution_for_voter(sg, top)
print(top, "draws from", len(vec.contributions), "people, total", round(vec.total, 6))
