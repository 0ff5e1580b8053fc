"""
Tallying a small delegation graph
=================================

The bundled 25-person graph: twelve people vote, the other thirteen only
delegate, some of them in cycles.
"""

# %%
# Load the graph and strip it down. Voters drop their out-edges and anyone
# whose vote can never land on a voter is removed.
from liquidtally import build_system, preprocess, solve_direct, solve_exact, solve_neumann
from liquidtally.datasets import figure1

graph = figure1()
sg = preprocess(graph)
print("wasted:", sg.wasted)
print("retained:", len(sg), "people,", len(sg.graph.edges), "delegations")

# %%
# Each retained person i satisfies S[i] = 1 + sum_k w(k -> i) S[k]. In matrix
# form that's (I - A) S = 1 with A sparse.
system = build_system(sg)
print(system.B.toarray()[:8, :8])

# %%
# Three ways to solve it agree.
direct = solve_direct(system)
neumann = solve_neumann(system, tol=1e-12)
exact = solve_exact(system)

print(f"{'node':>4} {'direct':>10} {'neumann':>10} {'exact':>6}")
for i, node in enumerate(system.node_order):
    if system.is_voter[i]:
        print(f"{node:>4} {direct.S[i]:10.6f} {neumann.S[i]:10.6f} {str(exact.S[i]):>6}")
print("neumann steps:", neumann.iterations)

# %%
# Everybody's vote lands somewhere: the voter tallies add up to the 24
# retained people.
print("sum of voter tallies:", sum(exact.voter_tallies.values()))
