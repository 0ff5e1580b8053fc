"""
Where votes come from, and what-if tallies
==========================================
"""

# %%
from liquidtally import attribution_for_voter, full_attribution_matrix, hypothetical_tally
from liquidtally import preprocess, solve
from liquidtally.datasets import figure1

graph = figure1()
sg = preprocess(graph)

# %%
# X ends up with 3 votes: its own plus half of each of T, U, V and W.
print(attribution_for_voter(sg, "X"))

# %%
# K's 5/3 votes come partly from G, two delegations up the chain.
for source, share in attribution_for_voter(sg, "K").contributions.items():
    print(f"  {source}: {share:.4f}")

# %%
# Every person's vote is split completely among the voters, so each column of
# the attribution table sums to one.
rows = full_attribution_matrix(sg)
columns = {}
for row in rows.values():
    for source, share in row.contributions.items():
        columns[source] = columns.get(source, 0.0) + share
print({k: round(v, 12) for k, v in sorted(columns.items())})

# %%
# Raw S for a non-voter is *not* what they would get by voting. O's entry is
# 7/3, but if O voted its edge O -> P would disappear and O would get 1.75.
raw = solve(sg).raw()
print("S[O] =", raw["O"])
print("if O voted:", hypothetical_tally(graph, "O"))
