"""
Trust decay and user-chosen splits
==================================
"""

# %%
from liquidtally import apply_decay, preprocess, solve, with_explicit_weights
from liquidtally.datasets import figure1
from liquidtally.pipeline import run_pipeline, tally_report

graph = figure1()

# %%
# With decay beta every delegation step keeps only a fraction beta of the
# vote; a vote reaching a voter after d steps counts beta**d.
for beta in (1.0, 0.9, 0.5, 0.1):
    tallies = solve(preprocess(apply_decay(graph, beta))).voter_tallies
    print(f"beta={beta:<4} X={tallies['X']:.4f} total={sum(tallies.values()):.4f}")

# %%
# The report quantifies the lost mass.
report = tally_report(run_pipeline(graph, beta=0.5))
print("decay loss:", report["decay_loss"], report["conservation_check"])

# %%
# H can favour I over J instead of splitting evenly.
custom = with_explicit_weights(graph, {("H", "I"): 0.9, ("H", "J"): 0.1})
before = solve(preprocess(graph)).voter_tallies
after = solve(preprocess(custom)).voter_tallies
for v in "KLMN":
    print(f"{v}: {before[v]:.4f} -> {after[v]:.4f}")
