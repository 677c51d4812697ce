# %% [markdown]
# # Randomized conjecture checks
#
# Each trial gets its own generator from (seed, index), so reports are the
# same whatever the worker count. Counterexamples carry exact inputs and the
# trial index, enough to replay them.

# %%
from sigmaconc import conjecture_trial
from sigmaconc.cli import emit

rep = conjecture_trial(4, trials=2000, seed=1, p=4, workers=2)
print(len(rep.counterexamples), rep.stats)
assert emit(rep) == emit(conjecture_trial(4, trials=2000, seed=1, p=4))

# %% [markdown]
# The lifted coefficient vectors of the diagonal family should give concave
# f^(1/p) on the orthant; 500-sample scans per draw.

# %%
for p, n in [(2, 3), (3, 4)]:
    rep = conjecture_trial(2, trials=100, seed=1, p=p, n=n, samples=500)
    print(p, n, len(rep.counterexamples), "suspected", rep.suspected)

# %% [markdown]
# Roots of pi_p stay inside the convex hull of the root sets (conjecture 5),
# and the diagonal/orthant link of conjecture 1 holds on sampled vectors.

# %%
print(len(conjecture_trial(5, trials=300, seed=2, p=3).counterexamples))
r1 = conjecture_trial(1, trials=60, seed=3, p=2, n=3, samples=200)
print(len(r1.counterexamples), r1.stats)
