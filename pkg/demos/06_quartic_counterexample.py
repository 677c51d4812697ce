# %% [markdown]
# # A quartic that breaks conjecture 3
#
# Conjecture 3 says a polynomial with non-negative coefficients is
# real-rooted as soon as n P P'' - (n-1) P'^2 <= 0 on all of R. This is a
# theorem up to degree 3. The harness finds failures from degree 4 onwards;
# here is a hand-sized one.
#
# P = (X+5)(X+1)(X^2+3X+4). The quadratic factor has discriminant -7.

# %%
from sigmaconc import parse_poly, is_real_rooted, nonpositive_on, sturm_real_root_count
from sigmaconc.rootcrit import p2_form, ALL_REALS

P = parse_poly("20,39,27,9,1")
R = p2_form(P)
print("P    =", P)
print("form =", R)
print("form <= 0 on R:", nonpositive_on(R, ALL_REALS))
print("real-rooted:", is_real_rooted(P), " distinct real roots:", sturm_real_root_count(P))

# %% [markdown]
# The form is exactly -3 (3X^2 + 2X - 9)^2, a negative square, so the
# condition holds with equality at two points.

# %%
from sigmaconc import UniPoly

g = UniPoly((-9, 2, 3))
print(R == g * g * -3)

# %% [markdown]
# Random search reproduces this; the report is self-contained.

# %%
from sigmaconc import conjecture_trial

rep = conjecture_trial(3, trials=200, seed=7, n=5)
for c in rep.counterexamples:
    print(c["trial"], c["inputs"]["P"], c["exact_values"]["distinct_real_roots"])
