# %% [markdown]
# # Exact real-rootedness
#
# Every verdict here is computed over the rationals. A Sturm chain counts
# distinct real roots, the Hermite form counts them a second way, and the
# battery runs the cheaper sufficient or necessary criteria alongside.

# %%
from sigmaconc import battery, parse_poly, sturm_real_root_count, complex_roots

P = parse_poly("6,11,6,1")  # (X+1)(X+2)(X+3)
print(sturm_real_root_count(P), sorted(round(z.real, 12) for z in complex_roots(P).roots))

# %% [markdown]
# X^3 + X^2 + X/3 separates the two uses of the form n P P'' - (n-1) P'^2.
# It is non-positive on the positive half-line (p3) but not on all of R (p2),
# and P is not real-rooted (p1).

# %%
r = battery(parse_poly("0,1/3,1,1"))
print("p1", r.p1_exact, "p2", r.p2_holds, "p3", r.p3_holds)
print("hermite (s, t) =", (r.hermite_s, r.hermite_t), "sturm =", r.sturm_count)

# %% [markdown]
# A real-rooted polynomial whose primitives are never real-rooted: Q has
# roots 0, 1, 2, 4, 5, 6 and no constant r makes r + integral of Q real-rooted.
# Shifting r to a critical value only produces a double root, never enough
# crossings.

# %%
from fractions import Fraction as F
from sigmaconc import UniPoly, from_roots, is_real_rooted

Q = from_roots([0, 1, 2, 4, 5, 6])
S = UniPoly((F(0),) + tuple(c / (k + 1) for k, c in enumerate(Q.coeffs)))
for c in (0, 1, 2, 4, 5, 6):
    r = -S(F(c))
    print(f"r = {float(r):9.3f}  real roots: {sturm_real_root_count(S + UniPoly((r,)))} of 7")
