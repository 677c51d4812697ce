# %% [markdown]
# # The p = 2 case
#
# For f = a0 + a1 s1 + a2 s2 the square root is concave on the positive
# orthant exactly when n a1^2 - 2(n-1) a0 a2 >= 0. The certificate is pure
# arithmetic; the scan samples Hessians and must agree with it.

# %%
from sigmaconc import p2_certificate, concavity_scan

for a, n in [("1,2,3", 2), ("1,2,3", 3), ("1,1,1", 3), ("1,4,1", 6)]:
    c = p2_certificate(a, n)
    v = concavity_scan(a, n, samples=1000, seed=0)
    print(f"a=({a}) n={n}: {c.status:12s} margin {str(c.margin):>4s}   scan: {v.status}")

# %% [markdown]
# When the scan finds a violation it returns an exact witness: a rational
# point and direction at which the quadratic form is strictly positive.

# %%
w = concavity_scan("1,1,1", 3, samples=500, seed=0).witness
print("point", [str(t) for t in w.point])
print("direction", [str(t) for t in w.direction])
print("form value", w.exact_value)
