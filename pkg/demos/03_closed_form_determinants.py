# %% [markdown]
# # Closed-form Hessian determinants
#
# Two families have an explicit formula for det Hess(f^(1/p)) up to a
# positive factor: general cubics (p = 3) and the sparse family
# a0 + a1 s1 + an sn. We check its sign against a finite-difference Hessian
# with Richardson extrapolation at random rational points.

# %%
from sigmaconc import closedform_det, exact_concavity_det, determinant_check

a, x = "1,2,3,1", [1, 2, 3]
print(closedform_det(a, x, "p3"), exact_concavity_det(a, x, 3))

# %%
for kind, a, n in [("p3", "1,2,3,1", 3), ("p3", "1/2,5,1,2", 4), ("sparse-n", "1,1,0,1", 3),
                   ("sparse-n", "2,3,0,0,1", 4)]:
    r = determinant_check(a, kind, n=n, points=100, seed=0)
    print(f"{kind:9s} n={n}: agree {r.agree}, near zero {r.degenerate}, "
          f"singular {r.singular}, disagree {len(r.disagree)}")
