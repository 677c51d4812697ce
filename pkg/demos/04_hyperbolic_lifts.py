# %% [markdown]
# # Semi-symmetric lifts and pi_p
#
# s_{n,p}(x) = sum_k sigma_k(x) sigma_{p-k}(lambda) / C(n,k) is homogeneous
# in (x, lambda). Restricting it to the all-ones line gives pi_p, which has
# a direct form (1/p!) sum_k P^(k) Q^(p-k) and an expanded closed form.

# %%
from sigmaconc import pi_p_closed, pi_p_direct, is_real_rooted, s_np_spec, hyperbolicity_probe

mu, lam = [1, -2, 3], [0, 5, -1]
print(pi_p_direct(mu, lam))
print(pi_p_closed(mu, lam) == pi_p_direct(mu, lam), is_real_rooted(pi_p_direct(mu, lam)))

# %% [markdown]
# For p = 2 the discriminant is a sum of squares, which is why pi_2 is
# always real-rooted.

# %%
from sigmaconc import convolution_sum, from_roots
from sigmaconc.polyexact import discriminant_small

S = convolution_sum(from_roots([-1, -4]), from_roots([-2, -7]))
print(discriminant_small(S), 16 * ((1 - 4) ** 2 + (2 - 7) ** 2))

# %% [markdown]
# The probe draws random lines through rational points and checks exact
# real-rootedness along the direction v. It can refute hyperbolicity, never
# prove it.

# %%
spec = s_np_spec(3, 2)
v = [1, 1, 1, 1, 1]
print(hyperbolicity_probe(spec, v, trials=200, seed=0))
