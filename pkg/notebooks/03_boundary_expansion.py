# %% [markdown]
# # Boundary expansions with Einstein conformal infinity
#
# In the special defining function the metric reads
# ``tau^{-2}(dtau^2 + c(tau) g_hat)`` with lapse ``u(tau)/tau``. For an Einstein
# boundary the Taylor coefficients of ``c`` and ``u`` follow order by order,
# up to order ``n - 1``; at order ``n`` the linear system degenerates.

# %%
from fractions import Fraction

from staticflow import EinsteinBoundary, RadialGrid, expand, parity_check, reconstruct, residual_sup
from staticflow.expansion import solvability_determinant, special_gauge_of_ads

res = expand(EinsteinBoundary.sphere(5), 4)
print("c =", res.c.to_floats())
print("u =", res.u.to_floats())
print("hyperbolic space:", special_gauge_of_ads(5, 4))
print("determinants (last one probes order n):", res.determinants)

# %% [markdown]
# Odd coefficients vanish whatever the boundary curvature, and coefficients
# of order ``2j`` scale like ``S^j``.

# %%
for scal in (-6.0, 0.0, 3.0, 9.0):
    r = expand(EinsteinBoundary(7, scal), 6)
    print(f"S={scal:5}: parity {parity_check(r)}, c2={r.c[2]:+.4f}, c4={r.c[4]:+.5f}, c6={r.c[6]:+.6f}")

print([solvability_determinant(6, m) for m in range(1, 7)])

# %% [markdown]
# Putting the truncated series back into the bulk gives a triple whose static
# residual is the truncation error of the series plus the grid error.

# %%
grid = RadialGrid(0.05, 0.5, 4001)
sphere = EinsteinBoundary.sphere(5)
for order in (2, 3, 4):
    print(f"order {order}: residual {max(residual_sup(reconstruct(expand(sphere, order), grid))):.2e}")
