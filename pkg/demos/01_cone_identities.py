# %% [markdown]
# # Cone indicators on the GL(3) torus
#
# The truncation machinery is built from {0,1}-valued indicators of cones cut out
# by roots and dual weights.  Here we evaluate the alternating sum sigma both ways,
# check the companion identity for tau_hat_prime, and watch the signed sum over
# parabolics carve out the convex hull of a Weyl orbit.

# %%
import numpy as np

from gl3trace import cones
from gl3trace.roots import G, P0, P12, P21, AVector, rho, weyl_group

# %%
for P in (P0, P21, P12, G):
    print(P.value, "corank", P.corank, "rho", [str(c) for c in rho(P)])

# %%
H = (2, -1, -1)
print("sigma(P0, P21) by the alternating sum:", cones.sigma(P0, P21, H))
print("sigma(P0, P21) by sign conditions:   ", cones.sigma_direct(P0, P21, H))

# %%
rep = cones.verify_sigma_equivalence(samples=2000, seed=3, wall_radius=4)
print(rep.samples, "points,", rep.checks, "checks,", len(rep.failures), "failures")

# %%
rep = cones.verify_tau_hat_prime_identity(samples=2000, seed=3)
print("tau_hat_prime identity:", "ok" if rep.passed else rep.failures[:3])

# %% [markdown]
# The signed sum over parabolics and restricted Weyl elements is the indicator of
# the hexagon spanned by the orbit of T.  A coarse ASCII picture in the sum-zero
# plane, with coordinates (a, b, -a-b):

# %%
T = AVector(3, 1, -4)
rows = []
for b in np.arange(4.5, -4.6, -0.5):
    line = ""
    for a in np.arange(-4.5, 4.6, 0.25):
        H = AVector(*(int(round(4 * x)) for x in (a, b, -a - b)))
        line += "#" if cones.truncation_sum(H, T * 4) else "."
    rows.append(line)
print("\n".join(rows))
print("orbit of T:", [tuple(int(c) for c in s(T)) for s in weyl_group()])
