# %% [markdown]
# # The M_0 weight as a polygon area
#
# For x in GL(3, R) and T deep in the positive chamber, the six points
# Y_s = s^-1 (T - H_0(w_s x)) span a hexagon in the sum-zero plane.  Its area
# is the weight.  We compute it twice: by the shoelace formula on the convex
# hull, and as the limit lambda -> 0 of a sum of exponentials over chambers,
# extrapolated with Richardson.

# %%
import math

import numpy as np

from gl3trace import weights as W

# %%
hexagon = W.HullSpec.orbit((1, 0, -1))
print("direct:", W.hull_volume_direct(hexagon))
print("limit: ", W.hull_volume_limit(hexagon))
print("3 sqrt 3 =", 3 * math.sqrt(3))

# %% [markdown]
# Individual chamber sums at finite lambda = h * direction; the pole parts
# cancel and the sequence settles quadratically onto the area.

# %%
for h in (0.2, 0.1, 0.05, 0.025):
    print(f"h={h:<6} chamber sum = {float(W.chamber_sum(hexagon, W.DEFAULT_DIRECTION, h)):.12f}")

# %%
rng = np.random.default_rng(1)
x = np.eye(3) + 0.3 * rng.standard_normal((3, 3))
spec = W.HullSpec.from_group_element(x, (3.0, 0.5, -3.5))
d, l = W.hull_volume_direct(spec), W.hull_volume_limit(spec)
print(f"random x: direct {d:.12f}  limit {l:.12f}  diff {abs(d - l):.1e}")

# %% [markdown]
# The M_21 weight is an interval length, and the unipotent M_0 weight is a
# quadratic form in logs of row norms.

# %%
print("interval length at T=(1,0,-1):", W.interval_weight_m21((0, 0, 0), (0, 0, 0), (1, 0, -1)))
for n in [(0, 0, 0), (1, 1, 1), (2, -1, 0.5)]:
    print("c_m0 weight at n =", n, "->", round(W.c_m0_weight(n), 9))
