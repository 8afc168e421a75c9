# %% [markdown]
# # Zeta data behind the unipotent coefficients
#
# Euler-Maclaurin on truncated power series gives zeta and its derivatives in
# one pass; at s = 1 the pole is split off exactly, which yields the Laurent
# constants.  Removing Euler factors at a finite set of primes is exact algebra.

# %%
import math

import mpmath

from gl3trace import zeta as Z

# %%
print("zeta(2)      ", Z.zeta_partial(2), math.pi ** 2 / 6)
print("zeta'(2)     ", Z.zeta_partial_derivative(2))
print("zeta^{2}(2)  ", Z.zeta_partial(2, "2"), math.pi ** 2 / 8)
print("Stieltjes    ", Z.stieltjes_constants(3))

# %%
for S in ("", "2", "2,3,5"):
    a, b = Z.laurent_at_one(S), Z.laurent_finite_difference(S)
    print(f"S={a.S.label():12s} c0={a.c0:.12f} c1={a.c1:.12f}  finite-difference c1={b.c1:.12f}")
print("Euler gamma", float(mpmath.euler))

# %% [markdown]
# The p-adic integral of log max(|n13|, |n23|) against its enumeration over
# residue classes mod p^k.

# %%
for p in (2, 3, 5, 7):
    li = Z.local_log_norm_integral(p)
    print(p, li.expression, li.value, Z.local_integral_enumeration(p, 10))

# %%
c = Z.assemble_coefficients()
for k in ("a_M21_min", "a_G_min", "a_G_reg"):
    print(k, getattr(c, k))
print("slope of a_G_reg in C:", c.config_echo["a_G_reg_slope_in_C"])
