# %% [markdown]
# # Weighted orbital integrals of a Gaussian
#
# Unipotent orbital integrals with logarithmic weights, for the Gaussian
# f(X) = exp(-|X - I|^2 / 2).  The log singularities are absorbed by the
# substitution v = e^-t on the inner axes, and every weight is assembled from
# a small vector of log-moments so the T-dependence is exact.

# %%
import math

import numpy as np

from gl3trace import quadrature as Q

f = Q.TestFunction.scalar(1.0, 1.0)
spec = Q.QuadratureSpec(abs_tol=1e-7, rel_tol=1e-9)

# %%
for name, run in [("j_m0", lambda: Q.j_m0(f, spec)),
                  ("j_m21", lambda: Q.j_m21(f, spec)),
                  ("j_g Min", lambda: Q.j_g_unipotent(1.0, "Min", f, spec)),
                  ("j_g Reg", lambda: Q.j_g_unipotent(1.0, "Reg", f, spec))]:
    r = run()
    print(f"{name:8s} {r.value: .12f}  (change under refinement {r.error_estimate:.1e})")
print("closed forms: 2 pi =", 2 * math.pi, " (2 pi)^(3/2) =", (2 * math.pi) ** 1.5)

# %% [markdown]
# j_m0_T is a quadratic polynomial in T = (T1, T2).  Its quadratic part is
# (-3/2 T1^2 - 3/2 T2^2 + 6 T1 T2) times the integral of f.

# %%
loose = Q.QuadratureSpec(abs_tol=1e-6, rel_tol=1e-6)
pts = [(a, b) for a in (-1.0, 0.0, 1.5) for b in (-0.5, 0.0, 2.0)]
vals = [Q.j_m0_T(1.0, f, loose, Q.WeightParams(a, b)).value for a, b in pts]
A = np.array([[1, a, b, a * a, b * b, a * b] for a, b in pts])
coef, *_ = np.linalg.lstsq(A, np.array(vals), rcond=None)
vol = Q.plain_integral(1.0, f, "n0_log", loose).value
print("fitted quadratic part / integral of f:", np.round(coef[3:] / vol, 9))
