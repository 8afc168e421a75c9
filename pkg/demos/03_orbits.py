# %% [markdown]
# # Sorting rational matrices into orbits
#
# Two elements of GL(3, Q) lie in the same orbit when their semisimple Jordan
# parts are conjugate.  Over Q that is decided by the characteristic polynomial,
# and the orbit type by how it factors.

# %%
from collections import Counter

import numpy as np

from gl3trace import orbits as O
from gl3trace.orbits import RationalMatrix3 as M
from gl3trace.suite import orbit_corpus

# %%
examples = {
    "companion of x^3 - 2": M.companion((0, 0, -2)),
    "rotation beside 2": M.from_rows([[0, -1, 0], [1, 0, 0], [0, 0, 2]]),
    "diag(1, 2, 3)": M.diag(1, 2, 3),
    "Jordan block beside 2": M.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 2]]),
    "3 n(1, 0, 1)": M.unipotent(1, 0, 1, 3),
}
for name, g in examples.items():
    c = O.classify(g)
    print(f"{name:24s} {c.kind.value:13s} subtype={c.unipotent_subtype.value:4s} ramified={c.ramified}")

# %% [markdown]
# Jordan decomposition runs the Newton iteration on the squarefree part of the
# characteristic polynomial, all in exact fractions.

# %%
g = M.from_rows([[2, 1, 5], [0, 2, -1], [0, 0, 3]])
u = O.random_unimodular(np.random.default_rng(0))
h = u @ g @ u.inverse()
jp = O.jordan_decompose(h)
print("g =", h.to_strings())
print("s =", jp.semisimple.to_strings())
print("u =", jp.unipotent.to_strings())
print(jp.check(h))

# %%
corpus = orbit_corpus(0)
print(Counter(O.classify(g).kind.value for g, *_ in corpus))
print(O.conjugacy_probe(M.diag(1, 2, 3), M.diag(3, 1, 2)),
      O.conjugacy_probe(M.companion((0, 0, -2)), M.companion((0, 0, -3))))
