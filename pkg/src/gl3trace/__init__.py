"""Computable pieces of the geometric side of the GL(3) trace formula.

Modules: ``roots`` (root data, parabolics, Weyl group), ``cones`` (cone
indicators and their identities), ``weights`` (convex hull weights),
``orbits`` (exact orbit classification), ``quadrature`` (weighted orbital
integrals), ``zeta`` (partial zeta data and coefficients), ``suite`` and
``cli``.
"""

__version__ = "0.1.0"
