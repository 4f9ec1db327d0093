"""Exact invariants of one-parameter polynomial deformations in the plane.

Computes, with no floating point anywhere, the local and at-infinity data
of a complex polynomial f(x, y) and of a constant-degree deformation
P(x, y; s): Milnor numbers, jump invariants at infinity, vanishing
cycles, atypical values, discriminant branch types, and monodromy zeta
functions, all over exact rational and algebraic coefficient fields.
"""

from .fields import QQ, ExtensionField, FractionField

__version__ = "0.1.0"

__all__ = ["QQ", "ExtensionField", "FractionField", "__version__"]
