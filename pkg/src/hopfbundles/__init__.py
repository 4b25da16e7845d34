"""Exact computational algebra for flat commutative Hopf algebroids.

Finite-dimensional algebras over Q or F_p, Hopf algebroids and their
comodules, principal (bi)bundles with translation data, cotensor
composition, weak-equivalence tests and Morita witnesses, all verified
by exact linear algebra.
"""

__version__ = "0.1.0"
