"""Exact q-Frobenius computations for Reflection Equation algebras.

Modules: qscalar (Q(q) scalars), exactla (exact matrices), hecke (Hecke
algebras and characters), hsym (Hecke symmetries), realg (RE algebras),
spectral (eigenvalue parametrizations), verify (check orchestration) and
cli (command line).
"""

__version__ = "0.1.0"
