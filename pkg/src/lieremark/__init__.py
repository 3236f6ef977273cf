"""Exact symbolic toolkit for Lie remarkable PDE analysis.

Submodules:
  ratexpr   exact rationals, sparse polynomials, rational expressions
  jetspace  jet-space coordinates, multi-indices, dimension formulas
  vfield    vector fields, total derivatives, prolongation, brackets
  algebras  affine/projective symmetry algebras and closure checks
  analysis  residuals, exact distribution ranks, rank-drop loci, verdicts
  catalog   the named equations with parametrizations and expected data
  cli       expression grammar, parser, command-line interface
"""

from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
