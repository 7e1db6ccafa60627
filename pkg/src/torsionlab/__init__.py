"""Exact Alexander invariants, torsion, and L-function predictions.

Everything numeric in this package is exact until the final embedding step:
scalars live in cyclotomic fields, polynomials and rational functions in t
keep exact coefficients, and floating point appears only when a result is
rendered at a requested precision.
"""

__version__ = "0.1.0"
