"""Generalized class polynomials on the modular curve X0+(119).

Computes classical and generalized class polynomials, measures their
height reduction against the Hilbert class polynomial, and applies them
in the CM method to construct elliptic curves over prime fields with a
prescribed Frobenius trace.
"""

__version__ = "0.1.0"
