"""jetmove: exact automorphism synthesis for jets on the real torus and
sphere, plus classification of the singular surfaces obtained by weighted
blow-ups at such jets.

Everything is computed over towers of real quadratic extensions of Q, so
all equalities, signs and certificates are exact.
"""

__version__ = "0.1.0"
