"""Explicit monodromy certificates for finite groups.

Every finite group is the monodromy group of a branched cover of Riemann
surfaces.  This package builds the cover algebraically, either from a free
subgroup of Gamma(2) or from the triangle group Delta(2, n, n-1), and emits
a certificate that can be re-checked from scratch.
"""

__version__ = "0.1.0"
