"""graphforms: treat finite simple graphs as geometric and spectral objects.

Whitney complexes, curvature, Dirac/Hodge operators, Morse theory, symmetry,
discrete PDE dynamics, chip-firing divisors, and orbital networks, each paired
with independent brute-force checks at desk scale.
"""

__version__ = "0.1.0"
