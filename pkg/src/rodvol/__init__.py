"""Exact toolkit for rod complements in the 3-torus.

Classification, nested annular Dehn filling, standard parent manifolds and
hyperbolic-volume bounds.
"""

__version__ = "0.1.0"
