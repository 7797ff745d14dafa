"""Low-lying zero statistics for one-parameter families of elliptic curves.

Exact moment sums of Frobenius traces, Tate-algorithm conductors,
square-free sieving of discriminant values, explicit-formula density
estimators, and random-matrix symmetry-group predictions.
"""

__version__ = "0.1.0"
