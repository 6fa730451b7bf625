"""Cross-dimensional inner-product space over vectors of any length.

Two vectors of lengths m and n are compared by replicating each up to the
common length t = lcm(m, n) and averaging the ordinary inner product:

    vinner(x, y) = <repeat(x, t/m), repeat(y, t/n)> / t

This makes a vector and its k-fold entrywise replication equivalent
(distance zero) and gives every space R^n a compatible norm.  Under that
geometry the closest point in R^n to a given x in R^m is a linear map of x,

    project(x, n) = proj_matrix(m, n) @ x,

whose rows are convex averages of source coordinates (each row sums to 1).
``nominal_add`` adds two vectors of any lengths inside a chosen R^r by
projecting both there first.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .algebra import as_vector, _frac_eye, _frac_ones
from .errors import ShapeError

lcm = math.lcm


def vinner(x, y) -> float:
    """Replication-averaged inner product of vectors of any lengths."""
    x = as_vector(x)
    y = as_vector(y)
    m, n = len(x), len(y)
    t = lcm(m, n)
    return float(np.dot(np.repeat(x, t // m), np.repeat(y, t // n))) / t


def vnorm(x) -> float:
    """sqrt(vinner(x, x)); the all-ones vector has norm 1 at every length."""
    return math.sqrt(max(vinner(x, x), 0.0))


def vdist(x, y) -> float:
    """Norm of the replicated difference; zero iff x and y replicate equally."""
    x = as_vector(x)
    y = as_vector(y)
    t = lcm(len(x), len(y))
    return vnorm(np.repeat(x, t // len(x)) - np.repeat(y, t // len(y)))


def proj_matrix(m: int, n: int) -> np.ndarray:
    """n x m matrix of the least-distance map R^m -> R^n.

    proj_matrix(m, n) = (n/t) (I_n kron ones_row(t/n)) (I_m kron ones_col(t/m)),
    t = lcm(m, n).  proj_matrix(n, n) is the identity; target n = 1 yields the
    row of means; source m = 1 replicates the scalar.
    """
    if m < 1 or n < 1:
        raise ShapeError(f"proj_matrix dims must be positive, got ({m}, {n})")
    t = lcm(m, n)
    left = np.kron(np.eye(n), np.ones((1, t // n)))
    right = np.kron(np.eye(m), np.ones((t // m, 1)))
    return (n / t) * (left @ right)


def proj_matrix_exact(m: int, n: int) -> np.ndarray:
    """proj_matrix over Fraction entries; used by zero-tolerance golden tests."""
    t = lcm(m, n)
    left = np.kron(_frac_eye(n), _frac_ones(1, t // n))
    right = np.kron(_frac_eye(m), _frac_ones(t // m, 1))
    return Fraction(n, t) * left.dot(right)


def project(x, n: int) -> np.ndarray:
    """Closest vector in R^n to x under vdist: proj_matrix(len(x), n) @ x."""
    x = as_vector(x)
    if n == len(x):
        return x.copy()
    return proj_matrix(len(x), n) @ x


def nominal_add(x, y, r: int) -> np.ndarray:
    """Add x and y inside R^r: project(x, r) + project(y, r).

    Agrees with projecting the replicated sum: equals
    project(sta(x, y), r) for every pair of lengths.
    """
    return project(x, r) + project(y, r)
