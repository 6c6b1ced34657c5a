"""Independent reference computations used to freeze expected values.

Exact rational arithmetic; no code shared with the package.
"""

from fractions import Fraction


def bspline_exact(i, j, t):
    """B_{i,j}(t) on knots t_k = k by the recursion, in exact arithmetic."""
    t = Fraction(t)
    if j == 1:
        return Fraction(1) if i <= t < i + 1 else Fraction(0)
    return ((t - i) * bspline_exact(i, j - 1, t) + (i + j - t) * bspline_exact(i + 1, j - 1, t)) / (
        j - 1
    )


def bspline_derivative_exact(i, j, t, order):
    """Derivative via B'_{i,j} = B_{i,j-1} - B_{i+1,j-1} (unit knot spacing)."""
    if order == 0:
        return bspline_exact(i, j, t)
    return bspline_derivative_exact(i, j - 1, t, order - 1) - bspline_derivative_exact(
        i + 1, j - 1, t, order - 1
    )


def cubic_bump(x):
    """Five-piece cubic weight, written out piece by piece."""
    x = Fraction(x)
    if x < -2:
        return Fraction(0)
    if x < -1:
        return Fraction(1, 6) * (x + 2) ** 3
    if x < 0:
        return -Fraction(1, 2) * x**3 - x**2 + Fraction(2, 3)
    if x < 1:
        return Fraction(1, 2) * x**3 - x**2 + Fraction(2, 3)
    if x < 2:
        return -Fraction(1, 6) * (x - 2) ** 3
    return Fraction(0)
