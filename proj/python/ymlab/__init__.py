"""Lattice Yang-Mills minimizer and structure diagnostics."""

from fractions import Fraction

from ._ymlab import *  # noqa: F401,F403
from ._ymlab import sphere_moment as _sphere_moment


def sphere_moment_fraction(alpha, n):
    """Average of prod u_i**alpha_i over the unit sphere in R^n, as a Fraction."""
    return Fraction(_sphere_moment(list(alpha), n))
