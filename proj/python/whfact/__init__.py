"""Canonical Wiener-Hopf factorization of matrix functions on the unit circle."""

from ._whfact import *  # noqa: F401,F403
from ._whfact import __doc__  # noqa: F401
