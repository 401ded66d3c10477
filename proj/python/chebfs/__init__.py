"""Chebyshev potentials of Fubini-Study metrics on projective space."""

from ._chebfs import *  # noqa: F401,F403
