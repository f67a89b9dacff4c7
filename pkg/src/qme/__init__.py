"""qme: exact computer algebra for the genus-two quintic generating function.

The engine computes the genus-two Gromov-Witten free energy of the quintic
threefold by three independent routes (closed generator polynomial, stable
graph sum over the twisted theory, and direct degree-one torus localization)
and cross-checks every intermediate identity with exact rational arithmetic.
"""

from .series import QSeries, Rat

__all__ = ["QSeries", "Rat"]
__version__ = "0.1.0"
