"""Exact computations with twisted Borcherds products and Heegner divisors."""

from .algebra import QSeries, QuadNum, format_number, kronecker
from .errors import (CongruenceError, IncompatibleFieldError, MissingDataError,
                     PreconditionError, VerificationError)

__version__ = "0.1.0"

__all__ = [
    "QSeries", "QuadNum", "format_number", "kronecker",
    "CongruenceError", "IncompatibleFieldError", "MissingDataError",
    "PreconditionError", "VerificationError",
]
