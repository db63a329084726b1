"""Twisted Borcherds products as exact q-series over Q(sqrt(delta)).

All products are assembled in log space:
``Psi = q^weyl * exp(sum_n c(n) log P_delta(q^n))`` with
``log P_delta(X) = -sgn(delta) sqrt(delta) sum_k (delta/k) X^k / k``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Mapping

from .algebra import QSeries, QuadNum, is_fundamental_discriminant, kronecker
from .errors import CongruenceError, MissingDataError, PreconditionError


@dataclass(frozen=True)
class ExponentData:
    """Exponents ``c_plus[n] = c^+(|delta| n^2 / 4N, r n / 2N)`` of a twisted product."""

    delta: int
    r: int
    N: int
    c_plus: Mapping[int, Fraction] = field(default_factory=dict)
    weyl: Fraction = Fraction(0)

    def __post_init__(self):
        if not is_fundamental_discriminant(self.delta):
            raise PreconditionError(f"{self.delta} is not a fundamental discriminant")
        if (self.delta - self.r * self.r) % (4 * self.N):
            raise CongruenceError(f"delta = {self.delta} is not r^2 mod {4 * self.N}")
        if self.delta != 1 and self.weyl != 0:
            raise PreconditionError("the Weyl vector vanishes for delta != 1")

    def c(self, n: int) -> Fraction:
        try:
            return Fraction(self.c_plus[n])
        except KeyError:
            raise MissingDataError(f"no exponent c^+ supplied for n = {n}") from None


def _root_factor(delta: int) -> QuadNum:
    """``-sgn(delta) * sqrt(delta)``."""
    root = QuadNum.sqrt(delta)
    return -root if delta > 0 else root


def p_delta_log(delta: int, prec: int) -> QSeries:
    """``log P_delta(X)`` to ``O(X^prec)``."""
    if not is_fundamental_discriminant(delta):
        raise PreconditionError(f"{delta} is not a fundamental discriminant")
    factor = _root_factor(delta)
    coeffs = {k: factor * Fraction(kronecker(delta, k), k) for k in range(1, prec)}
    return QSeries(coeffs, prec)


def p_delta_series(delta: int, prec: int) -> QSeries:
    """``P_delta(X) = prod_{b mod delta} (1 - e(b/delta) X)^((delta/b))`` to ``O(X^prec)``."""
    if not is_fundamental_discriminant(delta):
        raise PreconditionError(f"{delta} is not a fundamental discriminant")
    if delta == 1:
        return QSeries({0: 1, 1: -1}, prec)
    return p_delta_log(delta, prec).exp()


def log_product(data: ExponentData, prec: int) -> QSeries:
    """``sum_{n>=1} c(n) log P_delta(q^n)`` to ``O(q^prec)``."""
    logp = p_delta_log(data.delta, prec)
    acc: Dict[int, object] = {}
    for n in range(1, prec):
        c = data.c(n)
        if not c:
            continue
        for k in range(1, (prec - 1) // n + 1):
            term = logp.coefficient(k) * c
            e = n * k
            acc[e] = acc[e] + term if e in acc else term
    return QSeries(acc, prec)


def twisted_product(data: ExponentData, prec: int) -> QSeries:
    """``Psi_{delta,r} = q^weyl prod_n P_delta(q^n)^c(n)`` to ``O(q^(weyl + prec))``."""
    if prec <= 0:
        raise PreconditionError("prec must be positive")
    psi = log_product(data, prec).exp()
    return psi.shift(data.weyl) if data.weyl else psi


def dlog_expansion(data: ExponentData, prec: int) -> QSeries:
    """Coefficients of the logarithmic derivative ``q d/dq log Psi``.

    ``weyl - sgn(delta) sqrt(delta) sum_n (sum_{d | n} (n/d) (delta/d) c(n/d)) q^n``.
    """
    if prec <= 0:
        raise PreconditionError("prec must be positive")
    factor = _root_factor(data.delta)
    coeffs = {0: data.weyl}
    for n in range(1, prec):
        s = Fraction(0)
        for d in range(1, n + 1):
            if n % d == 0:
                chi = kronecker(data.delta, d)
                if chi:
                    s += (n // d) * chi * data.c(n // d)
        coeffs[n] = factor * s
    return QSeries(coeffs, prec)


# --------------------------------------------------------------------------
# Numeric Gauss sum identity


def gauss_sum(delta: int, n: int) -> complex:
    """``sum_{t mod |delta|} (delta/t) e(n t / |delta|)`` in floating point."""
    m = abs(delta)
    terms = [kronecker(delta, t) * cmath.exp(2j * math.pi * n * t / m) for t in range(m)]
    return complex(math.fsum(z.real for z in terms), math.fsum(z.imag for z in terms))


def gauss_sum_closed_form(delta: int, n: int) -> complex:
    """``(delta/n) * eps * sqrt(|delta|)`` with ``eps = 1`` or ``i``."""
    eps = 1 if delta > 0 else 1j
    return kronecker(delta, n) * eps * math.sqrt(abs(delta))
