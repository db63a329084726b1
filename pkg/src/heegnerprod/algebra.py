"""Exact arithmetic: quadratic-field numbers, Kronecker symbols, truncated q-series.

Coefficients of a :class:`QSeries` may be ``int``, :class:`fractions.Fraction`
or :class:`QuadNum`; rational values are kept as plain rationals so the long
rational expansions used for modular forms stay fast.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, Optional, Tuple, Union

from .errors import IncompatibleFieldError, PreconditionError

Rational = Fraction
Number = Union[int, Fraction, "QuadNum"]


def _squarefree_split(n: int) -> Tuple[int, int]:
    """Write ``n = f^2 * s`` with ``s`` squarefree; return ``(f, s)``."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    m = abs(n)
    f, s = 1, 1
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        f *= p ** (e // 2)
        if e % 2:
            s *= p
        p += 1 if p == 2 else 2
    s *= m
    return f, sign * s


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


class QuadNum:
    """The number ``a + b*sqrt(D)`` with rational ``a, b``.

    ``D`` is stored squarefree; for ``D < 0`` the square root is ``i*sqrt(|D|)``.
    Values with ``b == 0`` are rational and combine with any field.
    """

    __slots__ = ("D", "a", "b")

    def __init__(self, a=0, b=0, D: int = 1):
        a = _as_fraction(a)
        b = _as_fraction(b)
        if D == 0:
            raise PreconditionError("D must be nonzero")
        f, s = _squarefree_split(D)
        b *= f
        if s == 1:
            a, b = a + b, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "D", s)

    def __setattr__(self, name, value):
        raise AttributeError("QuadNum is immutable")

    @classmethod
    def sqrt(cls, n: int) -> "QuadNum":
        """Exact square root of an integer (principal branch for ``n < 0``)."""
        if n == 0:
            return cls(0)
        f, s = _squarefree_split(n)
        if s == 1:
            return cls(f)
        return cls(0, f, s)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _field(self, other: "QuadNum") -> int:
        if self.b == 0:
            return other.D
        if other.b == 0 or other.D == self.D:
            return self.D
        raise IncompatibleFieldError(
            f"cannot combine elements of Q(sqrt({self.D})) and Q(sqrt({other.D}))"
        )

    def _coerce(self, x) -> "QuadNum":
        if isinstance(x, QuadNum):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadNum(x, 0, self.D)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadNum(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadNum(-self.a, -self.b, self.D)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadNum(self.a - o.a, self.b - o.b, self._field(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadNum(self.a * other, self.b * other, self.D)
        if not isinstance(other, QuadNum):
            return NotImplemented
        D = self._field(other)
        a = self.a * other.a + D * self.b * other.b
        b = self.a * other.b + self.b * other.a
        return QuadNum(a, b, D)

    __rmul__ = __mul__

    def conj(self) -> "QuadNum":
        return QuadNum(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def inverse(self) -> "QuadNum":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadNum division by zero")
        return QuadNum(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("QuadNum division by zero")
            return QuadNum(self.a / other, self.b / other, self.D)
        if not isinstance(other, QuadNum):
            return NotImplemented
        self._field(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadNum(1, 0, self.D)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, QuadNum):
            return NotImplemented
        if self.b == 0 and other.b == 0:
            return self.a == other.a
        return self.a == other.a and self.b == other.b and self.D == other.D

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __complex__(self):
        if self.b == 0:
            return complex(float(self.a))
        root = math.sqrt(abs(self.D))
        if self.D < 0:
            return complex(float(self.a), float(self.b) * root)
        return complex(float(self.a) + float(self.b) * root)

    def __repr__(self):
        return f"QuadNum({self.a}, {self.b}, D={self.D})"

    def __str__(self):
        return format_number(self)


def format_number(c: Number) -> str:
    """Render an exact coefficient as ``a``, ``b*sqrt(D)`` or ``a + b*sqrt(D)``."""
    if isinstance(c, QuadNum):
        if c.b == 0:
            return str(c.a)
        tail = f"sqrt({c.D})" if abs(c.b) == 1 else f"{abs(c.b)}*sqrt({c.D})"
        if c.a == 0:
            return ("-" if c.b < 0 else "") + tail
        return f"{c.a} {'-' if c.b < 0 else '+'} {tail}"
    return str(Fraction(c))


def _rational_part(c):
    if isinstance(c, QuadNum) and c.b == 0:
        a = c.a
        return a.numerator if a.denominator == 1 else a
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _divide(x: Number, y: Number) -> Number:
    if isinstance(x, int) and isinstance(y, int):
        return Fraction(x, y)
    return x / y


def conj(c: Number) -> Number:
    return c.conj() if isinstance(c, QuadNum) else c


# --------------------------------------------------------------------------
# Kronecker symbol


def jacobi(m: int, n: int) -> int:
    """Jacobi symbol ``(m/n)`` for odd positive ``n``."""
    if n <= 0 or n % 2 == 0:
        raise PreconditionError("jacobi requires odd positive n")
    m %= n
    result = 1
    while m:
        while m % 2 == 0:
            m //= 2
            if n % 8 in (3, 5):
                result = -result
        m, n = n, m
        if m % 4 == 3 and n % 4 == 3:
            result = -result
        m %= n
    return result if n == 1 else 0


def kronecker(m: int, n: int) -> int:
    """Extended Kronecker symbol ``(m/n)``.

    ``(m/0)`` is 1 for ``m = 1`` and 0 otherwise; ``(m/-1)`` is the sign of ``m``.
    """
    if n == 0:
        return 1 if m == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if m < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if m % 2 == 0:
            return 0
        if v % 2 and m % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * jacobi(m, n)


def is_fundamental_discriminant(d: int) -> bool:
    if d == 1:
        return True
    if d == 0:
        return False
    if d % 4 == 1:
        return _squarefree_split(d)[0] == 1
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree_split(m)[0] == 1
    return False


# --------------------------------------------------------------------------
# Truncated Laurent series in q^(1/den)


class QSeries:
    """Truncated Laurent series ``sum c_e q^(e/den) + O(q^(prec/den))``.

    Exponents and the precision bound are stored as integers scaled by ``den``.
    Terms at or beyond the precision bound are never stored.
    """

    __slots__ = ("den", "prec", "_coeffs")

    def __init__(self, coeffs: Dict[int, Number], prec: int, den: int = 1):
        if den <= 0:
            raise PreconditionError("den must be positive")
        clean = {}
        for e, c in coeffs.items():
            if e < prec and c != 0:
                clean[e] = _rational_part(c)
        g = math.gcd(den, prec)
        for e in clean:
            if g == 1:
                break
            g = math.gcd(g, e)
        if g > 1:
            clean = {e // g: c for e, c in clean.items()}
            den //= g
            prec //= g
        self.den = den
        self.prec = prec
        self._coeffs = dict(sorted(clean.items()))

    # -- construction ------------------------------------------------------

    @classmethod
    def from_list(cls, coeffs: Iterable[Number], prec: Optional[int] = None,
                  start: int = 0, den: int = 1) -> "QSeries":
        """Dense constructor: ``coeffs[i]`` sits at scaled exponent ``start + i``."""
        coeffs = list(coeffs)
        if prec is None:
            prec = start + len(coeffs)
        return cls({start + i: c for i, c in enumerate(coeffs)}, prec, den)

    @classmethod
    def monomial(cls, exponent, coeff: Number = 1, prec=None) -> "QSeries":
        exponent = Fraction(exponent)
        prec = Fraction(prec) if prec is not None else exponent + 1
        den = math.lcm(exponent.denominator, prec.denominator)
        return cls({int(exponent * den): coeff}, int(prec * den), den)

    @classmethod
    def constant(cls, c: Number, prec) -> "QSeries":
        return cls.monomial(0, c, prec)

    # -- access ------------------------------------------------------------

    @property
    def precision(self) -> Fraction:
        return Fraction(self.prec, self.den)

    @property
    def valuation(self) -> Optional[Fraction]:
        """Smallest exponent with a nonzero coefficient (None for O(q^prec))."""
        if not self._coeffs:
            return None
        return Fraction(next(iter(self._coeffs)), self.den)

    @property
    def min_exp(self) -> int:
        """Scaled leading exponent; ``prec`` when no term is known."""
        return next(iter(self._coeffs), self.prec)

    def coefficient(self, exponent) -> Number:
        exponent = Fraction(exponent)
        if exponent >= self.precision:
            raise PreconditionError(f"coefficient at q^{exponent} is beyond precision {self.precision}")
        scaled = exponent * self.den
        if scaled.denominator != 1:
            return 0
        return self._coeffs.get(int(scaled), 0)

    __getitem__ = coefficient

    def items(self) -> Iterator[Tuple[Fraction, Number]]:
        for e, c in self._coeffs.items():
            yield Fraction(e, self.den), c

    def scaled_items(self) -> Iterator[Tuple[int, Number]]:
        return iter(self._coeffs.items())

    def __len__(self):
        return len(self._coeffs)

    def is_rational(self) -> bool:
        return all(not isinstance(c, QuadNum) or c.b == 0 for c in self._coeffs.values())

    # -- alignment ---------------------------------------------------------

    def _scaled_to(self, den: int) -> Tuple[Dict[int, Number], int]:
        k = den // self.den
        if k == 1:
            return self._coeffs, self.prec
        return {e * k: c for e, c in self._coeffs.items()}, self.prec * k

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, QuadNum)):
            other = QSeries({0: other}, self.prec, self.den)
        if not isinstance(other, QSeries):
            return NotImplemented
        den = math.lcm(self.den, other.den)
        a, pa = self._scaled_to(den)
        b, pb = other._scaled_to(den)
        out = dict(a)
        for e, c in b.items():
            out[e] = out[e] + c if e in out else c
        return QSeries(out, min(pa, pb), den)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({e: -c for e, c in self._coeffs.items()}, self.prec, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, QuadNum, QSeries)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadNum)):
            if other == 0:
                return QSeries({}, self.prec, self.den)
            return QSeries({e: c * other for e, c in self._coeffs.items()}, self.prec, self.den)
        if not isinstance(other, QSeries):
            return NotImplemented
        den = math.lcm(self.den, other.den)
        a, pa = self._scaled_to(den)
        b, pb = other._scaled_to(den)
        va = next(iter(a), pa)
        vb = next(iter(b), pb)
        prec = min(pa + vb, pb + va)
        out: Dict[int, Number] = {}
        bitems = list(b.items())
        for e1, c1 in a.items():
            lim = prec - e1
            for e2, c2 in bitems:
                if e2 >= lim:
                    break
                e = e1 + e2
                if e in out:
                    out[e] = out[e] + c1 * c2
                else:
                    out[e] = c1 * c2
        return QSeries(out, prec, den)

    __rmul__ = __mul__

    def _dense_unit(self) -> Tuple[int, Number, list]:
        """Split ``self = c * q^v * u`` with ``u = 1 + ...``; return ``(v, c, u)`` dense."""
        if not self._coeffs:
            raise PreconditionError("series has no known nonzero coefficient")
        v = self.min_exp
        lead = self._coeffs[v]
        n = self.prec - v
        u = [0] * n
        for e, c in self._coeffs.items():
            u[e - v] = c if lead == 1 else _divide(c, lead)
        return v, lead, u

    def inverse(self) -> "QSeries":
        """Multiplicative inverse; the leading coefficient must be nonzero."""
        v, lead, u = self._dense_unit()
        n = len(u)
        g = [0] * n
        g[0] = 1
        nz = [(k, u[k]) for k in range(1, n) if u[k] != 0]
        for e in range(1, n):
            acc = 0
            for k, uk in nz:
                if k > e:
                    break
                if g[e - k] != 0:
                    acc = acc + uk * g[e - k]
            g[e] = -acc
        inv_lead = _divide(1, lead)
        return QSeries({-v + i: c * inv_lead for i, c in enumerate(g)}, -v + n, self.den)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, QuadNum)):
            if other == 0:
                raise ZeroDivisionError("series division by zero")
            return self * _divide(1, other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        if result is None:
            return QSeries.constant(1, self.precision - (self.valuation or 0))
        return result

    def exp(self) -> "QSeries":
        """``exp(f)`` for ``f`` with strictly positive valuation."""
        if self._coeffs and self.min_exp <= 0:
            raise PreconditionError("exp needs a series with positive valuation")
        n = self.prec
        if n <= 0:
            raise PreconditionError("exp needs positive precision")
        kf = [(k, k * c) for k, c in self._coeffs.items()]
        g = [0] * n
        g[0] = 1
        for e in range(1, n):
            acc = 0
            for k, c in kf:
                if k > e:
                    break
                if g[e - k] != 0:
                    acc = acc + c * g[e - k]
            g[e] = acc / e if not isinstance(acc, int) else Fraction(acc, e)
        return QSeries(dict(enumerate(g)), n, self.den)

    def log(self) -> "QSeries":
        """``log(u)`` for ``u = 1 + (positive-exponent terms)``."""
        if self.prec <= 0 or self._coeffs.get(0, 0) != 1 or self.min_exp < 0:
            raise PreconditionError("log needs a series of the form 1 + O(q^(>0))")
        n = self.prec
        u = [0] * n
        for e, c in self._coeffs.items():
            u[e] = c
        unz = [(k, u[k]) for k in range(1, n) if u[k] != 0]
        f = [0] * n
        for e in range(1, n):
            acc = 0
            for k, uk in unz:
                if k >= e:
                    break
                if f[e - k] != 0:
                    acc = acc + (e - k) * f[e - k] * uk
            f[e] = u[e] - (acc / e if not isinstance(acc, int) else Fraction(acc, e))
        return QSeries(dict(enumerate(f)), n, self.den)

    def rescale(self, m: int) -> "QSeries":
        """Substitute ``q -> q^m``."""
        if m <= 0:
            raise PreconditionError("rescale factor must be positive")
        return QSeries({e * m: c for e, c in self._coeffs.items()}, self.prec * m, self.den)

    def shift(self, exponent) -> "QSeries":
        """Multiply by ``q^exponent`` exactly."""
        exponent = Fraction(exponent)
        den = math.lcm(self.den, exponent.denominator)
        a, p = self._scaled_to(den)
        s = int(exponent * den)
        return QSeries({e + s: c for e, c in a.items()}, p + s, den)

    def qderiv(self) -> "QSeries":
        """``q d/dq``."""
        return QSeries({e: c * Fraction(e, self.den) for e, c in self._coeffs.items()},
                       self.prec, self.den)

    def truncate(self, prec) -> "QSeries":
        prec = Fraction(prec)
        if prec > self.precision:
            raise PreconditionError("cannot raise precision by truncation")
        den = math.lcm(self.den, prec.denominator)
        a, _ = self._scaled_to(den)
        return QSeries(a, int(prec * den), den)

    def map_coeffs(self, fn: Callable[[Number], Number]) -> "QSeries":
        return QSeries({e: fn(c) for e, c in self._coeffs.items()}, self.prec, self.den)

    def conj(self) -> "QSeries":
        return self.map_coeffs(conj)

    # -- comparison --------------------------------------------------------

    def first_difference(self, other: "QSeries") -> Optional[Fraction]:
        """Smallest exponent below the shared precision where the series differ."""
        den = math.lcm(self.den, other.den)
        a, pa = self._scaled_to(den)
        b, pb = other._scaled_to(den)
        p = min(pa, pb)
        for e in sorted(set(a) | set(b)):
            if e >= p:
                break
            if a.get(e, 0) != b.get(e, 0):
                return Fraction(e, den)
        return None

    def agrees(self, other: "QSeries") -> bool:
        return self.first_difference(other) is None

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.den == other.den and self.prec == other.prec
                and self._coeffs == other._coeffs)

    def __hash__(self):
        return hash((self.den, self.prec, tuple(self._coeffs.items())))

    def __repr__(self):
        terms = [f"({format_number(c)})*q^{e}" for e, c in list(self.items())[:8]]
        more = " + ..." if len(self._coeffs) > 8 else ""
        return " + ".join(terms) + more + f" + O(q^{self.precision})"
