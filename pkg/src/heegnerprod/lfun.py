"""Hecke eigenvalues of the weight 2 newform attached to an elliptic curve,
and central values and derivatives of its quadratic twists."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np
from scipy.special import exp1

from .algebra import is_fundamental_discriminant, kronecker
from .errors import PreconditionError

Invariants = Tuple[int, int, int, int, int]


def primes_up_to(n: int) -> List[int]:
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    return [int(p) for p in np.nonzero(sieve)[0]]


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % i for i in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class EllipticCurve:
    """``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`` with caller-supplied conductor."""

    a: Invariants
    conductor: int

    def __post_init__(self):
        if len(self.a) != 5:
            raise PreconditionError("need five coefficients a1, a2, a3, a4, a6")
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if self.discriminant == 0:
            raise PreconditionError("singular Weierstrass equation")

    @property
    def b_invariants(self) -> Tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.a
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def c4(self) -> int:
        b2, b4, _, _ = self.b_invariants
        return b2 * b2 - 24 * b4

    @property
    def c6(self) -> int:
        b2, b4, b6, _ = self.b_invariants
        return -b2 ** 3 + 36 * b2 * b4 - 216 * b6

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def change(self, u: int, r: int, s: int, t: int) -> Optional["EllipticCurve"]:
        """Model for ``x = u^2 x' + r``, ``y = u^3 y' + s u^2 x' + t``, or None if not integral."""
        a1, a2, a3, a4, a6 = self.a
        num = (
            (a1 + 2 * s, u),
            (a2 - s * a1 + 3 * r - s * s, u ** 2),
            (a3 + r * a1 + 2 * t, u ** 3),
            (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t, u ** 4),
            (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1, u ** 6),
        )
        if any(x % d for x, d in num):
            return None
        return EllipticCurve(tuple(x // d for x, d in num), self.conductor)

    def minimal_at(self, p: int) -> "EllipticCurve":
        """A model minimal at ``p``, by exhaustive search over ``u = p`` transformations."""
        curve = self
        while curve.discriminant % p ** 12 == 0:
            nxt = None
            for r in range(p * p):
                for s in range(p):
                    for t in range(p ** 3):
                        nxt = curve.change(p, r, s, t)
                        if nxt is not None:
                            break
                    if nxt is not None:
                        break
                if nxt is not None:
                    break
            if nxt is None:
                break
            curve = nxt
        return curve


def _legendre_table(p: int) -> np.ndarray:
    """``chi[v] = (v/p)`` for ``0 <= v < p``."""
    chi = -np.ones(p, dtype=np.int64)
    x = np.arange(p, dtype=np.int64)
    chi[(x * x) % p] = 1
    chi[0] = 0
    return chi


def _count_ap(curve: EllipticCurve, p: int) -> int:
    """``p + 1 - #E(F_p)`` for a model with good reduction at ``p``."""
    a1, a2, a3, a4, a6 = (v % p for v in curve.a)
    if p == 2:
        pts = 1 + sum(1 for x in range(2) for y in range(2)
                      if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % 2 == 0)
        return p + 1 - pts
    b2, b4, b6, _ = (v % p for v in curve.b_invariants)
    # (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    x = np.arange(p, dtype=np.int64)
    g = (((4 * x + b2) % p * x + 2 * b4) % p * x + b6) % p
    return -int(_legendre_table(p)[g].sum())


def brute_force_ap(curve: EllipticCurve, p: int) -> int:
    """Double loop over ``F_p^2``; independent of the completed-square count."""
    a1, a2, a3, a4, a6 = curve.a
    pts = 1
    for x in range(p):
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % p == 0:
                pts += 1
    return p + 1 - pts


def _split_multiplicative(curve: EllipticCurve, p: int) -> bool:
    """Whether the tangent slopes at the node are rational over ``F_p`` (odd ``p``)."""
    b2, b4, b6, _ = curve.b_invariants
    # Y^2 = g(X) has a double root x0 and near it g ~ (12 x0 + b2)(X - x0)^2.
    for x0 in range(p):
        g = (4 * x0 ** 3 + b2 * x0 * x0 + 2 * b4 * x0 + b6) % p
        dg = (12 * x0 * x0 + 2 * b2 * x0 + 2 * b4) % p
        if g == 0 and dg == 0:
            return kronecker((12 * x0 + b2) % p, p) == 1
    raise PreconditionError(f"no node found modulo {p}")


def curve_ap(E: EllipticCurve, p: int) -> int:
    """Trace of Frobenius at good ``p``; ``+-1`` at multiplicative and 0 at additive primes."""
    if not _is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    N = E.conductor
    if N % p:
        curve = E if E.discriminant % p else E.minimal_at(p)
        if curve.discriminant % p == 0:
            raise PreconditionError(f"model has bad reduction at {p}, which does not divide the conductor")
        return _count_ap(curve, p)
    if N % (p * p) == 0:
        return 0
    curve = E.minimal_at(p)
    if p == 2:
        # #E_ns(F_p) = p - a_p, counting the point at infinity
        return p - 1 - _affine_smooth_points(curve, p)
    return 1 if _split_multiplicative(curve, p) else -1


def _affine_smooth_points(curve: EllipticCurve, p: int) -> int:
    a1, a2, a3, a4, a6 = curve.a
    count = 0
    for x in range(p):
        for y in range(p):
            f = y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6
            fx = a1 * y - 3 * x * x - 2 * a2 * x - a4
            fy = 2 * y + a1 * x + a3
            if f % p == 0 and (fx % p or fy % p):
                count += 1
    return count


@dataclass(frozen=True)
class NewformCoeffs:
    """``a_1 .. a_M`` (stored with a dummy ``a[0] = 0``) and the root number."""

    level: int
    a: Tuple[int, ...]
    sign: int

    @property
    def M(self) -> int:
        return len(self.a) - 1

    def __getitem__(self, n: int) -> int:
        return self.a[n]


def root_number(E: EllipticCurve) -> int:
    """``-prod w_p`` with ``w_p = -a_p`` at multiplicative primes; needs a squarefree conductor."""
    N = E.conductor
    sign = -1
    for p in primes_up_to(N):
        if N % p == 0:
            if N % (p * p) == 0:
                raise PreconditionError("root number of additive reduction is not implemented")
            sign *= -curve_ap(E, p)
    return sign


def newform_an(E: EllipticCurve, M: int, sign: Optional[int] = None) -> NewformCoeffs:
    """Fill ``a_n`` for ``n <= M`` from ``a_p`` by multiplicativity and the Hecke recursion."""
    if M < 1:
        raise PreconditionError("M must be positive")
    N = E.conductor
    a = [0] * (M + 1)
    a[1] = 1
    spf = list(range(M + 1))
    for p in primes_up_to(math.isqrt(M)):
        for m in range(p * p, M + 1, p):
            if spf[m] == m:
                spf[m] = p
    for p in primes_up_to(M):
        ap = curve_ap(E, p)
        prev, cur = 1, ap
        q = p
        while q <= M:
            a[q] = cur
            nxt = ap * cur - (p * prev if N % p else 0)
            prev, cur = cur, nxt
            q *= p
    for n in range(2, M + 1):
        p = spf[n]
        q, m = p, n // p
        while m % p == 0:
            q *= p
            m //= p
        if m > 1:
            a[n] = a[q] * a[m]
    if sign is None:
        sign = root_number(E)
    return NewformCoeffs(N, tuple(a), sign)


def twist_sign(epsilon: int, N: int, d: int) -> int:
    """Root number ``epsilon * chi_d(-N)`` of the twist by a fundamental discriminant coprime to ``N``."""
    if epsilon not in (1, -1):
        raise PreconditionError("epsilon must be +1 or -1")
    if math.gcd(d, N) != 1:
        raise PreconditionError(f"twist {d} is not coprime to the level {N}")
    return epsilon * kronecker(d, -N)


# --------------------------------------------------------------------------
# exponential integral, used only as an oracle for scipy's exp1

EULER_GAMMA = 0.57721566490153286061


def e1_series(x: float) -> float:
    """``-gamma - ln x - sum (-x)^k / (k k!)``."""
    total, term, k = 0.0, 1.0, 1
    terms = []
    while True:
        term *= -x / k
        t = term / k
        terms.append(t)
        if abs(t) < 1e-18:
            break
        k += 1
    total = math.fsum(terms)
    return -EULER_GAMMA - math.log(x) - total


def e1_continued_fraction(x: float, depth: int = 200) -> float:
    """``e^-x / (x + 1/(1 + 1/(x + 2/(1 + 2/(x + ...)))))`` evaluated bottom up."""
    tail = 0.0
    for k in range(depth, 0, -1):
        tail = k / (1 + k / (x + tail))
    return math.exp(-x) / (x + tail)


def e1_reference(x: float) -> float:
    return e1_series(x) if x <= 1 else e1_continued_fraction(x)


# --------------------------------------------------------------------------


def _scale(G: NewformCoeffs, d: int) -> float:
    return abs(d) * math.sqrt(G.level) / (2 * math.pi)


def truncation_point(G: NewformCoeffs, d: int, tol: float) -> int:
    """Smallest ``n_max`` with ``4 e^(-(n_max+1)/A) / (1 - e^(-1/A)) < tol/2``.

    Uses ``|a_n| / n <= d(n) / sqrt(n) <= 2`` and ``E1(x) <= e^-x`` for ``x >= 1``.
    """
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    A = _scale(G, d)
    denom = -math.expm1(-1 / A)
    n = math.ceil(A * math.log(8 / (tol * denom)))
    return max(n, math.ceil(A) + 1)


def _twisted_terms(G: NewformCoeffs, d: int, tol: float) -> Tuple[np.ndarray, np.ndarray, float]:
    if not is_fundamental_discriminant(d):
        raise PreconditionError(f"{d} is not a fundamental discriminant")
    n_max = truncation_point(G, d, tol)
    if n_max > G.M:
        raise PreconditionError(f"need a_n up to {n_max}, only {G.M} supplied")
    n = np.arange(1, n_max + 1)
    coeff = np.array([G[k] * kronecker(d, k) for k in range(1, n_max + 1)], dtype=float) / n
    return n, coeff, _scale(G, d)


def l_central(G: NewformCoeffs, d: int, tol: float = 1e-10) -> float:
    """``L(G, chi_d, 1) = 2 sum a_n chi_d(n)/n e^(-n/A)`` for an even twist."""
    if twist_sign(G.sign, G.level, d) != 1:
        raise PreconditionError("the twist has odd functional equation; use l_derivative")
    n, coeff, A = _twisted_terms(G, d, tol)
    return 2 * math.fsum(coeff * np.exp(-n / A))


def l_derivative(G: NewformCoeffs, d: int, tol: float = 1e-10) -> float:
    """``L'(G, chi_d, 1) = 2 sum a_n chi_d(n)/n E1(n/A)`` for an odd twist."""
    if twist_sign(G.sign, G.level, d) != -1:
        raise PreconditionError("the twist has even functional equation; use l_central")
    n, coeff, A = _twisted_terms(G, d, tol)
    return 2 * math.fsum(coeff * exp1(n / A))


def required_coefficients(level: int, d: int, tol: float) -> int:
    """How many ``a_n`` ``l_central``/``l_derivative`` will ask for."""
    return truncation_point(NewformCoeffs(level, (0, 1), 1), d, tol)


GROSS_CURVE = EllipticCurve((0, 10, 0, -20, 8), 37)
