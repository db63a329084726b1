"""Vector-valued coefficient tables on Z/2NZ, Hecke operators T(p), the
principal-part pairing, numeric Weil representation matrices and the
12-component embedding of a 3-dimensional mock theta representation."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

import numpy as np

from .algebra import QSeries, kronecker
from .errors import PreconditionError

Index = Tuple[Fraction, int]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class VVCoeffs:
    """Coefficients ``c(n, h)``, ``h`` in Z/2NZ, of a form of weight ``k`` for
    ``rho_L`` (``sigma = +1``) or its dual (``sigma = -1``)."""

    N: int
    sigma: int
    k: Fraction
    entries: Dict[Index, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.sigma not in (1, -1):
            raise PreconditionError("sigma must be +1 or -1")
        if Fraction(self.k).denominator != 2:
            raise PreconditionError("weight must be a half-integer")
        clean = {}
        for (n, h), c in self.entries.items():
            n = Fraction(n)
            h %= 2 * self.N
            c = Fraction(c)
            if not c:
                continue
            if not self.in_support(n, h):
                raise PreconditionError(f"c({n}, {h}) violates the support congruence")
            clean[(n, h)] = clean.get((n, h), Fraction(0)) + c
        object.__setattr__(self, "k", Fraction(self.k))
        object.__setattr__(self, "entries", {key: v for key, v in sorted(clean.items()) if v})

    def in_support(self, n: Fraction, h: int) -> bool:
        """``n`` lies in ``Z + sigma h^2 / 4N``."""
        return (Fraction(n) - Fraction(self.sigma * h * h, 4 * self.N)).denominator == 1

    def __getitem__(self, key: Index) -> Fraction:
        n, h = key
        return self.entries.get((Fraction(n), h % (2 * self.N)), Fraction(0))

    def is_symmetric(self, sign: int = 1) -> bool:
        """``c(n, -h) == sign * c(n, h)`` for every stored entry."""
        return all(self[(n, -h)] == sign * c for (n, h), c in self.entries.items())

    def __add__(self, other: "VVCoeffs") -> "VVCoeffs":
        if (self.N, self.sigma, self.k) != (other.N, other.sigma, other.k):
            raise PreconditionError("tables of different type cannot be added")
        out = dict(self.entries)
        for key, v in other.entries.items():
            out[key] = out.get(key, Fraction(0)) + v
        return VVCoeffs(self.N, self.sigma, self.k, out)


def hecke_Tp(f: VVCoeffs, p: int) -> VVCoeffs:
    """Apply ``T(p)`` for an odd prime ``p`` not dividing ``N``:

    ``b*(n,h) = b(p^2 n, p h) + p^(k-3/2) ((4 N sigma n)/p) b(n,h) + p^(2k-2) b(n/p^2, h/p)``.
    """
    N = f.N
    if not _is_prime(p) or p == 2 or N % p == 0:
        raise PreconditionError("T(p) needs an odd prime p coprime to N")
    mod = 2 * N
    p_inv = pow(p, -1, mod)
    w1 = Fraction(p) ** int(f.k - Fraction(3, 2))
    w2 = Fraction(p) ** int(2 * f.k - 2)
    out: Dict[Index, Fraction] = {}

    def put(key, v):
        out[key] = out.get(key, Fraction(0)) + v

    for (n, h), v in f.entries.items():
        # as b(p^2 n', p h') for the output index (n', h') = (n/p^2, h/p)
        n1 = n / (p * p)
        if (4 * N * n1).denominator == 1:
            put((n1, (h * p_inv) % mod), v)
        chi = kronecker(int(4 * N * f.sigma * n), p)
        if chi:
            put((n, h), w1 * chi * v)
        # as b(n'/p^2, h'/p) for the output index (p^2 n, p h)
        put((n * p * p, (h * p) % mod), w2 * v)
    return VVCoeffs(N, f.sigma, f.k, out)


def pairing(g: VVCoeffs, f: VVCoeffs) -> Fraction:
    """``{g, f} = sum_h sum_{n <= 0} c^+(n, h) b(-n, h)``; depends only on the principal part of f."""
    if g.N != f.N:
        raise PreconditionError("pairing needs tables of the same level")
    if g.sigma != -f.sigma:
        raise PreconditionError("pairing needs dual representations (sigma_g = -sigma_f)")
    return sum((c * g[(-n, h)] for (n, h), c in f.entries.items() if n <= 0), Fraction(0))


# --------------------------------------------------------------------------
# Weil representation


@dataclass(frozen=True)
class WeilMatrices:
    N: int
    T: np.ndarray
    S: np.ndarray
    precision: str = "complex128"

    @property
    def Z(self) -> np.ndarray:
        """``e(-1/4)`` times the permutation ``h -> -h``."""
        n = 2 * self.N
        z = np.zeros((n, n), dtype=complex)
        for h in range(n):
            z[(-h) % n, h] = np.exp(-0.5j * np.pi)
        return z


def _e(x) -> np.ndarray:
    return np.exp(2j * np.pi * x)


def weil_matrices(N: int) -> WeilMatrices:
    """Matrices of ``rho_L(T)`` and ``rho_L(S)`` on ``C[Z/2NZ]`` (signature (2,1))."""
    if N < 1:
        raise PreconditionError("N must be positive")
    h = np.arange(2 * N)
    T = np.diag(_e(h * h / (4 * N)))
    S = _e(-1 / 8) / np.sqrt(2 * N) * _e(-np.outer(h, h) / (2 * N))
    return WeilMatrices(N, T, S)


def weil_check(W: WeilMatrices) -> Dict[str, float]:
    """Max-norm defects of unitarity and of ``S^2 = (ST)^3 = Z``."""
    n = 2 * W.N
    eye = np.eye(n)
    S, T, Z = W.S, W.T, W.Z
    ST = S @ T

    def defect(x):
        return float(np.max(np.abs(x)))

    return {
        "S_unitary": defect(S @ S.conj().T - eye),
        "T_unitary": defect(T @ T.conj().T - eye),
        "T_diagonal": defect(T - np.diag(np.diag(T))),
        "S2_minus_Z": defect(S @ S - Z),
        "ST3_minus_Z": defect(ST @ ST @ ST - Z),
    }


# --------------------------------------------------------------------------


def zwegers_embed(h0: QSeries, h1: QSeries, h2: QSeries) -> List[QSeries]:
    """``(0, h0, h2-h1, 0, -h1-h2, -h0, 0, h0, h1+h2, 0, h1-h2, -h0)``, indexed by ``j/12``."""
    prec = min(h0.precision, h1.precision, h2.precision)
    zero = QSeries.monomial(0, 0, prec)
    h0, h1, h2 = (x.truncate(prec) for x in (h0, h1, h2))
    return [zero, h0, h2 - h1, zero, -h1 - h2, -h0, zero, h0, h1 + h2, zero, h1 - h2, -h0]
