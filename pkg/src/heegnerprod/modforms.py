"""Explicit q-expansions: eta quotients, Eisenstein series, j, level 6 forms,
the weight 1/2 Kohnen plus space basis f_d, and the mock theta series."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping

from .algebra import QSeries
from .errors import PreconditionError, VerificationError


def _check_prec(prec) -> None:
    if prec <= 0:
        raise PreconditionError("prec must be positive")


def _fit(series: QSeries, prec) -> QSeries:
    """Truncate to ``O(q^prec)``, insisting that enough terms were computed."""
    if series.precision < prec:
        raise VerificationError(
            f"internal precision {series.precision} fell short of requested {prec}")
    return series.truncate(prec)


def euler_product(n: int) -> List[int]:
    """Coefficients of prod_{k>=1} (1 - q^k) at q^0 .. q^(n-1)."""
    c = [0] * n
    if n:
        c[0] = 1
    for k in range(1, n):
        for i in range(n - 1, k - 1, -1):
            c[i] -= c[i - k]
    return c


def pentagonal_series(n: int) -> List[int]:
    """Same coefficients via Euler's pentagonal number theorem."""
    c = [0] * n
    k = 0
    while True:
        hit = False
        for kk in ((k, -k) if k else (0,)):
            e = kk * (3 * kk - 1) // 2
            if e < n:
                c[e] += -1 if kk % 2 else 1
                hit = True
        if not hit:
            return c
        k += 1


def divisor_sigma_table(n: int, power: int) -> List[int]:
    """``sigma_power(m)`` for ``0 <= m < n`` (entry 0 is unused and set to 0)."""
    s = [0] * n
    for d in range(1, n):
        dp = d ** power
        for m in range(d, n, d):
            s[m] += dp
    return s


def eta_quotient(exponents: Mapping[int, int], prec) -> QSeries:
    """``prod_m eta(m z)^r_m`` to ``O(q^prec)``."""
    _check_prec(prec)
    shift = Fraction(sum(m * r for m, r in exponents.items()), 24)
    inner = math.ceil(Fraction(prec) - shift) + 1
    inner = max(inner, 1)
    base = QSeries.from_list(euler_product(inner), prec=inner)
    result = QSeries.constant(1, inner)
    for m, r in sorted(exponents.items()):
        if r:
            result = result * (base.rescale(m) ** r)
    return _fit(result.shift(shift), prec)


def eta_series(prec) -> QSeries:
    """``eta(z) = q^(1/24) prod (1 - q^n)`` to ``O(q^prec)``; exponents in (1/24)Z."""
    _check_prec(prec)
    return eta_quotient({1: 1}, prec)


def delta_series(prec) -> QSeries:
    """The discriminant ``eta^24 = q - 24 q^2 + ...``."""
    return eta_quotient({1: 24}, prec)


def eisenstein_series(k: int, prec) -> QSeries:
    """Normalized ``E_k`` for ``k`` in {2, 4, 6}."""
    _check_prec(prec)
    factor = {2: -24, 4: 240, 6: -504}
    if k not in factor:
        raise PreconditionError("only E_2, E_4 and E_6 are provided")
    n = math.ceil(prec)
    sig = divisor_sigma_table(n, k - 1)
    coeffs = {m: factor[k] * sig[m] for m in range(1, n)}
    coeffs[0] = 1
    return QSeries(coeffs, n).truncate(prec)


def j_series(prec) -> QSeries:
    """``j = E_4^3 / Delta = q^-1 + 744 + 196884 q + ...``."""
    _check_prec(prec)
    n = math.ceil(prec) + 2
    return _fit(eisenstein_series(4, n) ** 3 / delta_series(n + 1), prec)


def theta_series(prec) -> QSeries:
    """``1 + 2 sum q^(n^2)``."""
    _check_prec(prec)
    n = math.ceil(prec)
    coeffs = {0: 1}
    k = 1
    while k * k < n:
        coeffs[k * k] = 2
        k += 1
    return QSeries(coeffs, n).truncate(prec)


def level6_forms(prec):
    """Return ``(j6star, delta6)``: the Hauptmodul of Gamma_0(6)+ and its weight 4 cusp form."""
    _check_prec(prec)
    ratio = eta_quotient({1: 4, 2: 4, 3: -4, 6: -4}, prec + 2)
    j6 = ratio + 4 + 81 * ratio.inverse()
    delta6 = eta_quotient({1: 2, 2: 2, 3: 2, 6: 2}, prec)
    return _fit(j6, prec), delta6


# --------------------------------------------------------------------------
# Kohnen plus space of weight 1/2


@dataclass(frozen=True)
class PlusForm:
    """``f_d = q^d + sum_{n>0, n = 0,1 (4)} c_d(n) q^n``."""

    d: int
    series: QSeries

    def coefficient(self, n: int):
        return self.series.coefficient(n)


def _plus_generators(kmax: int, prec: int) -> List[QSeries]:
    """Weakly holomorphic plus-space forms with poles at most ``q^(-4 kmax)``.

    ``theta(z) J(4z)^k`` and ``D(theta)(z) (E4 E6/Delta)(4z) J(4z)^k``, where
    ``D`` is the weight 1/2 Serre derivative written in plus-space coordinates.
    Both families stay inside the plus space because they come from
    vector-valued forms multiplied by level one modular functions.
    """
    margin = 4 * kmax + 8
    big = prec + margin
    small = math.ceil(Fraction(prec, 4)) + kmax + 4
    theta = theta_series(big)
    e2_4 = eisenstein_series(2, small).rescale(4)
    d_theta = theta.qderiv() * Fraction(1, 4) - e2_4 * theta * Fraction(1, 24)
    e4 = eisenstein_series(4, small + 2)
    e6 = eisenstein_series(6, small + 2)
    weight_minus_two = (e4 * e6 / delta_series(small + 3)).rescale(4)
    j4 = (j_series(small) - 744).rescale(4)
    gens = []
    power = QSeries.constant(1, 4 * small)
    for k in range(kmax + 1):
        gens.append(theta * power)
        if k < kmax:
            gens.append(d_theta * weight_minus_two * power)
        power = power * j4
    return gens


def _check_plus_support(series: QSeries, d: int) -> None:
    for e, c in series.items():
        if e.denominator != 1 or int(e) % 4 in (2, 3):
            raise VerificationError(f"f_{d} has a coefficient at q^{e} outside the plus space")
        if d < e <= 0:
            raise VerificationError(f"f_{d} has a nonzero principal coefficient at q^{e}")
    if series.coefficient(d) != 1:
        raise VerificationError(f"f_{d} is not normalized")


def plus_space_basis(d_min: int, prec) -> List[PlusForm]:
    """The forms ``f_d`` for every discriminant ``d_min <= d < 0``, to ``O(q^prec)``.

    The expansions are built exactly in a spanning set of the plus space and
    brought to reduced echelon form on the principal part; each result is then
    checked against the support condition at every computed exponent.
    """
    if d_min >= 0 or d_min % 4 not in (0, 1):
        raise PreconditionError("d_min must be a negative discriminant")
    prec = math.ceil(prec)
    if prec <= abs(d_min):
        raise PreconditionError("prec must exceed |d_min|")
    kmax = math.ceil(Fraction(-d_min, 4))
    gens = _plus_generators(kmax, prec)
    lo = -4 * kmax
    cols = list(range(lo, 1))
    # Augment with the identity to track the combination of generators.
    n = len(gens)
    aug = [[Fraction(gens[i].coefficient(e)) for e in cols]
           + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    pivots = _row_reduce_aug(aug, len(cols))
    out = []
    for row, piv in zip(aug, pivots):
        d = cols[piv]
        if d == 0 or d < d_min:
            continue
        combo = row[len(cols):]
        f = QSeries({}, prec)
        for c, g in zip(combo, gens):
            if c:
                f = f + g * c
        f = _fit(f, prec)
        _check_plus_support(f, d)
        out.append(PlusForm(d, f))
    out.sort(key=lambda pf: -pf.d)
    expected = [d for d in range(-1, d_min - 1, -1) if d % 4 in (0, 1)]
    if [pf.d for pf in out] != expected:
        raise VerificationError("plus-space elimination did not produce every f_d")
    return out


def _row_reduce_aug(rows: List[List[Fraction]], ncols: int) -> List[int]:
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][col]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if r < len(rows):
        raise VerificationError("plus-space generators are linearly dependent")
    return pivots


# --------------------------------------------------------------------------
# Mock theta functions


def _inverse_square_factor(series: List[int], m: int) -> None:
    """In place: divide a dense series by ``(1 - q^m)^2``."""
    n = len(series)
    for _ in range(2):
        for i in range(m, n):
            series[i] += series[i - m]


def omega_coefficients(n: int) -> List[int]:
    """``omega(q) = sum q^(2k^2+2k) / (q; q^2)_{k+1}^2`` at ``q^0 .. q^(n-1)``."""
    total = [0] * n
    k = 0
    while 2 * k * k + 2 * k < n:
        term = [0] * n
        term[2 * k * k + 2 * k] = 1
        for j in range(k + 1):
            _inverse_square_factor(term, 2 * j + 1)
        for i in range(n):
            total[i] += term[i]
        k += 1
    return total


def mock_f_coefficients(n: int) -> List[int]:
    """``f(q) = 1 + sum q^(k^2) / ((1+q)^2 ... (1+q^k)^2)`` at ``q^0 .. q^(n-1)``."""
    total = [0] * n
    total[0] = 1
    k = 1
    while k * k < n:
        term = [0] * n
        term[k * k] = 1
        for j in range(1, k + 1):
            for _ in range(2):
                for i in range(j, n):
                    term[i] -= term[i - j]
        for i in range(n):
            total[i] += term[i]
        k += 1
    return total


@dataclass(frozen=True)
class MockData:
    """Mock theta data: ``omega(q)``, ``f(q)`` and the coefficients ``a(n)``, ``n in Z + 1/3``,
    of ``-2 q^(1/3) (omega(q^(1/2)) + omega(-q^(1/2)))``."""

    omega: QSeries
    f: QSeries
    a_coeffs: Dict[Fraction, int] = field(default_factory=dict)

    def a(self, n) -> int:
        n = Fraction(n)
        if (n - Fraction(1, 3)).denominator != 1:
            return 0
        if n not in self.a_coeffs and n >= self.a_precision:
            raise PreconditionError(f"a({n}) lies beyond the computed range")
        return self.a_coeffs.get(n, 0)

    @property
    def a_precision(self) -> Fraction:
        return self.omega.precision / 2 + Fraction(1, 3)


def mock_series(prec) -> MockData:
    """Expand ``omega``, ``f`` to ``O(q^prec)`` and assemble ``a(n)`` for ``n < prec/2 + 1/3``."""
    _check_prec(prec)
    n = math.ceil(prec)
    om = omega_coefficients(n)
    omega = QSeries.from_list(om, prec=n)
    f = QSeries.from_list(mock_f_coefficients(n), prec=n)
    half = QSeries({m: c for m, c in enumerate(om)}, n, 2)  # omega(q^(1/2))
    half_neg = QSeries({m: (-1) ** m * c for m, c in enumerate(om)}, n, 2)
    combo = (half + half_neg).shift(Fraction(1, 3)) * -2
    a_coeffs = {e: c for e, c in combo.items()}
    return MockData(omega=omega, f=f, a_coeffs=a_coeffs)
