"""Numeric evaluation of the Dedekind eta function anywhere in the upper half
plane, and the check that Gross's function on X_0(37) vanishes at the
expected Heegner points."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import mpmath

from .algebra import QuadNum
from .errors import PreconditionError
from .heegner import classes

DEFAULT_DPS = 30


@dataclass(frozen=True)
class ComplexPoint:
    re: float
    im: float

    def __post_init__(self):
        if not self.im > 0:
            raise PreconditionError("point must lie in the upper half plane")

    @classmethod
    def from_quad(cls, x: QuadNum) -> "ComplexPoint":
        """The CM point ``a + b sqrt(D)`` with ``D < 0``."""
        if x.D >= 0:
            raise PreconditionError("not an imaginary quadratic point")
        a, b = (mpmath.mpf(v.numerator) / v.denominator for v in (x.a, x.b))
        return cls(a, b * mpmath.sqrt(-x.D))

    def to_mpc(self) -> mpmath.mpc:
        return mpmath.mpc(mpmath.mpf(self.re), mpmath.mpf(self.im))


def _as_mpc(tau) -> mpmath.mpc:
    if isinstance(tau, ComplexPoint):
        return tau.to_mpc()
    if isinstance(tau, QuadNum):
        return ComplexPoint.from_quad(tau).to_mpc()
    z = mpmath.mpc(tau)
    if not z.imag > 0:
        raise PreconditionError("point must lie in the upper half plane")
    return z


def eta_product(tau) -> mpmath.mpc:
    """``q^(1/24) prod (1 - q^n)`` summed directly; fine for ``Im tau`` not too small."""
    tau = _as_mpc(tau)
    q = mpmath.exp(2j * mpmath.pi * tau)
    eps = mpmath.mpf(10) ** (-mpmath.mp.dps - 5)
    prod = mpmath.mpc(1)
    qn = q
    while abs(qn) > eps:
        prod *= 1 - qn
        qn *= q
    return mpmath.exp(2j * mpmath.pi * tau / 24) * prod


def eta_numeric(tau, dps: int = DEFAULT_DPS) -> mpmath.mpc:
    """``eta(tau)`` via reduction to the fundamental domain.

    Uses ``eta(tau + 1) = e(1/24) eta(tau)`` and ``eta(-1/tau) = sqrt(-i tau) eta(tau)``.
    """
    with mpmath.workdps(dps + 10):
        tau = _as_mpc(tau)
        factor = mpmath.mpc(1)
        for _ in range(10000):
            n = int(mpmath.nint(tau.real))
            if n:
                tau -= n
                factor *= mpmath.exp(2j * mpmath.pi * n / 24)
            if abs(tau) >= 1 - mpmath.mpf(10) ** (-dps):
                break
            # eta(tau) = eta(-1/tau') / sqrt(-i tau') evaluated at tau' = -1/tau
            factor /= mpmath.sqrt(-1j * tau)
            tau = -1 / tau
        else:
            raise PreconditionError("eta reduction did not terminate")
        value = factor * eta_product(tau)
    return +value


def _gross_constant(conjugate: bool) -> QuadNum:
    c = (3 + QuadNum.sqrt(-139)) / 2
    return c.conj() if conjugate else c


def r37_eval(tau, conjugate: bool = False, dps: int = DEFAULT_DPS) -> mpmath.mpc:
    """``eta(z)^2 / eta(37 z)^2 - (3 +- sqrt(-139)) / 2``; ``conjugate`` picks the minus sign."""
    c = _gross_constant(conjugate)
    with mpmath.workdps(dps + 10):
        z = _as_mpc(tau)
        ratio = (eta_numeric(z, dps) / eta_numeric(37 * z, dps)) ** 2
        value = ratio - mpmath.mpc(mpmath.mpf(c.a.numerator) / c.a.denominator,
                                   mpmath.mpf(c.b.numerator) / c.b.denominator * mpmath.sqrt(139))
    return +value


@dataclass
class ResidueReport:
    points: List[Tuple[str, mpmath.mpc, mpmath.mpf]] = field(default_factory=list)

    @property
    def max_abs(self) -> Optional[float]:
        return float(max(v for _, _, v in self.points)) if self.points else None


def heegner_residue_check(N: int, D: int, r: int, func: Callable, which: str = "all",
                          dps: int = DEFAULT_DPS) -> ResidueReport:
    """Evaluate ``func(tau)`` at the CM point of every class, recording ``|func|``.

    ``which`` selects the classes with positive, negative or any leading coefficient.
    """
    if which not in ("all", "positive", "negative"):
        raise PreconditionError("which must be all, positive or negative")
    report = ResidueReport()
    for cls in classes(N, D, r):
        a = cls.rep.a
        if (which == "positive" and a < 0) or (which == "negative" and a > 0):
            continue
        # the exact point is passed on so that callers convert at their own precision
        value = func(cls.point)
        report.points.append((str(cls.rep), value, abs(value)))
    return report


@dataclass(frozen=True)
class GrossCheck:
    unprimed: ResidueReport
    primed: ResidueReport

    @property
    def max_unprimed(self) -> float:
        return self.unprimed.max_abs

    @property
    def max_primed(self) -> float:
        return self.primed.max_abs


def gross_divisor_check(dps: int = DEFAULT_DPS) -> GrossCheck:
    """``r`` at the classes with ``a > 0`` and ``r'`` at those with ``a < 0``, discriminant -139."""
    unprimed = heegner_residue_check(37, -139, 3, lambda t: r37_eval(t, False, dps), "positive", dps)
    primed = heegner_residue_check(37, -139, 3, lambda t: r37_eval(t, True, dps), "negative", dps)
    return GrossCheck(unprimed, primed)
