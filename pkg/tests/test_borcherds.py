import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from heegnerprod.algebra import QSeries, QuadNum, is_fundamental_discriminant, kronecker
from heegnerprod.borcherds import (ExponentData, dlog_expansion, gauss_sum, gauss_sum_closed_form,
                                   log_product, p_delta_series, twisted_product)
from heegnerprod.errors import CongruenceError, MissingDataError, PreconditionError

SMALL_FUNDAMENTAL = [d for d in range(-24, 25) if is_fundamental_discriminant(d)]


@st.composite
def exponent_data(draw, prec=10):
    delta = draw(st.sampled_from(SMALL_FUNDAMENTAL))
    N = draw(st.integers(1, 6))
    roots = [r for r in range(2 * N) if (delta - r * r) % (4 * N) == 0]
    if not roots:
        N = 1
        roots = [r for r in range(2) if (delta - r * r) % 4 == 0]
    values = draw(st.lists(st.integers(-6, 6), min_size=prec - 1, max_size=prec - 1))
    c_plus = {n + 1: Fraction(v, draw(st.integers(1, 3))) for n, v in enumerate(values)}
    weyl = Fraction(draw(st.integers(0, 3))) if delta == 1 else Fraction(0)
    return ExponentData(delta, draw(st.sampled_from(roots)), N, c_plus, weyl)


def test_p_delta_minus_eight():
    p = p_delta_series(-8, 4)
    r2 = QuadNum.sqrt(-2)
    assert p.coefficient(0) == 1
    assert p.coefficient(1) == 2 * r2
    assert p.coefficient(2) == -4


def test_p_delta_five_and_one():
    assert p_delta_series(5, 3).coefficient(1) == -QuadNum.sqrt(5)
    assert p_delta_series(1, 5) == QSeries({0: 1, 1: -1}, 5)


@pytest.mark.parametrize("delta", [-8, -7, -4, -3, 5, 8, 12, 13])
def test_p_delta_matches_finite_product(delta):
    m = abs(delta)
    x = 0.07 + 0.03j
    direct = 1
    for b in range(m):
        chi = kronecker(delta, b)
        if chi:
            # the root of unity is e(b / delta) with delta itself, not |delta|
            direct *= (1 - cmath.exp(2j * math.pi * b / delta) * x) ** chi
    series = p_delta_series(delta, 30)
    value = sum(complex(c) * x ** int(e) for e, c in series.items())
    assert abs(value - direct) < 1e-14


@pytest.mark.parametrize("delta", [-8, -3, 5, 13])
def test_conjugate_inverts_p_delta(delta):
    p = p_delta_series(delta, 20)
    assert (p * p.conj()).agrees(QSeries.constant(1, 20))


@settings(max_examples=20)
@given(exponent_data())
def test_dlog_consistency(data):
    prec = 10
    psi = twisted_product(data, prec)
    lhs = psi.qderiv() / psi
    assert lhs.agrees(dlog_expansion(data, prec))


@settings(max_examples=20)
@given(exponent_data())
def test_conjugate_product(data):
    psi = twisted_product(data, 10)
    if data.delta == 1:
        assert psi.is_rational()
    else:
        assert (psi * psi.conj()).agrees(QSeries.monomial(0, 1, 10))


def test_dlog_single_exponent():
    data = ExponentData(5, 1, 1, {1: 1, 2: 0, 3: 0})
    dl = dlog_expansion(data, 4)
    r5 = QuadNum.sqrt(5)
    # sum over d | n of (n/d)(5/d)c(n/d), only n/d = 1 contributes
    assert dl.coefficient(1) == -r5
    assert dl.coefficient(2) == -r5 * kronecker(5, 2)
    assert dl.coefficient(3) == -r5 * kronecker(5, 3)


def test_dlog_zero_data():
    data = ExponentData(-3, 1, 1, {n: 0 for n in range(1, 8)})
    assert dlog_expansion(data, 8) == QSeries({}, 8)
    assert twisted_product(data, 8) == QSeries.constant(1, 8)


def test_weyl_vector_shift():
    data = ExponentData(1, 1, 1, {1: 1, 2: 0, 3: 0}, weyl=Fraction(2))
    psi = twisted_product(data, 4)
    assert psi.valuation == 2 and psi.coefficient(3) == -1


def test_exponent_data_preconditions():
    with pytest.raises(PreconditionError):
        ExponentData(4, 0, 1, {})
    with pytest.raises(CongruenceError):
        ExponentData(-8, 1, 6, {})
    with pytest.raises(PreconditionError):
        ExponentData(5, 1, 1, {}, weyl=Fraction(1))
    with pytest.raises(MissingDataError):
        log_product(ExponentData(5, 1, 1, {1: 1}), 4)


def test_product_needs_positive_prec():
    with pytest.raises(PreconditionError):
        twisted_product(ExponentData(5, 1, 1, {}), 0)


@pytest.mark.parametrize("delta", [d for d in range(-50, 51) if d != 1 and is_fundamental_discriminant(d)])
def test_gauss_sum_identity(delta):
    for n in range(1, abs(delta) + 1):
        assert abs(gauss_sum(delta, n) - gauss_sum_closed_form(delta, n)) < 1e-12
