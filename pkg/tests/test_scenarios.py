from heegnerprod.scenarios import (MOCK6_REFERENCE, gross37_series, mock6_data, verify_mock6,
                                   verify_zagier5, zagier5_data)


def test_zagier5_small_precision():
    res = verify_zagier5(prec=6)
    assert res.passed and res.discrepancy is None


def test_zagier5_exponents():
    data = zagier5_data(3)
    # c_{-3}(5) and c_{-3}(20)
    assert data.c(1) == -85995
    assert data.delta == 5 and data.N == 1


def test_mock6_exponents():
    data = mock6_data(5)
    # c(n) = (n/3) a(n^2/3) with a(1/3) = -4, a(4/3) = -12; c(3) vanishes since (3/3) = 0
    assert data.c(1) == -4
    assert data.c(2) == 12
    assert data.c(3) == 0


def test_mock6_report_lines():
    res = verify_mock6(prec=6)
    assert res.passed
    assert res.report().splitlines()[0] == "mock6: PASS"
    assert len(MOCK6_REFERENCE) == 4


def test_gross_series_identity():
    lhs, rhs = gross37_series(15)
    assert lhs.agrees(rhs) and lhs.precision >= 15
