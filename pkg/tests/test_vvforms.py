import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heegnerprod.algebra import QSeries
from heegnerprod.cli import dump_table, parse_table
from heegnerprod.errors import PreconditionError
from heegnerprod.vvforms import VVCoeffs, hecke_Tp, pairing, weil_check, weil_matrices, zwegers_embed

WEIGHTS = [Fraction(1, 2), Fraction(3, 2), Fraction(-1, 2)]


@st.composite
def tables(draw, N=None, sigma=None, k=None, lo=-6, hi=6, max_size=10):
    N = N if N is not None else draw(st.integers(1, 6))
    sigma = sigma if sigma is not None else draw(st.sampled_from([1, -1]))
    k = k if k is not None else draw(st.sampled_from(WEIGHTS))
    raw = draw(st.lists(st.tuples(st.integers(0, 2 * N - 1), st.integers(lo, hi),
                                  st.integers(-9, 9), st.integers(1, 4)), max_size=max_size))
    entries = {}
    for h, m, num, den in raw:
        base = Fraction(sigma * h * h, 4 * N)
        entries[(base - math.floor(base) + m, h)] = Fraction(num, den)
    return VVCoeffs(N, sigma, k, entries)


@st.composite
def dual_pairs(draw):
    """(f, g, p): f of weight k for sigma = +1, g of weight 2 - k for the dual, p prime to 2N."""
    N = draw(st.integers(1, 6))
    k = draw(st.sampled_from(WEIGHTS))
    p = draw(st.sampled_from([q for q in (3, 5, 7, 11) if N % q]))
    f = draw(tables(N=N, sigma=1, k=k, lo=-5, hi=2))
    g = draw(tables(N=N, sigma=-1, k=2 - k, lo=0, hi=6 * p * p, max_size=60))
    return f, g, p


def test_support_congruence_enforced():
    with pytest.raises(PreconditionError):
        VVCoeffs(1, 1, Fraction(1, 2), {(Fraction(1, 2), 1): 1})
    t = VVCoeffs(1, 1, Fraction(1, 2), {(Fraction(1, 4), 1): 1, (Fraction(-3, 4), 3): 2})
    assert t[(Fraction(-3, 4), 1)] == 2


def test_hecke_zero_table():
    zero = VVCoeffs(3, 1, Fraction(1, 2), {})
    assert hecke_Tp(zero, 5).entries == {}


def test_hecke_single_entry_slots():
    # b(-63/4, 1) = 1 at N = 1, k = 1/2, p = 3; 4 N n = -63 is divisible by p^2
    p, k = 3, Fraction(1, 2)
    n0 = Fraction(-63, 4)
    out = hecke_Tp(VVCoeffs(1, 1, k, {(n0, 1): 1}), p)
    # first slot: b*(n0/9, h/p) picks up b(n0, h)
    assert out[(n0 / 9, 1)] == 1
    # middle slot vanishes since (-63/3) = 0
    assert out[(n0, 1)] == 0
    # last slot: b*(9 n0, p h) picks up p^(2k-2) b(n0, h)
    assert out[(9 * n0, 1)] == Fraction(1, 3)
    assert len(out.entries) == 2


def test_hecke_middle_term():
    # b(n, h) -> p^(k - 3/2) (4 N sigma n / p) b(n, h) with 4n = -35, (-35/3) = (1/3) = 1
    p, k = 3, Fraction(1, 2)
    out = hecke_Tp(VVCoeffs(1, 1, k, {(Fraction(-35, 4), 1): 1}), p)
    assert out[(Fraction(-35, 4), 1)] == Fraction(1, 3)
    # and b(p^2 n, p h) feeds index (n, h): entry at 9 * (-3/4) lands on (-3/4, 1)
    out2 = hecke_Tp(VVCoeffs(1, 1, k, {(Fraction(-27, 4), 1): 1}), p)
    assert out2[(Fraction(-3, 4), 1)] == 1


def test_hecke_rejects_bad_primes():
    t = VVCoeffs(6, 1, Fraction(1, 2), {})
    for p in (2, 3, 4):
        with pytest.raises(PreconditionError):
            hecke_Tp(t, p)


@settings(max_examples=60)
@given(dual_pairs())
def test_hecke_adjoint(args):
    f, g, p = args
    k = f.k
    assert pairing(g, hecke_Tp(f, p)) == Fraction(p) ** int(2 * k - 2) * pairing(hecke_Tp(g, p), f)


@settings(max_examples=30)
@given(tables(N=1, sigma=1, k=Fraction(1, 2)))
def test_hecke_commute_3_5(f):
    assert hecke_Tp(hecke_Tp(f, 3), 5).entries == hecke_Tp(hecke_Tp(f, 5), 3).entries


@settings(max_examples=30)
@given(tables())
def test_hecke_preserves_support(f):
    p = next(q for q in (3, 5, 7, 11) if f.N % q)
    out = hecke_Tp(f, p)
    assert all(out.in_support(n, h) for n, h in out.entries)


def test_pairing_single_principal_entry():
    f = VVCoeffs(1, 1, Fraction(1, 2), {(Fraction(-3, 4), 1): 1})
    g = VVCoeffs(1, -1, Fraction(3, 2), {(Fraction(3, 4), 1): 7, (Fraction(7, 4), 1): 5})
    assert pairing(g, f) == 7


def test_pairing_zero_principal_part():
    f = VVCoeffs(1, 1, Fraction(1, 2), {(Fraction(1, 4), 1): 3})
    g = VVCoeffs(1, -1, Fraction(3, 2), {(Fraction(3, 4), 1): 7})
    assert pairing(g, f) == 0


def test_pairing_mismatch():
    f = VVCoeffs(1, 1, Fraction(1, 2), {})
    with pytest.raises(PreconditionError):
        pairing(VVCoeffs(2, -1, Fraction(3, 2), {}), f)
    with pytest.raises(PreconditionError):
        pairing(VVCoeffs(1, 1, Fraction(3, 2), {}), f)


@given(tables(N=2, sigma=1, k=Fraction(1, 2)), tables(N=2, sigma=1, k=Fraction(1, 2)),
       tables(N=2, sigma=-1, k=Fraction(3, 2), lo=0, hi=8, max_size=30))
def test_pairing_bilinear(f1, f2, g):
    assert pairing(g, f1 + f2) == pairing(g, f1) + pairing(g, f2)


def test_weil_level_one():
    W = weil_matrices(1)
    e = np.exp(-2j * np.pi / 8)
    assert np.allclose(W.S, e / np.sqrt(2) * np.array([[1, 1], [1, -1]]))
    assert np.allclose(W.S @ W.S, np.exp(-0.5j * np.pi) * np.eye(2))


@pytest.mark.parametrize("N", list(range(1, 61)))
def test_weil_relations(N):
    W = weil_matrices(N)
    assert max(weil_check(W).values()) < 1e-10
    assert np.allclose(np.abs(np.diag(W.T)), 1)


def test_zwegers_embedding():
    h0 = QSeries({1: 1, 4: 2}, 10)
    h1 = QSeries({0: 3}, 8)
    h2 = QSeries({0: 3}, 12)
    vec = zwegers_embed(h0, h1, h2)
    assert len(vec) == 12
    for j in (0, 3, 6, 9):
        assert len(vec[j]) == 0
    assert vec[1] == vec[7] and vec[1].agrees(h0)
    assert len(vec[2]) == 0 and len(vec[10]) == 0
    assert vec[8].coefficient(0) == 6 and vec[4].coefficient(0) == -6
    assert all(v.precision == 8 for v in vec)


@given(tables())
def test_table_file_round_trip(t):
    assert parse_table(dump_table(t)) == t
