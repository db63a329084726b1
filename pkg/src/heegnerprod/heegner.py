"""Binary quadratic forms, Gamma_0(N)-classes of Heegner forms, CM points,
stabilizers, the generalized genus character and twisted Heegner divisors."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .algebra import QuadNum, is_fundamental_discriminant, kronecker
from .errors import CongruenceError, PreconditionError

Matrix = Tuple[Tuple[int, int], Tuple[int, int]]

IDENTITY: Matrix = ((1, 0), (0, 1))


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    return ((x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
            (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]))


def mat_inv(m: Matrix) -> Matrix:
    """Inverse of a determinant-one integer matrix."""
    (a, b), (c, d) = m
    return ((d, -b), (-c, a))


def in_gamma0(m: Matrix, N: int) -> bool:
    return m[1][0] % N == 0


@dataclass(frozen=True, order=True)
class BQF:
    """The form ``a X^2 + b X Y + c Y^2``."""

    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __neg__(self) -> "BQF":
        return BQF(-self.a, -self.b, -self.c)

    def act(self, m: Matrix) -> "BQF":
        """The form ``(x, y) -> Q(alpha x + beta y, gamma x + delta y)``."""
        (al, be), (ga, de) = m
        a, b, c = self.a, self.b, self.c
        return BQF(a * al * al + b * al * ga + c * ga * ga,
                   2 * a * al * be + b * (al * de + be * ga) + 2 * c * ga * de,
                   a * be * be + b * be * de + c * de * de)

    def value(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __str__(self):
        return f"[{self.a},{self.b},{self.c}]"


def _reduce_positive(q: BQF) -> Tuple[BQF, Matrix]:
    m = IDENTITY
    while True:
        a, b, c = q.a, q.b, q.c
        k = (a - b) // (2 * a)  # brings b into (-a, a]
        if k:
            step = ((1, k), (0, 1))
            q = q.act(step)
            m = mat_mul(m, step)
            continue
        if a > c or (a == c and b < 0):
            step = ((0, -1), (1, 0))
            q = q.act(step)
            m = mat_mul(m, step)
            continue
        return q, m


def reduce_form(q: BQF) -> Tuple[BQF, Matrix]:
    """Reduced representative ``R`` and ``M`` in SL_2(Z) with ``q.act(M) == R``.

    Negative definite forms are reduced through ``-q``; ``R`` keeps the sign of ``q``.
    """
    if q.disc >= 0:
        raise PreconditionError("reduce_form needs a definite form (negative discriminant)")
    if q.a > 0:
        return _reduce_positive(q)
    r, m = _reduce_positive(-q)
    return -r, m


def reduced_forms(D: int) -> List[BQF]:
    """All reduced positive definite forms of discriminant ``D < 0`` (primitive or not)."""
    if D >= 0 or D % 4 not in (0, 1):
        raise PreconditionError("D must be a negative discriminant")
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            out.append(BQF(a, b, c))
        a += 1
    return out


def automorphs(r: BQF) -> List[Matrix]:
    """Proper automorphs of a reduced form (entries are bounded by 1 in absolute value)."""
    out = []
    for al, be, ga, de in itertools.product((-1, 0, 1), repeat=4):
        m = ((al, be), (ga, de))
        if al * de - be * ga == 1 and r.act(m) == r:
            out.append(m)
    return out


def gamma0_equivalence(q1: BQF, q2: BQF, N: int) -> Optional[Matrix]:
    """A matrix ``g`` in Gamma_0(N) with ``q1.act(g) == q2``, or None."""
    if q1.disc != q2.disc:
        return None
    r1, m1 = reduce_form(q1)
    r2, m2 = reduce_form(q2)
    if r1 != r2:
        return None
    inv2 = mat_inv(m2)
    for u in automorphs(r1 if r1.a > 0 else -r1):
        g = mat_mul(mat_mul(m1, u), inv2)
        if in_gamma0(g, N):
            return g
    return None


def gamma0_coset_reps(N: int) -> List[Matrix]:
    """Representatives ``g`` of the left cosets ``g Gamma_0(N)`` in SL_2(Z)."""
    seen = set()
    reps = []
    for c in range(N):
        for d in range(N):
            if math.gcd(math.gcd(c, d), N) != 1:
                continue
            key = min(((u * c) % N, (u * d) % N) for u in range(1, N + 1) if math.gcd(u, N) == 1)
            if key in seen:
                continue
            seen.add(key)
            cc = c if c else N
            dd = d
            while math.gcd(cc, dd) != 1:
                dd += N
            g, x, y = _ext_gcd(dd, cc)
            # x*dd + y*cc = 1  ->  [[x, -y], [cc, dd]] has determinant 1
            right = ((x, -y), (cc, dd))
            reps.append(mat_inv(right))
    return reps


def _ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HeegnerClass:
    """A Gamma_0(N)-class of forms ``[a, b, c]`` with ``N | a`` and ``b = r (mod 2N)``."""

    rep: BQF
    point: QuadNum
    w: int


def heegner_point(q: BQF) -> QuadNum:
    """The root of ``q(X, 1)`` in the upper half plane."""
    if q.a == 0:
        raise PreconditionError("heegner_point needs a != 0")
    D = q.disc
    if D >= 0:
        raise PreconditionError("heegner_point needs a negative discriminant")
    s = 1 if q.a > 0 else -1
    return QuadNum(Fraction(-q.b, 2 * q.a), 0, D) + QuadNum.sqrt(D) * Fraction(s, 2 * q.a)


def stab_order(q: BQF, N: int = 1) -> int:
    """Order of the stabilizer of ``q`` in Gamma_0(N) (including -1)."""
    r, m = reduce_form(q)
    minv = mat_inv(m)
    pos = r if r.a > 0 else -r
    return sum(1 for u in automorphs(pos) if in_gamma0(mat_mul(mat_mul(m, u), minv), N))


def _canonical(q: BQF) -> BQF:
    """Translate by ``T^k`` (in Gamma_0(N)) so that ``-|a| < b <= |a|``."""
    a = abs(q.a)
    k = (a - q.b) // (2 * a)
    return q.act(((1, k if q.a > 0 else -k), (0, 1)))


def _rep_key(q: BQF):
    return abs(q.a), abs(q.b), -q.b


def _nice_rep(q: BQF, N: int, alpha_bound: int = 60, k_bound: int = 6) -> BQF:
    """A Gamma_0(N)-equivalent form with small ``|a|``, found among first columns
    ``(alpha, N k)`` of small Gamma_0(N) matrices."""
    best = _canonical(q)
    for k in range(-k_bound, k_bound + 1):
        gam = N * k
        for al in range(-alpha_bound, alpha_bound + 1):
            if math.gcd(al, gam) != 1:
                continue
            if abs(q.value(al, gam)) > abs(best.a):
                continue
            _, x, y = _ext_gcd(al, -gam)
            # x*al - y*gam = 1 -> [[al, y], [gam, x]]
            cand = _canonical(q.act(((al, y), (gam, x))))
            if _rep_key(cand) < _rep_key(best):
                best = cand
    return best


def classes(N: int, D: int, r: int) -> List[HeegnerClass]:
    """Gamma_0(N)-classes of forms of discriminant ``D`` with ``N | a``, ``b = r (mod 2N)``.

    Both positive and negative definite forms are included. Candidates are
    ``R.act(g)`` for each signed reduced form ``R`` and each coset
    representative ``g`` of Gamma_0(N) in SL_2(Z), which covers every class.
    """
    if N <= 0:
        raise PreconditionError("level must be positive")
    if D >= 0:
        raise PreconditionError("Heegner classes need a negative discriminant")
    if (D - r * r) % (4 * N):
        raise CongruenceError(f"D = {D} is not congruent to r^2 = {r * r} mod {4 * N}")
    cosets = gamma0_coset_reps(N)
    found: List[BQF] = []
    for red in reduced_forms(D):
        for sign in (1, -1):
            base = red if sign > 0 else -red
            for g in cosets:
                q = base.act(g)
                if q.a % N or (q.b - r) % (2 * N):
                    continue
                if any(gamma0_equivalence(q, f, N) is not None for f in found):
                    continue
                found.append(q)
    found = [_nice_rep(f, N) for f in found]
    found.sort(key=lambda f: (abs(f.a), -f.a, f.b, f.c))
    return [HeegnerClass(f, heegner_point(f), stab_order(f, N)) for f in found]


# --------------------------------------------------------------------------
# Genus character


def _is_square_mod(x: int, m: int) -> bool:
    x %= m
    return any((y * y - x) % m == 0 for y in range(m))


def _divisors(n: int) -> List[int]:
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def _lattice_coordinates(q: BQF, N: int) -> Tuple[int, int, int]:
    """Write ``q`` as ``[a, b, N c]`` (swapping the outer coefficients if ``N | q.a``)."""
    if q.a % N == 0:
        return q.c, -q.b, q.a // N
    if q.c % N == 0:
        return q.a, q.b, q.c // N
    raise PreconditionError(f"form {q} has no outer coefficient divisible by N = {N}")


def _degenerate(delta: int, q: BQF, N: int) -> Optional[Tuple[int, int, int]]:
    """Lattice coordinates of ``q`` unless the character vanishes for trivial reasons."""
    if not is_fundamental_discriminant(delta):
        raise PreconditionError(f"{delta} is not a fundamental discriminant")
    D = q.disc
    if D % delta:
        return None
    if not _is_square_mod(D // delta, 4 * N):
        return None
    a, b, c = _lattice_coordinates(q, N)
    if math.gcd(math.gcd(a, b), math.gcd(c, delta)) != 1:
        return None
    return a, b, c


def genus_char(delta: int, q: BQF, N: int = 1) -> int:
    """Generalized genus character ``chi_delta(q)`` via a factorization of delta and N."""
    coords = _degenerate(delta, q, N)
    if coords is None:
        return 0
    a, _, c = coords
    for d1 in _divisors(delta):
        for d1s in (d1, -d1):
            if delta % d1s or d1s % 4 not in (0, 1):
                continue
            d2 = delta // d1s
            if d2 % 4 not in (0, 1):
                continue
            for n1 in _divisors(N):
                n2 = N // n1
                if math.gcd(d1s, n1 * a) == 1 and math.gcd(d2, n2 * c) == 1:
                    return kronecker(d1s, n1 * a) * kronecker(d2, n2 * c)
    return 0


class SearchExhaustedError(RuntimeError):
    """The brute-force genus character search found no value prime to delta."""


def genus_char_oracle(delta: int, q: BQF, N: int = 1, bound: int = 50) -> int:
    """Brute force: ``(delta/n)`` for a represented ``n`` prime to delta."""
    coords = _degenerate(delta, q, N)
    if coords is None:
        return 0
    a, b, c = coords
    pts = sorted(itertools.product(range(-bound, bound + 1), repeat=2),
                 key=lambda p: (max(abs(p[0]), abs(p[1])), p))
    for n1 in _divisors(N):
        form = BQF(n1 * a, b, (N // n1) * c)
        for x, y in pts:
            n = form.value(x, y)
            if n and math.gcd(n, delta) == 1:
                return kronecker(delta, n)
    raise SearchExhaustedError(f"no value prime to {delta} represented by {q} within |x|,|y| <= {bound}")


# --------------------------------------------------------------------------
# Twisted Heegner divisors


@dataclass(frozen=True)
class HeegnerDivisor:
    """Weighted sum of CM points; weights are ``chi_delta / w`` (times 2 if normalized)."""

    entries: List[Tuple[HeegnerClass, Fraction]] = field(default_factory=list)
    delta: int = 1
    r: int = 1
    N: int = 1
    m: Fraction = Fraction(0)
    h: int = 0

    def degree(self) -> Fraction:
        return sum((w for _, w in self.entries), Fraction(0))

    def support(self) -> List[HeegnerClass]:
        return [cl for cl, w in self.entries if w != 0]


def twisted_divisor(delta: int, r: int, N: int, m, h: int,
                    normalize_w2: bool = False) -> HeegnerDivisor:
    """``Z_{delta,r}(m, h)``: classes of discriminant ``d*delta`` with ``b = r h (mod 2N)``."""
    m = Fraction(m)
    if not is_fundamental_discriminant(delta):
        raise PreconditionError(f"{delta} is not a fundamental discriminant")
    if (delta - r * r) % (4 * N):
        raise CongruenceError(f"delta = {delta} is not r^2 mod {4 * N}")
    sgn = 1 if delta > 0 else -1
    d = 4 * N * m * sgn
    if d.denominator != 1:
        raise PreconditionError("4 N m must be an integer")
    if (m - sgn * Fraction(h * h, 4 * N)).denominator != 1:
        raise CongruenceError(f"m = {m} is not in Z + sgn(delta) h^2/4N for h = {h}")
    D = int(d) * delta
    if D >= 0:
        raise PreconditionError("the twisted divisor needs d * delta < 0")
    meta = dict(delta=delta, r=r, N=N, m=m, h=h % (2 * N))
    if not _is_square_mod(D, 4 * N):
        return HeegnerDivisor([], **meta)
    scale = 2 if normalize_w2 else 1
    entries = []
    for cl in classes(N, D, (r * h) % (2 * N)):
        chi = genus_char(delta, cl.rep, N)
        entries.append((cl, Fraction(scale * chi, cl.w)))
    return HeegnerDivisor(entries, **meta)
