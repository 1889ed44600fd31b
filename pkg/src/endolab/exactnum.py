"""Exact arithmetic substrate: rationals, Gaussian rationals, square classes, local symbols.

Rationals are stdlib ``fractions.Fraction`` (canonical reduced form, arbitrary
precision).  Gaussian rationals are kept as integer triples (re, im, den) so
the hot evaluation loops avoid two Fraction normalizations per operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Union

from .errors import ExactDomainError

Rational = Fraction
RationalLike = Union[int, Fraction]


def _as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise ExactDomainError(f"expected an exact rational, got {type(x).__name__}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| by trial division (inputs here stay small)."""
    return dict(_factorize_cached(abs(n)))


@lru_cache(maxsize=65536)
def _factorize_cached(n: int) -> tuple[tuple[int, int], ...]:
    if n == 0:
        raise ExactDomainError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return tuple(sorted(out.items()))


def squarefree_part(n: int) -> int:
    """The canonical squarefree integer representing n modulo nonzero squares."""
    if n == 0:
        raise ExactDomainError("0 has no square class")
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in factorize(n).items():
        if e % 2:
            out *= p
    return out


class GaussianRational:
    """Element of Q(i), stored as (re + im*i)/den with den > 0 and gcd(re, im, den) = 1."""

    __slots__ = ("re_n", "im_n", "den")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        re = _as_fraction(re)
        im = _as_fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        g = gcd(gcd(abs(a), abs(b)), d)
        self.re_n = a // g
        self.im_n = b // g
        self.den = d // g

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussianRational":
        if d == 0:
            raise ZeroDivisionError("Gaussian rational with zero denominator")
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(gcd(abs(a), abs(b)), d)
        z = object.__new__(cls)
        z.re_n = a // g
        z.im_n = b // g
        z.den = d // g
        return z

    @property
    def re(self) -> Fraction:
        return Fraction(self.re_n, self.den)

    @property
    def im(self) -> Fraction:
        return Fraction(self.im_n, self.den)

    def is_zero(self) -> bool:
        return self.re_n == 0 and self.im_n == 0

    def is_real(self) -> bool:
        return self.im_n == 0

    def is_one(self) -> bool:
        return self.im_n == 0 and self.re_n == self.den

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re_n, -self.im_n, self.den)

    def norm(self) -> Fraction:
        """re**2 + im**2, exactly."""
        return Fraction(self.re_n * self.re_n + self.im_n * self.im_n, self.den * self.den)

    def __add__(self, other):
        other = _coerce(other)
        return GaussianRational._raw(
            self.re_n * other.den + other.re_n * self.den,
            self.im_n * other.den + other.im_n * self.den,
            self.den * other.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self.re_n, -self.im_n, self.den)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        return GaussianRational._raw(
            self.re_n * other.re_n - self.im_n * other.im_n,
            self.re_n * other.im_n + self.im_n * other.re_n,
            self.den * other.den,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re_n * self.re_n + self.im_n * self.im_n
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational._raw(self.re_n * self.den, -self.im_n * self.den, n)

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except ExactDomainError:
            return NotImplemented
        return (self.re_n, self.im_n, self.den) == (other.re_n, other.im_n, other.den)

    def __hash__(self):
        return hash((self.re_n, self.im_n, self.den))

    def __repr__(self):
        if self.im_n == 0:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"


def _coerce(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    raise ExactDomainError(f"cannot coerce {type(x).__name__} to GaussianRational")


@dataclass(frozen=True)
class Place:
    """A place of Q: the real place or a finite prime."""

    p: int  # 0 encodes the real place

    def __post_init__(self):
        if self.p != 0 and not is_prime(self.p):
            raise ExactDomainError(f"{self.p} is not prime")

    @classmethod
    def real(cls) -> "Place":
        return cls(0)

    @classmethod
    def finite(cls, p: int) -> "Place":
        if p == 0:
            raise ExactDomainError("finite place needs a prime")
        return cls(p)

    @property
    def is_real(self) -> bool:
        return self.p == 0

    def __repr__(self):
        return "Place(real)" if self.is_real else f"Place({self.p})"


REAL = Place.real()


def padic_valuation(x: RationalLike, p: int) -> int:
    """v with x = p**v * u, u a p-adic unit.  Errors on x = 0."""
    if not is_prime(p):
        raise ExactDomainError(f"{p} is not prime")
    x = _as_fraction(x)
    if x == 0:
        raise ExactDomainError("0 has no p-adic valuation")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _unit_part(x: Fraction, p: int) -> Fraction:
    return x / Fraction(p) ** padic_valuation(x, p)


def legendre(a: RationalLike, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p; +1 iff a is a square mod p."""
    if not is_prime(p) or p == 2:
        raise ExactDomainError(f"{p} is not an odd prime")
    a = _as_fraction(a)
    if a.numerator % p == 0 or a.denominator % p == 0:
        raise ExactDomainError(f"{a} is not a p-adic unit at {p}")
    t = a.numerator * pow(a.denominator, -1, p) % p
    s = pow(t, (p - 1) // 2, p)
    return 1 if s == 1 else -1


def smallest_nonresidue(p: int) -> int:
    n = 2
    while legendre(n, p) == 1:
        n += 1
    return n


def _odd_unit_mod(x: Fraction, m: int) -> int:
    """x mod m for a 2-adic unit x and m a power of 2."""
    return x.numerator * pow(x.denominator, -1, m) % m


def hilbert_symbol(a: RationalLike, b: RationalLike, v: Place) -> int:
    """Hilbert symbol (a,b)_v: +1 iff z^2 = a x^2 + b y^2 has a nonzero solution over Q_v."""
    a = _as_fraction(a)
    b = _as_fraction(b)
    if a == 0 or b == 0:
        raise ExactDomainError("Hilbert symbol needs nonzero arguments")
    if v.is_real:
        return -1 if (a < 0 and b < 0) else 1
    return _hilbert_finite_cached(a, b, v.p)


@lru_cache(maxsize=65536)
def _hilbert_finite_cached(a: Fraction, b: Fraction, p: int) -> int:
    alpha, beta = padic_valuation(a, p), padic_valuation(b, p)
    u, w = _unit_part(a, p), _unit_part(b, p)
    if p != 2:
        sign = 1
        if (alpha * beta) % 2 and (p - 1) // 2 % 2:
            sign = -sign
        if beta % 2 and legendre(u, p) == -1:
            sign = -sign
        if alpha % 2 and legendre(w, p) == -1:
            sign = -sign
        return sign
    eps_u = (_odd_unit_mod(u, 4) - 1) // 2
    eps_w = (_odd_unit_mod(w, 4) - 1) // 2
    um8, wm8 = _odd_unit_mod(u, 8), _odd_unit_mod(w, 8)
    omega_u = 1 if um8 in (3, 5) else 0
    omega_w = 1 if wm8 in (3, 5) else 0
    e = eps_u * eps_w + alpha * omega_w + beta * omega_u
    return -1 if e % 2 else 1


def hilbert_symbol_oracle(a: RationalLike, b: RationalLike, v: Place) -> int:
    """Brute-force Hilbert symbol: solvability of z^2 = a x^2 + b y^2 mod p^(2v+3), Hensel-lifted.

    The inputs are first reduced to their canonical square-class representatives
    (valuations 0 or 1 at p), so a primitive zero mod p^(2v+3) always has a
    coordinate where the gradient valuation is small enough for Hensel lifting.
    """
    a = _as_fraction(a)
    b = _as_fraction(b)
    if a == 0 or b == 0:
        raise ExactDomainError("Hilbert symbol needs nonzero arguments")
    if v.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = v.p
    ra = squareclass_of(a, p).as_rational()
    rb = squareclass_of(b, p).as_rational()
    ia, ib = int(ra), int(rb)
    vmax = max(padic_valuation(ia, p), padic_valuation(ib, p))
    mod = p ** (2 * vmax + 3)
    sq = sorted({t * t % mod for t in range(mod)})
    sqset = set(sq)
    aset = {ia * t % mod for t in sq}
    bset = {ib * t % mod for t in sq}
    # A Q_p-point exists iff there is one with x, y or z a unit; scale that
    # coordinate to 1 and scan the other two.
    for t in aset:
        if (1 - t) % mod in bset:  # z = 1
            return 1
    for t in bset:
        if (ia + t) % mod in sqset:  # x = 1: z^2 - b y^2 = a
            return 1
    for t in aset:
        if (ib + t) % mod in sqset:  # y = 1: z^2 - a x^2 = b
            return 1
    return -1


# --- square classes ---------------------------------------------------------

GLOBAL = "Q"
REAL_CONTEXT = "R"
# a local context is just the prime p (an int)

Context = Union[str, int]


@dataclass(frozen=True)
class SquareClass:
    """Canonical representative of F^x / F^{x,2} for F = Q, R or Q_p.

    rep encodings:
      context "Q":  squarefree nonzero integer
      context "R":  +1 or -1
      context p:    (valuation mod 2, unit class); the unit class is 1 or the
                    smallest nonresidue for odd p, and 1/3/5/7 mod 8 for p = 2.
    """

    context: Context
    rep: object

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if self.context != other.context:
            raise ExactDomainError("square classes live in different contexts")
        if self.context == GLOBAL:
            return SquareClass(GLOBAL, squarefree_part(self.rep * other.rep))
        if self.context == REAL_CONTEXT:
            return SquareClass(REAL_CONTEXT, self.rep * other.rep)
        p = self.context
        e = (self.rep[0] + other.rep[0]) % 2
        u = self.rep[1] * other.rep[1]
        if p == 2:
            return SquareClass(2, (e, u % 8))
        return SquareClass(p, (e, 1 if legendre(u, p) == 1 else smallest_nonresidue(p)))

    def inverse(self) -> "SquareClass":
        return self  # every class is its own inverse

    @property
    def is_trivial(self) -> bool:
        if self.context == GLOBAL:
            return self.rep == 1
        if self.context == REAL_CONTEXT:
            return self.rep == 1
        return self.rep == (0, 1)

    def as_rational(self) -> Fraction:
        """A rational number realizing this class."""
        if self.context == GLOBAL or self.context == REAL_CONTEXT:
            return Fraction(self.rep)
        p = self.context
        return Fraction(p ** self.rep[0] * self.rep[1])

    def localize(self, v: Place) -> "SquareClass":
        if self.context != GLOBAL:
            raise ExactDomainError("only global classes can be localized")
        if v.is_real:
            return squareclass_of(self.rep, REAL_CONTEXT)
        return squareclass_of(self.rep, v.p)


def squareclass_of(x: RationalLike, context: Context) -> SquareClass:
    """Canonical square class of a nonzero rational in the given context."""
    x = _as_fraction(x)
    if x == 0:
        raise ExactDomainError("0 has no square class")
    if context == GLOBAL:
        return SquareClass(GLOBAL, squarefree_part(x.numerator * x.denominator))
    if context == REAL_CONTEXT:
        return SquareClass(REAL_CONTEXT, 1 if x > 0 else -1)
    p = context
    if not is_prime(p):
        raise ExactDomainError(f"{p} is not prime")
    e = padic_valuation(x, p) % 2
    u = _unit_part(x, p)
    if p == 2:
        return SquareClass(2, (e, _odd_unit_mod(u, 8)))
    return SquareClass(p, (e, 1 if legendre(u, p) == 1 else smallest_nonresidue(p)))


def sqrt_fraction(x: Fraction) -> Fraction:
    """Exact square root of a rational that is a perfect square."""
    if x < 0:
        raise ExactDomainError(f"{x} is negative")
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn != x.numerator or rd * rd != x.denominator:
        raise ExactDomainError(f"{x} is not a perfect square")
    return Fraction(rn, rd)
