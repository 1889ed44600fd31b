"""Standard type B/D root data, signed-permutation Weyl groups, Weyl characters,
Kostant cohomology entries and the weight truncations.

Conventions: rank-m lattice Z^m with basis e_1..e_m.  Type B roots are
+-e_i +- e_j and +-e_i; type D drops the short roots.  The natural order takes
e_1-e_2, ..., e_{m-1}-e_m and e_m (type B) / e_{m-1}+e_m (type D) as simple
roots, so a root is positive iff its first nonzero coordinate is positive.
Weights carry doubled coordinates so rho stays integral in type B.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ExactDomainError, ResourceLimitError, SingularPointError
from .exactnum import GaussianRational
from .laurent import Laurent

Root = tuple[int, ...]  # true (undoubled) coordinates; roots are integral


@dataclass(frozen=True)
class RootDatum:
    kind: str  # "B" or "D"
    rank: int

    def __post_init__(self):
        if self.kind not in ("B", "D"):
            raise ExactDomainError(f"unknown kind {self.kind!r}")
        if self.rank < 1:
            raise ExactDomainError("rank must be >= 1")

    def positive_roots(self) -> tuple[Root, ...]:
        return _positive_roots(self.kind, self.rank)

    def roots(self) -> tuple[Root, ...]:
        pos = self.positive_roots()
        return pos + tuple(tuple(-c for c in a) for a in pos)

    def coroot(self, alpha: Root) -> tuple[int, ...]:
        """Coroot coordinates: e_i^v +- e_j^v for long-ish roots, 2 e_i^v for short type B roots."""
        support = [c for c in alpha if c]
        if len(support) == 1:
            return tuple(2 * c for c in alpha)
        return alpha


@lru_cache(maxsize=None)
def _positive_roots(kind: str, m: int) -> tuple[Root, ...]:
    out = []
    for i in range(m):
        for j in range(i + 1, m):
            for sj in (-1, 1):
                v = [0] * m
                v[i], v[j] = 1, sj
                out.append(tuple(v))
    if kind == "B":
        for i in range(m):
            v = [0] * m
            v[i] = 1
            out.append(tuple(v))
    return tuple(out)


@dataclass(frozen=True)
class Weight:
    """Weight with doubled integer coordinates (true coordinates in (1/2)Z)."""

    doubled: tuple[int, ...]

    @classmethod
    def from_ints(cls, coords: Sequence[int]) -> "Weight":
        return cls(tuple(2 * c for c in coords))

    @classmethod
    def from_halves(cls, doubled: Sequence[int]) -> "Weight":
        return cls(tuple(doubled))

    @property
    def rank(self) -> int:
        return len(self.doubled)

    @property
    def is_integral(self) -> bool:
        return all(c % 2 == 0 for c in self.doubled)

    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, 2) for c in self.doubled)

    def int_coords(self) -> tuple[int, ...]:
        if not self.is_integral:
            raise ExactDomainError(f"{self} is not integral")
        return tuple(c // 2 for c in self.doubled)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.doubled, other.doubled)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.doubled, other.doubled)))

    def pairing(self, covector: Sequence[int]) -> Fraction:
        """<self, covector> for an integral coweight given in e_i^v coordinates."""
        return Fraction(sum(c * v for c, v in zip(self.doubled, covector)), 2)

    def pairing_doubled(self, covector: Sequence[int]) -> int:
        """2 <self, covector>; enough for sign tests, avoids Fractions."""
        return sum(c * v for c, v in zip(self.doubled, covector))


def rho(datum: RootDatum) -> Weight:
    m = datum.rank
    if datum.kind == "B":
        return Weight(tuple(2 * (m - i) + 1 for i in range(1, m + 1)))
    return Weight(tuple(2 * (m - i) for i in range(1, m + 1)))


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation: e_j maps to signs[j] * e_{perm[j]} (0-based)."""

    signs: tuple[int, ...]
    perm: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, m: int) -> "WeylElement":
        return cls((1,) * m, tuple(range(m)))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        """Composition self o other (apply other first)."""
        perm = tuple(self.perm[other.perm[j]] for j in range(self.rank))
        signs = tuple(other.signs[j] * self.signs[other.perm[j]] for j in range(self.rank))
        return WeylElement(signs, perm)

    def inverse(self) -> "WeylElement":
        inv = [0] * self.rank
        signs = [1] * self.rank
        for j in range(self.rank):
            inv[self.perm[j]] = j
            signs[self.perm[j]] = self.signs[j]
        return WeylElement(tuple(signs), tuple(inv))

    def act_tuple(self, v: Sequence) -> tuple:
        out = [None] * self.rank
        for j in range(self.rank):
            out[self.perm[j]] = self.signs[j] * v[j]
        return tuple(out)

    def act(self, w: Weight) -> Weight:
        return Weight(self.act_tuple(w.doubled))

    def act_root(self, alpha: Root) -> Root:
        return self.act_tuple(alpha)

    def minus_count(self) -> int:
        return sum(1 for s in self.signs if s == -1)


def weyl_enumerate(datum: RootDatum) -> list[WeylElement]:
    """All elements of the Weyl group; {+-1}^m x S_m for B, even sign count for D."""
    m = datum.rank
    if m > 8:
        raise ResourceLimitError("rank > 8 enumeration refused")
    out = []
    for perm in itertools.permutations(range(m)):
        for signs in itertools.product((1, -1), repeat=m):
            if datum.kind == "D" and signs.count(-1) % 2:
                continue
            out.append(WeylElement(signs, perm))
    return out


def _is_positive(alpha: Root) -> bool:
    for c in alpha:
        if c:
            return c > 0
    return False


def inversion_set(w: WeylElement, datum: RootDatum) -> tuple[Root, ...]:
    """Phi(w) = Phi+ cap (-w Phi+) = positive roots made negative by w^{-1}."""
    winv = w.inverse()
    return tuple(a for a in datum.positive_roots() if not _is_positive(winv.act_root(a)))


def length(w: WeylElement, datum: RootDatum) -> int:
    return len(inversion_set(w, datum))


def sign(w: WeylElement, datum: RootDatum) -> int:
    return -1 if length(w, datum) % 2 else 1


# --- torus points and character evaluation ----------------------------------

SPLIT, COMPACT, PAIR_FIRST, PAIR_SECOND, RAW = (
    "split",
    "compact",
    "pair_first",
    "pair_second",
    "raw",
)


@dataclass(frozen=True)
class TorusPoint:
    """Exact torus point: split coordinates are nonzero rationals, compact ones
    Gaussian rationals on the unit circle; a conjugate pair of coordinates
    (pattern pair_first/pair_second) realizes a Res_{C/R} Gm factor."""

    coords: tuple[GaussianRational, ...]
    pattern: tuple[str, ...]

    def __post_init__(self):
        if len(self.coords) != len(self.pattern):
            raise ExactDomainError("coords/pattern length mismatch")
        for z, kind in zip(self.coords, self.pattern):
            if z.is_zero():
                raise ExactDomainError("zero torus coordinate")
            if kind == SPLIT and not z.is_real():
                raise ExactDomainError("split coordinate must be rational")
            if kind == COMPACT and z.norm() != 1:
                raise ExactDomainError("compact coordinate must have norm 1")
        for i, kind in enumerate(self.pattern):
            if kind == PAIR_FIRST:
                if i + 1 >= len(self.coords) or self.pattern[i + 1] != PAIR_SECOND:
                    raise ExactDomainError("dangling pair coordinate")
                if self.coords[i + 1] != self.coords[i].conjugate():
                    raise ExactDomainError("pair coordinates must be conjugate")

    @property
    def rank(self) -> int:
        return len(self.coords)

    def apply(self, w: WeylElement) -> "TorusPoint":
        coords = [None] * self.rank
        for j in range(self.rank):
            z = self.coords[j] if w.signs[j] == 1 else self.coords[j].inverse()
            coords[w.perm[j]] = z
        # conjugate pairs generally stop being literal adjacent pairs; reclassify
        pat = []
        for z in coords:
            if z.is_real():
                pat.append(SPLIT)
            elif z.norm() == 1:
                pat.append(COMPACT)
            else:
                pat.append(RAW)
        return TorusPoint(tuple(coords), tuple(pat))


def circle_point(t: Fraction) -> GaussianRational:
    """Rational tangent-half-angle point ((1-t^2) + 2t i)/(1+t^2) on the unit circle."""
    t = Fraction(t)
    den = 1 + t * t
    return GaussianRational((1 - t * t) / den, 2 * t / den)


def evaluate_character_monomial(gamma: TorusPoint, exponents: Sequence[int]) -> GaussianRational:
    out = GaussianRational(1)
    for z, e in zip(gamma.coords, exponents):
        if e:
            out = out * (z ** e)
    return out


def evaluate_root(gamma: TorusPoint, alpha: Root) -> GaussianRational:
    return evaluate_character_monomial(gamma, alpha)


def is_regular(gamma: TorusPoint, datum: RootDatum) -> bool:
    one = GaussianRational(1)
    return all(evaluate_root(gamma, a) != one for a in datum.positive_roots())


@lru_cache(maxsize=None)
def weyl_table(kind: str, m: int) -> tuple:
    """Cached (w, inversion root indices, sign) triples for the full group."""
    datum = RootDatum(kind, m)
    pos = datum.positive_roots()
    index = {a: i for i, a in enumerate(pos)}
    table = []
    for w in weyl_enumerate(datum):
        winv = w.inverse()
        inv = tuple(index[a] for a in pos if not _is_positive(winv.act_root(a)))
        table.append((w, inv, -1 if len(inv) % 2 else 1))
    return tuple(table)


def weyl_character(datum: RootDatum, lam: Weight, gamma: TorusPoint) -> GaussianRational:
    """Exact Weyl character value at a regular point:
    Delta(gamma)^{-1} sum_w eps(w) (w lam)(gamma) prod_{a in Phi(w)} a^{-1}(gamma)."""
    if not lam.is_integral:
        raise ExactDomainError("character needs an integral weight")
    if not is_dominant(datum, lam):
        raise ExactDomainError("character needs a dominant weight")
    pos = datum.positive_roots()
    vals = [evaluate_root(gamma, a) for a in pos]
    one = GaussianRational(1)
    if any(v == one for v in vals):
        raise SingularPointError("torus point lies on a root wall")
    inv_vals = [v.inverse() for v in vals]
    delta = GaussianRational(1)
    for v in inv_vals:
        delta = delta * (one - v)
    lam_i = lam.int_coords()
    total = GaussianRational(0)
    for w, invset, eps in weyl_table(datum.kind, datum.rank):
        term = evaluate_character_monomial(gamma, w.act_tuple(lam_i))
        for i in invset:
            term = term * inv_vals[i]
        total = total + (term if eps == 1 else -term)
    return total / delta


def is_dominant(datum: RootDatum, lam: Weight) -> bool:
    c = lam.doubled
    for i in range(datum.rank - 1):
        if c[i] < c[i + 1]:
            return False
    if datum.kind == "B":
        return c[-1] >= 0
    if datum.rank >= 2:
        return c[-2] + c[-1] >= 0
    return True


# --- Levi patterns and Kostant's theorem -------------------------------------


@dataclass(frozen=True)
class LeviBlocks:
    """A standard Levi: GL blocks on leading coordinate intervals, then an SO tail.

    gl_blocks lists tuples of 0-based coordinate indices (each block a GL_k);
    the SO factor acts on coordinates so_start..m-1 with the ambient kind.
    """

    gl_blocks: tuple[tuple[int, ...], ...]
    so_start: int

    def validate(self, m: int):
        seen = []
        for b in self.gl_blocks:
            seen.extend(b)
        if seen != list(range(self.so_start)):
            raise ExactDomainError("GL blocks must tile the leading coordinates")
        if self.so_start > m:
            raise ExactDomainError("Levi does not fit the rank")


def levi_M1(m: int) -> LeviBlocks:
    """GL_2 x SO(rank m-2)."""
    return LeviBlocks(((0, 1),), 2)


def levi_M2(m: int) -> LeviBlocks:
    """GL_1 x SO(rank m-1)."""
    return LeviBlocks(((0,),), 1)


def levi_M12(m: int) -> LeviBlocks:
    """GL_1 x GL_1 x SO(rank m-2)."""
    return LeviBlocks(((0,), (1,)), 2)


def levi_full(m: int) -> LeviBlocks:
    """The whole group as a Levi of itself."""
    return LeviBlocks((), 0)


def standard_levi(label: str, m: int) -> LeviBlocks:
    table = {"G": levi_full, "M1": levi_M1, "M2": levi_M2, "M12": levi_M12}
    if label not in table:
        raise ExactDomainError(f"unknown Levi {label!r}")
    return table[label](m)


def levi_positive_roots(datum: RootDatum, levi: LeviBlocks) -> tuple[Root, ...]:
    levi.validate(datum.rank)
    m = datum.rank
    out = []
    for block in levi.gl_blocks:
        for i in block:
            for j in block:
                if i < j:
                    v = [0] * m
                    v[i], v[j] = 1, -1
                    out.append(tuple(v))
    for a in _positive_roots(datum.kind, m - levi.so_start):
        v = [0] * levi.so_start + list(a)
        out.append(tuple(v))
    return tuple(out)


def kostant_reps(datum: RootDatum, levi: LeviBlocks) -> list[WeylElement]:
    """Minimal-length coset representatives: w with Phi(w) inside the nilradical roots."""
    levi_pos = set(levi_positive_roots(datum, levi))
    pos = datum.positive_roots()
    out = []
    for w, invset, _ in weyl_table(datum.kind, datum.rank):
        if all(pos[i] not in levi_pos for i in invset):
            out.append((len(invset), w))
    return [w for _, w in sorted(out, key=lambda t: t[0])]


def levi_is_dominant(datum: RootDatum, levi: LeviBlocks, mu: Weight) -> bool:
    c = mu.doubled
    for block in levi.gl_blocks:
        for i, j in zip(block, block[1:]):
            if c[i] < c[j]:
                return False
    tail = c[levi.so_start:]
    if not tail:
        return True
    sub = RootDatum(datum.kind, datum.rank - levi.so_start)
    return is_dominant(sub, Weight(tail))


def kostant_cohomology(datum: RootDatum, levi: LeviBlocks, lam: Weight) -> list[tuple[int, Weight]]:
    """Entries (degree l(w), weight w(lam+rho)-rho), one per coset representative.

    Kostant's theorem: degree-k Lie-algebra cohomology of the nilradical on the
    irreducible of highest weight lam is the sum of the Levi irreducibles with
    these highest weights in degree k.
    """
    if not lam.is_integral or not is_dominant(datum, lam):
        raise ExactDomainError("need a dominant integral highest weight")
    r = rho(datum)
    entries = []
    for w in kostant_reps(datum, levi):
        mu = w.act(lam + r) - r
        if not levi_is_dominant(datum, levi, mu):
            raise ExactDomainError("Kostant weight failed Levi dominance")
        entries.append((length(w, datum), mu))
    return entries


def pi1_covector(m: int) -> tuple[int, ...]:
    """e_1^v + e_2^v."""
    return (1, 1) + (0,) * (m - 2)


def pi2_covector(m: int) -> tuple[int, ...]:
    """2 e_1^v."""
    return (2,) + (0,) * (m - 1)


def truncate_cohomology(
    entries: Iterable[tuple[int, Weight]],
    pairings: Sequence[tuple[Sequence[int], Fraction]],
) -> list[tuple[int, Weight]]:
    """Keep entries whose weight pairs strictly above each threshold: <mu, pi> > t."""
    out = []
    for deg, mu in entries:
        if all(mu.pairing(pi) > t for pi, t in pairings):
            out.append((deg, mu))
    return out


# --- formal characters (for the Euler-characteristic identity) ---------------


@lru_cache(maxsize=1024)
def _weyl_numerator_cached(kind: str, m: int, doubled: tuple[int, ...]) -> Laurent:
    datum = RootDatum(kind, m)
    shifted = Weight(doubled) + rho(datum)
    terms: dict = {}
    for w, _, eps in weyl_table(kind, m):
        e = w.act_tuple(shifted.doubled)
        terms[e] = terms.get(e, 0) + eps
    return Laurent(m, terms)


def weyl_numerator(datum: RootDatum, lam: Weight) -> Laurent:
    """sum_w eps(w) e^{w(lam+rho)} as a Laurent polynomial (doubled exponents)."""
    return _weyl_numerator_cached(datum.kind, datum.rank, lam.doubled)


def formal_character(datum: RootDatum, lam: Weight) -> Laurent:
    """ch(lam) by the Weyl character formula, as an exact Laurent polynomial."""
    if not is_dominant(datum, lam):
        raise ExactDomainError("need a dominant weight")
    num = weyl_numerator(datum, lam)
    den = weyl_numerator(datum, Weight((0,) * datum.rank))
    return num.divide_exact(den)


def _gl_block_character(block_size: int, mu: Sequence[int]) -> Laurent:
    """Schur-type character of GL_k with highest weight mu, k <= 2 here."""
    if block_size == 1:
        return Laurent.monomial((2 * mu[0],))
    if block_size == 2:
        a, b = mu
        if a < b:
            raise ExactDomainError("GL_2 weight not dominant")
        # (x^{a+1} y^b - x^b y^{a+1}) / (x - y)
        num = Laurent(2, {(2 * (a + 1), 2 * b): 1, (2 * b, 2 * (a + 1)): -1})
        den = Laurent(2, {(2, 0): 1, (0, 2): -1})
        return num.divide_exact(den)
    raise ExactDomainError("GL blocks of size > 2 not supported")


def _embed(poly: Laurent, offset: int, rank: int) -> Laurent:
    out = Laurent(rank)
    for e, c in poly.terms.items():
        key = (0,) * offset + e + (0,) * (rank - offset - len(e))
        out.terms[key] = c
    return out


def levi_formal_character(datum: RootDatum, levi: LeviBlocks, mu: Weight) -> Laurent:
    """Formal character of the Levi irreducible with highest weight mu."""
    if not levi_is_dominant(datum, levi, mu):
        raise ExactDomainError("weight is not Levi-dominant")
    m = datum.rank
    out = Laurent.one(m)
    c = mu.int_coords()
    for block in levi.gl_blocks:
        blk = _gl_block_character(len(block), [c[i] for i in block])
        out = out * _embed(blk, block[0], m)
    if levi.so_start < m:
        sub = RootDatum(datum.kind, m - levi.so_start)
        tail = formal_character(sub, Weight.from_ints(c[levi.so_start:]))
        out = out * _embed(tail, levi.so_start, m)
    elif levi.so_start == m and not levi.gl_blocks:
        pass
    return out


def kostant_euler_identity(datum: RootDatum, levi: LeviBlocks, lam: Weight) -> bool:
    """Exact Laurent identity verifying Kostant's theorem without differentials:
    sum_k (-1)^k ch H^k(n, V_lam) = ch(lam) * prod_{a in Phi+ \\ Phi_M+} (1 - e^{-a}).

    Both sides are multiplied by the Weyl numerator of the trivial weight (a
    nonzero divisor), so ch(lam) never needs to be divided out; the Levi
    characters on the left involve only small divisions.
    """
    acc: dict = {}
    for deg, mu in kostant_cohomology(datum, levi, lam):
        sgn = -1 if deg % 2 else 1
        for e, c in levi_formal_character(datum, levi, mu).terms.items():
            acc[e] = acc.get(e, 0) + sgn * c
    lhs = Laurent(datum.rank, acc) * weyl_numerator(datum, Weight((0,) * datum.rank))
    rhs = weyl_numerator(datum, lam) * _koszul_alternation(datum.kind, datum.rank, levi.gl_blocks, levi.so_start)
    return lhs == rhs


@lru_cache(maxsize=128)
def _koszul_alternation(kind: str, m: int, gl_blocks, so_start: int) -> Laurent:
    """prod over nilradical roots of (1 - e^{-a}) = the alternating sum of the
    exterior-power characters of the dual nilradical."""
    datum = RootDatum(kind, m)
    levi = LeviBlocks(gl_blocks, so_start)
    levi_pos = set(levi_positive_roots(datum, levi))
    out = Laurent.one(m)
    for a in datum.positive_roots():
        if a not in levi_pos:
            out = out * (Laurent.one(m) - Laurent.monomial(tuple(-2 * c for c in a)))
    return out
