"""Quadratic spaces over Q and their local invariants.

Spaces are stored diagonalized; arbitrary symmetric Gram matrices enter through
`diagonalize`.  The discriminant follows the convention that carries an extra
(-1)^(d/2) in even dimension, so orthogonal sums of hyperbolic planes have
trivial discriminant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ExactDomainError
from .exactnum import (
    GLOBAL,
    Place,
    RationalLike,
    SquareClass,
    _as_fraction,
    factorize,
    hilbert_symbol,
    squareclass_of,
)


@dataclass(frozen=True)
class QuadraticSpace:
    diag: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.diag) < 1:
            raise ExactDomainError("quadratic space needs dimension >= 1")
        if any(c == 0 for c in self.diag):
            raise ExactDomainError("degenerate diagonal entry")

    @classmethod
    def from_entries(cls, entries: Sequence[RationalLike]) -> "QuadraticSpace":
        return cls(tuple(_as_fraction(c) for c in entries))

    @property
    def dim(self) -> int:
        return len(self.diag)


def diagonalize(gram: Sequence[Sequence[RationalLike]]) -> QuadraticSpace:
    """Diagonalize a nondegenerate symmetric matrix by symmetric row/column elimination."""
    n = len(gram)
    g = [[_as_fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            if g[i][j] != g[j][i]:
                raise ExactDomainError("Gram matrix is not symmetric")
    diag = []
    for k in range(n):
        if g[k][k] == 0:
            j = next((j for j in range(k, n) if g[j][j] != 0), None)
            if j is not None:
                # swap basis vectors k and j
                for r in range(k, n):
                    g[k][r], g[j][r] = g[j][r], g[k][r]
                for r in range(k, n):
                    g[r][k], g[r][j] = g[r][j], g[r][k]
            else:
                j = next((j for j in range(k + 1, n) if g[k][j] != 0), None)
                if j is None:
                    raise ExactDomainError("degenerate Gram matrix")
                # e_k += e_j makes the diagonal entry 2*g[k][j] != 0
                for r in range(k, n):
                    g[k][r] = g[k][r] + g[j][r]
                for r in range(k, n):
                    g[r][k] = g[r][k] + g[r][j]
        pivot = g[k][k]
        for j in range(k + 1, n):
            if g[k][j] != 0:
                c = g[k][j] / pivot
                for r in range(k, n):
                    g[j][r] = g[j][r] - c * g[k][r]
                for r in range(k, n):
                    g[r][j] = g[r][j] - c * g[r][k]
        diag.append(pivot)
    return QuadraticSpace(tuple(diag))


def det_class(q: QuadraticSpace) -> SquareClass:
    prod = Fraction(1)
    for c in q.diag:
        prod *= c
    return squareclass_of(prod, GLOBAL)


def discriminant(q: QuadraticSpace) -> SquareClass:
    """det q for odd dimension, (-1)^(d/2) det q for even dimension, as a global square class."""
    d = det_class(q)
    if q.dim % 2 == 0 and (q.dim // 2) % 2 == 1:
        d = d * squareclass_of(-1, GLOBAL)
    return d


def hasse_invariant(q: QuadraticSpace, v: Place) -> int:
    """prod_{i<j} (a_i, a_j)_v over a diagonalization; a local isometry invariant."""
    eps = 1
    n = q.dim
    for i in range(n):
        for j in range(i + 1, n):
            eps *= hilbert_symbol(q.diag[i], q.diag[j], v)
    return eps


def signature(q: QuadraticSpace) -> tuple[int, int]:
    pos = sum(1 for c in q.diag if c > 0)
    return pos, q.dim - pos


def relevant_places(q: QuadraticSpace) -> list[Place]:
    """Real place plus primes dividing 2 * prod(diag); elsewhere all Hilbert symbols are +1."""
    primes = {2}
    for c in q.diag:
        primes.update(factorize(c.numerator * c.denominator))
    return [Place.real()] + [Place.finite(p) for p in sorted(primes)]


def quasi_split_space(d: int, delta: SquareClass) -> QuadraticSpace:
    """The quasi-split space of dimension d and discriminant delta: hyperbolic
    planes plus a line (d odd) or the norm form of Q(sqrt(delta)) (d even)."""
    if d < 1:
        raise ExactDomainError("dimension must be >= 1")
    if delta.context != GLOBAL:
        raise ExactDomainError("need a global discriminant class")
    m = d // 2
    r = Fraction(delta.rep)
    if d % 2 == 1:
        entries = [Fraction(1), Fraction(-1)] * m + [(Fraction(-1) ** m) * r]
    else:
        entries = [Fraction(1), Fraction(-1)] * (m - 1) + [Fraction(1), -r]
    return QuadraticSpace(tuple(entries))


def is_quasi_split_local(q: QuadraticSpace, v: Place) -> bool:
    """Quasi-splitness of the space over Q_v, by the closed Hasse-invariant formulas
    at finite places and the signature table over R."""
    d = q.dim
    m = d // 2
    delta = discriminant(q)
    if v.is_real:
        sig = signature(q)
        ds = 1 if delta.rep > 0 else -1
        if d % 2 == 1:
            if ds == (-1) ** m:
                return sig == (m + 1, m)
            return sig == (m, m + 1)
        if ds == -1:
            return sig == (m + 1, m - 1)
        return sig == (m, m)
    dr = delta.as_rational()
    eps = hasse_invariant(q, v)
    if d % 2 == 1:
        want = hilbert_symbol(-1, -1, v) ** (m * (m - 1) // 2) * hilbert_symbol(-1, ((-1) ** m) * dr, v) ** m
    else:
        want = hilbert_symbol(-1, -1, v) ** ((m - 1) * (m - 2) // 2) * hilbert_symbol(-1, -dr, v) ** (m - 1)
    return eps == want


def is_quasi_split_oracle(q: QuadraticSpace, p: int) -> bool:
    """Independent check over Q_p: compare (dim, disc, Hasse) with the explicit
    quasi-split model, which classifies quadratic forms over Q_p."""
    v = Place.finite(p)
    model = quasi_split_space(q.dim, discriminant(q))
    return (
        discriminant(q).localize(v) == discriminant(model).localize(v)
        and hasse_invariant(q, v) == hasse_invariant(model, v)
    )


def is_perfect(q: QuadraticSpace, p: int) -> bool:
    """Quasi-split at p with discriminant of even p-adic valuation (odd p only)."""
    from .exactnum import padic_valuation

    if p == 2:
        raise ExactDomainError("perfection is defined at odd primes only")
    Place.finite(p)  # validates primality
    delta = discriminant(q)
    return is_quasi_split_local(q, Place.finite(p)) and padic_valuation(delta.as_rational(), p) % 2 == 0


def exists_global_form(d: int, det: object) -> bool:
    """Whether a form of dimension d, Gram determinant class `det` and signature
    (d-2, 2) exists that is split (d odd) / quasi-split (d even) at every finite
    place, with the extra d = 0 mod 8 branch where only the group (not the
    space) is quasi-split at the finite places.

    `det` is the determinant of the Gram matrix as a square class; the twisted
    discriminant carrying the extra (-1)^(d/2) is derived internally.  For
    determinant 1 the answer is d = 3,4,5,6 mod 8; in the remaining even case
    d = 0 mod 8 a form exists iff the twisted discriminant is nontrivial
    (scaling at a finite place where it is a nonsquare repairs the Hasse
    product without moving the group).
    """
    if d < 3:
        raise ExactDomainError("dimension must be >= 3")
    if isinstance(det, SquareClass):
        if det.context != GLOBAL:
            raise ExactDomainError("need a global determinant class")
    else:
        det = squareclass_of(det, GLOBAL)
    if det.rep < 0:
        return False  # signature (d-2, 2) forces positive determinant
    delta = det
    if d % 2 == 0 and (d // 2) % 2 == 1:
        delta = delta * squareclass_of(-1, GLOBAL)
    model = quasi_split_space(d, delta)
    prod_fin = 1
    for v in relevant_places(model):
        if not v.is_real:
            prod_fin *= hasse_invariant(model, v)
    # Signature (d-2, 2) forces the real Hasse invariant to be -1, and the
    # quasi-split local data are rigid, so the form glues iff prod_fin = -1.
    if prod_fin == -1:
        return True
    return d % 8 == 0 and not delta.is_trivial
