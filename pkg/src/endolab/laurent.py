"""Multivariate Laurent polynomials with exact coefficients.

Used for the formal character identities (Weyl numerators, Kostant Euler
characteristics).  Exponent tuples are stored doubled so half-integral weights
like rho in type B stay integral.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ExactDomainError


class Laurent:
    """dict-backed Laurent polynomial; keys are doubled exponent tuples."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: dict | None = None):
        self.rank = rank
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if c != 0:
                    self.terms[e] = self.terms.get(e, 0) + c
            self.terms = {e: c for e, c in self.terms.items() if c != 0}

    @classmethod
    def monomial(cls, doubled_exp: tuple[int, ...], coeff=1) -> "Laurent":
        out = cls(len(doubled_exp))
        if coeff != 0:
            out.terms[tuple(doubled_exp)] = coeff
        return out

    @classmethod
    def one(cls, rank: int) -> "Laurent":
        return cls.monomial((0,) * rank)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Laurent") -> "Laurent":
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return Laurent(self.rank, out)

    def __neg__(self) -> "Laurent":
        return Laurent(self.rank, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other) -> "Laurent":
        if isinstance(other, (int, Fraction)):
            return Laurent(self.rank, {e: c * other for e, c in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return Laurent(self.rank, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Laurent) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _lead(self) -> tuple[tuple[int, ...], object]:
        e = max(self.terms)
        return e, self.terms[e]

    def divide_exact(self, den: "Laurent") -> "Laurent":
        """Exact division (raises if the division leaves a remainder)."""
        if den.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        num = Laurent(self.rank, dict(self.terms))
        quo = Laurent(self.rank)
        de, dc = den._lead()
        steps = 0
        while not num.is_zero():
            ne, nc = num._lead()
            qe = tuple(a - b for a, b in zip(ne, de))
            qc = Fraction(nc, dc) if not isinstance(nc, Fraction) else nc / dc
            if qc.denominator == 1:
                qc = int(qc)
            t = Laurent.monomial(qe, qc)
            quo = quo + t
            num = num - t * den
            steps += 1
            if steps > 200000:
                raise ExactDomainError("Laurent division did not terminate")
        return quo

    def __repr__(self):
        if not self.terms:
            return "Laurent(0)"
        bits = [f"{c}*x^{e}" for e, c in sorted(self.terms.items())]
        return "Laurent(" + " + ".join(bits) + ")"
