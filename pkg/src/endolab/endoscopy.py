"""Elliptic endoscopic data for special orthogonal groups and bi-elliptic
refinements for the standard Levis, with the attached invariants: outer
automorphism counts, Tamagawa numbers, the archimedean k-invariants, the
constants iota(G,H) and n^G_M, cuspidality and unramifiedness tests.

Data are represented purely by their parameters (d+, delta+, d-, delta-);
swap-equivalence classes keep the representative with the larger positive
part, so the trivial datum always carries s = +1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import ExactDomainError
from .exactnum import (
    GLOBAL,
    REAL_CONTEXT,
    Place,
    SquareClass,
    padic_valuation,
    squareclass_of,
)

LEVI_LABELS = ("G", "M1", "M2", "M12")


@dataclass(frozen=True)
class RealCtx:
    pass


@dataclass(frozen=True)
class LocalCtx:
    p: int


@dataclass(frozen=True)
class GlobalCtx:
    support: tuple[int, ...]  # primes allowed to ramify the discriminants


def _context_classes(ctx) -> list[SquareClass]:
    """All square classes of the context (global: squarefree, supported on ctx.support)."""
    if isinstance(ctx, RealCtx):
        return [squareclass_of(1, REAL_CONTEXT), squareclass_of(-1, REAL_CONTEXT)]
    if isinstance(ctx, LocalCtx):
        p = ctx.p
        if p == 2:
            reps = [u * 2 ** e for e in (0, 1) for u in (1, 3, 5, 7)]
        else:
            from .exactnum import smallest_nonresidue

            n = smallest_nonresidue(p)
            reps = [1, n, p, n * p]
        return [squareclass_of(r, p) for r in reps]
    if isinstance(ctx, GlobalCtx):
        out = []
        for sign in (1, -1):
            for k in range(len(ctx.support) + 1):
                for combo in itertools.combinations(ctx.support, k):
                    r = sign
                    for q in combo:
                        r *= q
                    out.append(squareclass_of(r, GLOBAL))
        return out
    raise ExactDomainError(f"unsupported context {ctx!r}")


def _trivial_class(ctx) -> SquareClass:
    if isinstance(ctx, RealCtx):
        return squareclass_of(1, REAL_CONTEXT)
    if isinstance(ctx, LocalCtx):
        return squareclass_of(1, ctx.p)
    return squareclass_of(1, GLOBAL)


@dataclass(frozen=True)
class EndoParams:
    """Parameters (d+, delta+, d-, delta-) of an elliptic endoscopic datum;
    deltas are trivial classes in the odd case."""

    parity: str  # "odd" or "even"
    d_plus: int
    d_minus: int
    delta_plus: SquareClass
    delta_minus: SquareClass

    def __post_init__(self):
        if self.parity not in ("odd", "even"):
            raise ExactDomainError("parity must be odd or even")
        if self.parity == "odd":
            if self.d_plus % 2 == 0 or self.d_minus % 2 == 0:
                raise ExactDomainError("odd case needs odd d+ and d-")
        else:
            if self.d_plus % 2 or self.d_minus % 2:
                raise ExactDomainError("even case needs even d+ and d-")
            for d, delta in ((self.d_plus, self.delta_plus), (self.d_minus, self.delta_minus)):
                if d == 0 and not delta.is_trivial:
                    raise ExactDomainError("(0, nontrivial) is excluded")
                if d == 2 and delta.is_trivial:
                    raise ExactDomainError("(2, trivial) is excluded")

    @property
    def d(self) -> int:
        return self.d_plus + self.d_minus - (1 if self.parity == "odd" else 0)

    @property
    def m_plus(self) -> int:
        return self.d_plus // 2

    @property
    def m_minus(self) -> int:
        return self.d_minus // 2

    def swap(self) -> "EndoParams":
        return EndoParams(self.parity, self.d_minus, self.d_plus, self.delta_minus, self.delta_plus)

    def key(self):
        return (self.d_plus, str(self.delta_plus.rep), self.d_minus, str(self.delta_minus.rep))


def _class_sort_key(c: SquareClass):
    return str(c.rep)


def _canonical_swap(params: EndoParams) -> EndoParams:
    other = params.swap()
    if (params.d_plus, _class_sort_key(params.delta_plus)) >= (other.d_plus, _class_sort_key(other.delta_plus)):
        return params
    return other


def enumerate_elliptic(d: int, delta, context) -> list[EndoParams]:
    """All elliptic endoscopic data for SO of a (d, delta) space, up to swap.

    Odd case: pairs of odd d+ + d- = d + 1 with trivial discriminants.  Even
    case: even d+ + d- = d with delta+ delta- = delta, excluding the values
    (2, trivial) and (0, nontrivial).  Global contexts need a prime support
    bound since the set of classes is infinite.
    """
    if d < 3:
        raise ExactDomainError("d must be >= 3")
    triv = _trivial_class(context)
    out: dict = {}
    if d % 2 == 1:
        for d_plus in range(1, d + 1, 2):
            p = _canonical_swap(EndoParams("odd", d_plus, d + 1 - d_plus, triv, triv))
            out[p.key()] = p
        return sorted(out.values(), key=EndoParams.key)
    if isinstance(delta, SquareClass):
        delta_cls = delta
    else:
        if isinstance(context, RealCtx):
            delta_cls = squareclass_of(delta, REAL_CONTEXT)
        elif isinstance(context, LocalCtx):
            delta_cls = squareclass_of(delta, context.p)
        else:
            delta_cls = squareclass_of(delta, GLOBAL)
    for d_plus in range(0, d + 1, 2):
        for dp in _context_classes(context):
            dm = dp * delta_cls
            try:
                p = EndoParams("even", d_plus, d - d_plus, dp, dm)
            except ExactDomainError:
                continue
            p = _canonical_swap(p)
            out[p.key()] = p
    return sorted(out.values(), key=EndoParams.key)


def out_group_size(params: EndoParams) -> int:
    """Order of the outer automorphism group of the datum: 1, 2 or 4."""
    if params.parity == "odd":
        return 2 if params.d_plus == params.d_minus else 1
    if params.d_plus * params.d_minus == 0:
        return 1
    if params.d_plus == params.d_minus and params.delta_plus == params.delta_minus:
        return 4
    return 2


@dataclass(frozen=True)
class GEndoParams:
    """A bi-elliptic refinement: positional subset A plus base parameters for the
    SO factor of the Levi."""

    levi: str
    A: frozenset[int]
    base: EndoParams

    def __post_init__(self):
        if self.levi not in ("M1", "M2", "M12"):
            raise ExactDomainError("Levi must be M1, M2 or M12")
        if not self.A <= set(_index_set(self.levi)):
            raise ExactDomainError("A outside the admissible index set")
        if self.levi == "M1" and len(self.A) == 1:
            raise ExactDomainError("M1 admits only A = {} or {1,2}")

    @property
    def A_complement(self) -> frozenset[int]:
        return frozenset(_index_set(self.levi)) - self.A


def _index_set(levi: str) -> tuple[int, ...]:
    return (1,) if levi == "M2" else (1, 2)


def _admissible_A(levi: str) -> list[frozenset[int]]:
    if levi == "M1":
        return [frozenset(), frozenset({1, 2})]
    if levi == "M2":
        return [frozenset(), frozenset({1})]
    return [frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})]


def to_EG(g: GEndoParams) -> EndoParams:
    """The induced elliptic datum for the ambient group: d+- grow by 2|A| / 2|A^c|."""
    b = g.base
    return _canonical_swap(
        EndoParams(
            b.parity,
            b.d_plus + 2 * len(g.A),
            b.d_minus + 2 * len(g.A_complement),
            b.delta_plus,
            b.delta_minus,
        )
    )


def to_EM(g: GEndoParams) -> EndoParams:
    return g.base


def enumerate_G_endoscopy(levi: str, d: int, delta, context) -> list[GEndoParams]:
    """Bi-elliptic refined data for the Levi, up to simultaneous swapping."""
    if levi == "G":
        raise ExactDomainError("use enumerate_elliptic for the full group")
    i = 1 if levi == "M2" else 2
    if d - 2 * i < 3:
        raise ExactDomainError("Levi SO factor too small")
    out: dict = {}
    for A in _admissible_A(levi):
        for base in _enumerate_base(levi, d, delta, context, A):
            g = GEndoParams(levi, A, base)
            gs = GEndoParams(levi, g.A_complement, base.swap())
            keep = min(
                (sorted(g.A), g.base.key(), g),
                (sorted(gs.A), gs.base.key(), gs),
                key=lambda t: (t[0], t[1]),
            )[2]
            out[(tuple(sorted(keep.A)), keep.base.key())] = keep
    return sorted(out.values(), key=lambda g: (tuple(sorted(g.A)), g.base.key()))


def _enumerate_base(levi: str, d: int, delta, context, A: frozenset[int]) -> Iterable[EndoParams]:
    """Base data for the Levi SO factor whose induced ambient data stay admissible."""
    i = 1 if levi == "M2" else 2
    d_so = d - 2 * i
    triv = _trivial_class(context)
    nA, nAc = len(A), len(_index_set(levi)) - len(A)
    if d % 2 == 1:
        for d_plus in range(1, d_so + 1, 2):
            yield EndoParams("odd", d_plus, d_so + 1 - d_plus, triv, triv)
        return
    if isinstance(delta, SquareClass):
        delta_cls = delta
    elif isinstance(context, RealCtx):
        delta_cls = squareclass_of(delta, REAL_CONTEXT)
    elif isinstance(context, LocalCtx):
        delta_cls = squareclass_of(delta, context.p)
    else:
        delta_cls = squareclass_of(delta, GLOBAL)
    for d_plus in range(0, d_so + 1, 2):
        for dp in _context_classes(context):
            dm = dp * delta_cls
            try:
                base = EndoParams("even", d_plus, d_so - d_plus, dp, dm)
                # induced ambient parameters must avoid the excluded values too
                EndoParams("even", d_plus + 2 * nA, d_so - d_plus + 2 * nAc, dp, dm)
            except ExactDomainError:
                continue
            yield base


def g_out_group_size(g: GEndoParams) -> int:
    """Order of the group of outer automorphisms compatible with the ambient datum."""
    if g.base.parity == "odd":
        return 1
    return 1 if g.base.d_plus * g.base.d_minus == 0 else 2


# --- invariants ---------------------------------------------------------------


def tamagawa(family: str, n: int, delta_trivial: bool = True) -> int:
    """Tamagawa number: 2 for special orthogonal groups of dimension >= 3 (and
    for the nonsplit two-dimensional ones), 1 for GL_j and the degenerate cases."""
    if family == "GL":
        return 1
    if family != "SO":
        raise ExactDomainError(f"unknown family {family!r}")
    if n >= 3:
        return 2
    if n == 2:
        return 1 if delta_trivial else 2
    return 1


def tamagawa_endo(params: EndoParams) -> int:
    return tamagawa("SO", params.d_plus, params.delta_plus.is_trivial) * tamagawa(
        "SO", params.d_minus, params.delta_minus.is_trivial
    )


def k_invariants(family: str, m: int) -> tuple[int, int]:
    """(k', k) = (|H^1(R, T_e)|, image count from the simply connected cover):
    (2^m, 2^(m-1)) for SO of absolute rank m >= 1, (1, 1) for GL_1, GL_2 and rank 0."""
    if family == "GL":
        return (1, 1)
    if family != "SO":
        raise ExactDomainError(f"unknown family {family!r}")
    if m < 0:
        raise ExactDomainError("rank must be >= 0")
    if m == 0:
        return (1, 1)
    return (2 ** m, 2 ** (m - 1))


def k_of_so_dim(d: int) -> int:
    return k_invariants("SO", d // 2)[1]


def iota(d: int, h: EndoParams) -> Fraction:
    """iota(G, H) = tau(G) / (tau(H) |Out(H, s, eta)|)."""
    if h.d != d:
        raise ExactDomainError("datum does not belong to a group of this dimension")
    return Fraction(tamagawa("SO", d), tamagawa_endo(h) * out_group_size(h))


def n_G_M(levi: str) -> int:
    """Order of the normalizer quotient: 8 for M12, 2 for M1 and M2."""
    if levi == "M12":
        return 8
    if levi in ("M1", "M2"):
        return 2
    raise ExactDomainError(f"no n^G_M for {levi!r}")


def so_is_cuspidal_R(d: int, delta_real: SquareClass) -> bool:
    """SO(d) over R is cuspidal (has an elliptic maximal torus) iff d is odd or
    the real discriminant equals (-1)^(d/2)."""
    if d <= 1:
        return True
    if d % 2 == 1:
        return True
    want = 1 if (d // 2) % 2 == 0 else -1
    return delta_real.rep == want


def levi_is_cuspidal(levi: str, d: int) -> bool:
    """M1 and M12 are always cuspidal; M2 is cuspidal iff d is odd."""
    if levi in ("M1", "M12"):
        return True
    if levi == "M2":
        return d % 2 == 1
    if levi == "G":
        return True
    raise ExactDomainError(f"unknown Levi {levi!r}")


def endo_is_cuspidal_R(params: EndoParams) -> bool:
    """Both factors must be cuspidal over R (real classes required in even case)."""
    if params.parity == "odd":
        return True
    for d, delta in ((params.d_plus, params.delta_plus), (params.d_minus, params.delta_minus)):
        c = delta if delta.context == REAL_CONTEXT else delta.localize(Place.real())
        if not so_is_cuspidal_R(d, c):
            return False
    return True


def is_unramified_at_p(params: EndoParams, p: int) -> bool:
    """Odd-case data are automatically unramified; even-case data are unramified
    at odd p iff both discriminants have even p-adic valuation."""
    if p == 2:
        raise ExactDomainError("unramifiedness test implemented at odd primes only")
    if params.parity == "odd":
        return True
    for delta in (params.delta_plus, params.delta_minus):
        if delta.context == REAL_CONTEXT:
            raise ExactDomainError("need global or p-adic discriminants")
        if delta.context == GLOBAL:
            val = padic_valuation(delta.as_rational(), p)
        else:
            if delta.context != p:
                raise ExactDomainError("discriminant lives at a different prime")
            val = delta.rep[0]
        if val % 2:
            return False
    return True


def tau_k_identity_check(levi: str, g: GEndoParams, d: int) -> bool:
    """tau(G)/tau(H) * tau(M')/tau(M) == k(H)/k(G) * k(M)/k(M')."""
    i = 1 if levi == "M2" else 2
    h = to_EG(g)
    b = g.base
    tau_G = tamagawa("SO", d)
    tau_H = tamagawa_endo(h)
    tau_M = tamagawa("SO", d - 2 * i)  # GL factors contribute 1
    tau_Mp = tamagawa_endo(b)
    lhs = Fraction(tau_G, tau_H) * Fraction(tau_Mp, tau_M)
    k_G = k_invariants("SO", d // 2)[1]
    k_H = k_invariants("SO", h.d_plus // 2)[1] * k_invariants("SO", h.d_minus // 2)[1]
    k_M = k_invariants("SO", (d - 2 * i) // 2)[1]
    k_Mp = k_invariants("SO", b.d_plus // 2)[1] * k_invariants("SO", b.d_minus // 2)[1]
    rhs = Fraction(k_H, k_G) * Fraction(k_M, k_Mp)
    return lhs == rhs
