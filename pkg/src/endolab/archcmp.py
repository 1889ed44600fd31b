"""Kostant-Weyl terms and normalized discrete-series character sums for the
standard Levis of SO(d-2, 2), and the exact verification of the archimedean
comparison and symmetry identities.

Both sides of each identity are computed through disjoint code paths: the
Kostant-Weyl term goes through Kostant cohomology entries, weight truncation
and Levi Weyl characters; the character sum goes through the rank <= 2 cone
tables.  All values are normalized by the same positive factor
delta_P^(1/2) Delta_M^(-1), so equality of the normalized values is equivalent
to the stated identities.  The chamber position x = (log|a|, log|b|) is never
computed with logarithms: its cone is decided by exact comparisons of |a|, |b|
against 1 and each other.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .dsconst import cone_constant_1d, cone_constant_2d
from .errors import ExactDomainError, SingularPointError
from .exactnum import GaussianRational, sqrt_fraction
from .rootdata import (
    COMPACT,
    PAIR_FIRST,
    PAIR_SECOND,
    SPLIT,
    LeviBlocks,
    RootDatum,
    TorusPoint,
    Weight,
    WeylElement,
    circle_point,
    evaluate_root,
    kostant_cohomology,
    levi_positive_roots,
    pi1_covector,
    pi2_covector,
    rho,
    standard_levi,
    weyl_character,
    weyl_table,
)


@dataclass(frozen=True)
class ArchCase:
    """A comparison case: Levi in {M1, M2, M12}, ambient dimension d >= 7 and a
    dominant integral highest weight (the even case M2 has no elliptic
    elements and is rejected)."""

    levi: str
    d: int
    lam: tuple[int, ...]

    def __post_init__(self):
        if self.levi not in ("M1", "M2", "M12"):
            raise ExactDomainError("Levi must be M1, M2 or M12")
        if self.d < 7:
            raise ExactDomainError("d must be >= 7")
        if self.levi == "M2" and self.d % 2 == 0:
            raise ExactDomainError("even-dimensional M2 has no R-elliptic elements")
        if len(self.lam) != self.d // 2:
            raise ExactDomainError("highest weight has wrong rank")

    @property
    def parity(self) -> str:
        return "odd" if self.d % 2 else "even"

    @property
    def m(self) -> int:
        return self.d // 2

    @property
    def datum(self) -> RootDatum:
        return RootDatum("B" if self.d % 2 else "D", self.m)

    @property
    def q_G(self) -> int:
        return self.d - 2  # q(SO(d-2, 2)) = (d-2) 2 / 2

    def weight(self) -> Weight:
        return Weight.from_ints(self.lam)


@dataclass(frozen=True)
class GammaSample:
    """Exact torus point data: split coordinates a (and b), compact coordinates
    given by rational tangent-half-angle parameters."""

    a: Fraction
    b: Optional[Fraction]
    circle_params: tuple[Fraction, ...]

    def circle(self) -> tuple[GaussianRational, ...]:
        return tuple(circle_point(t) for t in self.circle_params)


def torus_point(case: ArchCase, sample: GammaSample) -> TorusPoint:
    z = sample.circle()
    if case.levi == "M1":
        if sample.b is None:
            raise ExactDomainError("case M1 needs both a and b")
        if len(z) != case.m - 2:
            raise ExactDomainError("wrong number of compact coordinates")
        first = GaussianRational(sample.a, sample.b)
        return TorusPoint(
            (first, first.conjugate()) + z,
            (PAIR_FIRST, PAIR_SECOND) + (COMPACT,) * len(z),
        )
    if case.levi == "M2":
        if len(z) != case.m - 1:
            raise ExactDomainError("wrong number of compact coordinates")
        return TorusPoint((GaussianRational(sample.a),) + z, (SPLIT,) + (COMPACT,) * len(z))
    if sample.b is None:
        raise ExactDomainError("case M12 needs both a and b")
    if len(z) != case.m - 2:
        raise ExactDomainError("wrong number of compact coordinates")
    return TorusPoint(
        (GaussianRational(sample.a), GaussianRational(sample.b)) + z,
        (SPLIT, SPLIT) + (COMPACT,) * len(z),
    )


# --- cached per-(case, lambda) Weyl data --------------------------------------


@lru_cache(maxsize=64)
def _omega_data(kind: str, m: int, lam: tuple[int, ...]):
    """Per Weyl element: (sign, inversion indices, w(lam) ints, w(lam+rho) doubled)."""
    datum = RootDatum(kind, m)
    shifted = Weight.from_ints(lam) + rho(datum)
    out = []
    for w, inv_idx, eps in weyl_table(kind, m):
        out.append((eps, inv_idx, w.act_tuple(lam), w.act_tuple(shifted.doubled)))
    return datum.positive_roots(), tuple(out)


@lru_cache(maxsize=64)
def _kostant_data(kind: str, m: int, levi_label: str, lam: tuple[int, ...], cutoffs: tuple[str, ...]):
    """Truncated Kostant entries for the Levi: (parity sign, gl weight ints, so weight)."""
    datum = RootDatum(kind, m)
    levi = standard_levi(levi_label, m)
    r = rho(datum)
    pi = {"pi1": pi1_covector(m), "pi2": pi2_covector(m)}
    entries = []
    for deg, mu in kostant_cohomology(datum, levi, Weight.from_ints(lam)):
        if all((mu + r).pairing_doubled(pi[c]) > 0 for c in cutoffs):
            c = mu.int_coords()
            entries.append((-1 if deg % 2 else 1, c[: levi.so_start], c[levi.so_start :]))
    return tuple(entries)


def _sub_point(gamma: TorusPoint, start: int) -> TorusPoint:
    return TorusPoint(gamma.coords[start:], gamma.pattern[start:])


def _gl2_schur(mu: tuple[int, int], x: GaussianRational, y: GaussianRational) -> GaussianRational:
    a, b = mu
    if x == y:
        raise SingularPointError("GL_2 character at a singular point")
    num = x ** (a + 1) * y ** b - x ** b * y ** (a + 1)
    return num / (x - y)


def _levi_character(
    case_levi: str, kind: str, m: int, gl: tuple[int, ...], so: tuple[int, ...], gamma: TorusPoint
) -> GaussianRational:
    """Character of the Levi irreducible at gamma: GL blocks times the SO tail."""
    if case_levi == "M1":
        val = _gl2_schur((gl[0], gl[1]), gamma.coords[0], gamma.coords[1])
        start = 2
    elif case_levi == "M12":
        val = gamma.coords[0] ** gl[0] * gamma.coords[1] ** gl[1]
        start = 2
    else:  # M2
        val = gamma.coords[0] ** gl[0]
        start = 1
    if so:
        sub = RootDatum(kind, m - start)
        val = val * weyl_character(sub, Weight.from_ints(so), _sub_point(gamma, start))
    return val


def _delta_factor(datum: RootDatum, levi: LeviBlocks, gamma: TorusPoint) -> GaussianRational:
    """Delta_M(gamma) = prod over Levi-positive roots of (1 - alpha^-1(gamma))."""
    one = GaussianRational(1)
    out = one
    for alpha in levi_positive_roots(datum, levi):
        v = evaluate_root(gamma, alpha)
        if v == one:
            raise SingularPointError("gamma on a Levi root wall")
        out = out * (one - v.inverse())
    return out


def _kostant_trace(
    case: ArchCase, levi_label: str, cutoffs: tuple[str, ...], gamma: TorusPoint
) -> GaussianRational:
    kind = case.datum.kind
    entries = _kostant_data(kind, case.m, levi_label, case.lam, cutoffs)
    total = GaussianRational(0)
    for sgn, gl, so in entries:
        val = _levi_character(levi_label, kind, case.m, gl, so, gamma)
        total = total + (val if sgn == 1 else -val)
    return total


def _check_regular(case: ArchCase, gamma: TorusPoint):
    one = GaussianRational(1)
    for alpha in case.datum.positive_roots():
        if evaluate_root(gamma, alpha) == one:
            raise SingularPointError(f"gamma is singular at root {alpha}")


def indicators_N(datum: RootDatum, lam: Weight, w: WeylElement, which: int) -> int:
    """The three cone indicators of chi = w(lam + rho): N1 tests both
    <chi, pi_1> > 0 and <chi, pi_2> > 0, N2 the same after the chamber move
    omega_0 (which fixes pi_2 and sends pi_1 to e_1^v - e_2^v), N3 only
    <chi, pi_2> > 0."""
    chi = w.act(lam + rho(datum))
    m = datum.rank
    p1 = chi.pairing_doubled(pi1_covector(m))
    p2 = chi.pairing_doubled(pi2_covector(m))
    p1_moved = chi.pairing_doubled((1, -1) + (0,) * (m - 2))
    if which == 1:
        return 1 if (p1 > 0 and p2 > 0) else 0
    if which == 2:
        return 1 if (p1_moved > 0 and p2 > 0) else 0
    if which == 3:
        return 1 if p2 > 0 else 0
    raise ExactDomainError("which must be 1, 2 or 3")


# --- the Kostant-Weyl terms ----------------------------------------------------


def L_M_normalized(case: ArchCase, sample: GammaSample) -> GaussianRational:
    """The Kostant-Weyl term divided by the common factor delta_P^(1/2) Delta_M^(-1).

    Cases M1/M2 are single truncated traces (M2 carries the factor 2); case M12
    adds the conjugate-by-n_12 term and subtracts the intermediate M2 term, with
    the exact square root of the delta_P ratio and the sign eta_2.
    """
    gamma = torus_point(case, sample)
    _check_regular(case, gamma)
    datum = case.datum
    m = case.m
    if case.levi == "M1":
        levi = standard_levi("M1", m)
        return _delta_factor(datum, levi, gamma) * _kostant_trace(case, "M1", ("pi1",), gamma)
    if case.levi == "M2":
        levi = standard_levi("M2", m)
        tr = _kostant_trace(case, "M2", ("pi2",), gamma)
        return 2 * (_delta_factor(datum, levi, gamma) * tr)
    # M12
    b = sample.b
    if b is None or b in (0, 1, -1):
        raise SingularPointError("b on a wall")
    levi12 = standard_levi("M12", m)
    levi2 = standard_levi("M2", m)
    if case.parity == "odd":
        omega0 = WeylElement((1, -1) + (1,) * (m - 2), tuple(range(m)))
        eta2 = -1 if 0 < b < 1 else 1
    else:
        omega0 = WeylElement((1, -1, -1) + (1,) * (m - 3), tuple(range(m)))
        eta2 = 1
    gamma_p = gamma.apply(omega0)
    # norm(alpha(gamma)) = |alpha(gamma)|^2, so this product is the 4th power of
    # the ratio delta_P^(1/2)(gamma') / delta_P^(1/2)(gamma); both square roots
    # are exact because only even powers of |b| survive.
    ratio_4th = Fraction(1)
    levi_pos = set(levi_positive_roots(datum, levi12))
    for alpha in datum.positive_roots():
        if alpha in levi_pos:
            continue
        ratio_4th *= evaluate_root(gamma_p, alpha).norm() / evaluate_root(gamma, alpha).norm()
    ratio = sqrt_fraction(sqrt_fraction(ratio_4th))
    delta_M = _delta_factor(datum, levi12, gamma)
    t_gamma = _kostant_trace(case, "M12", ("pi1", "pi2"), gamma)
    t_gamma_p = _kostant_trace(case, "M12", ("pi1", "pi2"), gamma_p)
    t_m2 = _kostant_trace(case, "M2", ("pi2",), gamma)
    delta_M2 = _delta_factor(datum, levi2, gamma)
    return delta_M * t_gamma + ratio * (delta_M * t_gamma_p) - eta2 * (delta_M2 * t_m2)


# --- the character sums ---------------------------------------------------------


def _x_chamber_rep(abs_a: Fraction, abs_b: Fraction) -> tuple[Fraction, Fraction]:
    """A rational point in the cone of x = (log|a|, log|b|), decided by exact
    comparisons of |a|, |b|, |ab| and |a/b| against 1."""
    s1 = _sign(abs_a - 1)
    s2 = _sign(abs_b - 1)
    sdiff = _sign(abs_a - abs_b)
    ssum = _sign(abs_a * abs_b - 1)
    if 0 in (s1, s2, sdiff, ssum):
        raise SingularPointError("chamber position on a wall")
    for ref in ((2, 1), (1, 2), (-1, 2), (-2, 1), (-2, -1), (-1, -2), (1, -2), (2, -1)):
        if (
            _sign(ref[0]) == s1
            and _sign(ref[1]) == s2
            and _sign(ref[0] - ref[1]) == sdiff
            and _sign(ref[0] + ref[1]) == ssum
        ):
            return (Fraction(ref[0]), Fraction(ref[1]))
    raise SingularPointError("chamber position on a wall")


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _epsilon_R(case: ArchCase, sample: GammaSample, endos: bool = False) -> int:
    """(-1) to the number of positive real roots sending gamma into (0, 1)."""
    a, b = sample.a, sample.b
    if case.levi == "M1":
        vals = [a * a + b * b]
    elif case.levi == "M2":
        vals = [a]
    elif endos:
        vals = [a, b]
    elif case.parity == "odd":
        vals = [a, b, a * b, a / b]
    else:
        vals = [a * b, a / b]
    count = sum(1 for v in vals if 0 < v < 1)
    if any(v == 1 for v in vals):
        raise SingularPointError("gamma on a real root wall")
    return -1 if count % 2 else 1


def _character_sum(case: ArchCase, gamma: TorusPoint, coefficients) -> GaussianRational:
    """sum over Omega of eps(w) c(w) (w lam)(gamma) prod_{a in Phi(w)} a^-1(gamma),
    with c(w) = coefficients(chi) an integer function of chi = w(lam + rho)."""
    pos, table = _omega_data(case.datum.kind, case.m, case.lam)
    one = GaussianRational(1)
    inv_vals = []
    for alpha in pos:
        v = evaluate_root(gamma, alpha)
        if v == one:
            raise SingularPointError("gamma on a root wall")
        inv_vals.append(v.inverse())
    coord_pows: list[dict[int, GaussianRational]] = []
    max_e = max((abs(c) for c in case.lam), default=0)
    for z in gamma.coords:
        d = {0: one}
        for e in range(1, max_e + 1):
            d[e] = d[e - 1] * z
        zi = z.inverse()
        for e in range(1, max_e + 1):
            d[-e] = d[-(e - 1)] * zi
        coord_pows.append(d)
    total = GaussianRational(0)
    for eps, inv_idx, wlam, chi2 in table:
        c = coefficients(chi2)
        if c == 0:
            continue
        term = one
        for j, e in enumerate(wlam):
            if e:
                term = term * coord_pows[j][e]
        for i in inv_idx:
            term = term * inv_vals[i]
        total = total + (eps * c) * term
    return total


def Phi_normalized(case: ArchCase, sample: GammaSample) -> GaussianRational:
    """The normalized character sum (-1)^q(G) eps_R(gamma) sum_w eps(w)
    n(gamma, wB) (w lam)(gamma) prod a^-1(gamma); exact zero off the identity
    component."""
    a, b = sample.a, sample.b
    gamma = torus_point(case, sample)
    _check_regular(case, gamma)
    q_sign = -1 if case.q_G % 2 else 1
    if case.levi == "M1":
        sq = a * a + b * b
        if sq == 1:
            raise SingularPointError("a^2 + b^2 = 1 is a wall")
        x_sign = 1 if sq > 1 else -1
        coeff = lambda chi2: cone_constant_1d(x_sign, chi2[0] + chi2[1])
        return (q_sign * _epsilon_R(case, sample)) * _character_sum(case, gamma, coeff)
    if case.levi == "M2":
        if a < 0:
            return GaussianRational(0)
        if abs(a) == 1:
            raise SingularPointError("|a| = 1 is a wall")
        x_sign = 1 if a > 1 else -1
        coeff = lambda chi2: cone_constant_1d(x_sign, chi2[0])
        return (q_sign * _epsilon_R(case, sample)) * _character_sum(case, gamma, coeff)
    if a * b < 0:
        return GaussianRational(0)
    xr = _x_chamber_rep(abs(a), abs(b))
    if case.parity == "odd" and a > 0:
        system = "B2"
    else:
        system = "D2"
    coeff = lambda chi2: cone_constant_2d(xr, (Fraction(chi2[0], 2), Fraction(chi2[1], 2)), system)
    return (q_sign * _epsilon_R(case, sample)) * _character_sum(case, gamma, coeff)


def Phi_endos_normalized(case: ArchCase, sample: GammaSample) -> GaussianRational:
    """The endoscopic variant for the odd case M12, built on the short root
    system +-e1, +-e2 but weighted by eps_R of the full system; exact zero
    unless a, b > 0."""
    if case.levi != "M12" or case.parity != "odd":
        raise ExactDomainError("the endoscopic variant lives on odd-case M12")
    a, b = sample.a, sample.b
    if a < 0 or b < 0:
        return GaussianRational(0)
    gamma = torus_point(case, sample)
    _check_regular(case, gamma)
    q_sign = -1 if case.q_G % 2 else 1
    xr = _x_chamber_rep(abs(a), abs(b))
    coeff = lambda chi2: cone_constant_2d(xr, (Fraction(chi2[0], 2), Fraction(chi2[1], 2)), "A1xA1")
    return (q_sign * _epsilon_R(case, sample)) * _character_sum(case, gamma, coeff)


def epsilon_R_endos(case: ArchCase, sample: GammaSample) -> int:
    return _epsilon_R(case, sample, endos=True)


# --- identity verification ------------------------------------------------------


@dataclass
class ArchReport:
    case: str
    d: int
    lam: tuple[int, ...]
    range_label: str
    samples: int
    seed: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _rng_fraction(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction:
    den = rng.randint(7, 40)
    lo_n = int(lo * den) + 1
    hi_n = int(hi * den) - 1
    if hi_n < lo_n:
        return (lo + hi) / 2
    return Fraction(rng.randint(lo_n, hi_n), den)


def _sample_circles(rng: random.Random, count: int) -> tuple[Fraction, ...]:
    out = []
    seen = set()
    while len(out) < count:
        t = Fraction(rng.randint(1, 200), rng.randint(201, 400))
        if t in seen or t == 0:
            continue
        seen.add(t)
        out.append(t)
    return tuple(out)


def sample_in_range(case: ArchCase, rng: random.Random, region: str = "stated") -> GammaSample:
    """Draw an exact sample in the stated range of the case's comparison
    identity (or in a vanishing/out-of-range control region)."""
    m = case.m
    n_circ = m - 1 if case.levi == "M2" else m - 2
    while True:
        circ = _sample_circles(rng, n_circ)
        if case.levi == "M1":
            a = _rng_fraction(rng, Fraction(-2, 3), Fraction(2, 3))
            b = rng.choice((1, -1)) * _rng_fraction(rng, Fraction(1, 40), Fraction(2, 3))
            if a * a + b * b >= 1 or a == 0 or b == 0:
                continue
            if region == "out_of_range":
                a, b = 1 + abs(a), b  # a^2 + b^2 > 1
            sample = GammaSample(a, b, circ)
        elif case.levi == "M2":
            a = _rng_fraction(rng, Fraction(1, 50), Fraction(49, 50))
            if region == "vanishing":
                a = -a
            elif region == "out_of_range":
                a = 1 / a
            sample = GammaSample(a, None, circ)
        else:
            sgn = rng.choice((1, -1))
            big_b = rng.choice((True, False))
            b = _rng_fraction(rng, Fraction(1, 3), Fraction(9, 10))
            if big_b:
                b = 1 / b
            bound = min(abs(b), 1 / abs(b))
            a = _rng_fraction(rng, Fraction(1, 50), bound)
            if a >= bound or a == 0:
                continue
            a, b = sgn * a, sgn * b
            if region == "vanishing":
                a = -a  # mixed signs
            elif region == "out_of_range":
                a, b = b, a  # |a| > |b|-side: x1 > -|x2|
            sample = GammaSample(a, b, circ)
        try:
            gamma = torus_point(case, sample)
            _check_regular(case, gamma)
        except (SingularPointError, ExactDomainError):
            continue
        return sample


def identity_gap(case: ArchCase, sample: GammaSample) -> GaussianRational:
    """LHS - RHS of the case's comparison identity at the sample (zero = pass)."""
    q_sign = -1 if case.q_G % 2 else 1
    if case.levi == "M1":
        return Phi_normalized(case, sample) - (-2 * q_sign) * L_M_normalized(case, sample)
    if case.levi == "M2":
        a = sample.a
        if a < 0:
            return Phi_normalized(case, sample)
        return Phi_normalized(case, sample) - (-q_sign) * L_M_normalized(case, sample)
    if sample.a * sample.b < 0:
        total = Phi_normalized(case, sample)
        if case.parity == "odd":
            total = total + Phi_endos_normalized(case, sample)
        return total
    lhs = 4 * q_sign * L_M_normalized(case, sample)
    rhs = Phi_normalized(case, sample)
    if case.parity == "odd":
        rhs = rhs + Phi_endos_normalized(case, sample)
    return lhs - rhs


def verify_identity(
    case: ArchCase,
    samples: int,
    seed: int,
    region: str = "stated",
    vanishing_controls: int = 0,
) -> ArchReport:
    """Exact verification of the comparison identity on random samples in the
    stated range, plus optional vanishing-region controls."""
    rng = random.Random(seed)
    report = ArchReport(case.levi, case.d, case.lam, region, samples, seed)
    zero = GaussianRational(0)
    for k in range(samples):
        sample = sample_in_range(case, rng, region)
        gap = identity_gap(case, sample)
        if gap != zero:
            report.failures.append(
                {
                    "index": k,
                    "a": str(sample.a),
                    "b": str(sample.b) if sample.b is not None else None,
                    "circle": [str(t) for t in sample.circle_params],
                    "gap_re": str(gap.re),
                    "gap_im": str(gap.im),
                }
            )
    controls = vanishing_controls
    if case.levi in ("M2", "M12"):
        for k in range(controls):
            sample = sample_in_range(case, rng, "vanishing")
            gap = identity_gap(case, sample)
            if gap != zero:
                report.failures.append({"index": f"vanish-{k}", "a": str(sample.a)})
    return report


def _delta_half_ratio(case: ArchCase, gamma: TorusPoint, gamma_p: TorusPoint) -> Fraction:
    """delta_P^(1/2)(gamma') / delta_P^(1/2)(gamma), an exact positive rational."""
    datum = case.datum
    levi_pos = set(levi_positive_roots(datum, standard_levi(case.levi, case.m)))
    ratio_4th = Fraction(1)
    for alpha in datum.positive_roots():
        if alpha in levi_pos:
            continue
        ratio_4th *= evaluate_root(gamma_p, alpha).norm() / evaluate_root(gamma, alpha).norm()
    return sqrt_fraction(sqrt_fraction(ratio_4th))


def verify_symmetry(case: ArchCase, sample: GammaSample, mode: str) -> bool:
    """The swap (a,b) -> (b,a) preserves Phi and negates the eps_R eps_R_endos
    weighted endoscopic sum; inverting a -> 1/a preserves both.

    The statements concern the un-normalized sums, so the two normalized values
    are compared through the exact delta_P^(1/2)-ratio (the Levi factor Delta_M
    is invariant under both moves).
    """
    if case.levi != "M12" or case.parity != "odd":
        raise ExactDomainError("symmetry checks live on odd-case M12")
    a, b = sample.a, sample.b
    if a * b <= 0 or a == b:
        raise ExactDomainError("need ab > 0 and a != b")
    if mode == "swap":
        other = GammaSample(b, a, sample.circle_params)
        expected_sign = -1
    elif mode == "invert":
        other = GammaSample(1 / a, b, sample.circle_params)
        expected_sign = 1
    else:
        raise ExactDomainError("mode must be swap or invert")
    r = _delta_half_ratio(case, torus_point(case, sample), torus_point(case, other))
    phi1 = Phi_normalized(case, sample)
    phi2 = Phi_normalized(case, other)
    if phi1 != r * phi2:
        return False
    w1 = _epsilon_R(case, sample) * epsilon_R_endos(case, sample)
    w2 = _epsilon_R(case, other) * epsilon_R_endos(case, other)
    e1 = Phi_endos_normalized(case, sample)
    e2 = Phi_endos_normalized(case, other)
    return w1 * e1 == (expected_sign * w2 * r) * e2
