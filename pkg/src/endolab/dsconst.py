"""Discrete-series constants: Herb's partition formula for products of type
B/D/A1 factors, the explicit rank-2 cone tables, and the vanishing quantities
M_i, N attached to non-transferring Levis.

All partition sums drop the overall normalization constant (it is independent
of the subset A being summed over, and every verified claim is of the form
"this signed A-sum vanishes").
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ExactDomainError, ResourceLimitError, SingularPointError
from .exactnum import RationalLike, _as_fraction


@dataclass(frozen=True)
class Partition2:
    """Unordered partition into blocks of size 1 or 2; `marked` singles out one
    singleton block in the two-singleton variant."""

    blocks: tuple[tuple[int, ...], ...]
    marked: Optional[tuple[int, ...]] = None


def _sorting_sign(seq: Sequence[int]) -> int:
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


def _partition_sign(blocks: Sequence[tuple[int, ...]]) -> int:
    """Sign of the permutation sorting the block concatenation (blocks listed in
    the given enumeration order, each block ascending)."""
    seq = [x for b in blocks for x in sorted(b)]
    return _sorting_sign(seq)


def partitions_le2(index_set: Sequence[int]) -> list[tuple[Partition2, int]]:
    """All partitions of the set into 2-blocks plus at most one singleton, with signs."""
    elts = sorted(index_set)
    if len(elts) > 14:
        raise ResourceLimitError("partition enumeration refused beyond 14 elements")
    out: list[tuple[Partition2, int]] = []

    def rec(remaining: tuple[int, ...], acc: list[tuple[int, ...]], used_singleton: bool):
        if not remaining:
            blocks = tuple(sorted(acc))
            out.append((Partition2(blocks), _partition_sign(blocks)))
            return
        head, rest = remaining[0], remaining[1:]
        for k, partner in enumerate(rest):
            rec(rest[:k] + rest[k + 1 :], acc + [(head, partner)], used_singleton)
        if not used_singleton:
            rec(rest, acc + [(head,)], True)

    rec(tuple(elts), [], False)
    return out


def partitions_prime(index_set: Sequence[int]) -> list[tuple[Partition2, int]]:
    """Partitions of an even-size set with exactly two singletons, one marked.

    The sign enumerates the marked singleton after the unmarked one.
    """
    elts = sorted(index_set)
    if len(elts) % 2:
        raise ExactDomainError("the two-singleton variant needs an even set")
    if len(elts) > 14:
        raise ResourceLimitError("partition enumeration refused beyond 14 elements")
    out: list[tuple[Partition2, int]] = []
    for s1, s2 in itertools.combinations(elts, 2):
        rest = [x for x in elts if x not in (s1, s2)]
        for pairing, _ in partitions_le2(rest):
            if any(len(b) == 1 for b in pairing.blocks):
                continue
            for marked in ((s1,), (s2,)):
                unmarked = (s2,) if marked == (s1,) else (s1,)
                blocks = tuple(sorted(pairing.blocks)) + (unmarked, marked)
                sign = _partition_sign(blocks)
                out.append((Partition2(tuple(sorted(blocks)), marked=marked), sign))
    return out


def c1(a: RationalLike) -> int:
    """Indicator a > 0."""
    return 1 if _as_fraction(a) > 0 else 0


def c2B(a: RationalLike, b: RationalLike) -> int:
    """Indicator 0 < a < b or 0 < -b < a."""
    a, b = _as_fraction(a), _as_fraction(b)
    return 1 if (0 < a < b) or (0 < -b < a) else 0


def c2D(a: RationalLike, b: RationalLike) -> int:
    """Indicator a > |b|."""
    a, b = _as_fraction(a), _as_fraction(b)
    return 1 if a > abs(b) else 0


def c_functions(kind: str, args: Sequence[RationalLike]) -> int:
    if kind == "c1":
        (a,) = args
        return c1(a)
    if kind == "c2B":
        a, b = args
        return c2B(a, b)
    if kind == "c2D":
        a, b = args
        return c2D(a, b)
    raise ExactDomainError(f"unknown cone function {kind!r}")


@dataclass(frozen=True)
class ProductRootSystem:
    """Product of B/D/A1 factors acting on disjoint index subsets."""

    factors: tuple[tuple[str, tuple[int, ...]], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for kind, support in self.factors:
            if kind not in ("B", "D", "A1"):
                raise ExactDomainError(f"unknown factor type {kind!r}")
            if kind == "A1" and len(support) != 1:
                raise ExactDomainError("A1 factors act on a single coordinate")
            if kind == "D" and len(support) % 2:
                raise ExactDomainError("D factors here must have even support")
            if seen & set(support):
                raise ExactDomainError("factor supports must be disjoint")
            seen.update(support)


@dataclass(frozen=True)
class HerbInput:
    """Chamber position x and character direction chi (restricted weight mu).

    The partition formula is written for x in the canonical chamber (ordered
    coordinates in ]0,1[ after inversion), so only chi enters the sum; x is
    retained for wall checks.
    """

    x: Optional[tuple[Fraction, ...]]
    chi: tuple[Fraction, ...]


def _block_sum(kind: str, support: tuple[int, ...], mu: Sequence[Fraction]) -> int:
    if kind == "A1":
        return c1(mu[support[0]])
    total = 0
    for part, sign in partitions_le2(support):
        prod = 1
        for block in part.blocks:
            if len(block) == 1:
                if kind == "D":
                    raise ExactDomainError("D factor with odd support")
                prod *= c1(mu[block[0]])
            else:
                s1, s2 = block
                prod *= c2B(mu[s1], mu[s2]) if kind == "B" else c2D(mu[s1], mu[s2])
            if prod == 0:
                break
        total += sign * prod
    return total


def herb_sum(sys: ProductRootSystem, inp: HerbInput, case: str = "odd") -> int:
    """Herb's partition sum for the product system, without the overall constant.

    Each factor contributes an independent signed sum over its partitions, so
    the quadruple sum over (p1+, p1-, p2+, p2-) factorizes.
    """
    if case not in ("odd", "even"):
        raise ExactDomainError("case must be odd or even")
    if case == "even" and any(kind == "B" for kind, _ in sys.factors):
        raise ExactDomainError("the even case uses type D factors only")
    mu = inp.chi
    for kind, support in sys.factors:
        for s in support:
            if s >= len(mu):
                raise ExactDomainError("factor support outside the weight vector")
            if mu[s] == 0:
                raise SingularPointError("weight coordinate on a wall")
    total = 1
    for kind, support in sys.factors:
        total *= _block_sum(kind, support, mu)
        if total == 0:
            break
    return total


def herb_sum_direct(sys: ProductRootSystem, inp: HerbInput, case: str = "odd") -> int:
    """Independent enumerator: the same sum without the per-factor factorization,
    iterating the full product of partition choices."""
    if case == "even" and any(kind == "B" for kind, _ in sys.factors):
        raise ExactDomainError("the even case uses type D factors only")
    mu = inp.chi
    choices = []
    for kind, support in sys.factors:
        if kind == "A1":
            choices.append([(None, 1, c1(mu[support[0]]))])
            continue
        opts = []
        for part, sign in partitions_le2(support):
            prod = 1
            for block in part.blocks:
                if len(block) == 1:
                    prod *= c1(mu[block[0]])
                else:
                    s1, s2 = block
                    prod *= c2B(mu[s1], mu[s2]) if kind == "B" else c2D(mu[s1], mu[s2])
            opts.append((part, sign, prod))
        choices.append(opts)
    total = 0
    for combo in itertools.product(*choices):
        sign = 1
        prod = 1
        for _, s, p in combo:
            sign *= s
            prod *= p
        total += sign * prod
    return total


# --- explicit rank <= 2 cone tables ------------------------------------------

_RANK2_WEYL = [
    (s1, s2, swap)
    for s1 in (1, -1)
    for s2 in (1, -1)
    for swap in (False, True)
]


def _apply_rank2(elem, v):
    s1, s2, swap = elem
    a, b = v
    if swap:
        a, b = b, a
    return (s1 * a, s2 * b)


def cone_constant_2d(
    x: tuple[RationalLike, RationalLike],
    chi: tuple[RationalLike, RationalLike],
    system: str,
) -> int:
    """Discrete-series constant for the rank-2 real root systems, from the
    explicit cone tables; values in {0, 4} per system (sums across systems
    reach 8).

    system: "B2" (all of +-e_i, +-e1+-e2), "D2" (+-e1+-e2), "A1xA1" (+-e1, +-e2).
    """
    x = (_as_fraction(x[0]), _as_fraction(x[1]))
    chi = (_as_fraction(chi[0]), _as_fraction(chi[1]))
    if system == "A1xA1":
        if 0 in x or 0 in chi:
            raise SingularPointError("cone-wall input")
        return 4 if (x[0] * chi[0] < 0 and x[1] * chi[1] < 0) else 0
    if system == "D2":
        ux, vx = x[0] + x[1], x[0] - x[1]
        uc, vc = chi[0] + chi[1], chi[0] - chi[1]
        if 0 in (ux, vx, uc, vc):
            raise SingularPointError("cone-wall input")
        return 4 if (ux * uc < 0 and vx * vc < 0) else 0
    if system != "B2":
        raise ExactDomainError(f"unknown rank-2 system {system!r}")
    # full B2: transport x into the base chamber x1 < x2 < 0 by a Weyl element
    # acting diagonally, then read the c2B cone table there.
    if x[0] * x[1] * (x[0] - x[1]) * (x[0] + x[1]) == 0:
        raise SingularPointError("cone-wall input")
    if chi[0] * chi[1] * (chi[0] - chi[1]) * (chi[0] + chi[1]) == 0:
        raise SingularPointError("cone-wall input")
    for elem in _RANK2_WEYL:
        wx = _apply_rank2(elem, x)
        if wx[0] < wx[1] < 0:
            wchi = _apply_rank2(elem, chi)
            return 4 * c2B(wchi[0], wchi[1])
    raise SingularPointError("chamber position lies on a cone wall")


def cone_constant_1d(x: RationalLike, chi: RationalLike) -> int:
    """Rank-1 discrete-series constant 2 [x chi < 0]."""
    x, chi = _as_fraction(x), _as_fraction(chi)
    if x == 0 or chi == 0:
        raise SingularPointError("cone-wall input")
    return 2 if x * chi < 0 else 0


# --- the vanishing quantities M_i and N --------------------------------------


def _omega0_sign(A: tuple[int, ...], universe: Sequence[int]) -> int:
    """Sign of the permutation listing the complement of A (ascending) then A."""
    comp = [i for i in universe if i not in A]
    return _sorting_sign(comp + list(A))


def vanishing_quantities(
    r: int,
    t: int,
    case: str,
    r_prime: int,
    mu: Sequence[RationalLike],
) -> tuple[list[int], int]:
    """The signed subset sums (M_1..M_r, N) over admissible sign-vector subsets A.

    r GL(1) coordinates split into r_prime positive ones and r - r_prime
    negative ones; t extra coordinates carry A1 factors whose contribution is
    constant in A.  The admissible A keep the negative parts even (odd case)
    or all four parts even (even case); each contributes its Herb partition sum
    with the signed weight epsilon_i(A) omega_0(A) (-1)^(...).
    """
    if case not in ("odd", "even"):
        raise ExactDomainError("case must be odd or even")
    if case == "even" and r % 2:
        raise ExactDomainError("the even case needs r even")
    if not (0 <= r_prime <= r):
        raise ExactDomainError("invalid sign split")
    mu = [_as_fraction(c) for c in mu]
    if len(mu) != r + t:
        raise ExactDomainError("mu must have r + t coordinates")
    mags = [abs(c) for c in mu[:r]]
    if 0 in mags or len(set(mags)) != r:
        raise ExactDomainError("mu must be regular (distinct nonzero magnitudes)")
    a1_factor = 1
    for j in range(t):
        a1_factor *= c1(mu[r + j])

    universe = list(range(r))
    i_plus = universe[:r_prime]
    i_minus = universe[r_prime:]
    plus_kind = "B" if case == "odd" else "D"

    cache: dict[tuple[str, tuple[int, ...]], int] = {}

    def block(kind: str, support: tuple[int, ...]) -> int:
        key = (kind, support)
        if key not in cache:
            cache[key] = _block_sum(kind, support, mu)
        return cache[key]

    M = [0] * r
    N = 0
    for bits in itertools.product((0, 1), repeat=r):
        A = tuple(i for i in universe if bits[i])
        a_plus = tuple(i for i in A if i < r_prime)
        a_minus = tuple(i for i in A if i >= r_prime)
        ac_plus = tuple(i for i in i_plus if not bits[i])
        ac_minus = tuple(i for i in i_minus if not bits[i])
        if len(a_minus) % 2 or len(ac_minus) % 2:
            continue
        if case == "even" and (len(a_plus) % 2 or len(ac_plus) % 2):
            continue
        cbar = (
            block(plus_kind, a_plus)
            * block(plus_kind, ac_plus)
            * block("D", a_minus)
            * block("D", ac_minus)
            * a1_factor
        )
        if cbar == 0:
            continue
        k = len(A)
        if case == "odd":
            coef = -1 if (k + (k + 1) // 2) % 2 else 1
        else:
            coef = -1 if (k // 2) % 2 else 1
        w = _omega0_sign(A, universe) * coef * cbar
        N += w
        for i in universe:
            M[i] += w if bits[i] else -w
    return M, N
