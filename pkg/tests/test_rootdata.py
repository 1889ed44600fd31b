import random
from fractions import Fraction

import pytest

from endolab.errors import ResourceLimitError, SingularPointError
from endolab.exactnum import GaussianRational
from endolab.laurent import Laurent
from endolab.rootdata import (
    COMPACT,
    SPLIT,
    RootDatum,
    TorusPoint,
    Weight,
    WeylElement,
    circle_point,
    formal_character,
    inversion_set,
    kostant_cohomology,
    kostant_euler_identity,
    kostant_reps,
    length,
    levi_is_dominant,
    levi_positive_roots,
    pi1_covector,
    pi2_covector,
    rho,
    sign,
    standard_levi,
    truncate_cohomology,
    weyl_character,
    weyl_enumerate,
    weyl_numerator,
)

B2, B3 = RootDatum("B", 2), RootDatum("B", 3)
D3 = RootDatum("D", 3)


def test_group_sizes():
    assert len(weyl_enumerate(B3)) == 48
    assert len(weyl_enumerate(RootDatum("D", 4))) == 192
    assert len(weyl_enumerate(RootDatum("D", 1))) == 1
    with pytest.raises(ResourceLimitError):
        weyl_enumerate(RootDatum("B", 9))


def test_group_laws_and_sign_homomorphism():
    rng = random.Random(1)
    elems = weyl_enumerate(B2)
    for _ in range(50):
        w1, w2 = rng.choice(elems), rng.choice(elems)
        prod = w1 * w2
        assert prod in elems
        assert sign(prod, B2) == sign(w1, B2) * sign(w2, B2)
        assert w1 * w1.inverse() == WeylElement.identity(2)


def test_rho():
    assert rho(B2).coords() == (Fraction(3, 2), Fraction(1, 2))
    assert rho(RootDatum("D", 2)).coords() == (Fraction(1), Fraction(0))
    assert rho(RootDatum("B", 1)).coords() == (Fraction(1, 2),)


def test_inversion_sets():
    ident = WeylElement.identity(2)
    assert inversion_set(ident, B2) == ()
    s2 = WeylElement((1, -1), (0, 1))
    assert inversion_set(s2, B2) == ((0, 1),)
    longest = max(weyl_enumerate(B3), key=lambda w: length(w, B3))
    assert length(longest, B3) == 9  # m^2


def test_weyl_character_standard_rep():
    B1 = RootDatum("B", 1)
    g = TorusPoint((GaussianRational(Fraction(5, 2)),), (SPLIT,))
    val = weyl_character(B1, Weight.from_ints([1]), g)
    assert val == GaussianRational(Fraction(5, 2) + 1 + Fraction(2, 5))


def test_weyl_character_trivial_and_invariance():
    gamma = TorusPoint(
        (GaussianRational(3), circle_point(Fraction(1, 3)), circle_point(Fraction(2, 7))),
        (SPLIT, COMPACT, COMPACT),
    )
    one = weyl_character(B3, Weight.from_ints([0, 0, 0]), gamma)
    assert one == GaussianRational(1)
    lam = Weight.from_ints([2, 1, 0])
    val = weyl_character(B3, lam, gamma)
    for w in random.Random(2).sample(weyl_enumerate(B3), 6):
        assert weyl_character(B3, lam, gamma.apply(w)) == val


def test_weyl_character_singular():
    gamma = TorusPoint((GaussianRational(1), GaussianRational(2)), (SPLIT, SPLIT))
    with pytest.raises(SingularPointError):
        weyl_character(B2, Weight.from_ints([1, 0]), gamma)


def test_kostant_reps_counts():
    reps = kostant_reps(B2, standard_levi("M2", 2))
    assert [length(w, B2) for w in reps] == [0, 1, 2, 3]
    assert kostant_reps(B2, standard_levi("G", 2)) == [WeylElement.identity(2)]
    for datum, label in [(B3, "M1"), (B3, "M12"), (D3, "M2")]:
        levi = standard_levi(label, datum.rank)
        reps = kostant_reps(datum, levi)
        levi_pos = set(levi_positive_roots(datum, levi))
        levi_group = [
            w for w in weyl_enumerate(datum) if set(inversion_set(w, datum)) <= levi_pos
        ]
        assert len(levi_group) * len(reps) == len(weyl_enumerate(datum))
        prods = {(wm * wp).signs + (wm * wp).perm for wm in levi_group for wp in reps}
        assert len(prods) == len(weyl_enumerate(datum))  # bijection


def test_kostant_cohomology_entries():
    lam = Weight.from_ints([0, 0, 0])
    entries = kostant_cohomology(B3, standard_levi("M1", 3), lam)
    assert len(entries) == len(kostant_reps(B3, standard_levi("M1", 3)))
    deg0 = [mu for deg, mu in entries if deg == 0]
    assert deg0 == [Weight.from_ints([0, 0, 0])]
    for deg, mu in entries:
        assert levi_is_dominant(B3, standard_levi("M1", 3), mu)


def test_truncation_criteria_equivalence():
    for datum, label in [(B3, "M1"), (B3, "M2"), (B3, "M12"), (D3, "M12")]:
        m = datum.rank
        levi = standard_levi(label, m)
        r = rho(datum)
        for lam_c in [(0,) * m, (1, 1, 0), (2, 1, 1)]:
            lam = Weight.from_ints(lam_c)
            entries = kostant_cohomology(datum, levi, lam)
            for pi in (pi1_covector(m), pi2_covector(m)):
                t = -(r.pairing(pi))
                kept = truncate_cohomology(entries, [(pi, t)])
                kept2 = [(d, mu) for d, mu in entries if (mu + r).pairing(pi) > 0]
                assert kept == kept2


def test_truncation_no_cutoff_is_identity():
    entries = kostant_cohomology(B2, standard_levi("M2", 2), Weight.from_ints([1, 0]))
    assert truncate_cohomology(entries, []) == entries
    assert truncate_cohomology(entries, [(pi2_covector(2), Fraction(-10 ** 6))]) == entries


@pytest.mark.parametrize("kind,m", [("B", 2), ("B", 3), ("D", 3)])
def test_kostant_euler_identity_small(kind, m):
    datum = RootDatum(kind, m)
    lams = [(0,) * m, (1,) + (0,) * (m - 1), (1, 1) + (0,) * (m - 2)]
    for label in ("M1", "M2", "M12"):
        for lam in lams:
            assert kostant_euler_identity(datum, standard_levi(label, m), Weight.from_ints(lam))


def test_weyl_numerator_denominator_identity():
    # sum eps(w) e^{w(lam+rho)} = e^rho ch(lam) prod (1 - e^-a), formally
    for datum in (B2, B3, D3):
        for lam_c in [(0,) * datum.rank, (1, 1) + (0,) * (datum.rank - 2)]:
            lam = Weight.from_ints(lam_c)
            lhs = weyl_numerator(datum, lam)
            rhs = Laurent.monomial(rho(datum).doubled) * formal_character(datum, lam)
            for a in datum.positive_roots():
                rhs = rhs * (Laurent.one(datum.rank) - Laurent.monomial(tuple(-2 * c for c in a)))
            assert lhs == rhs


def test_weight_invariants():
    w = Weight.from_halves([3, 1])
    assert not w.is_integral
    assert w.coords() == (Fraction(3, 2), Fraction(1, 2))
    assert (w + w).is_integral
    assert w.pairing((1, 1)) == 2
