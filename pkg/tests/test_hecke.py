import json

import pytest

from endolab.errors import ExactDomainError
from endolab.hecke import (
    EndoSignVector,
    FrobTwist,
    HeckeElement,
    LocalDatumAtP,
    QLaurent,
    RelativeWeylGroup,
    SignedPerm,
    UnramifiedGroup,
    _iota_inverse,
    _transposition,
    ambient_group_at_p,
    base_change_image,
    compute_fH_at_p,
    constant_term,
    expected_k_table,
    h_relative_group,
    k_a_element,
    ka_base_change_relation,
    phi_a,
    satake_minuscule,
    twisted_transfer,
    unit_element,
)

TRIV1 = RelativeWeylGroup(1, (), "1")
TRIV2 = RelativeWeylGroup(2, (), "1")


def test_qlaurent_arithmetic():
    q = QLaurent.q_half_power(1)  # q^(1/2)
    assert q * q == QLaurent.q_half_power(2)
    assert (q + q).terms == {1: 2}
    assert (q + (-q)).is_zero()
    assert QLaurent.q_half_power(4).specialize(3) == 9
    with pytest.raises(ExactDomainError):
        QLaurent.q_half_power(1).specialize(3)


def test_satake_minuscule_b3():
    g = UnramifiedGroup("B", 3)
    f = satake_minuscule(g, (1, 0, 0))
    assert set(f.coeffs) == {
        (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)
    }
    # q-prefactor q^(5/2): <delta, mu_dom> = 5/2 exactly
    assert all(c == QLaurent.q_half_power(5) for c in f.coeffs.values())
    assert f.check_invariance()


def test_satake_minuscule_unit_and_errors():
    g = UnramifiedGroup("B", 3)
    f0 = satake_minuscule(g, (0, 0, 0))
    assert f0.coeffs == {(0, 0, 0): QLaurent.one()}
    with pytest.raises(ExactDomainError):
        satake_minuscule(g, (1, 1, 0))


def test_satake_relative_orbit_nonsplit():
    g = UnramifiedGroup("D", 4, flips=(3,))
    f1 = satake_minuscule(g, (1, 0, 0, 0), degree=1)
    assert len(f1.coeffs) == 6  # last coordinate missing from the relative orbit
    f2 = satake_minuscule(g, (1, 0, 0, 0), degree=2)
    assert len(f2.coeffs) == 8
    with pytest.raises(ExactDomainError):
        satake_minuscule(g, (0, 0, 0, 1), degree=1)  # not defined over the base


def test_twisted_transfer_examples():
    x = HeckeElement(1, {(1,): QLaurent.one()}, TRIV1)
    ident = SignedPerm.identity(1)
    assert twisted_transfer(x, EndoSignVector((1,)), FrobTwist(1, ident), TRIV1) == x
    t2 = twisted_transfer(x, EndoSignVector((1,)), FrobTwist(2, ident), TRIV1)
    assert set(t2.coeffs) == {(2,)}
    t3 = twisted_transfer(x, EndoSignVector((-1,)), FrobTwist(3, ident), TRIV1)
    assert t3.coeffs[(3,)] == QLaurent({0: -1})


def test_twisted_transfer_iota_independence():
    # replacing the admissible identification iota by w_H o iota o w_G, with
    # w_G in the source relative Weyl group and w_H in the target one, leaves
    # the transfer fixed
    g = UnramifiedGroup("B", 3)
    f = satake_minuscule(g, (1, 0, 0), degree=2)
    datum = LocalDatumAtP("M12", "odd", 3, 2, 1, frozenset({1}))
    iota = _iota_inverse(datum)
    h_group = h_relative_group(datum)
    s_h = EndoSignVector((1, 1, -1))
    t = FrobTwist(2, SignedPerm.identity(3))
    base = twisted_transfer(f, s_h, t, h_group, reindex=iota)
    for w_g in g.relative_group(2).gens:
        assert twisted_transfer(f, s_h, t, h_group, reindex=iota * w_g) == base
    for w_h in h_group.gens:
        assert twisted_transfer(f, s_h, t, h_group, reindex=w_h * iota) == base


def test_twisted_transfer_rejects_noninvariant_input():
    g = UnramifiedGroup("B", 2)
    lopsided = HeckeElement(2, {(1, 0): QLaurent.one()}, g.relative_group())
    with pytest.raises(ExactDomainError):
        twisted_transfer(lopsided, EndoSignVector((1, 1)), FrobTwist(1, SignedPerm.identity(2)), TRIV2)


def test_constant_term_retags():
    g = UnramifiedGroup("B", 3)
    f = satake_minuscule(g, (1, 0, 0))
    small = RelativeWeylGroup(3, (_transposition(3, 0, 1),), "S2")
    ct = constant_term(f, small)
    assert ct.coeffs == f.coeffs  # all monomials retained
    smaller = RelativeWeylGroup(3, (), "1")
    assert constant_term(ct, smaller).coeffs == f.coeffs  # functoriality
    big = g.relative_group()
    with pytest.raises(ExactDomainError):
        constant_term(
            HeckeElement(3, {(1, 0, 0): QLaurent.one()}, smaller), big
        )


def test_compute_fH_table_spot_values():
    k, _ = compute_fH_at_p("M12", "odd", 3, 3, 0, [1, 2], 2)
    assert k == expected_k_table("M12", [1, 2], 2)
    k, _ = compute_fH_at_p("M1", "odd", 3, 1, 2, [], 1)
    assert k == expected_k_table("M1", [], 1)
    k, _ = compute_fH_at_p("M2", "odd", 3, 2, 1, [1], 3)
    assert k == expected_k_table("M2", [1], 3)


def test_compute_fH_h_independent_of_A():
    results = []
    for A in ((), (1,), (2,), (1, 2)):
        mp = 1 + len(A)  # base (3, 1) for d = 7
        k, h = compute_fH_at_p("M12", "odd", 3, mp, 3 - mp, list(A), 2)
        assert k == expected_k_table("M12", A, 2)
        results.append(h.serialize())
    assert all(r == results[0] for r in results)


def test_compute_fH_rejects_bad_params():
    with pytest.raises(ExactDomainError):
        compute_fH_at_p("M12", "odd", 3, 2, 2, [1], 1)  # ranks do not add up
    with pytest.raises(ExactDomainError):
        compute_fH_at_p("M1", "odd", 3, 3, 0, [1], 1)  # M1 cannot split the block
    with pytest.raises(ExactDomainError):
        # even case: rank-1 factor with square discriminant is the excluded (2,1)
        compute_fH_at_p("M12", "even", 4, 3, 1, [1, 2], 1, True, True)


def test_relative_orbit_gl_block_split():
    # the part of the minuscule orbit supported on the two GL coordinates is
    # exactly {+-e1, +-e2}, in both parities
    for kind, m in (("B", 4), ("D", 4)):
        g = UnramifiedGroup(kind, m)
        f = satake_minuscule(g, (1,) + (0,) * (m - 1))
        gl_part = {e for e in f.coeffs if any(e[:2]) and not any(e[2:])}
        assert gl_part == {(1, 0) + (0,) * (m - 2), (-1, 0) + (0,) * (m - 2),
                           (0, 1) + (0,) * (m - 2), (0, -1) + (0,) * (m - 2)}


def test_transfer_restrict_bracketings_agree():
    # restricting after transferring equals transferring straight into the
    # Levi-tagged algebra
    datum = LocalDatumAtP("M12", "odd", 3, 2, 1, frozenset({1}))
    g = ambient_group_at_p(datum)
    f = satake_minuscule(g, (-1, 0, 0), degree=2)
    s = EndoSignVector((1, 1, -1))
    twist = FrobTwist(2, g.sigma())
    iota = _iota_inverse(datum)
    from endolab.hecke import _levi_relative_group

    levi_group = _levi_relative_group(datum)
    via_h = constant_term(
        twisted_transfer(f, s, twist, h_relative_group(datum), reindex=iota), levi_group
    )
    direct = twisted_transfer(f, s, twist, levi_group, reindex=iota)
    assert via_h.coeffs == direct.coeffs


def test_q_degree_bookkeeping():
    for d, kind in ((7, "B"), (9, "B"), (8, "D"), (10, "D")):
        m = d // 2
        g = UnramifiedGroup(kind, m)
        f = satake_minuscule(g, (1,) + (0,) * (m - 1), degree=2)
        assert next(iter(f.coeffs.values())).degree_doubled() == 2 * (d - 2)


def test_base_change_and_k_a():
    assert ka_base_change_relation("M2", 1)["matches"]
    assert ka_base_change_relation("M2", 3)["matches"]
    assert ka_base_change_relation("M12", 2)["matches"]
    rel = ka_base_change_relation("M1", 2)
    assert rel["matches"] and rel["q_shift_doubled"] == -2
    bc = base_change_image("GL1", 1, phi_a("GL1", 1))
    assert set(bc.coeffs) == {(-1,)}
    u = unit_element(2, TRIV2)
    assert base_change_image("GL2", 3, u) == u
    assert set(k_a_element("M1", 2).coeffs) == {(-2, 0), (0, -2)}


def test_serialization_roundtrip():
    g = UnramifiedGroup("B", 2)
    f = satake_minuscule(g, (1, 0))
    data = f.serialize()
    json.dumps(data)  # JSON-safe
    assert data == [[[-1, 0], [[3, 1]]], [[0, -1], [[3, 1]]], [[0, 1], [[3, 1]]], [[1, 0], [[3, 1]]]]
