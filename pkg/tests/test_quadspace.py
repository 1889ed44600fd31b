import random
from fractions import Fraction

import pytest

from endolab.errors import ExactDomainError
from endolab.exactnum import REAL, Place
from endolab.quadspace import (
    QuadraticSpace,
    diagonalize,
    discriminant,
    exists_global_form,
    hasse_invariant,
    is_perfect,
    is_quasi_split_local,
    is_quasi_split_oracle,
    quasi_split_space,
    relevant_places,
    signature,
)
from endolab.exactnum import squareclass_of, GLOBAL


def test_diagonalize_identity():
    q = diagonalize([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert q.diag == (Fraction(1), Fraction(1), Fraction(1))


def test_diagonalize_hyperbolic_plane():
    q = diagonalize([[0, 1], [1, 0]])
    # isometric to diag(1, -1): trivial discriminant, trivial Hasse everywhere
    assert discriminant(q).is_trivial
    assert signature(q) == (1, 1)
    for v in relevant_places(q):
        assert hasse_invariant(q, v) == 1


def test_diagonalize_already_diagonal():
    q = diagonalize([[2, 0], [0, Fraction(-1, 3)]])
    assert q.diag == (Fraction(2), Fraction(-1, 3))


def test_diagonalize_degenerate():
    with pytest.raises(ExactDomainError):
        diagonalize([[1, 1], [1, 1]])
    with pytest.raises(ExactDomainError):
        diagonalize([[0, 1], [2, 0]])


def test_discriminant_examples():
    assert discriminant(QuadraticSpace.from_entries([1, -1])).is_trivial
    assert discriminant(QuadraticSpace.from_entries([Fraction(5)])).rep == 5
    assert discriminant(QuadraticSpace.from_entries([1, 1])).rep == -1


def test_signature_examples():
    assert signature(QuadraticSpace.from_entries([1, 1, -1])) == (2, 1)
    assert signature(QuadraticSpace.from_entries([-1])) == (0, 1)


def _random_congruence(rng, q):
    n = q.dim
    # random integral congruence transform of the Gram matrix
    while True:
        u = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        det = _det(u)
        if det != 0:
            break
    g = [[q.diag[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    ug = [[sum(u[i][k] * g[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    ugu = [[sum(ug[i][k] * u[j][k] for k in range(n)) for j in range(n)] for i in range(n)]
    return ugu


def _det(mat):
    mat = [row[:] for row in mat]
    n = len(mat)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if mat[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            det = -det
        det *= mat[c][c]
        for r in range(c + 1, n):
            f = Fraction(mat[r][c], mat[c][c])
            for k in range(c, n):
                mat[r][k] -= f * mat[c][k]
    return det


def test_invariants_under_congruence():
    # >= 100 random integral congruences per tested space
    rng = random.Random(5)
    spaces = [
        QuadraticSpace.from_entries(entries)
        for entries in ([1, -1, 2], [3, 5, -2, 1], [Fraction(1, 2), -3], [7, 7, -1, 2, 2])
    ]
    for q in spaces:
        for trial in range(100):
            q2 = diagonalize(_random_congruence(rng, q))
            assert discriminant(q2) == discriminant(q)
            places = set(relevant_places(q)) | set(relevant_places(q2))
            for v in places:
                assert hasse_invariant(q2, v) == hasse_invariant(q, v), (q.diag, q2.diag, v)


def test_hasse_product_formula():
    rng = random.Random(9)
    for trial in range(40):
        dim = rng.randint(1, 6)
        q = QuadraticSpace.from_entries(
            [Fraction(rng.choice([1, -1, 2, 3, -5, 7]), rng.choice([1, 2, 3])) for _ in range(dim)]
        )
        prod = 1
        for v in relevant_places(q):
            prod *= hasse_invariant(q, v)
        assert prod == 1


def test_quasi_split_signature_table():
    # d = 7, signature (4,3), delta = det = (+)(-)^3 < 0 = (-1)^3: quasi-split
    q = QuadraticSpace.from_entries([1, 1, 1, 1, -1, -1, -1])
    assert is_quasi_split_local(q, REAL)
    # d = 7, signature (5,2): excluded by the table
    q2 = QuadraticSpace.from_entries([1, 1, 1, 1, 1, -1, -1])
    assert not is_quasi_split_local(q2, REAL)


def test_quasi_split_oracle_agreement_sample():
    rng = random.Random(3)
    for p in (3, 5, 7):
        entries = [1, -1, p, -p, 2 * p, -2 * p]
        for trial in range(150):
            dim = rng.randint(1, 7)
            q = QuadraticSpace.from_entries([rng.choice(entries) for _ in range(dim)])
            assert is_quasi_split_local(q, Place.finite(p)) == is_quasi_split_oracle(q, p)


def test_quasi_split_formula_at_two_matches_classification():
    # the v = 2 criterion is formula-derived; the (dim, disc, Hasse)
    # classification still gives an independent consistency check there
    rng = random.Random(8)
    entries = [1, -1, 2, -2, 3, -3, 6, -6, 5]
    for trial in range(600):
        dim = rng.randint(1, 8)
        q = QuadraticSpace.from_entries([rng.choice(entries) for _ in range(dim)])
        assert is_quasi_split_local(q, Place.finite(2)) == is_quasi_split_oracle(q, 2)


def test_perfect():
    # hyperbolic sums are split with trivial discriminant: perfect at any odd p
    q = quasi_split_space(8, squareclass_of(1, GLOBAL))
    assert is_perfect(q, 3) and is_perfect(q, 5)
    # odd-valuation discriminant fails perfection
    q2 = quasi_split_space(6, squareclass_of(5, GLOBAL))
    assert not is_perfect(q2, 5)
    # quasi-split non-split even form with even-valuation discriminant is perfect
    q3 = quasi_split_space(6, squareclass_of(2, GLOBAL))
    assert is_perfect(q3, 5)
    with pytest.raises(ExactDomainError):
        is_perfect(q, 2)


def test_exists_global_form_table():
    for d in range(3, 65):
        assert exists_global_form(d, 1) == (d % 8 in (3, 4, 5, 6)), d
    assert exists_global_form(11, 1)
    assert not exists_global_form(7, 1)
    assert not exists_global_form(9, 1)
    for d in (8, 16, 24):
        assert exists_global_form(d, 2)
        assert exists_global_form(d, 3)
    assert not exists_global_form(3, -1)
    with pytest.raises(ExactDomainError):
        exists_global_form(2, 1)
