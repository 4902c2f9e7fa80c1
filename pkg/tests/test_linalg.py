from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pierce_gldim.linalg import (
    GF,
    QQ,
    DimensionMismatch,
    Echelon,
    Matrix,
    inverse,
    kernel_basis,
    kernel_with_free,
    matmul,
    matvec,
    rank,
    rank_rows,
    rref,
    solve_columns,
    spans_equal,
    subspace_intersection,
    subspace_ops,
    subspace_sum,
    field_from_name,
)


def M(rows, field=QQ, cols=None):
    return Matrix.from_rows(field, rows, cols)


def matrices(field, max_size=8):
    if field is QQ:
        entry = st.fractions(min_value=-4, max_value=4, max_denominator=3)
    else:
        entry = st.integers(0, field.p - 1)
    return st.integers(1, max_size).flatmap(
        lambda m: st.integers(1, max_size).flatmap(
            lambda n: st.lists(st.lists(entry, min_size=n, max_size=n), min_size=m, max_size=m).map(
                lambda rows: M(rows, field, n)
            )
        )
    )


FIELDS = [QQ, GF(7), GF(2)]


def test_rational_canonical_form():
    x = QQ(Fraction(6, -4))
    assert x == Fraction(-3, 2)
    assert x.denominator > 0
    assert str(QQ("10/4")) == "5/2"


def test_prime_field_inverse_and_coercion():
    f = GF(7)
    assert f(3) * (1 / f(3)) == f.one
    assert f("1/2") == f(4)
    assert f(-1) == f(6)
    with pytest.raises(ZeroDivisionError):
        f("1/7")


@pytest.mark.parametrize("p", [1, 4, 2**31 + 11])
def test_prime_field_rejects_bad_modulus(p):
    with pytest.raises(ValueError):
        GF(p)


def test_field_names_round_trip():
    for f in (QQ, GF(3), GF(2147483647)):
        assert field_from_name(f.name) == f
    with pytest.raises(ValueError):
        field_from_name("R")


@given(st.fractions(), st.fractions(), st.fractions())
def test_rational_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * (1 / a) == 1


@given(st.integers(), st.integers(), st.integers())
def test_prime_field_axioms(x, y, z):
    f = GF(11)
    a, b, c = f(x), f(y), f(z)
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * (1 / a) == f.one


@given(st.fractions())
def test_rational_print_parse_round_trip(x):
    assert QQ.parse(QQ.format(x)) == x
    assert QQ.format(QQ.parse(str(x))) == str(x)


def test_rref_zero_matrix():
    r, piv = rref(M([[0, 0], [0, 0]]))
    assert r == M([[0, 0], [0, 0]])
    assert piv == []


@pytest.mark.parametrize("field", FIELDS)
def test_rref_identity(field):
    i = Matrix.identity(field, 4)
    r, piv = rref(i)
    assert r == i
    assert piv == [0, 1, 2, 3]


def test_rref_hand_example():
    r, piv = rref(M([[2, 4], [1, 2]]))
    assert r == M([[1, 2], [0, 0]])
    assert piv == [0]


def test_kernel_identity_is_empty():
    assert kernel_basis(Matrix.identity(QQ, 3)) == []


def test_kernel_of_zero_spans_everything():
    ker = kernel_basis(M([[0, 0, 0]] * 3))
    assert spans_equal(ker, Matrix.identity(QQ, 3).tolist(), QQ, 3)


def test_kernel_hand_example():
    ker = kernel_basis(M([[1, 1]]))
    assert spans_equal(ker, [[1, -1]], QQ, 2)


def test_kernel_free_coordinates():
    rows = [[1, 2, 0, 1], [0, 0, 1, 3]]
    basis, free = kernel_with_free(rows, QQ, 4)
    assert free == [1, 3]
    for j, v in enumerate(basis):
        assert [v[c] for c in free] == [1 if i == j else 0 for i in range(len(free))]
        assert not any(matvec(rows, v, QQ))


def test_subspace_equal_inputs():
    a = [[1, 2, 3], [0, 1, 1]]
    assert spans_equal(subspace_intersection(a, a, QQ, 3), a, QQ, 3)


def test_subspace_complementary_axes():
    res = subspace_ops([[1, 0]], [[0, 1]], QQ, 2)
    assert res.intersection == []
    assert spans_equal(res.sum, [[1, 0], [0, 1]], QQ, 2)


def test_subspace_hand_example():
    inter = subspace_intersection([[1, 0], [0, 1]], [[1, 1]], QQ, 2)
    assert spans_equal(inter, [[1, 1]], QQ, 2)


def test_subspace_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        subspace_sum([[1, 0]], [[1, 0, 0]], QQ, 2)


def test_solve_columns_and_outside_span():
    basis = [[1, 0, 1], [0, 1, 1]]
    (coords,) = solve_columns(basis, [[2, 3, 5]], QQ)
    assert coords == [2, 3]
    with pytest.raises(ValueError):
        solve_columns(basis, [[0, 0, 1]], QQ)


def test_inverse_and_singular():
    m = [[QQ(2), QQ(1)], [QQ(1), QQ(1)]]
    inv = inverse(m, QQ)
    assert matmul(m, inv, QQ) == [[1, 0], [0, 1]]
    with pytest.raises(ZeroDivisionError):
        inverse([[QQ(1), QQ(2)], [QQ(2), QQ(4)]], QQ)


def test_echelon_membership():
    f = GF(3)
    e = Echelon(f, 3)
    assert e.add([f(1), f(1), f(0)])
    assert not e.add([f(2), f(2), f(0)])
    assert e.contains([f(2), f(2), f(0)])
    assert not e.contains([f(0), f(0), f(1)])
    assert len(e) == 1


@pytest.mark.parametrize("field", [QQ, GF(5)])
@given(data=st.data())
def test_rank_nullity_and_transpose(field, data):
    m = data.draw(matrices(field))
    r = rank(m)
    ker = kernel_basis(m)
    assert len(ker) + r == m.cols
    assert rank(m.transpose()) == r
    assert rank_rows(ker, field, m.cols) == len(ker)
    for v in ker:
        assert not any(m.apply(v))


@pytest.mark.parametrize("field", [QQ, GF(5)])
@given(data=st.data())
def test_rref_idempotent_and_row_equivalent(field, data):
    m = data.draw(matrices(field))
    r, piv = rref(m)
    r2, piv2 = rref(r)
    assert r2 == r and piv2 == piv
    assert piv == sorted(set(piv))
    assert spans_equal(r.tolist(), m.tolist(), field, m.cols)
    for i, c in enumerate(piv):
        assert r.entries[i][c] == field.one
        assert all(r.entries[k][c] == 0 for k in range(r.rows) if k != i)


@pytest.mark.parametrize("field", [QQ, GF(3)])
@given(data=st.data())
def test_grassmann_formula(field, data):
    n = data.draw(st.integers(1, 6))
    entry = st.integers(-2, 2)
    vecs = st.lists(st.lists(entry, min_size=n, max_size=n).map(lambda v: [field(x) for x in v]), max_size=5)
    a, b = data.draw(vecs), data.draw(vecs)
    res = subspace_ops(a, b, field, n)
    da, db = rank_rows(a, field, n), rank_rows(b, field, n)
    assert len(res.sum) + len(res.intersection) == da + db
    e_a, e_b = Echelon(field, n), Echelon(field, n)
    for v in a:
        e_a.add(v)
    for v in b:
        e_b.add(v)
    for v in res.intersection:
        assert e_a.contains(v) and e_b.contains(v)
