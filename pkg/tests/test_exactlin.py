"""Exact linear algebra: field arithmetic, matrix laws, solving."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfbundles.exactlin import (
    QQ,
    Matrix,
    ScalarFieldError,
    apply_tensor_permutation,
    column_space_contains,
    field_by_name,
    hstack,
    inverse,
    kernel_basis,
    kron,
    prime_field,
    rank,
    same_column_space,
    solve,
    tensor_permutation,
    vstack,
)

F5 = prime_field(5)

rationals = st.fractions(min_value=-40, max_value=40, max_denominator=7)
fp5_elems = st.integers(min_value=0, max_value=4)


def mat(rows):
    return Matrix(QQ, [[Fraction(x) for x in row] for row in rows])


def test_field_by_name():
    assert field_by_name("q") is QQ
    assert field_by_name("fp:7") is prime_field(7)
    with pytest.raises(ScalarFieldError):
        field_by_name("fp:6")
    with pytest.raises(ScalarFieldError):
        field_by_name("r")


def test_prime_field_is_cached():
    assert prime_field(5) is F5


@given(a=rationals, b=rationals, c=rationals)
@settings(max_examples=40, deadline=None)
def test_rational_field_axioms(a, b, c):
    assert QQ.add(a, QQ.add(b, c)) == QQ.add(QQ.add(a, b), c)
    assert QQ.mul(a, QQ.add(b, c)) == QQ.add(QQ.mul(a, b), QQ.mul(a, c))
    assert QQ.add(a, QQ.neg(a)) == QQ.zero
    if b != 0:
        assert QQ.mul(QQ.div(a, b), b) == a


@given(a=fp5_elems, b=fp5_elems)
@settings(max_examples=40, deadline=None)
def test_prime_field_axioms(a, b):
    assert F5.add(a, b) == (a + b) % 5
    assert F5.mul(a, b) == (a * b) % 5
    if b != 0:
        assert F5.mul(F5.div(a, b), b) == a


def test_prime_field_parses_fractions():
    # 1/2 = 3 mod 5
    assert F5.parse("1/2") == 3
    assert QQ.parse("-3/4") == Fraction(-3, 4)


def test_matrix_shapes_and_equality():
    a = mat([[1, 2], [3, 4]])
    assert a.rows == 2 and a.cols == 2
    assert a == mat([[1, 2], [3, 4]])
    assert a != mat([[1, 2], [3, 5]])
    assert Matrix.zeros(QQ, 2, 3).is_zero()
    assert not a.is_zero()


def test_matrix_field_mixing_is_rejected():
    a = mat([[1]])
    b = Matrix(F5, [[1]])
    with pytest.raises(ValueError):
        a * b


small = st.integers(min_value=-6, max_value=6)


def mats(n, m):
    return st.lists(st.lists(small, min_size=m, max_size=m), min_size=n, max_size=n).map(
        lambda rows: Matrix(QQ, [[Fraction(x) for x in r] for r in rows])
    )


@given(a=mats(2, 3), b=mats(3, 2), c=mats(2, 2))
@settings(max_examples=30, deadline=None)
def test_matrix_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a * b).transpose() == b.transpose() * a.transpose()
    eye = Matrix.identity(QQ, 2)
    assert eye * (a * b) == a * b


@given(a=mats(3, 3))
@settings(max_examples=30, deadline=None)
def test_rank_and_kernel_split_the_columns(a):
    ker = kernel_basis(a)
    assert rank(a) + ker.cols == a.cols
    if ker.cols:
        assert (a * ker).is_zero()


@given(a=mats(3, 3), x=mats(3, 1))
@settings(max_examples=30, deadline=None)
def test_solve_recovers_a_known_solution(a, x):
    b = a * x
    sol = solve(a, b)
    assert sol.consistent
    assert a * sol.particular == b


def test_solve_flags_inconsistency():
    a = mat([[1, 0], [1, 0]])
    b = mat([[1], [2]])
    sol = solve(a, b)
    assert not sol.consistent
    assert sol.particular is None


def test_inverse_roundtrip_and_singular():
    a = mat([[2, 1], [1, 1]])
    assert a * inverse(a) == Matrix.identity(QQ, 2)
    with pytest.raises(ValueError):
        inverse(mat([[1, 1], [1, 1]]))


def test_kron_mixed_product():
    a = mat([[1, 2], [0, 1]])
    b = mat([[0, 1], [1, 0]])
    c = mat([[1, 1], [0, 2]])
    d = mat([[3, 0], [1, 1]])
    assert kron(a, b) * kron(c, d) == kron(a * c, b * d)


def test_tensor_permutation_swaps_legs():
    # swap on a 2x3 tensor: e_i (x) e_j goes to e_j (x) e_i
    p = tensor_permutation(QQ, [2, 3], [1, 0])
    v = Matrix.zeros(QQ, 6, 1).data
    u = mat([[1], [0], [0], [0], [0], [0]])  # e_0 (x) e_0
    w = p * u
    assert w.entry(0, 0) == 1
    x = mat([[0], [1], [0], [0], [0], [0]])  # e_0 (x) e_1
    assert (p * x).entry(2, 0) == 1
    assert len(v) == 6


def test_apply_tensor_permutation_is_inverse_of_itself_for_swap():
    m = mat([[1, 2, 3, 4, 5, 6]])
    once = apply_tensor_permutation(m.transpose(), [2, 3], [1, 0])
    twice = apply_tensor_permutation(once, [3, 2], [1, 0])
    assert twice == m.transpose()


def test_stacking():
    a = mat([[1], [2]])
    b = mat([[3], [4]])
    assert hstack([a, b]) == mat([[1, 3], [2, 4]])
    assert vstack([a, b]) == mat([[1], [2], [3], [4]])


def test_column_space_predicates():
    a = mat([[1, 0], [0, 1], [0, 0]])
    v = mat([[2], [3], [0]])
    assert column_space_contains(a, v)
    assert not column_space_contains(a, mat([[0], [0], [1]]))
    assert same_column_space(a, mat([[1, 1], [1, -1], [0, 0]]))
