from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from gcfloer.ratlin import (
    NO_SOLUTION,
    UNDERDETERMINED,
    mat_vec,
    qmatrix,
    qvector,
    rank,
    solve_linear,
    transpose,
)

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=20
)


def test_solve_identity():
    a = qmatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert solve_linear(a, qvector([1, 2, 3])) == qvector([1, 2, 3])


def test_solve_inconsistent_rows():
    a = qmatrix([[1, 1], [1, 1]])
    assert solve_linear(a, qvector([1, 2])) is NO_SOLUTION


def test_solve_diagonal():
    a = qmatrix([[2, 0], [0, 4]])
    assert solve_linear(a, qvector([1, 1])) == qvector([Fraction(1, 2), Fraction(1, 4)])


def test_solve_underdetermined():
    a = qmatrix([[1, 1], [2, 2]])
    assert solve_linear(a, qvector([3, 6])) is UNDERDETERMINED


def test_rank_zero_matrix():
    assert rank(qmatrix([[0] * 3] * 3)) == 0


def test_rank_identity():
    assert rank(qmatrix([[1 if i == j else 0 for j in range(4)] for i in range(4)])) == 4


def test_rank_proportional_rows():
    assert rank(qmatrix([[1, 2], [2, 4]])) == 1


def test_rank_complex_entries_uses_threshold():
    a = ((1 + 0j, 1j), (2 + 0j, 2j + 1e-12))
    assert rank(a) == 1
    b = ((1 + 0j, 1j), (1j, 1 + 0j))
    assert rank(b) == 2


@given(rationals, rationals)
def test_exact_addition_roundtrip(a, b):
    assert (a + b) - b == a


@given(
    st.lists(
        st.lists(rationals, min_size=3, max_size=3), min_size=2, max_size=4
    )
)
@settings(max_examples=100)
def test_rank_transpose_invariant(rows):
    a = qmatrix(rows)
    assert rank(a) == rank(transpose(a))


@given(
    st.lists(
        st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3
    ),
    st.lists(rationals, min_size=3, max_size=3),
)
@settings(max_examples=100)
def test_solution_satisfies_system(rows, x):
    a = qmatrix(rows)
    b = mat_vec(a, qvector(x))
    result = solve_linear(a, b)
    if result in (NO_SOLUTION,):
        raise AssertionError("constructed system cannot be inconsistent")
    if result is not UNDERDETERMINED:
        assert mat_vec(a, result) == b
