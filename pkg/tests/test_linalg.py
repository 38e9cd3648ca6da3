from fractions import Fraction
from itertools import permutations

from hypothesis import given, settings
from hypothesis import strategies as st

from idealarr.linalg import (
    bareiss_echelon,
    determinant,
    integer_nullspace,
    max_abs_minor,
    rank,
    rref,
    solve_combination,
)

small_ints = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=1, max_size=max_rows)
    )


def square(max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)
    )


def leibniz(m):
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i, p in enumerate(perm):
            prod *= m[i][p]
        total += (-1) ** inv * prod
    return total


@given(matrices())
def test_bareiss_rank_matches_rational_rref(m):
    assert rank(m) == len(rref(m)[1])


@given(matrices())
def test_bareiss_entries_stay_integral(m):
    echelon, _ = bareiss_echelon(m)
    assert all(isinstance(x, int) for row in echelon for x in row)


@given(square())
def test_determinant_matches_leibniz(m):
    assert determinant(m) == leibniz(m)


@given(matrices())
@settings(max_examples=60)
def test_nullspace_is_annihilated_and_complementary(m):
    n = len(m[0])
    null = integer_nullspace(m, n)
    assert len(null) == n - rank(m)
    for v in null:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    if null:
        assert rank(null) == len(null)


def test_solve_combination():
    basis = [(1, 0, 1), (0, 1, 1)]
    assert solve_combination(basis, (2, 3, 5)) == [2, 3]
    assert solve_combination(basis, (1, 1, 0)) is None
    assert solve_combination([], (0, 0)) == []
    assert solve_combination(basis, (1, 0, 1)) == [Fraction(1), Fraction(0)]


def test_max_abs_minor():
    assert max_abs_minor([[1, 0], [0, 1], [1, 1]]) == 1
    assert max_abs_minor([[2, 1], [1, 3]]) == 5
