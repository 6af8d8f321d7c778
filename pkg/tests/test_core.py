import pytest
from hypothesis import given, settings, strategies as st

from pdsets import (
    IntegerSet,
    InvalidArgumentError,
    NonUniqueError,
    counting_function,
    coverage,
    diff_count,
    dilate,
    is_perfect_diff_prefix,
    is_sidon,
    sum_count,
    t_value,
    union_decomposition_check,
)

import oracles

small_sets = st.sets(st.integers(-40, 200), min_size=1, max_size=14)


def test_integer_set_normalises():
    S = IntegerSet([5, 1, 3, 1])
    assert S.elements == (1, 3, 5)
    assert 3 in S and 2 not in S
    with pytest.raises(InvalidArgumentError):
        IntegerSet([1.5])


def test_integer_set_keeps_big_values_exact():
    big = 4**40 + 1
    S = IntegerSet([big, 0])
    assert S.max() == big
    assert not S.fits_int64()


@pytest.mark.parametrize(
    "A, u, expected",
    [({0, 1, 4, 6}, 2, 1), ({0, 1, 4, 6}, 0, 4), ({1, 2, 3}, 1, 2)],
)
def test_diff_count_examples(A, u, expected):
    assert diff_count(A, A, u) == expected == oracles.diff_count(A, A, u)


@pytest.mark.parametrize("A, u, expected", [({0, 1, 4, 6}, 5, 1), ({0, 1, 4, 6}, 3, 0), ({0, 1, 4, 6}, 2, 1), ({3}, 6, 1)])
def test_sum_count_examples(A, u, expected):
    assert sum_count(A, u) == expected == oracles.sum_count(A, u)


def test_counters_reject_empty():
    with pytest.raises(InvalidArgumentError):
        diff_count([], [1], 0)
    with pytest.raises(InvalidArgumentError):
        sum_count([], 0)


def test_is_sidon_examples():
    assert is_sidon({1, 2, 5, 11}).holds
    assert is_sidon({3, 14, 16, 17}).holds
    rep = is_sidon({1, 2, 3})
    assert not rep.holds
    assert rep.witnesses == ((2, 1, 3, 2, 1),)


def test_perfect_prefix_examples():
    assert is_perfect_diff_prefix({0, 1, 4, 6}, 6).holds
    rep = is_perfect_diff_prefix({0, 1, 4, 6}, 7)
    assert not rep.holds and (7, 0) in rep.witnesses
    assert is_perfect_diff_prefix({0, 1}, 1).holds


def test_coverage_examples():
    assert coverage({0, 1, 30, 100, 102}, 2).holds
    rep = coverage({0, 1}, 2)
    assert rep.witnesses == ((2,),)
    assert coverage({0, 1, 4, 6}, 6).holds


def test_counting_function_examples():
    assert counting_function({0, 1, 30, 100, 102}, 100) == 3
    assert counting_function({0, 1, 30, 100, 102}, 0) == 0
    assert counting_function({3, 14, 16, 17}, 20) == 4


def test_t_value_examples():
    assert t_value({0, 1, 4, 6}, 2) == 4
    assert t_value({0, 1, 4, 6}, 7) is None
    with pytest.raises(NonUniqueError) as exc:
        t_value({1, 2, 3}, 1)
    assert exc.value.witnesses == (1, 2)


def test_dilate_examples():
    assert dilate({1, 2, 5}, 3).elements == (3, 6, 15)
    assert dilate({0, 1}, 2).elements == (0, 2)
    assert dilate({3, 14, 16, 17}, 3).elements == (9, 42, 48, 51)
    with pytest.raises(InvalidArgumentError):
        dilate({1}, 0)


def test_union_decomposition_examples():
    rep = union_decomposition_check({0, 1}, {4, 6}, 3)
    assert rep.holds and rep.detail["terms"] == [0, 0, 0, 1]
    rep = union_decomposition_check({0, 1}, {4, 6}, 0)
    assert rep.holds and rep.detail["terms"] == [2, 2, 0, 0]
    with pytest.raises(InvalidArgumentError):
        union_decomposition_check({0, 1}, {1, 6}, 0)


@given(small_sets, st.integers(-250, 250))
def test_diff_count_symmetry_and_oracle(A, u):
    assert diff_count(A, A, u) == diff_count(A, A, -u) == oracles.diff_count(A, A, u)
    assert diff_count(A, A, 0) == len(A)


@given(small_sets)
@settings(max_examples=200)
def test_is_sidon_matches_oracle(A):
    rep = is_sidon(A)
    assert rep.holds == oracles.is_sidon(A)
    assert rep.holds == (not rep.witnesses)
    for a, b, c, d, diff in rep.witnesses:
        assert a - b == c - d == diff > 0 and (a, b) != (c, d)
        assert {a, b, c, d} <= A
    span = max(A) - min(A)
    assert rep.holds == all(diff_count(A, A, u) <= 1 for u in range(1, span + 1))


@given(small_sets.filter(oracles.is_sidon), st.integers(1, 9), st.integers(-30, 30))
def test_dilate_preserves_sidon_and_scales(A, c, u):
    D = dilate(A, c)
    assert is_sidon(D).holds
    assert diff_count(D, D, c * u) == diff_count(A, A, u)
    for x in range(0, 60):
        assert counting_function(D, x) == counting_function(A, x // c)


@given(small_sets, small_sets, st.integers(-300, 300))
def test_union_decomposition_property(A1, A2, n):
    A2 = A2 - A1
    if not A2:
        return
    assert union_decomposition_check(A1, A2, n).holds


@given(small_sets, st.integers(1, 30))
def test_t_values_iff_perfect_prefix(A, k):
    unique = True
    for n in range(1, k + 1):
        try:
            if t_value(A, n) is None:
                unique = False
        except NonUniqueError:
            unique = False
    assert unique == all(diff_count(A, A, n) == 1 for n in range(1, k + 1))
    if is_sidon(A).holds:
        assert unique == is_perfect_diff_prefix(A, k).holds


def test_large_set_goes_through_kernel_and_agrees():
    # 300 > small-set cutoff: quadratic residues style non-Sidon set
    A = IntegerSet(range(0, 3000, 10))
    rep = is_sidon(A)
    assert not rep.holds
    a, b, c, d, diff = rep.witnesses[0]
    assert a - b == c - d == diff and (a, b) != (c, d)
    assert coverage(A, 25).witnesses[:3] == ((1,), (2,), (3,))
