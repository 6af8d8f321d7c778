import random

import pytest
from hypothesis import given, settings, strategies as st

from pdsets import (
    IntegerSet,
    InvalidArgumentError,
    build_kruckeberg,
    counting_function,
    coverage,
    density_ratio,
    is_sidon,
    union_lemma_check,
)

import oracles


def test_union_lemma_disjoint_ranges():
    assert union_lemma_check([0, 1], [30]).holds


def test_union_lemma_sum_difference_failure():
    rep = union_lemma_check([0, 1], [2])
    assert not rep.holds
    labels = {w[0] for w in rep.witnesses}
    assert "C1+C1-C1" in labels  # 1 + 1 - 0 = 2
    assert ("C1+C1-C1", 1, 1, 0, 2) in rep.witnesses


def test_union_lemma_difference_and_sum_witnesses():
    rep = union_lemma_check([0, 5], [10, 15])
    assert ("differences", 5) in rep.witnesses
    rep = union_lemma_check([0, 6], [1, 5])
    assert ("sums", 6) in rep.witnesses


def test_union_lemma_preconditions():
    with pytest.raises(InvalidArgumentError):
        union_lemma_check([0, 1], [0, 1])
    with pytest.raises(InvalidArgumentError):
        union_lemma_check([0, 1, 2], [10])
    with pytest.raises(InvalidArgumentError):
        union_lemma_check([], [10])


def _random_sidon(rng, size, span):
    out = []
    for _ in range(4 * size):
        c = rng.randrange(span)
        if c not in out and oracles.is_sidon_fast(out + [c]):
            out.append(c)
        if len(out) == size:
            break
    return sorted(out)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 6), st.integers(1, 6), st.integers(8, 120))
def test_union_lemma_matches_literal_expansion(seed, n1, n2, span):
    rng = random.Random(seed)
    C1 = _random_sidon(rng, n1, span)
    C2 = [c for c in _random_sidon(rng, n2, span) if c not in C1]
    if not C1 or not C2:
        return
    rep = union_lemma_check(C1, C2)
    assert rep.holds == oracles.union_lemma_hypotheses(C1, C2)
    if rep.holds:
        assert oracles.is_sidon(sorted(C1 + C2))


@pytest.fixture(scope="module")
def two_steps():
    return build_kruckeberg(2, audit=True)


def test_first_step_parameters(two_steps):
    s = two_steps.step(2)
    assert (s.l, s.p, s.shift) == (1, 5, 27)
    assert s.pair == (100, 102)
    assert s.before.elements == (0, 1)


def test_two_steps_default_pruning(two_steps):
    assert two_steps.final_set.elements == (0, 1, 30, 41, 44, 100, 102)
    assert is_sidon(two_steps.final_set).holds
    assert coverage(two_steps.final_set, 2).holds
    assert not two_steps.truncated


def test_two_steps_literal_pruning():
    t = build_kruckeberg(2, audit=True, pruning="both")
    assert t.final_set.elements == (0, 1, 30, 100, 102)
    d = density_ratio(t, 2)
    assert (d.x, d.count) == (46, 2)
    # 2 * 4 * 25 = 200 >= (5 - 5)^2 * 46
    assert d.bound_holds


def test_density_sample_exact(two_steps):
    d = density_ratio(two_steps, 2)
    assert (d.x, d.count) == (46, 4)
    assert d.ratio == pytest.approx(16 / 46)
    assert d.bound_holds


def test_truncation_before_oversized_step():
    t = build_kruckeberg(5, max_element=10**6)
    assert t.truncated
    assert [s.k for s in t.steps] == [2]
    with pytest.raises(InvalidArgumentError):
        t.step(3)


def test_too_few_steps():
    with pytest.raises(InvalidArgumentError):
        build_kruckeberg(1)


def test_blocks_partition_the_final_set(two_steps):
    s = two_steps.step(2)
    parts = s.before.union(s.block).union(s.pair)
    assert parts == two_steps.final_set
    assert counting_function(two_steps.final_set, 10**3) == len(two_steps.final_set) - 1
