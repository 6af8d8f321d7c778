import pytest

from pdsets import (
    GrowthFunction,
    IntegerSet,
    InvalidArgumentError,
    USequence,
    build_a,
    build_b0,
    check_u_properties,
    diff_count,
    is_perfect_diff_prefix,
    is_sidon,
    removal_bound_check,
    ruzsa_sidon,
    u_block,
)
from pdsets.theorem1 import ConstructionTrace, check_lemma_au

import oracles

LINEAR = GrowthFunction.from_spec("linear")


@pytest.mark.parametrize("k, expected", [(1, (4, 5)), (2, (17, 19)), (3, (64, 67))])
def test_u_block_examples(k, expected):
    assert u_block(LINEAR, k) == expected


def test_growth_specs():
    assert GrowthFunction.from_spec("affine:3")(2) == 5
    assert GrowthFunction.from_spec("scaled:2")(5) == 10
    for bad in ("cubic", "affine:", "scaled:0", "affine:-1"):
        with pytest.raises(InvalidArgumentError):
            GrowthFunction.from_spec(bad)


@pytest.mark.parametrize("spec", ["linear", "affine:3", "scaled:2"])
def test_u_sequence_invariants(spec):
    g = GrowthFunction.from_spec(spec)
    for k in range(1, 40):
        lo, hi = u_block(g, k)
        assert hi - lo == k
        assert lo % 3 and hi % 3
        assert lo == 4 ** g(k) + (k % 3 == 2)


def _brute_u_properties(g, kmax):
    blocks = {k: u_block(g, k) for k in range(1, kmax + 1)}
    for k in range(2, kmax + 1):
        earlier = [u for j in range(1, k) for u in blocks[j]]
        for u in blocks[k]:
            for u1 in earlier:
                if not u - u1 > u / 2:
                    return False
                for u2 in earlier:
                    for u3 in earlier:
                        if not u + u1 > u2 + u3:
                            return False
    return all(u % 3 for b in blocks.values() for u in b)


@pytest.mark.parametrize("spec", ["linear", "affine:3", "scaled:3"])
@pytest.mark.parametrize("kmax", [2, 5, 8])
def test_u_properties_match_exhaustive_expansion(spec, kmax):
    g = GrowthFunction.from_spec(spec)
    assert check_u_properties(g, kmax).holds == _brute_u_properties(g, kmax)


def test_u_property_iii_instance():
    u, u1 = 17, 5
    assert u - u1 == 12 and 2 * (u - u1) > u


def test_u_properties_reject_non_increasing():
    with pytest.raises(InvalidArgumentError):
        check_u_properties(GrowthFunction(lambda k: 3), 5)
    with pytest.raises(InvalidArgumentError):
        check_u_properties(LINEAR, 1)


def test_u_properties_detect_violation_for_slow_scale():
    # not a legal g (not into N strictly increasing with 4^g), but exercises witnesses
    g = GrowthFunction(lambda k: k, "linear")
    rep = check_u_properties(g, 10)
    assert rep.holds and rep.checked_range == (1, 10)


def test_u_sequence_counting():
    seq = USequence(LINEAR)
    assert [t.value for t in seq.terms_upto(70)] == [4, 5, 17, 19, 64, 67]
    assert seq.count(66) == 5
    assert seq.count(3) == 0


def test_b0_small_example_against_literal_expansion():
    B = [1, 2, 5, 11]
    trace = build_b0(B, LINEAR, 33)
    expected = oracles.b0_removals(B, LINEAR, 8 * 33)
    assert [list(R) for R in trace.removed] == expected
    assert trace.b0.issubset(IntegerSet([3, 6, 15, 33]))
    assert 3 in trace.removed[3]  # |3 - u_2| = 1 <= 2


@pytest.mark.parametrize("p, horizon_factor", [(11, 3), (23, 3), (23, 5), (37, 4)])
def test_b0_truncation_is_exhaustive(p, horizon_factor):
    B = ruzsa_sidon(p)
    horizon = horizon_factor * B.max()
    trace = build_b0(B, LINEAR, horizon)
    assert [list(R) for R in trace.removed] == oracles.b0_removals(list(B), LINEAR, 8 * horizon)


def test_b0_without_u_terms_is_plain_dilation():
    g = GrowthFunction.from_spec("affine:10")
    trace = build_b0([1, 2, 5, 11], g, 33)
    assert trace.b0.elements == (3, 6, 15, 33)
    assert trace.removed_by_condition == (0, 0, 0, 0)


def test_b0_preconditions():
    with pytest.raises(InvalidArgumentError):
        build_b0([1, 2, 3], LINEAR, 9)
    with pytest.raises(InvalidArgumentError):
        build_b0([1, 2, 5, 11], LINEAR, 32)
    with pytest.raises(InvalidArgumentError):
        build_b0([0, 1], LINEAR, 3)


@pytest.mark.parametrize("p", [5, 11, 31, 101])
def test_b0_is_sidon_multiple_of_three(p):
    trace = build_b0(ruzsa_sidon(p), LINEAR)
    assert is_sidon(trace.b0).holds
    assert all(b % 3 == 0 for b in trace.b0)


def _empty_trace(g=LINEAR):
    return ConstructionTrace(IntegerSet([1]), g, 3, IntegerSet(), (IntegerSet(),) * 4, final_set=IntegerSet())


def test_build_a_from_empty_b0():
    t = build_a(_empty_trace(), 2, audit=True)
    assert t.final_set.elements == (4, 5, 17, 19)
    assert t.steps == ((1, True), (2, True))
    assert is_perfect_diff_prefix(t.final_set, 2).holds
    assert diff_count(t.final_set, t.final_set, 1) == diff_count(t.final_set, t.final_set, 2) == 1


def test_build_a_skips_covered_step():
    trace = ConstructionTrace(IntegerSet([1]), LINEAR, 3, IntegerSet([30, 31]), (IntegerSet(),) * 4,
                              final_set=IntegerSet([30, 31]))
    t = build_a(trace, 1)
    assert t.steps == ((1, False),)
    assert t.final_set.elements == (30, 31)


@pytest.mark.parametrize("spec", ["linear", "affine:2", "scaled:2"])
@pytest.mark.parametrize("p", [11, 47, 101])
def test_build_a_gives_perfect_prefix(spec, p):
    g = GrowthFunction.from_spec(spec)
    t = build_a(build_b0(ruzsa_sidon(p), g), 10, audit=True)
    assert is_perfect_diff_prefix(t.final_set, 10).holds
    assert t.b0.issubset(t.final_set)
    extra = set(t.final_set) - set(t.b0)
    taken = {u for k, took in t.steps if took for u in u_block(g, k)}
    assert extra == taken


def test_build_a_monotone_in_steps():
    base = build_b0(ruzsa_sidon(47), LINEAR)
    short, long = build_a(base, 6), build_a(base, 11)
    assert long.steps[:6] == short.steps
    assert short.final_set.issubset(long.final_set)


def test_lemma_au_check_detects_small_difference():
    rep = check_lemma_au(IntegerSet([3]), 2, (4, 6))
    assert not rep.holds
    assert ("small", 3, 4, -1) in rep.witnesses


def test_removal_bounds_on_ruzsa_source():
    t = build_a(build_b0(ruzsa_sidon(101), LINEAR), 12)
    for x in (1, 50, t.horizon // 3, t.horizon):
        rep = removal_bound_check(t, x)
        assert rep.holds, rep.detail


def test_removal_bounds_small_example():
    t = build_a(build_b0([1, 2, 5, 11], LINEAR, 33), 4)
    rep = removal_bound_check(t, 33)
    assert rep.holds
    assert rep.detail["U(2x)"] == 5  # 4, 5, 17, 19, 64 <= 66
    assert rep.detail["R"] == list(t.removed_by_condition)


def test_removal_bounds_fast_growth_means_nothing_removed():
    g = GrowthFunction.from_spec("affine:10")
    t = build_a(build_b0([1, 2, 5, 11], g, 33), 3)
    rep = removal_bound_check(t, 20)
    assert rep.holds and rep.detail["U(2x)"] == 0 and rep.detail["R"] == [0, 0, 0, 0]


def test_removal_bounds_zero_removals_trivial():
    t = build_a(_empty_trace(), 2)
    assert removal_bound_check(t, 3).holds


def test_removal_bounds_x_beyond_horizon():
    t = build_a(build_b0([1, 2, 5, 11], LINEAR, 33), 2)
    with pytest.raises(InvalidArgumentError):
        removal_bound_check(t, 34)
