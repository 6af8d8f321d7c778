"""Block recursion for a perfect difference set with large upper density.

Each step shifts a pruned finite Sidon set ``B_p`` (``p`` the least prime
above ``4 l^2``, ``l`` the current maximum) to ``p^2 + 2l`` and, when ``k``
is not yet a difference, adds the pair ``4p^2, 4p^2 + k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, sqrt
from typing import Optional

import numpy as np

from . import kernels
from .core import (
    IntegerSet,
    InvalidArgumentError,
    InvariantViolation,
    VerificationReport,
    counting_function,
    coverage,
    has_difference,
    is_sidon,
)
from .finite_sidon import prune_to_bp
from .primes import next_prime

DEFAULT_MAX_ELEMENT = 10**12


def _in_sumset(S: IntegerSet, targets: list[int]):
    """First ``(target, x, y)`` with ``target = x + y``, ``x <= y`` in ``S``."""
    if not targets:
        return None
    if S.fits_int64() and kernels.fits_int64(sorted(targets)) and len(S) > 64:
        hit = kernels.first_in_sumset(S.as_array(), np.array(targets, dtype=np.int64))
        if hit is None:
            return None
        t, i, j = hit
        return targets[t], S[i], S[j]
    for t in targets:
        for x in S:
            if 2 * x > t:
                break
            if t - x in S.lookup:
                return t, x, t - x
    return None


def _sum_diff_hit(Ci: IntegerSet, Cj: IntegerSet):
    """A witness ``(x, y, z, c)`` with ``x + y - z = c``, ``x, y, z`` in Ci, ``c`` in Cj."""
    lo_i, hi_i = Ci.min(), Ci.max()
    for c in Cj:
        if not 2 * lo_i - hi_i <= c <= 2 * hi_i - lo_i:
            continue
        # c + z must land in [2 min, 2 max]
        targets = [c + z for z in Ci if 2 * lo_i <= c + z <= 2 * hi_i]
        hit = _in_sumset(Ci, targets)
        if hit is not None:
            t, x, y = hit
            return x, y, t - c, c
    return None


def union_lemma_check(C1, C2, assert_conclusion: bool = True) -> VerificationReport:
    """Check the hypotheses under which the union of two Sidon sets is Sidon.

    ``(C1-C1) & (C2-C2) == {0}``, ``(C1+C1) & (C2+C2)`` empty and
    ``(Ci+Ci-Ci) & Cj`` empty for both orders. When all hold the union is
    brute-force checked as well, and a failure there raises
    :class:`InvariantViolation`.
    """
    C1 = C1 if isinstance(C1, IntegerSet) else IntegerSet(C1)
    C2 = C2 if isinstance(C2, IntegerSet) else IntegerSet(C2)
    if len(C1) == 0 or len(C2) == 0:
        raise InvalidArgumentError("union lemma needs nonempty sets")
    for name, C in (("C1", C1), ("C2", C2)):
        if not is_sidon(C).holds:
            raise InvalidArgumentError(f"{name} is not a Sidon set")
    if not C1.isdisjoint(C2):
        raise InvalidArgumentError("C1 and C2 overlap")

    small, large = (C1, C2) if len(C1) <= len(C2) else (C2, C1)
    witnesses = []
    elems = small.elements
    for i, x in enumerate(elems):
        hit = next((y - x for y in elems[i + 1 :] if has_difference(large, y - x)), None)
        if hit is not None:
            witnesses.append(("differences", hit))
            break
    sums = sorted({x + y for i, x in enumerate(elems) for y in elems[i:]})
    hit = _in_sumset(large, sums)
    if hit is not None:
        witnesses.append(("sums", hit[0]))
    for label, Ci, Cj in (("C1+C1-C1", C1, C2), ("C2+C2-C2", C2, C1)):
        hit = _sum_diff_hit(Ci, Cj)
        if hit is not None:
            witnesses.append((label,) + hit)

    report = VerificationReport("union-lemma", tuple(witnesses), (min(C1.min(), C2.min()), max(C1.max(), C2.max())))
    if report.holds and assert_conclusion:
        sidon = is_sidon(C1.union(C2))
        if not sidon.holds:
            raise InvariantViolation("union lemma hypotheses hold but the union is not Sidon", sidon)
    return report


@dataclass(frozen=True)
class KruckebergStep:
    k: int
    l: int
    p: int
    block: IntegerSet
    pair: Optional[tuple[int, int]]
    before: IntegerSet  # A_{k-1}

    @property
    def shift(self) -> int:
        return self.p * self.p + 2 * self.l


@dataclass(frozen=True)
class DensitySample:
    k: int
    x: int
    count: int
    p: int
    bound_holds: bool  # 2 A(x)^2 p^2 >= (p - ceil(2 sqrt p))^2 x

    @property
    def ratio(self) -> Fraction:
        """``A(x)^2 / x``, the square of the density ratio."""
        return Fraction(self.count * self.count, self.x)

    @property
    def approx(self) -> float:
        return self.count / sqrt(self.x)

    @property
    def chain_value(self) -> float:
        p = self.p
        return (p - 2 * sqrt(p)) / sqrt(2 * p * p - p + sqrt(p) / 2)


@dataclass(frozen=True)
class KruckebergTrace:
    steps: tuple[KruckebergStep, ...]
    final_set: IntegerSet
    truncated: bool = False
    pruning: str = "cover"
    audit: tuple[VerificationReport, ...] = ()

    def step(self, k: int) -> KruckebergStep:
        for s in self.steps:
            if s.k == k:
                return s
        raise InvalidArgumentError(f"step {k} not in trace")

    @property
    def density_samples(self) -> list[DensitySample]:
        return [density_ratio(self, s.k) for s in self.steps]


def _ceil_sqrt(n: int) -> int:
    r = isqrt(n)
    return r if r * r == n else r + 1


def build_kruckeberg(
    steps: int,
    audit: bool = False,
    max_element: int = DEFAULT_MAX_ELEMENT,
    pruning: str = "cover",
) -> KruckebergTrace:
    """Run the recursion from ``A_1 = {0, 1}`` through ``A_steps``.

    Stops early (``truncated=True``) before a step whose largest new element
    would exceed ``max_element``. With ``audit`` the union lemma is checked on
    each adjunction and every ``A_k`` is brute-force checked for the Sidon
    property and coverage of ``[1, k]``.
    """
    if steps < 2:
        raise InvalidArgumentError("at least two steps are needed")
    current = IntegerSet([0, 1])
    history = []
    reports = []
    truncated = False
    for k in range(2, steps + 1):
        l = current.max()
        p = next_prime(4 * l * l)
        if 4 * p * p + k > max_element:
            truncated = True
            break
        block = prune_to_bp(p, pruning).pruned.shift(p * p + 2 * l)
        pair = None if has_difference(current, k) else (4 * p * p, 4 * p * p + k)
        merged = current.union(block)
        if audit:
            reports.append(_audited(current, block, f"step {k}: A_{k - 1} vs shifted B_p"))
            if pair is not None:
                reports.append(_audited(merged, IntegerSet(pair), f"step {k}: A_{k - 1}+block vs pair"))
        nxt = merged.union(pair) if pair else merged
        if audit:
            for rep in (is_sidon(nxt), coverage(nxt, k)):
                reports.append(rep)
                if not rep.holds:
                    raise InvariantViolation(f"A_{k} fails {rep.check}", rep)
        history.append(KruckebergStep(k, l, p, block, pair, current))
        current = nxt
    return KruckebergTrace(tuple(history), current, truncated, pruning, tuple(reports))


def _audited(C1: IntegerSet, C2: IntegerSet, label: str) -> VerificationReport:
    rep = union_lemma_check(C1, C2)
    if not rep.holds:
        raise InvariantViolation(f"union lemma hypotheses fail at {label}", rep)
    return rep


def density_ratio(trace: KruckebergTrace, k: int) -> DensitySample:
    """Sample ``A(x_k)`` at ``x_k = 2p_k^2 - p_k + l_k`` and compare it against
    ``(p_k - ceil(2 sqrt p_k)) sqrt(x_k) / (sqrt 2 p_k)`` in squared integer form."""
    s = trace.step(k)
    x = 2 * s.p * s.p - s.p + s.l
    count = counting_function(trace.final_set, x)
    slack = s.p - _ceil_sqrt(4 * s.p)
    holds = 2 * count * count * s.p * s.p >= slack * slack * x if slack > 0 else True
    return DensitySample(k, x, count, s.p, holds)
