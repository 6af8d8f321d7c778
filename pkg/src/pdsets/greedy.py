"""Greedy baseline: cover each missing difference with the smallest new pair."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import kernels
from .core import IntegerSet, InvalidArgumentError, differences_upto


@dataclass(frozen=True)
class GreedyTrace:
    upto: int
    final_set: IntegerSet
    t_values: dict[int, int]
    pair_origin: dict[int, tuple[int, int]]


def build_greedy(upto: int) -> GreedyTrace:
    """Start from ``{0, 1}``; for ``n = 2..upto`` not yet a difference, adjoin
    ``{m, m + n}`` with ``m >= 0`` minimal such that both are new and the set
    stays Sidon."""
    if upto < 1:
        raise InvalidArgumentError("upto must be positive")
    elems, origin = kernels.greedy_pairs(max(upto, 1))
    final = IntegerSet(elems.tolist())
    pairs = {n: (int(m), int(m) + n) for n, m in enumerate(origin.tolist()) if n >= 2 and m >= 0}
    return GreedyTrace(upto, final, _t_values(final, upto), pairs)


def _t_values(A: IntegerSet, upto: int) -> dict[int, int]:
    elems = A.elements
    out = {}
    for i, a in enumerate(elems):
        for b in elems[i + 1 :]:
            d = b - a
            if d > upto:
                break
            out[d] = a
    return dict(sorted(out.items()))


class TGrowthRow(NamedTuple):
    n: int
    t: int
    ratio: Fraction  # t_n / n^3


def t_growth_report(trace: GreedyTrace) -> tuple[list[TGrowthRow], Fraction]:
    """Rows ``(n, t_n, t_n / n^3)`` for every covered ``n`` and the largest ratio."""
    counts = differences_upto(trace.final_set, trace.upto)
    rows = [TGrowthRow(n, t, Fraction(t, n**3)) for n, t in trace.t_values.items() if counts.get(n) == 1]
    return rows, max((r.ratio for r in rows), default=Fraction(0))
