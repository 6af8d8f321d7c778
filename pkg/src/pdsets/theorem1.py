"""Perfect difference sets from an arbitrary Sidon set.

The Sidon set is dilated by 3, thinned by four removal conditions into
``b0``, and then completed step by step with pairs ``u_{2k}, u_{2k+1}`` of a
very sparse auxiliary sequence whenever ``k`` is not yet a difference.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Callable, NamedTuple

from .core import (
    IntegerSet,
    InvalidArgumentError,
    InvariantViolation,
    VerificationReport,
    counting_function,
    dilate,
    has_difference,
    is_perfect_diff_prefix,
    is_sidon,
)


@dataclass(frozen=True)
class GrowthFunction:
    """Strictly increasing ``g: N -> N`` fixing the scale ``4^g(k)`` of block k."""

    func: Callable[[int], int]
    spec: str = "custom"

    def __call__(self, k: int) -> int:
        value = self.func(k)
        if not isinstance(value, int) or value < 1:
            raise InvalidArgumentError(f"g({k}) = {value!r} is not a positive integer")
        return value

    @classmethod
    def from_spec(cls, spec: str) -> "GrowthFunction":
        """Parse ``linear``, ``affine:c`` (k + c) or ``scaled:c`` (c * k)."""
        spec = spec.strip()
        if spec == "linear":
            return cls(lambda k: k, "linear")
        m = re.fullmatch(r"(affine|scaled):(\d+)", spec)
        if not m:
            raise InvalidArgumentError(f"bad growth function spec {spec!r}")
        c = int(m.group(2))
        if m.group(1) == "affine":
            return cls(lambda k: k + c, spec)
        if c < 1:
            raise InvalidArgumentError("scaled growth needs c >= 1")
        return cls(lambda k: c * k, spec)

    def check_increasing(self, kmax: int) -> None:
        prev = self(1)
        for k in range(2, kmax + 1):
            cur = self(k)
            if cur <= prev:
                raise InvalidArgumentError(f"g is not strictly increasing: g({k - 1})={prev}, g({k})={cur}")
            prev = cur


LINEAR = GrowthFunction.from_spec("linear")


def u_block(g: GrowthFunction, k: int) -> tuple[int, int]:
    """``(u_{2k}, u_{2k+1}) = (4^g(k) + e_k, 4^g(k) + e_k + k)``, ``e_k = [k = 2 mod 3]``."""
    if k < 1:
        raise InvalidArgumentError("blocks are indexed from k = 1")
    base = 4 ** g(k) + (1 if k % 3 == 2 else 0)
    return base, base + k


class UTerm(NamedTuple):
    value: int
    index: int  # i in u_i
    block: int  # k with u_i in U_k


class USequence:
    """Lazily evaluated auxiliary sequence for a growth function."""

    def __init__(self, g: GrowthFunction):
        self.g = g
        self._blocks: dict[int, tuple[int, int]] = {}

    def block(self, k: int) -> tuple[int, int]:
        if k not in self._blocks:
            self._blocks[k] = u_block(self.g, k)
        return self._blocks[k]

    def terms_upto(self, bound: int) -> list[UTerm]:
        """All terms with value ``<= bound``, in increasing order."""
        out = []
        k = 1
        prev_g = None
        while True:
            gk = self.g(k)
            if prev_g is not None and gk <= prev_g:
                raise InvalidArgumentError(f"g is not strictly increasing at k={k}")
            prev_g = gk
            lo, hi = self.block(k)
            if lo > bound:
                return out
            out.append(UTerm(lo, 2 * k, k))
            if hi <= bound:
                out.append(UTerm(hi, 2 * k + 1, k))
            k += 1

    def count(self, x: int) -> int:
        """``U(x)``, the number of terms not exceeding ``x``."""
        return len(self.terms_upto(x))


def check_u_properties(g: GrowthFunction, kmax: int) -> VerificationReport:
    """Verify for blocks ``1..kmax``: no term is divisible by 3; for ``u`` in
    block k and ``u', u'', u'''`` in earlier blocks ``u + u' > u'' + u'''``;
    and ``u - u' > u / 2``."""
    if kmax < 2:
        raise InvalidArgumentError("kmax must be at least 2")
    g.check_increasing(kmax)
    seq = USequence(g)
    witnesses = []
    earlier: list[int] = []
    for k in range(1, kmax + 1):
        current = seq.block(k)
        witnesses.extend(("i", u) for u in current if u % 3 == 0)
        if k >= 2:
            top = max(earlier)
            for u in current:
                for u1 in earlier:
                    # the quantifier over u'', u''' is attained at top + top
                    if u + u1 <= 2 * top:
                        witnesses.append(("ii", u, u1, top, top))
                    if 2 * (u - u1) <= u:
                        witnesses.append(("iii", u, u1))
        earlier.extend(current)
    return VerificationReport("u-properties", tuple(witnesses), (1, kmax), {"g": g.spec})


@dataclass(frozen=True)
class ConstructionTrace:
    source_sidon: IntegerSet
    g: GrowthFunction
    horizon: int
    b0: IntegerSet
    removed: tuple[IntegerSet, IntegerSet, IntegerSet, IntegerSet]
    steps: tuple[tuple[int, bool], ...] = ()
    final_set: IntegerSet = field(default_factory=IntegerSet)
    audit: tuple[VerificationReport, ...] = ()

    @property
    def removed_by_condition(self) -> tuple[int, int, int, int]:
        return tuple(counting_function(R, self.horizon) for R in self.removed)

    @property
    def useq(self) -> USequence:
        return USequence(self.g)

    def removal_budget(self, x: int) -> int:
        """``U(2x)^3 + 4 U(2x)^2 + U(2x)``, the most that can be removed up to ``x``."""
        u = self.useq.count(2 * x)
        return u**3 + 4 * u**2 + u


def build_b0(B, g: GrowthFunction = LINEAR, horizon: int | None = None) -> ConstructionTrace:
    """Dilate ``B`` by 3 and drop every element matching one of the removal
    conditions c1..c4.

    Terms above ``2 * horizon`` are never involved when ``b <= horizon``,
    so the conditions are expanded over terms up to that bound only.
    """
    B = B if isinstance(B, IntegerSet) else IntegerSet(B)
    if len(B) == 0 or B.min() < 1:
        raise InvalidArgumentError("source Sidon set must be nonempty and positive")
    report = is_sidon(B)
    if not report.holds:
        raise InvalidArgumentError(f"source set is not Sidon: {report.witnesses[0]}")
    if horizon is None:
        horizon = 3 * B.max()
    if horizon < 3 * B.max():
        raise InvalidArgumentError("horizon must be at least 3 * max(B)")

    Bp = dilate(B, 3)
    members = Bp.lookup
    terms = USequence(g).terms_upto(2 * horizon)
    r1, r2, r3, r4 = set(), set(), set(), set()

    # c1: b = u - u' + b', b > b', u in U_r, u' in U_{<r}
    for t in terms:
        for s in terms:
            if s.block < t.block:
                delta = t.value - s.value
                r1.update(b + delta for b in Bp if b + delta in members)
    # c2: b = u + u' - b', b >= b'
    for i, t in enumerate(terms):
        for s in terms[i:]:
            total = t.value + s.value
            r2.update(total - b for b in Bp if total - b >= b and total - b in members)
    # c3: b = u + u' - u'', u in U_r, u' <= u, u'' in U_{<r}
    for t in terms:
        for s in terms:
            if s.value > t.value:
                continue
            for w in terms:
                if w.block < t.block:
                    b = t.value + s.value - w.value
                    if b in members:
                        r3.add(b)
    # c4: |b - u_i| <= i
    for t in terms:
        r4.update(b for b in Bp if abs(b - t.value) <= t.index)

    gone = r1 | r2 | r3 | r4
    b0 = IntegerSet(b for b in Bp if b not in gone)
    removed = tuple(IntegerSet(r) for r in (r1, r2, r3, r4))
    return ConstructionTrace(B, g, horizon, b0, removed, final_set=b0)


def check_lemma_au(prev: IntegerSet, r: int, block: tuple[int, int]) -> VerificationReport:
    """For every ``n = a - u`` with ``a`` in ``prev`` and ``u`` in block r:
    ``|n| > r``, ``d_prev(n) = 0`` and ``d_{U_r, prev}(n) = 0``."""
    witnesses = []
    for a in prev:
        for u in block:
            n = a - u
            if abs(n) <= r:
                witnesses.append(("small", a, u, n))
            if has_difference(prev, n):
                witnesses.append(("d_prev", a, u, n))
            if any(v - n in prev.lookup for v in block):
                witnesses.append(("d_block_prev", a, u, n))
    return VerificationReport("lemma-a-u", tuple(witnesses), (r, r), {"block": list(block)})


def build_a(trace: ConstructionTrace, steps: int, audit: bool = False) -> ConstructionTrace:
    """Run steps ``k = 1..steps`` from ``b0``: adjoin block ``k`` exactly when
    ``k`` is not yet a difference of the current set."""
    if steps < 1:
        raise InvalidArgumentError("steps must be positive")
    seq = trace.useq
    current = set(trace.b0)
    log = []
    reports = []
    for k in range(1, steps + 1):
        covered = any(a + k in current for a in current)
        if not covered:
            block = seq.block(k)
            if audit:
                rep = check_lemma_au(IntegerSet(current), k, block)
                reports.append(rep)
                if not rep.holds:
                    raise InvariantViolation(f"lemma A-U fails at step {k}", rep)
            current.update(block)
        log.append((k, not covered))
    final = IntegerSet(current)
    if audit:
        rep = is_perfect_diff_prefix(final, steps)
        reports.append(rep)
        if not rep.holds:
            raise InvariantViolation(f"A_{steps} is not a perfect difference prefix", rep)
    return replace(trace, steps=tuple(log), final_set=final, audit=tuple(reports))


def removal_bound_check(trace: ConstructionTrace, x: int) -> VerificationReport:
    """Compare ``R_i(x)`` against ``U(2x)^2, U(2x)^2, U(2x)^3, 2U(2x)^2 + U(2x)``
    and check ``A(x) >= B(x/3) - (U(2x)^3 + 4U(2x)^2 + U(2x))``."""
    if not 1 <= x <= trace.horizon:
        raise InvalidArgumentError(f"x={x} outside [1, horizon={trace.horizon}]")
    u = trace.useq.count(2 * x)
    tallies = [counting_function(R, x) for R in trace.removed]
    limits = [u * u, u * u, u**3, 2 * u * u + u]
    witnesses = [(f"R{i + 1}", tallies[i], limits[i]) for i in range(4) if tallies[i] > limits[i]]
    a_x = counting_function(trace.final_set, x)
    b_x3 = counting_function(trace.source_sidon, x // 3)
    budget = u**3 + 4 * u * u + u
    if a_x < b_x3 - budget:
        witnesses.append(("A(x)", a_x, b_x3 - budget))
    detail = {"U(2x)": u, "R": tallies, "limits": limits, "A(x)": a_x, "B(x/3)": b_x3, "budget": budget}
    return VerificationReport("removal-bounds", tuple(witnesses), (1, x), detail)
