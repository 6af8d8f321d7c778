"""Exact integer-set arithmetic: representation counters and the predicates
built on them (Sidon, perfect-difference prefix, coverage).

Everything here works on :class:`IntegerSet`, an immutable sorted tuple of
Python ints. Large sets whose span fits in 64 bits are routed through
:mod:`pdsets.kernels`; anything wider stays in exact Python arithmetic.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

import numpy as np

from . import kernels

# Below this size plain Python loops beat the array round trip.
_SMALL = 256


class InvalidArgumentError(ValueError):
    pass


class NonUniqueError(ValueError):
    """More than one element ``x`` has ``x + n`` in the set."""

    def __init__(self, n: int, witnesses: Iterable[int]):
        self.n = n
        self.witnesses = tuple(witnesses)
        super().__init__(f"t_{n} is not unique: witnesses {list(self.witnesses)}")


class InvariantViolation(RuntimeError):
    """A builder produced a set that fails one of its own guarantees."""

    def __init__(self, message: str, report: "VerificationReport | None" = None):
        self.report = report
        super().__init__(message)


class IntegerSet:
    """Finite set of integers kept in strictly increasing order."""

    __slots__ = ("_elements", "_lookup", "_array")

    def __init__(self, elements: Iterable[int] = ()):
        values = []
        for x in elements:
            if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
                raise InvalidArgumentError(f"not an integer: {x!r}")
            values.append(int(x))
        self._elements = tuple(sorted(set(values)))
        self._lookup = None
        self._array = None

    @property
    def elements(self) -> tuple[int, ...]:
        return self._elements

    def __iter__(self) -> Iterator[int]:
        return iter(self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    def __contains__(self, x) -> bool:
        return x in self.lookup

    def __getitem__(self, i):
        return self._elements[i]

    def __eq__(self, other) -> bool:
        if isinstance(other, IntegerSet):
            return self._elements == other._elements
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._elements)

    def __repr__(self) -> str:
        if len(self) <= 12:
            return f"IntegerSet({list(self._elements)})"
        head = ", ".join(map(str, self._elements[:5]))
        return f"IntegerSet([{head}, ...] n={len(self)} max={self.max()})"

    @property
    def lookup(self) -> frozenset:
        if self._lookup is None:
            self._lookup = frozenset(self._elements)
        return self._lookup

    def min(self) -> int:
        return self._elements[0]

    def max(self) -> int:
        return self._elements[-1]

    def fits_int64(self) -> bool:
        return kernels.fits_int64(self._elements)

    def as_array(self) -> np.ndarray:
        """Elements as int64 (only valid when :meth:`fits_int64`)."""
        if self._array is None:
            self._array = np.array(self._elements, dtype=np.int64)
        return self._array

    def union(self, *others: Iterable[int]) -> "IntegerSet":
        merged = list(self._elements)
        for other in others:
            merged.extend(other)
        return IntegerSet(merged)

    def isdisjoint(self, other: "IntegerSet") -> bool:
        small, big = (self, other) if len(self) <= len(other) else (other, self)
        return not any(x in big.lookup for x in small)

    def issubset(self, other: "IntegerSet") -> bool:
        return all(x in other.lookup for x in self)

    def shift(self, c: int) -> "IntegerSet":
        return IntegerSet(x + c for x in self._elements)


@dataclass(frozen=True)
class VerificationReport:
    """Result of a predicate check; ``holds`` iff there are no witnesses."""

    check: str
    witnesses: tuple = ()
    checked_range: tuple = ()
    detail: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return not self.witnesses

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "holds": self.holds,
            "witnesses": [[_jsonable(v) for v in w] for w in self.witnesses],
            "checked_range": [_jsonable(v) for v in self.checked_range],
            "detail": {k: _jsonable(v) for k, v in self.detail.items()},
        }


def _jsonable(v):
    if isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _as_set(A) -> IntegerSet:
    return A if isinstance(A, IntegerSet) else IntegerSet(A)


def _require_nonempty(*sets: IntegerSet) -> None:
    for S in sets:
        if len(S) == 0:
            raise InvalidArgumentError("representation counters need nonempty sets")


# ---------------------------------------------------------------------------
# Counters
# ---------------------------------------------------------------------------


def diff_count(A, B, u: int) -> int:
    """Number of pairs ``(a, b)`` in ``A x B`` with ``a - b == u``."""
    A, B = _as_set(A), _as_set(B)
    _require_nonempty(A, B)
    small, other, sign = (A, B, 1) if len(A) <= len(B) else (B, A, -1)
    if sign == 1:
        return sum(1 for a in small if a - u in other.lookup)
    return sum(1 for b in small if b + u in other.lookup)


def sum_count(A, u: int) -> int:
    """Number of pairs ``a <= a'`` in ``A`` with ``a + a' == u``."""
    A = _as_set(A)
    _require_nonempty(A)
    return sum(1 for a in A if 2 * a <= u and u - a in A.lookup)


def counting_function(A, x: int) -> int:
    """Number of elements ``a`` with ``1 <= a <= x``; zero and negatives never count."""
    A = _as_set(A)
    if x < 1:
        return 0
    return bisect_right(A.elements, x) - bisect_left(A.elements, 1)


def dilate(A, c: int) -> IntegerSet:
    if c <= 0:
        raise InvalidArgumentError(f"dilation factor must be positive, got {c}")
    return IntegerSet(c * a for a in _as_set(A))


def has_difference(A: IntegerSet, d: int) -> bool:
    """Whether ``d`` lies in ``A - A``."""
    if d == 0:
        return len(A) > 0
    if len(A) > _SMALL and A.fits_int64() and abs(d) < (1 << 62):
        arr = A.as_array()
        target = arr + abs(d)
        pos = np.searchsorted(arr, target)
        pos = np.minimum(pos, len(arr) - 1)
        return bool(np.any(arr[pos] == target))
    return any(a + d in A.lookup for a in A)


def differences_upto(A: IntegerSet, k: int) -> dict[int, int]:
    """Map ``n -> d_A(n)`` for ``1 <= n <= k`` (zero counts omitted)."""
    elems = A.elements
    counts: dict[int, int] = {}
    if k < 1:
        return counts
    if len(A) > _SMALL and A.fits_int64() and k < (1 << 60):
        arr = A.as_array()
        idx = np.arange(len(arr))
        right = np.searchsorted(arr, arr + k, side="right")
        lens = right - idx - 1
        total = int(lens.sum())
        if total <= 1 << 26:
            rows = np.repeat(idx, lens)
            offs = np.arange(total) - np.repeat(np.cumsum(lens) - lens, lens)
            d = arr[rows + 1 + offs] - arr[rows]
            vals, cnt = np.unique(d, return_counts=True)
            return {int(v): int(c) for v, c in zip(vals, cnt)}
    for i, a in enumerate(elems):
        stop = bisect_right(elems, a + k)
        for j in range(i + 1, stop):
            d = elems[j] - a
            counts[d] = counts.get(d, 0) + 1
    return counts


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------


def _sidon_witness_small(elems: tuple[int, ...]):
    seen: dict[int, tuple[int, int]] = {}
    for j in range(1, len(elems)):
        b = elems[j]
        for i in range(j):
            d = b - elems[i]
            if d in seen:
                c, e = seen[d]
                return (e, c, b, elems[i], d)
            seen[d] = (elems[i], b)
    return None


def is_sidon(A) -> VerificationReport:
    """Check that all positive differences ``a - b`` are distinct.

    A failure carries one witness ``(a, b, c, d, diff)`` with ``a - b == c - d
    == diff``, ``a > b``, ``c > d`` and ``(a, b) != (c, d)``.
    """
    A = _as_set(A)
    elems = A.elements
    rng = (0, elems[-1] - elems[0]) if elems else ()
    if len(elems) <= _SMALL or not A.fits_int64():
        w = _sidon_witness_small(elems)
    else:
        hit = kernels.sidon_collision(A.as_array())
        if hit is None:
            w = None
        else:
            i, j, k, l = hit
            w = (elems[j], elems[i], elems[l], elems[k], elems[j] - elems[i])
    return VerificationReport("sidon", (w,) if w else (), rng)


def coverage(A, k: int) -> VerificationReport:
    """Every ``n`` in ``[1, k]`` is a difference of ``A``; witnesses are the gaps."""
    A = _as_set(A)
    counts = differences_upto(A, k)
    missing = tuple((n,) for n in range(1, k + 1) if n not in counts)
    return VerificationReport("coverage", missing, (1, k))


def is_perfect_diff_prefix(A, k: int) -> VerificationReport:
    """Sidon and ``d_A(n) == 1`` for every ``n`` in ``[1, k]``.

    Witnesses: the Sidon collision if any, then ``(n, d_A(n))`` for each
    ``n <= k`` whose count is not exactly one.
    """
    A = _as_set(A)
    sidon = is_sidon(A)
    counts = differences_upto(A, k)
    bad = tuple((n, counts.get(n, 0)) for n in range(1, k + 1) if counts.get(n, 0) != 1)
    return VerificationReport("pds-prefix", sidon.witnesses + bad, (1, k))


def t_value(A, n: int) -> Optional[int]:
    """The unique ``x`` in ``A`` with ``x + n`` in ``A``; ``None`` if there is none.

    Raises :class:`NonUniqueError` when several witnesses exist.
    """
    A = _as_set(A)
    hits = [x for x in A if x + n in A.lookup]
    if not hits:
        return None
    if len(hits) > 1:
        raise NonUniqueError(n, hits)
    return hits[0]


def union_decomposition_check(A1, A2, n: int) -> VerificationReport:
    """Check ``d_A(n) = d_A1(n) + d_A2(n) + d_A1,A2(n) + d_A2,A1(n)`` for the
    disjoint union ``A = A1 | A2``."""
    A1, A2 = _as_set(A1), _as_set(A2)
    _require_nonempty(A1, A2)
    if not A1.isdisjoint(A2):
        raise InvalidArgumentError("union decomposition needs disjoint sets")
    union = A1.union(A2)
    terms = (diff_count(A1, A1, n), diff_count(A2, A2, n), diff_count(A1, A2, n), diff_count(A2, A1, n))
    lhs = diff_count(union, union, n)
    witnesses = () if lhs == sum(terms) else ((n, lhs) + terms,)
    return VerificationReport("union-decomposition", witnesses, (n, n), {"terms": list(terms), "total": lhs})
