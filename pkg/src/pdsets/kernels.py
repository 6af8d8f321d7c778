"""Hot inner loops, each with a numba and a pure-numpy implementation.

All kernels take sorted ``int64`` arrays. Callers are responsible for making
sure values fit: :func:`fits_int64` is the gate used by :mod:`pdsets.core`,
which falls back to exact Python integers otherwise.

Dispatchers (``sidon_collision``, ``greedy_pairs``, ``first_in_sumset``) pick
the implementation from :func:`pdsets._accel.backend`.
"""

from __future__ import annotations

import numpy as np

from . import _accel
from ._accel import njit

# Differences are formed after shifting the array to start at 0, and window
# bounds are added to array values, so the span must leave headroom.
INT64_SPAN_LIMIT = 1 << 61

_MAX_WINDOW_BITS = 27  # 16 MiB bitmap
_INT64_MAX = np.iinfo(np.int64).max


def fits_int64(values) -> bool:
    """True when a sorted sequence of ints can be handed to the kernels."""
    if len(values) == 0:
        return True
    lo, hi = values[0], values[-1]
    return -(1 << 62) <= lo and hi < (1 << 62) and hi - lo < INT64_SPAN_LIMIT


def as_shifted_array(values) -> np.ndarray:
    base = values[0]
    return np.fromiter((v - base for v in values), dtype=np.int64, count=len(values))


# ---------------------------------------------------------------------------
# Sidon collision search
# ---------------------------------------------------------------------------


@njit(cache=True)
def _locate_pair(a, d, skip_i, skip_j):
    n = a.shape[0]
    for k in range(n):
        target = a[k] + d
        l = np.searchsorted(a, target)
        if l < n and a[l] == target and not (k == skip_i and l == skip_j):
            return k, l
    return -1, -1


@njit(cache=True)
def _sidon_collision_jit(a, window_bits):
    n = a.shape[0]
    width = np.int64(1) << window_bits
    bitmap = np.zeros(width >> 3, dtype=np.uint8)
    ptr = np.empty(n, dtype=np.int64)
    start = np.empty(n, dtype=np.int64)
    for i in range(n):
        ptr[i] = i + 1
    while True:
        lo = _INT64_MAX
        for i in range(n - 1):
            j = ptr[i]
            if j < n:
                d = a[j] - a[i]
                if d < lo:
                    lo = d
        if lo == _INT64_MAX:
            return -1, -1, -1, -1
        hi = lo + width
        marked = 0
        for i in range(n - 1):
            j = ptr[i]
            start[i] = j
            ai = a[i]
            while j < n:
                d = a[j] - ai
                if d >= hi:
                    break
                off = d - lo
                byte = off >> 3
                bit = 1 << (off & 7)
                if bitmap[byte] & bit:
                    k, l = _locate_pair(a, d, i, j)
                    return k, l, i, j
                bitmap[byte] = bitmap[byte] | bit
                marked += 1
                j += 1
            ptr[i] = j
        if marked * 512 < width:
            for i in range(n - 1):
                for j in range(start[i], ptr[i]):
                    bitmap[(a[j] - a[i] - lo) >> 3] = 0
        else:
            bitmap[:] = 0


def sidon_collision_numba(a: np.ndarray):
    """Return ``(i, j, k, l)`` with ``a[j]-a[i] == a[l]-a[k]`` for two distinct
    index pairs, or ``None`` when all positive differences are distinct.

    Positive differences are streamed window by window into a bitmap, so memory
    stays bounded however wide the set is.
    """
    n = a.shape[0]
    if n < 3:
        return None
    span = int(a[-1] - a[0])
    bits = max(6, min(_MAX_WINDOW_BITS, span.bit_length() + 1))
    i, j, k, l = _sidon_collision_jit(a - a[0], bits)
    if i < 0:
        return None
    return int(i), int(j), int(k), int(l)


def sidon_collision_numpy(a: np.ndarray, limit: int = 1 << 22):
    n = a.shape[0]
    if n < 3:
        return None
    a = a - a[0]
    idx = np.arange(n, dtype=np.int64)
    ptr = idx + 1
    width = 1 << 16
    while True:
        live = ptr < n
        if not live.any():
            return None
        lo = int((a[ptr[live]] - a[live]).min())
        while True:
            right = np.maximum(np.searchsorted(a, a + (lo + width), side="left"), ptr)
            counts = right - ptr
            total = int(counts.sum())
            if total <= limit or width == 1:
                break
            width //= 2
        rows = np.repeat(idx, counts)
        offsets = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
        cols = ptr[rows] + offsets
        d = a[cols] - a[rows]
        if width <= 16 * total + 1024:
            tally = np.bincount(d - lo, minlength=width)
            repeated = np.flatnonzero(tally > 1)
            if repeated.size:
                hits = np.flatnonzero(d == repeated[0] + lo)[:2]
                p, q = int(hits[0]), int(hits[1])
                return int(rows[p]), int(cols[p]), int(rows[q]), int(cols[q])
        else:
            order = np.argsort(d, kind="stable")
            ds = d[order]
            eq = np.flatnonzero(ds[1:] == ds[:-1])
            if eq.size:
                p, q = int(order[eq[0]]), int(order[eq[0] + 1])
                return int(rows[p]), int(cols[p]), int(rows[q]), int(cols[q])
        ptr = right
        if total < limit // 4 and width < (1 << 40):
            width *= 2


def sidon_collision(a: np.ndarray):
    if _accel.backend() == "numba":
        return sidon_collision_numba(a)
    return sidon_collision_numpy(a)


# ---------------------------------------------------------------------------
# Greedy pair search
# ---------------------------------------------------------------------------


@njit(cache=True)
def _grow(arr, need):
    cap = arr.shape[0]
    while cap <= need:
        cap *= 2
    out = np.zeros(cap, dtype=arr.dtype)
    out[: arr.shape[0]] = arr
    return out


@njit(cache=True)
def _greedy_jit(upto):
    cap = 1 << 12
    used = np.zeros(cap, dtype=np.uint8)
    member = np.zeros(cap, dtype=np.uint8)
    elems = np.empty(2 * upto + 2, dtype=np.int64)
    elems[0] = 0
    elems[1] = 1
    na = 2
    top = 1
    used[1] = 1
    member[0] = 1
    member[1] = 1
    origin = np.full(upto + 1, -1, dtype=np.int64)
    marks = np.empty(4 * upto + 8, dtype=np.int64)
    for n in range(2, upto + 1):
        if n < used.shape[0] and used[n]:
            continue
        m = 0
        while True:
            need = max(m + n, top) + 1
            if need >= used.shape[0]:
                used = _grow(used, need)
                member = _grow(member, need)
            hi = m + n
            if member[m] or member[hi]:
                m += 1
                continue
            nm = 0
            ok = True
            used[n] = 1
            marks[0] = n
            nm = 1
            for i in range(na):
                d = m - elems[i]
                if d < 0:
                    d = -d
                if used[d]:
                    ok = False
                    break
                used[d] = 1
                marks[nm] = d
                nm += 1
                d = hi - elems[i]
                if d < 0:
                    d = -d
                if used[d]:
                    ok = False
                    break
                used[d] = 1
                marks[nm] = d
                nm += 1
            if ok:
                break
            for q in range(nm):
                used[marks[q]] = 0
            m += 1
        elems[na] = m
        elems[na + 1] = m + n
        na += 2
        member[m] = 1
        member[m + n] = 1
        if m + n > top:
            top = m + n
        origin[n] = m
    return elems[:na].copy(), origin


def greedy_pairs_numba(upto: int):
    """Pair greedy up to ``upto``; returns ``(elements, origin)`` where
    ``origin[n]`` is the smaller element of the pair adjoined for ``n`` or -1."""
    return _greedy_jit(upto)


def greedy_pairs_numpy(upto: int):
    elems = [0, 1]
    used = np.zeros(1 << 12, dtype=bool)
    member = np.zeros(1 << 12, dtype=bool)
    used[1] = True
    member[0] = member[1] = True
    origin = np.full(upto + 1, -1, dtype=np.int64)
    for n in range(2, upto + 1):
        if n < used.size and used[n]:
            continue
        A = np.asarray(elems, dtype=np.int64)
        top = int(A.max())
        m0, batch = 0, 64
        while True:
            need = m0 + batch + n + top + 1
            if need >= used.size:
                size = used.size
                while size <= need:
                    size *= 2
                used = np.concatenate([used, np.zeros(size - used.size, dtype=bool)])
                member = np.concatenate([member, np.zeros(size - member.size, dtype=bool)])
            ms = np.arange(m0, m0 + batch, dtype=np.int64)
            d1 = np.abs(ms[:, None] - A[None, :])
            d2 = np.abs(ms[:, None] + n - A[None, :])
            bad = member[ms] | member[ms + n] | used[d1].any(axis=1) | used[d2].any(axis=1)
            rows = np.concatenate([np.full((batch, 1), n, dtype=np.int64), d1, d2], axis=1)
            rows.sort(axis=1)
            bad |= (rows[:, 1:] == rows[:, :-1]).any(axis=1)
            good = np.flatnonzero(~bad)
            if good.size:
                m = int(ms[good[0]])
                break
            m0 += batch
            batch = min(batch * 2, max(64, (1 << 21) // (2 * A.size + 1)))
        used[np.abs(m - A)] = True
        used[np.abs(m + n - A)] = True
        used[n] = True
        member[m] = member[m + n] = True
        elems.extend((m, m + n))
        origin[n] = m
    return np.asarray(elems, dtype=np.int64), origin


def greedy_pairs(upto: int):
    if _accel.backend() == "numba":
        return greedy_pairs_numba(upto)
    return greedy_pairs_numpy(upto)


# ---------------------------------------------------------------------------
# Sumset membership
# ---------------------------------------------------------------------------


@njit(cache=True)
def _first_in_sumset_jit(a, targets):
    n = a.shape[0]
    for t in range(targets.shape[0]):
        goal = targets[t]
        i = 0
        j = n - 1
        while i <= j:
            s = a[i] + a[j]
            if s == goal:
                return t, i, j
            if s < goal:
                i += 1
            else:
                j -= 1
    return -1, -1, -1


def first_in_sumset_numba(a: np.ndarray, targets: np.ndarray):
    """First ``t`` with ``targets[t] == a[i] + a[j]`` (``i <= j``), as ``(t, i, j)``."""
    t, i, j = _first_in_sumset_jit(a, targets)
    if t < 0:
        return None
    return int(t), int(i), int(j)


def first_in_sumset_numpy(a: np.ndarray, targets: np.ndarray):
    n = a.shape[0]
    for t, goal in enumerate(targets.tolist()):
        partner = goal - a
        pos = np.searchsorted(a, partner)
        pos_c = np.minimum(pos, n - 1)
        hit = np.flatnonzero((pos < n) & (a[pos_c] == partner) & (pos_c >= np.arange(n)))
        if hit.size:
            i = int(hit[0])
            return t, i, int(pos[i])
    return None


def first_in_sumset(a: np.ndarray, targets: np.ndarray):
    if _accel.backend() == "numba":
        return first_in_sumset_numba(a, targets)
    return first_in_sumset_numpy(a, targets)
