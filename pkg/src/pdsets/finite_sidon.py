"""Finite Sidon sets from a prime: the modular construction ``R_p`` and its
pruned subset ``B_p`` with no small nonzero differences."""

from __future__ import annotations

from dataclasses import dataclass

from .core import IntegerSet, InvalidArgumentError, VerificationReport, is_sidon
from .primes import is_prime, primitive_root

PRUNING_RULES = ("cover", "both")


def _require_odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise InvalidArgumentError(f"expected an odd prime, got {p}")


def ruzsa_sidon(p: int) -> IntegerSet:
    """The ``p - 1`` integers ``x`` in ``[1, p^2 - p]`` with ``x = i (mod p-1)``
    and ``x = g^i (mod p)``, ``g`` the least primitive root.

    Since ``p = 1 (mod p-1)``, the CRT solution is ``g^i + p*((i - g^i) mod (p-1))``.
    """
    _require_odd_prime(p)
    g = primitive_root(p)
    out = []
    power = 1
    for i in range(1, p):
        power = power * g % p
        out.append(power + p * ((i - power) % (p - 1)))
    return IntegerSet(out)


def close_pairs(S: IntegerSet, p: int) -> list[tuple[int, int]]:
    """Pairs ``b < b'`` of ``S`` with ``(b' - b)^2 <= p``, in scan order."""
    elems = S.elements
    pairs = []
    for i, b in enumerate(elems):
        j = i + 1
        while j < len(elems) and (elems[j] - b) ** 2 <= p:
            pairs.append((b, elems[j]))
            j += 1
    return pairs


@dataclass(frozen=True)
class PrunedSidonSet:
    base_prime: int
    raw: IntegerSet
    pruned: IntegerSet
    rule: str = "cover"

    @property
    def removed_count(self) -> int:
        return len(self.raw) - len(self.pruned)

    def check(self) -> VerificationReport:
        """Verify the three lemma properties with integer arithmetic only."""
        p = self.base_prime
        witnesses = []
        if not self.pruned.issubset(self.raw):
            witnesses.append(("not-subset",))
        if len(self.raw) and (self.raw.min() < 1 or self.raw.max() > p * p - p):
            witnesses.append(("range", self.raw.min(), self.raw.max()))
        size = len(self.pruned)
        # |B_p| > p - 2 sqrt(p)  <=>  size >= p  or  (p - size)^2 < 4p
        if size < p and (p - size) ** 2 >= 4 * p:
            witnesses.append(("size", size))
        elems = self.pruned.elements
        for lo, hi in zip(elems, elems[1:]):
            if (hi - lo) ** 2 <= p:
                witnesses.append(("close", lo, hi, hi - lo))
        witnesses.extend(("sidon",) + w for w in is_sidon(self.pruned).witnesses)
        return VerificationReport("pruned-sidon", tuple(witnesses), (1, p * p - p), {"size": size})


def prune_to_bp(p: int, rule: str = "cover") -> PrunedSidonSet:
    """Remove elements of ``R_p`` until no two survivors lie within ``sqrt(p)``.

    ``rule="cover"`` drops one element (the larger) of each close pair not
    already broken, so at most ``floor(sqrt(p))`` elements go: a Sidon set has
    at most one pair per difference ``1..floor(sqrt(p))``.
    ``rule="both"`` drops every element that has a close partner.
    """
    if rule not in PRUNING_RULES:
        raise InvalidArgumentError(f"unknown pruning rule {rule!r}")
    raw = ruzsa_sidon(p)
    removed: set[int] = set()
    for lo, hi in close_pairs(raw, p):
        if rule == "both":
            removed.update((lo, hi))
        elif lo not in removed and hi not in removed:
            removed.add(hi)
    pruned = IntegerSet(x for x in raw if x not in removed)
    return PrunedSidonSet(p, raw, pruned, rule)
