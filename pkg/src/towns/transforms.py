"""Family transforms: trace, dual, partition sum, restriction, complement.

Whenever the ground set shrinks, survivors are renumbered ``1..m`` in
increasing order of their old labels, and the old labels come back as
``relabel`` (``relabel[j - 1]`` is the old label of new element ``j``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .bounds import incompatible
from .errors import DuplicateMembersError, PreconditionError, UsageError
from .family import Pattern, SetFamily, as_pattern, elements_of, find_violation, pattern_sum


def _compress(mask: int, labels: Sequence[int]) -> int:
    out = 0
    for j, old in enumerate(labels):
        if mask >> (old - 1) & 1:
            out |= 1 << j
    return out


def _indices(family: SetFamily, chosen) -> list[int]:
    idx = [int(i) for i in chosen]
    for i in idx:
        if not 1 <= i <= len(family):
            raise UsageError(f"member index {i} outside 1..{len(family)}")
    if len(set(idx)) != len(idx):
        raise UsageError("chosen member indices repeat")
    return idx


@dataclass(frozen=True)
class TraceResult:
    family: SetFamily
    pattern: Pattern
    relabel: tuple


def trace(family: SetFamily, pattern, chosen: Sequence[int]) -> TraceResult:
    """Restrict the unchosen members to T, the intersection of the chosen ones.

    ``chosen`` lists ``t = len(chosen)`` member indices (1-based).  The result
    has ``|family| - t`` members on ground ``|T|`` and meets the suffix
    pattern starting at entry ``t + 1``.
    """
    pattern = as_pattern(pattern)
    idx = _indices(family, chosen)
    t = len(idx)
    if t >= len(family):
        raise PreconditionError(f"t = {t} must be smaller than the family size {len(family)}")
    if t + 2 > pattern.k:
        raise PreconditionError(f"entries {t + 1} and {t + 2} must exist (k = {pattern.k})")
    a, b = pattern.entries[t], pattern.entries[t + 1]
    if not incompatible(a, b):
        raise PreconditionError(
            f"entries {t + 1} and {t + 2} ({a}, {b}) must be incompatible for traces to stay distinct")
    bad = find_violation(family, pattern)
    if bad is not None:
        raise PreconditionError(f"family does not meet {pattern}: {bad.as_dict()}")

    T = (1 << family.n) - 1
    for i in idx:
        T &= family[i - 1]
    labels = tuple(elements_of(T))
    picked = set(idx)
    rest = [family[i] for i in range(len(family)) if i + 1 not in picked]
    out = SetFamily(len(labels), tuple(_compress(s & T, labels) for s in rest))
    return TraceResult(out, pattern.suffix(t), labels)


def dualize(family: SetFamily) -> SetFamily:
    """Adjoin one new element, ``n + 1``, to every member."""
    extra = 1 << family.n
    return SetFamily(family.n + 1, tuple(s | extra for s in family.sets))


def partition_sum(a: SetFamily, b: SetFamily, pattern_a=None, pattern_b=None) -> SetFamily:
    """Pair ``A_i`` with ``B_i`` (b shifted past a's ground) and take unions.

    Extra members of the longer family are dropped.  Passing both patterns
    checks that their sum is defined; the result then meets that sum.
    """
    if pattern_a is not None and pattern_b is not None:
        pattern_sum(as_pattern(pattern_a), as_pattern(pattern_b))
    shift = a.n
    m = min(len(a), len(b))
    return SetFamily(a.n + b.n, tuple(a[i] | (b[i] << shift) for i in range(m)))


@dataclass(frozen=True)
class Restriction:
    """Members ``F - pivot`` for the non-pivot members, kept as a sequence.

    Different members may restrict to the same set, so ``members`` can
    repeat.  ``family()`` insists on distinct members; ``deduplicated()``
    keeps first occurrences.
    """

    members: tuple
    n: int
    relabel: tuple

    @property
    def has_duplicates(self) -> bool:
        return len(set(self.members)) != len(self.members)

    def family(self) -> SetFamily:
        if self.has_duplicates:
            raise DuplicateMembersError(
                f"restriction collapses {len(self.members) - len(set(self.members))} member(s)")
        return SetFamily(self.n, self.members)

    def deduplicated(self) -> SetFamily:
        seen, out = set(), []
        for s in self.members:
            if s not in seen:
                seen.add(s)
                out.append(s)
        return SetFamily(self.n, tuple(out))

    def __len__(self):
        return len(self.members)


def restrict_outside(family: SetFamily, pivot: int) -> Restriction:
    """Intersect every other member with the complement of member ``pivot`` (1-based)."""
    if len(family) < 2:
        raise PreconditionError("restrict_outside needs at least two members")
    (p,) = _indices(family, [pivot])
    outside = ((1 << family.n) - 1) & ~family[p - 1]
    labels = tuple(elements_of(outside))
    members = tuple(_compress(s & outside, labels)
                    for i, s in enumerate(family.sets) if i + 1 != p)
    return Restriction(members, len(labels), labels)


def complement_family(family: SetFamily) -> SetFamily:
    full = (1 << family.n) - 1
    return SetFamily(family.n, tuple(full ^ s for s in family.sets))
