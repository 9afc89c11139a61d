"""Set families over [n], residue patterns, and pattern verification.

Subsets are plain Python ints used as bit masks: element ``i`` of the ground
set ``[n] = {1, ..., n}`` is bit ``i - 1``.  A family is an ordered tuple of
distinct masks together with its ground size.
"""

from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .errors import DuplicateMembersError, GroundError, UnsupportedPattern, UsageError

STAR = "*"
DEFAULT_GROUND_CAP = 1024

Entry = Union[int, str]


def ground_cap() -> int:
    """Largest admissible ground size (``TOWNS_GROUND_CAP`` overrides)."""
    raw = os.environ.get("TOWNS_GROUND_CAP")
    if raw is None:
        return DEFAULT_GROUND_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"TOWNS_GROUND_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise UsageError("TOWNS_GROUND_CAP must be positive")
    return cap


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        if e < 1:
            raise GroundError(f"elements are 1-based, got {e}")
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: int) -> list[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


# ---------------------------------------------------------------------------
# patterns


@dataclass(frozen=True)
class Pattern:
    """Residue constraints for the 1-wise, 2-wise, ..., k-wise intersections.

    Each entry is either an exact residue ``r`` (``0 <= r < modulus``) or
    ``STAR``, meaning "any nonzero residue".  For modulus 2 a star is the same
    constraint as residue 1 and is stored that way.
    """

    modulus: int
    entries: tuple

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 2:
            raise UsageError(f"modulus must be an integer >= 2, got {self.modulus!r}")
        entries = tuple(self.entries)
        if not entries:
            raise UsageError("a pattern needs at least one entry")
        norm = []
        for e in entries:
            if e == STAR:
                norm.append(1 if self.modulus == 2 else STAR)
            elif isinstance(e, (int, np.integer)) and not isinstance(e, bool):
                if not 0 <= int(e) < self.modulus:
                    raise UsageError(f"residue {e} outside [0, {self.modulus})")
                norm.append(int(e))
            else:
                raise UsageError(f"bad pattern entry {e!r}")
        object.__setattr__(self, "entries", tuple(norm))

    @classmethod
    def parse(cls, text: str, modulus: int = 2) -> "Pattern":
        """Parse the compact form used on the command line, e.g. ``"110"`` or ``"00*"``."""
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1]
        parts = [p.strip() for p in text.split(",")] if "," in text else list(text)
        entries: list[Entry] = []
        for ch in parts:
            if ch == STAR:
                entries.append(STAR)
            elif ch.isdigit():
                entries.append(int(ch))
            else:
                raise UsageError(f"pattern text {text!r}: unexpected {ch!r}")
        return cls(modulus, tuple(entries))

    @property
    def k(self) -> int:
        return len(self.entries)

    @property
    def is_exact(self) -> bool:
        return STAR not in self.entries

    def accepts(self, level: int, size: int) -> bool:
        e = self.entries[level - 1]
        r = size % self.modulus
        return r != 0 if e == STAR else r == e

    def accepts_array(self, level: int, sizes: np.ndarray) -> np.ndarray:
        e = self.entries[level - 1]
        r = np.rint(sizes).astype(np.int64) % self.modulus
        return r != 0 if e == STAR else r == e

    def prefix(self, length: int) -> "Pattern":
        return Pattern(self.modulus, self.entries[:length])

    def suffix(self, start: int) -> "Pattern":
        """Entries ``start+1 .. k`` (so ``suffix(t)`` drops the first ``t``)."""
        return Pattern(self.modulus, self.entries[start:])

    def __str__(self) -> str:
        if self.modulus <= 10:
            return "".join(str(e) for e in self.entries)
        return ",".join(str(e) for e in self.entries)

    def __iter__(self):
        return iter(self.entries)


def as_pattern(pattern: Union[Pattern, str, Sequence[Entry]], modulus: int = 2) -> Pattern:
    if isinstance(pattern, Pattern):
        return pattern
    if isinstance(pattern, str):
        return Pattern.parse(pattern, modulus)
    return Pattern(modulus, tuple(pattern))


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class SetFamily:
    """An ordered family of pairwise distinct subsets of ``[n]``.

    ``n = 0`` is allowed so that traces onto an empty intersection stay
    representable; the only subset of the empty ground is the empty set.
    """

    n: int
    sets: tuple

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise GroundError(f"ground size must be a nonnegative integer, got {self.n!r}")
        cap = ground_cap()
        if self.n > cap:
            raise GroundError(f"ground size {self.n} exceeds the cap {cap}")
        sets = tuple(int(s) for s in self.sets)
        limit = 1 << self.n
        seen = set()
        for pos, s in enumerate(sets, 1):
            if s < 0 or s >= limit:
                raise GroundError(f"member {pos} has elements outside [{self.n}]")
            if s in seen:
                raise DuplicateMembersError(f"member {pos} repeats an earlier member")
            seen.add(s)
        object.__setattr__(self, "sets", sets)

    @classmethod
    def from_lists(cls, n: int, members: Iterable[Iterable[int]]) -> "SetFamily":
        masks = []
        for members_ in members:
            elems = list(members_)
            for e in elems:
                if not 1 <= e <= n:
                    raise GroundError(f"element {e} outside [{n}]")
            masks.append(mask_of(elems))
        return cls(n, tuple(masks))

    def to_lists(self) -> list[list[int]]:
        return [elements_of(s) for s in self.sets]

    def padded(self, extra: int) -> "SetFamily":
        """Same members on a ground set with ``extra`` isolated elements appended."""
        return SetFamily(self.n + extra, self.sets)

    def sizes(self) -> list[int]:
        return [s.bit_count() for s in self.sets]

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sets)

    def __getitem__(self, i):
        return self.sets[i]


@dataclass(frozen=True)
class Violation:
    """First failing intersection: 1-based member indices and what was seen."""

    indices: tuple
    level: int
    observed_size: int
    required: Entry

    def as_dict(self) -> dict:
        return {
            "indices": list(self.indices),
            "level": self.level,
            "observed_size": self.observed_size,
            "required": self.required,
        }


def intersection_size(members: Sequence[int]) -> int:
    """Cardinality of the common intersection of the given masks."""
    members = list(members)
    if not members:
        raise UsageError("intersection_size needs at least one member")
    acc = members[0]
    for s in members[1:]:
        acc &= s
    return acc.bit_count()


# ---------------------------------------------------------------------------
# verification


def bit_matrix(family: SetFamily, dtype=np.float32) -> np.ndarray:
    """0/1 matrix with one row per member and one column per ground element."""
    m, n = len(family), family.n
    if m == 0 or n == 0:
        return np.zeros((m, n), dtype=dtype)
    nbytes = (n + 7) // 8
    raw = b"".join(s.to_bytes(nbytes, "little") for s in family.sets)
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8).reshape(m, nbytes), axis=1, bitorder="little")
    return bits[:, :n].astype(dtype)


@lru_cache(maxsize=64)
def _upper_pairs(r: int):
    return np.triu_indices(r, 1)


def _prefix_products(M: np.ndarray, depth: int, stop: int):
    """Yield ``(indices, product_row)`` for index combinations of ``depth`` below ``stop``, in lex order."""
    if depth == 0:
        yield (), None
        return

    def rec(start, chosen, acc):
        for i in range(start, stop):
            row = M[i] if acc is None else acc * M[i]
            if len(chosen) + 1 == depth:
                yield chosen + (i,), row
            else:
                yield from rec(i + 1, chosen + (i,), row)

    yield from rec(0, (), None)


def _first_violation_at_level(M: np.ndarray, pattern: Pattern, level: int):
    m = M.shape[0]
    if level == 1:
        sizes = M.sum(axis=1)
        ok = pattern.accepts_array(1, sizes)
        if ok.all():
            return None
        i = int(np.argmin(ok))
        return Violation((i + 1,), 1, int(round(sizes[i])), pattern.entries[0])
    # level >= 2: every prefix of (level - 2) members, then all pairs after it
    for prefix, row in _prefix_products(M, level - 2, m - 2):
        start = prefix[-1] + 1 if prefix else 0
        R = M[start:]
        r = R.shape[0]
        if r < 2:
            continue
        G = (R if row is None else R * row) @ R.T
        iu = _upper_pairs(r)
        vals = G[iu]
        ok = pattern.accepts_array(level, vals)
        if not ok.all():
            j = int(np.argmin(ok))
            a, b = int(iu[0][j]) + start, int(iu[1][j]) + start
            idx = tuple(p + 1 for p in prefix) + (a + 1, b + 1)
            return Violation(idx, level, int(round(vals[j])), pattern.entries[level - 1])
    return None


def find_violation(family: SetFamily, pattern: Pattern):
    """Lexicographically first violation (by level, then index tuple), or None."""
    pattern = as_pattern(pattern)
    m = len(family)
    if m == 0:
        return None
    M = bit_matrix(family)
    for level in range(1, min(pattern.k, m) + 1):
        v = _first_violation_at_level(M, pattern, level)
        if v is not None:
            return v
    return None


def verify_pattern(family: SetFamily, pattern: Pattern) -> bool:
    """True iff every i-wise intersection of distinct members meets entry i.

    Levels above ``len(family)`` have no i-tuples and are satisfied vacuously.
    Cost grows like the number of (k-2)-subsets of members times a matrix
    product, so very large families with k >= 4 get expensive.
    """
    return find_violation(family, pattern) is None


def level_residues(family: SetFamily, modulus: int, k: int) -> list[set[int]]:
    """Residues observed at each level 1..k (empty set where no tuples exist)."""
    out = []
    masks = family.sets
    for level in range(1, k + 1):
        seen = set()
        for combo in itertools.combinations(masks, level):
            seen.add(intersection_size(combo) % modulus)
        out.append(seen)
    return out


# ---------------------------------------------------------------------------
# pattern algebra


def pattern_dual(pattern: Pattern) -> Pattern:
    """Entrywise complement mod 2 (the pattern met after adjoining a universal element)."""
    if pattern.modulus != 2:
        raise UnsupportedPattern("duals are defined for modulus 2 only")
    return Pattern(2, tuple(1 - e for e in pattern.entries))


def pattern_sum(a: Pattern, b: Pattern) -> Pattern:
    if a.modulus != b.modulus:
        raise UnsupportedPattern(f"moduli differ: {a.modulus} vs {b.modulus}")
    if a.k != b.k:
        raise UnsupportedPattern(f"lengths differ: {a.k} vs {b.k}")
    if not (a.is_exact and b.is_exact):
        raise UnsupportedPattern("pattern_sum needs exact residues, not '*'")
    return Pattern(a.modulus, tuple((x + y) % a.modulus for x, y in zip(a.entries, b.entries)))


class PatternClass(enum.Enum):
    LINEAR = "LinearType"
    SQRT_BOUNDED = "SqrtBounded"


def linear_type_vectors(k: int) -> frozenset:
    """The eight length-k vectors (k >= 3) whose families can have linear size."""
    zero = (0,) * k
    strong_odd = (1,) + (0,) * (k - 1)
    alternating = tuple(1 if i % 2 == 1 else 0 for i in range(1, k + 1))
    delayed = tuple(0 if i <= 2 else (1 if i % 2 == 1 else 0) for i in range(1, k + 1))
    base = {zero, strong_odd, alternating, delayed}
    return frozenset(base | {tuple(1 - x for x in v) for v in base})


def classify_pattern(pattern: Pattern) -> PatternClass:
    pattern = as_pattern(pattern)
    if pattern.modulus != 2:
        raise UnsupportedPattern("classification covers modulus 2 patterns only")
    if pattern.k < 3:
        raise UnsupportedPattern("classification needs k >= 3")
    if pattern.entries in linear_type_vectors(pattern.k):
        return PatternClass.LINEAR
    return PatternClass.SQRT_BOUNDED
