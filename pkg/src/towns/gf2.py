"""Linear algebra over GF(2) on characteristic vectors.

Rows are Python ints (bit ``j`` = element ``j + 1``), so XOR is row addition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceeded
from .family import SetFamily

ISOTROPIC_RANK_CAP = 20


@dataclass(frozen=True)
class Gf2Matrix:
    rows: tuple
    n: int

    def __post_init__(self):
        limit = 1 << self.n
        for r in self.rows:
            if not 0 <= r < limit:
                raise ValueError("row wider than n")

    @property
    def shape(self):
        return (len(self.rows), self.n)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]


def characteristic_matrix(family: SetFamily) -> Gf2Matrix:
    return Gf2Matrix(tuple(family.sets), family.n)


def _basis(m: Gf2Matrix) -> list[int]:
    """Reduced rows keyed by leading (lowest) bit; deterministic first-set-bit pivots."""
    pivots = {}
    for r in m.rows:
        while r:
            low = r & -r
            if low in pivots:
                r ^= pivots[low]
            else:
                pivots[low] = r
                break
    return list(pivots.values())


def rank(m: Gf2Matrix) -> int:
    return len(_basis(m))


def span_dims(m: Gf2Matrix) -> tuple[int, int]:
    """(dim W, dim W-perp) where W is the row space inside GF(2)^n."""
    r = rank(m)
    return r, m.n - r


def isotropic_count(m: Gf2Matrix) -> tuple[int, int]:
    """(|W|, number of w in W with w.w = 0, i.e. even weight)."""
    basis = _basis(m)
    if len(basis) > ISOTROPIC_RANK_CAP:
        raise CapExceeded(f"rank {len(basis)} exceeds the enumeration cap {ISOTROPIC_RANK_CAP}")
    # Gray-code walk over the span
    w, even = 0, 1
    for i in range(1, 1 << len(basis)):
        w ^= basis[(i & -i).bit_length() - 1]
        even += w.bit_count() % 2 == 0
    return 1 << len(basis), even


def check_claim_a2(family: SetFamily) -> bool:
    """For a (1,1) family: dim of the span is at most (n + 1) // 2."""
    dim, _ = span_dims(characteristic_matrix(family))
    return dim <= (family.n + 1) // 2
