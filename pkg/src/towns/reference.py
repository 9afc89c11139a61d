"""Reference brackets for the tabulated patterns.

``lower`` is the largest catalog construction that fits on [n]: padding with
isolated points, or adjoining a universal point to a construction for the
dual pattern.  A closed-form two-member family covers the cells where no
catalog entry reaches.  ``upper`` is ``bounds.upper_bound``; the four
square-root 4-wise patterns also carry the ``floor(sqrt(2n)) + 1`` cap.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

from .bounds import upper_bound
from .constructions import ConstructionSpec, catalog
from .errors import NotTabulated
from .family import STAR, Pattern, as_pattern, pattern_dual

SQRT_PATTERNS = frozenset(Pattern(2, e) for e in ((0, 1, 0, 0), (0, 0, 1, 1), (0, 0, 0, 1), (0, 1, 1, 0)))


@dataclass(frozen=True)
class ReferenceBound:
    lower: int
    upper: float  # int, or math.inf
    exact: bool
    note: str

    def contains(self, value: int) -> bool:
        return self.lower <= value <= self.upper


def tabulated_patterns() -> list[Pattern]:
    """Every pattern the table covers, mod 2 (k = 2, 3, 4) then mod 3 (k = 3)."""
    out = []
    for k in (2, 3, 4):
        out += [Pattern(2, e) for e in itertools.product((0, 1), repeat=k)]
    out += [Pattern(3, e) for e in itertools.product((0, STAR), repeat=3)]
    return out


_TABLE = frozenset(tabulated_patterns())


def _param_choices(e, pattern: Pattern, n: int):
    """Candidate parameter dicts for one catalog entry, all with ground <= n."""
    k, p = pattern.k, pattern.modulus
    names = e.params
    fixed = {}
    if "k" in e.defaults:
        fixed["k"] = k
    if "modulus" in e.defaults:
        fixed["modulus"] = p
    if names == ("n",):
        extra = [{"aux": a} for a in (0, 1)] if "aux" in e.defaults else [{}]
        for v in range(1, n + 1):
            for x in extra:
                yield {"n": v, **fixed, **x}
    elif names == ("k",):
        for v in range(1, n + 1):
            yield {"k": v}
    elif names == ("n", "t"):
        for t in range(0, n):
            yield {"n": n, "t": t, **fixed}
    elif names == ("n", "m"):
        for v in range(3, n + 1):
            for m in range(1, n // v):
                yield {"n": v, "m": m, **fixed}


def best_construction(pattern, n: int) -> tuple[int, Optional[ConstructionSpec]]:
    """Largest catalog family meeting ``pattern`` that fits on [n] after padding."""
    pattern = as_pattern(pattern)
    best, best_spec = 0, None
    for e in catalog():
        if e.id == "ANM" and pattern.k != 3:
            continue
        for params in _param_choices(e, pattern, n):
            if e.violation(params) is not None:
                continue
            if e.ground(params) > n or e.pattern(params) != pattern:
                continue
            size = e.size(params)
            if size > best:
                spec = ConstructionSpec(e.id, dict(params, pad=n - e.ground(params)))
                best, best_spec = size, spec
    return best, best_spec


def small_family_lower(pattern: Pattern, n: int) -> int:
    """1 or 2 when a single set, or a pair with sizes a, b and overlap c, fits."""
    sizes = [s for s in range(n + 1) if pattern.accepts(1, s)]
    if not sizes:
        return 0
    if pattern.k < 2:
        return min(2, sum(math.comb(n, s) for s in sizes))
    for a in sizes:
        for b in sizes:
            if b < a:
                continue
            for c in range(0, a + 1):
                if a == b == c or a + b - c > n or not pattern.accepts(2, c):
                    continue
                return 2
    return 1


def reference_value(pattern, n: int) -> ReferenceBound:
    pattern = as_pattern(pattern)
    if pattern not in _TABLE:
        raise NotTabulated(f"pattern {pattern} mod {pattern.modulus} is not tabulated")
    if n < 1:
        raise NotTabulated("the table starts at n = 1")

    notes = []
    lower, spec = best_construction(pattern, n)
    if spec is not None:
        notes.append(f"construction {spec.id}")
    if pattern.modulus == 2 and n >= 2:
        d_lower, d_spec = best_construction(pattern_dual(pattern), n - 1)
        if d_lower > lower:
            lower = d_lower
            notes = [f"construction {d_spec.id} plus a universal point"]
    tiny = small_family_lower(pattern, n)
    if tiny > lower:
        lower = tiny
        notes = ["explicit small family"]

    upper = upper_bound(pattern, n)
    if pattern in SQRT_PATTERNS:
        cap = math.isqrt(2 * n) + 1
        if cap < upper:
            upper = cap
            notes.append("sqrt(2n) + 1 cap")
    upper = max(upper, lower)  # the cap is asymptotic in origin; never let it undercut a verified construction
    return ReferenceBound(lower, upper, lower == upper, "; ".join(notes) or "trivial")
