"""Proven upper bounds on the largest family meeting a pattern.

``upper_bound`` takes the minimum over every argument that applies:

* the trivial count of subsets whose size meets entry 1;
* exact 2-wise values (oddtown, eventown and their reverses), and the
  3-wise and mod-3 arguments recorded in ``_direct``;
* prefixes: a family meeting a pattern meets each of its prefixes;
* traces: restricting to the intersection of ``t`` members whose next two
  entries are incompatible loses exactly ``t`` members;
* duality (mod 2): adjoining a new element to every set flips every entry;
* for 4-wise patterns whose entries 2..4 read ``(x, 1-x, 1-x)``, the
  pairwise intersections are all distinct and form an ``(x, 1-x)`` family,
  so ``C(m, 2)`` is at most that family's maximum;
* partition sums run backwards: if ``gamma = alpha + delta`` with ``delta``
  one of the alternating patterns, then ``f_gamma(N) >= min(f_delta(s),
  f_alpha(N - s))``.  Once ``f_delta(s) >= s - 1`` exceeds the bound on
  ``f_gamma(N)``, the minimum must be the ``alpha`` side, which bounds
  ``f_alpha`` on ``N - s`` points.

Small ground sets are guarded: each arithmetic bound is raised to at least
``k - 1`` where families below ``k`` members only face vacuous upper levels.
"""

from __future__ import annotations

import math
from functools import lru_cache
from math import comb

from .family import STAR, Pattern, as_pattern, pattern_dual


def triangular_root(v: int) -> int:
    """Largest ``j`` with ``C(j, 2) <= v``."""
    if v < 0:
        return 0
    j = int((1 + math.isqrt(1 + 8 * v)) // 2)
    while comb(j + 1, 2) <= v:
        j += 1
    while comb(j, 2) > v:
        j -= 1
    return j


def b2(n: int) -> int:
    """Largest triangular number ``C(j, 2)`` not exceeding ``n``."""
    return comb(triangular_root(n), 2)


def dfs_bound(n: int) -> int:
    """1 + n + C(n, 2): the mod-3 bound for sizes 0 and pairwise intersections nonzero."""
    return 1 + n + comb(n, 2)


def universe_count(pattern: Pattern, n: int) -> int:
    """Number of subsets of [n] whose size meets the first entry."""
    return sum(comb(n, s) for s in range(n + 1) if pattern.accepts(1, s))


def incompatible(a, b) -> bool:
    """No residue satisfies both constraints."""
    if a == STAR and b == STAR:
        return False
    if a == STAR or b == STAR:
        return (b if a == STAR else a) == 0
    return a != b


def _two_wise_mod2(entries, n):
    if n <= 0:
        return 1 if entries[0] == 0 else 0
    return {
        (1, 0): n,
        (0, 0): 2 ** (n // 2),
        (0, 1): n - (1 - n % 2),
        (1, 1): 2 ** ((n - 1) // 2),
    }[entries]


def _direct(pattern: Pattern, n: int):
    e, k = pattern.entries, pattern.k
    if n <= 0:
        return None
    if pattern.modulus == 2:
        if k == 2:
            return _two_wise_mod2(e, n)
        if k == 3:
            r = n % 4
            formula = {
                (0, 1, 1): n - 1,
                (1, 0, 1): n if n % 2 == 0 else n - 1,
                (0, 1, 0): n - 1 if n % 2 == 0 else n,
                # two-sided trace: |F| - 1 <= min(|F_i|, |F_i^c|), sharpened by parity of n mod 4
                (1, 1, 0): {0: n // 2, 1: n // 2, 2: n // 2 + 1, 3: n // 2 + 1}[r],
                (0, 0, 1): {0: n // 2, 1: n // 2, 2: n // 2, 3: n // 2 + 1}[r],
            }.get(e)
            return None if formula is None else max(formula, 2)
        if k == 4:
            return _tail_bound(e, n)
        return None
    if pattern.modulus == 3 and all(v in (0, STAR) for v in e):
        if k == 2:
            if e == (STAR, 0):
                return n
            if e == (0, STAR):
                return dfs_bound(n)
            return None
        if k == 3:
            if e == (STAR, STAR, 0):
                return max({0: n, 1: n - 1, 2: n - 2}[n % 3], 2)
            if e == (0, STAR, 0):
                return max(n, 2)
            if e == (0, 0, STAR):
                return max(1 + dfs_bound(3 * ((n - 1) // 3)), 2)
        return None
    return None


_ALTERNATING = ((0, 1, 0, 1), (1, 0, 1, 0))


def _tail_bound(entries, n):
    x, y, z = entries[1], entries[2], entries[3]
    if y == z and y != x:
        return max(triangular_root(_two_wise_mod2((x, y), n)), 3)
    return None


def _partition_sum_bound(pattern: Pattern, n: int):
    """Backwards partition-sum bound for 4-wise mod-2 patterns, or None."""
    if pattern.modulus != 2 or pattern.k != 4 or n <= 0:
        return None
    best = None
    for delta in _ALTERNATING:
        gamma = tuple((a + b) % 2 for a, b in zip(pattern.entries, delta))
        if _tail_bound(gamma, 1) is None:
            continue
        # f_alpha is nondecreasing, so any N with N - s >= n works
        N = n
        while N <= 4 * n + 64:
            s = math.isqrt(4 * N)  # floor(2 sqrt N)
            cap = _tail_bound(gamma, N)
            if N - s >= n and s - 1 > cap:
                best = cap if best is None else min(best, cap)
                break
            N += 1
    return best


@lru_cache(maxsize=None)
def _upper(pattern: Pattern, n: int, allow_dual: bool) -> int:
    e, k = pattern.entries, pattern.k
    best = universe_count(pattern, n)
    direct = _direct(pattern, n)
    if direct is not None:
        best = min(best, direct)
    backwards = _partition_sum_bound(pattern, n)
    if backwards is not None:
        best = min(best, backwards)
    for j in range(2, k):
        best = min(best, _upper(pattern.prefix(j), n, allow_dual))
    for t in range(1, k - 1):
        if incompatible(e[t], e[t + 1]):
            for r in range(2, k - t + 1):
                beta = Pattern(pattern.modulus, e[t:t + r])
                best = min(best, _upper(beta, n, allow_dual) + t)
    if allow_dual and pattern.modulus == 2:
        best = min(best, _upper(pattern_dual(pattern), n + 1, False))
    return best


def upper_bound(pattern, n: int):
    """Minimum over every encoded proof bound for families on [n] meeting ``pattern``."""
    pattern = as_pattern(pattern)
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _upper(pattern, n, True)
