"""Exact maximum-family search.

The vertex set is the candidate universe (subsets whose size meets entry 1),
indexed in increasing mask order.  Candidate sets are Python ints used as
bitsets over those indices.  For every chosen sub-collection S with
``|S| < k`` we keep ``Q = cap(S)``; a later candidate ``x`` survives only if
``|Q & x|`` meets entry ``|S| + 1``.  The set of survivors for a given
``(level, Q)`` is computed once with numpy and cached.

Pruning is the plain size bound plus an optional cutoff at
``bounds.upper_bound``.  Branching follows index order, so the first maximum
found is the lexicographically first one.
"""

from __future__ import annotations

import itertools
import multiprocessing as mp
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bounds import upper_bound
from .errors import CapExceeded, UsageError
from .family import Pattern, SetFamily, as_pattern

UNIVERSE_CAP = 24
ORACLE_CAP = 5

__all__ = [
    "SearchConfig", "SearchResult", "candidate_universe", "max_family",
    "oracle_max", "upper_bound",
]


@dataclass(frozen=True)
class SearchConfig:
    time_limit: Optional[float] = None
    deterministic: bool = True
    use_upper_bound_cutoff: bool = True
    worker_count: int = 1

    def __post_init__(self):
        if not isinstance(self.worker_count, int) or self.worker_count < 1:
            raise UsageError("worker_count must be a positive integer")
        if self.time_limit is not None and self.time_limit <= 0:
            raise UsageError("time_limit must be positive")


@dataclass(frozen=True)
class SearchResult:
    best_size: int
    witness: SetFamily
    optimal: bool
    nodes_expanded: int
    elapsed: float
    pattern: Optional[Pattern] = field(default=None, compare=False)

    def as_dict(self) -> dict:
        doc = {"best_size": self.best_size, "optimal": self.optimal}
        if self.pattern is not None:
            doc["pattern"] = str(self.pattern)
            doc["modulus"] = self.pattern.modulus
        doc.update({
            "n": self.witness.n,
            "nodes_expanded": self.nodes_expanded,
            "elapsed_ms": round(self.elapsed * 1000, 3),
            "witness": self.witness.to_lists(),
        })
        return doc


def candidate_universe(pattern, n: int, allow_large: bool = False) -> list[int]:
    """Masks of [n] whose size meets entry 1, ascending."""
    pattern = as_pattern(pattern)
    if n < 0:
        raise UsageError("n must be nonnegative")
    if n > UNIVERSE_CAP and not allow_large:
        raise CapExceeded(f"n = {n} exceeds the search cap {UNIVERSE_CAP}")
    masks = np.arange(1 << n, dtype=np.int64)
    sizes = np.bitwise_count(masks)
    keep = pattern.accepts_array(1, sizes)
    return [int(m) for m in masks[keep]]


class _Timeout(Exception):
    pass


def _bits_to_int(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


class _Engine:
    def __init__(self, pattern: Pattern, n: int, deadline=None, shared=None):
        self.pattern = pattern
        self.k = pattern.k
        self.n = n
        self.universe = candidate_universe(pattern, n)
        self.arr = np.array(self.universe, dtype=np.int64)
        self.cache = {}
        self.nodes = 0
        self.deadline = deadline
        self.shared = shared  # multiprocessing.Value holding the global best, or None
        self.best = 0
        self.best_members = ()
        self.stop_at = None

    def compat(self, level: int, q: int) -> int:
        key = (level, q)
        got = self.cache.get(key)
        if got is None:
            sizes = np.bitwise_count(self.arr & q)
            got = _bits_to_int(self.pattern.accepts_array(level, sizes))
            self.cache[key] = got
        return got

    def _floor(self) -> int:
        if self.shared is not None:
            return max(self.best, self.shared.value)
        return self.best

    def _record(self, chosen):
        self.best = len(chosen)
        self.best_members = tuple(chosen)
        if self.shared is not None:
            with self.shared.get_lock():
                if self.shared.value < self.best:
                    self.shared.value = self.best

    def run(self, chosen, cands, prefixes):
        self.nodes += 1
        if self.nodes & 1023 == 0 and self.deadline is not None and time.monotonic() > self.deadline:
            raise _Timeout
        if len(chosen) > self.best:
            self._record(chosen)
            if self.stop_at is not None and self.best >= self.stop_at:
                return True
        size = len(chosen)
        universe, kmax = self.universe, self.k - 1
        while cands:
            if size + cands.bit_count() <= self._floor():
                return False
            low = cands & -cands
            cands ^= low
            c = universe[low.bit_length() - 1]
            new = [(1, c)]
            new += [(lv + 1, q & c) for lv, q in prefixes if lv < kmax]
            nxt = cands
            for lv, q in new:
                if lv <= kmax:
                    nxt &= self.compat(lv + 1, q)
                    if not nxt:
                        break
            chosen.append(c)
            done = self.run(chosen, nxt, prefixes + new if self.k > 2 else new[:0])
            chosen.pop()
            if done:
                return True
        return False

    def search(self, stop_at=None, first=None, floor=0):
        """Explore everything (or just the subtree rooted at index ``first``)."""
        self.stop_at = stop_at
        self.best = floor
        full = (1 << len(self.universe)) - 1
        if first is None:
            return self.run([], full, [])
        c = self.universe[first]
        rest = full & ~((1 << (first + 1)) - 1)
        new = [(1, c)]
        nxt = rest & self.compat(2, c) if self.k >= 2 else rest
        return self.run([c], nxt, new if self.k > 2 else [])


def _with_stack(fn, *args):
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))
    try:
        return fn(*args)
    finally:
        sys.setrecursionlimit(old)


_SHARED = None


def _init_worker(shared):
    global _SHARED
    _SHARED = shared


def _subtree(args):
    pattern, n, first, deadline, stop_at = args
    eng = _Engine(pattern, n, deadline=deadline, shared=_SHARED)
    timed_out = False
    try:
        _with_stack(eng.search, stop_at, first)
    except _Timeout:
        timed_out = True
    return eng.best, eng.best_members, eng.nodes, timed_out


def _witness(n, members) -> SetFamily:
    return SetFamily(n, tuple(members))


def max_family(pattern, n: int, config: Optional[SearchConfig] = None) -> SearchResult:
    """Largest family on [n] meeting ``pattern``, by branch and bound."""
    pattern = as_pattern(pattern)
    config = config or SearchConfig()
    if n > UNIVERSE_CAP:
        raise CapExceeded(f"n = {n} exceeds the search cap {UNIVERSE_CAP}")
    start = time.monotonic()
    deadline = None if config.time_limit is None else start + config.time_limit
    stop_at = upper_bound(pattern, n) if config.use_upper_bound_cutoff else None

    if config.worker_count == 1:
        eng = _Engine(pattern, n, deadline=deadline)
        optimal = True
        try:
            _with_stack(eng.search, stop_at)
        except _Timeout:
            optimal = False
        return SearchResult(eng.best, _witness(n, eng.best_members), optimal,
                            eng.nodes, time.monotonic() - start, pattern)

    best, members, nodes, optimal = _parallel(pattern, n, config, deadline, stop_at)
    if optimal and config.deterministic and best > 0:
        # canonical witness: rerun sequentially, stopping at the first family of the known size
        eng = _Engine(pattern, n)
        _with_stack(eng.search, best, None, best - 1)
        members = eng.best_members
        nodes += eng.nodes
    return SearchResult(best, _witness(n, members), optimal, nodes, time.monotonic() - start, pattern)


def _parallel(pattern, n, config, deadline, stop_at):
    universe = candidate_universe(pattern, n)
    if not universe:
        return 0, (), 1, True
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    shared = ctx.Value("i", 0)
    tasks = [(pattern, n, i, deadline, stop_at) for i in range(len(universe))]
    best, members, nodes, optimal = 0, (), 0, True
    with ProcessPoolExecutor(max_workers=config.worker_count, mp_context=ctx,
                             initializer=_init_worker, initargs=(shared,)) as pool:
        for b, m, cnt, timed_out in pool.map(_subtree, tasks, chunksize=1):
            nodes += cnt
            optimal &= not timed_out
            if b > best or (b == best and b > 0 and not members):
                best, members = b, m
    if stop_at is not None and best >= stop_at:
        optimal = True
    return best, members, nodes, optimal


# ---------------------------------------------------------------------------
# independent oracle: frozensets, itertools, no pruning beyond feasibility


def oracle_max(pattern, n: int) -> SearchResult:
    """Exhaustive enumeration of every feasible family; only for n <= 5."""
    pattern = as_pattern(pattern)
    if n > ORACLE_CAP:
        raise CapExceeded(f"oracle refuses n = {n} > {ORACLE_CAP}")
    start = time.monotonic()
    ground = range(1, n + 1)
    universe = [frozenset(c) for size in range(n + 1) for c in itertools.combinations(ground, size)]
    universe = [s for s in universe if pattern.accepts(1, len(s))]
    universe.sort(key=lambda s: sum(1 << (e - 1) for e in s))
    best = []
    count = 0

    def grow(family, start_idx):
        nonlocal best, count
        count += 1
        if len(family) > len(best):
            best = list(family)
        for j in range(start_idx, len(universe)):
            family.append(universe[j])
            if _meets_new(pattern, family):
                grow(family, j + 1)
            family.pop()

    grow([], 0)
    witness = SetFamily.from_lists(n, [sorted(s) for s in best])
    return SearchResult(len(best), witness, True, count, time.monotonic() - start, pattern)


def _meets_new(pattern: Pattern, family) -> bool:
    """Check only the tuples that contain the newest member."""
    new, rest = family[-1], family[:-1]
    if not pattern.accepts(1, len(new)):
        return False
    for level in range(2, min(pattern.k, len(family)) + 1):
        for combo in itertools.combinations(rest, level - 1):
            if not pattern.accepts(level, len(new.intersection(*combo))):
                return False
    return True
