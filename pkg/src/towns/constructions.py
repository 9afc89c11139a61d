"""Catalog of explicit families meeting residue intersection patterns.

Every entry knows the pattern it serves, its validity predicate, and closed
forms for the member count and ground size, so a caller can size a
construction without building it.

Edge ground sets number the edges of K_n in colex order: ``{a, b}`` with
``a < b`` gets label ``C(b-1, 2) + a``.  Entries that also use vertices put
them first (labels ``1..n``) and shift edge labels by ``n``.

All builders accept ``pad`` (default 0): extra isolated ground elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Optional

from .errors import ParameterError, UsageError
from .family import STAR, Pattern, SetFamily, mask_of


@dataclass(frozen=True)
class ConstructionSpec:
    id: str
    params: dict = field(default_factory=dict)

    def __hash__(self):
        return hash((self.id, tuple(sorted(self.params.items()))))


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    description: str
    serves: tuple  # representative served patterns, for listing and lookup
    params: tuple  # required parameter names
    defaults: dict
    size_formula: str
    ground_formula: str
    _pattern: Callable = field(repr=False)
    _check: Callable = field(repr=False)
    _size: Callable = field(repr=False)
    _ground: Callable = field(repr=False)
    _build: Callable = field(repr=False)

    def resolve(self, params: dict) -> dict:
        unknown = set(params) - set(self.params) - set(self.defaults) - {"pad"}
        if unknown:
            raise ParameterError(f"{self.id}: unknown parameter(s) {sorted(unknown)}")
        missing = [p for p in self.params if p not in params]
        if missing:
            raise ParameterError(f"{self.id}: missing parameter(s) {missing}")
        full = dict(self.defaults)
        full.update(params)
        full.setdefault("pad", 0)
        for key, val in full.items():
            if not isinstance(val, int) or isinstance(val, bool):
                raise ParameterError(f"{self.id}: parameter {key} must be an integer")
        if full["pad"] < 0:
            raise ParameterError(f"{self.id}: pad >= 0 violated")
        return full

    def violation(self, params: dict) -> Optional[str]:
        """Text of the violated validity predicate, or None when valid."""
        full = self.resolve(params)
        core = {k: v for k, v in full.items() if k != "pad"}
        return self._check(**core)

    def pattern(self, params: dict) -> Pattern:
        full = self.resolve(params)
        return self._pattern(**{k: v for k, v in full.items() if k != "pad"})

    def size(self, params: dict) -> int:
        full = self.resolve(params)
        return self._size(**{k: v for k, v in full.items() if k != "pad"})

    def ground(self, params: dict) -> int:
        full = self.resolve(params)
        return self._ground(**{k: v for k, v in full.items() if k != "pad"}) + full["pad"]


def edge_label(a: int, b: int) -> int:
    """Colex label of the edge {a, b} of K_n (1-based vertices and labels)."""
    if a > b:
        a, b = b, a
    return comb(b - 1, 2) + a


def _star_edges(n: int, i: int, offset: int = 0) -> int:
    mask = 0
    for j in range(1, n + 1):
        if j != i:
            mask |= 1 << (offset + edge_label(i, j) - 1)
    return mask


def _residue_pattern(sizes, modulus: int) -> Pattern:
    """Pattern read off exact intersection sizes, in the {0, *} convention for modulus > 2."""
    if modulus == 2:
        return Pattern(2, tuple(s % 2 for s in sizes))
    return Pattern(modulus, tuple(0 if s % modulus == 0 else STAR for s in sizes))


def _c110_layout(n: int):
    """(k, base) where the core family lives on [base] = [4k+2]; the rest is isolated."""
    base = {2: n, 3: n - 1, 0: n - 2, 1: n - 3}[n % 4]
    return (base - 2) // 4, base


def _c001_layout(n: int):
    base = {3: n, 0: n - 1, 1: n - 2, 2: n - 3}[n % 4]
    return (base - 3) // 4, base


# ---------------------------------------------------------------------------
# builders (return member masks and ground size, before padding)


def _singletons(n, k, modulus=2):
    return [1 << i for i in range(n)], n


def _eventown_pairs(n, k):
    h = n // 2
    pairs = [0b11 << (2 * i) for i in range(h)]
    out = []
    for idx in range(1 << h):
        mask = 0
        for i in range(h):
            if idx >> i & 1:
                mask |= pairs[i]
        out.append(mask)
    return out, n


def _dual_eventown(n, k):
    core = n if n % 2 else n - 1
    h = (core - 1) // 2
    aux = 1 << (core - 1)
    base, _ = _eventown_pairs(2 * h, k)
    return [aux | s for s in base], n


def _star_2uniform(n, k):
    return [1 | (1 << (i - 1)) for i in range(2, n + 1)], n


def _cosingletons(n, t, modulus, k):
    m = n - t
    full = (1 << m) - 1
    return [full & ~(1 << (i - 1)) for i in range(1, m + 1)], n


def _c110(n):
    k, _ = _c110_layout(n)
    low = (1 << (2 * k + 1)) - 1  # [2k+1]
    a0 = mask_of(range(2 * k + 2, 4 * k + 3))
    sets = [a0]
    for i in range(1, 2 * k + 2):
        sets.append((low & ~(1 << (i - 1))) | (1 << (2 * k + i)))
    return sets, n


def _c001(n):
    k, _ = _c001_layout(n)
    low = (1 << (2 * k + 1)) - 1
    apex = 1 << (4 * k + 2)  # element 4k+3
    a0 = mask_of(range(2 * k + 2, 4 * k + 4))
    sets = [a0]
    for i in range(1, 2 * k + 2):
        sets.append((low & ~(1 << (i - 1))) | (1 << (2 * k + i)) | apex)
    return sets, n


def _star_edges_odd(n):
    return [_star_edges(n, i) for i in range(1, n + 1)], comb(n, 2)


def _star_edges_aux(n):
    g = comb(n, 2)
    return [_star_edges(n, i) | (1 << g) for i in range(1, n + 1)], g + 1


def _vertex_edge_star(n):
    full = (1 << n) - 1
    return [(full & ~(1 << (i - 1))) | _star_edges(n, i, offset=n) for i in range(1, n + 1)], n + comb(n, 2)


def _star_3uniform(n):
    return [1 | (1 << (a - 1)) | (1 << (b - 1)) for a, b in combinations(range(2, n + 1), 2)], n


def _matched_complement(k):
    low = (1 << k) - 1
    return [(low & ~(1 << (i - 1))) | (1 << (k + i - 1)) for i in range(1, k + 1)], 2 * k


def _matching_blocks(k):
    core = 3 * k - 1
    low = (1 << core) - 1
    sets = []
    for i in range(1, core + 1):
        first = 3 * k + 2 * (i - 1)  # e_i = {first, first + 1}
        sets.append((low & ~(1 << (i - 1))) | (0b11 << (first - 1)))
    return sets, 9 * k - 3


def _anm(n, m, modulus):
    low = (1 << n) - 1
    block = (1 << m) - 1
    return [(low & ~(1 << (i - 1))) | (block << (n + (i - 1) * m)) for i in range(1, n + 1)], n * (m + 1)


def _partition_triples(n, aux, k):
    core = n - aux
    h = core // 3
    out = []
    for idx in range(1 << h):
        mask = 0
        for i in range(h):
            if idx >> i & 1:
                mask |= 0b111 << (3 * i)
        if aux:
            mask |= 1 << (n - 1)
        out.append(mask)
    return out, n


def _delayed_alternating(n, k):
    low = (1 << n) - 1
    apex = 1 << (2 * n)
    return [(low & ~(1 << (i - 1))) | (1 << (n + i - 1)) | apex for i in range(1, n + 1)], 2 * n + 1


# ---------------------------------------------------------------------------
# validity predicates: return the violated condition as text, or None


def _need(*conds):
    for ok, text in conds:
        if not ok:
            return text
    return None


def _k_ok(k):
    return (k >= 1, "k >= 1")


def _mod2(entries):
    return Pattern(2, tuple(entries))


_ENTRIES = [
    CatalogEntry(
        "SINGLETONS", "all one-element subsets of [n]",
        (_mod2((1, 0, 0)), Pattern(3, (STAR, 0, 0))), ("n",), {"k": 3, "modulus": 2}, "n", "n",
        lambda n, k, modulus: _residue_pattern([1] + [0] * (k - 1), modulus),
        lambda n, k, modulus: _need((n >= 1, "n >= 1"), (modulus >= 2, "modulus >= 2"), _k_ok(k)),
        lambda n, k, modulus: n, lambda n, k, modulus: n, _singletons),
    CatalogEntry(
        "EVENTOWN_PAIRS", "all unions of the pairs {1,2}, {3,4}, ...",
        (_mod2((0, 0)), _mod2((0, 0, 0)), _mod2((0, 0, 0, 0))), ("n",), {"k": 3},
        "2**(n//2)", "n",
        lambda n, k: _mod2((0,) * k),
        lambda n, k: _need((n >= 1, "n >= 1"), _k_ok(k)),
        lambda n, k: 2 ** (n // 2), lambda n, k: n, _eventown_pairs),
    CatalogEntry(
        "DUAL_EVENTOWN", "unions of pairs plus one auxiliary element in every set",
        (_mod2((1, 1)), _mod2((1, 1, 1)), _mod2((1, 1, 1, 1))), ("n",), {"k": 3},
        "2**((n-1)//2)", "n",
        lambda n, k: _mod2((1,) * k),
        lambda n, k: _need((n >= 1, "n >= 1"), _k_ok(k)),
        lambda n, k: 2 ** ((n - 1) // 2), lambda n, k: n, _dual_eventown),
    CatalogEntry(
        "STAR_2UNIFORM", "the pairs {1, i} for i = 2..n",
        (_mod2((0, 1, 1)), _mod2((0, 1, 1, 1))), ("n",), {"k": 3}, "n-1", "n",
        lambda n, k: _mod2((0,) + (1,) * (k - 1)),
        lambda n, k: _need((n >= 2, "n >= 2"), _k_ok(k)),
        lambda n, k: n - 1, lambda n, k: n, _star_2uniform),
    CatalogEntry(
        "COSINGLETONS", "all (n-t-1)-subsets of [n-t]",
        (_mod2((1, 0, 1)), _mod2((0, 1, 0)), _mod2((1, 0, 1, 0)), _mod2((0, 1, 0, 1)),
         Pattern(3, (STAR, 0, STAR)), Pattern(3, (STAR, STAR, 0))),
        ("n", "t"), {"modulus": 2, "k": 3}, "n-t", "n",
        lambda n, t, modulus, k: _residue_pattern([n - t - i for i in range(1, k + 1)], modulus),
        lambda n, t, modulus, k: _need((t >= 0, "t >= 0"), (n - t >= 1, "n - t >= 1"),
                                       (modulus >= 2, "modulus >= 2"), _k_ok(k)),
        lambda n, t, modulus, k: n - t, lambda n, t, modulus, k: n, _cosingletons),
    CatalogEntry(
        "C110", "A_0 = [2k+2, 4k+2], A_i = ([2k+1] - {i}) + {2k+1+i}; isolated elements pad n",
        (_mod2((1, 1, 0)),), ("n",), {},
        "n//2 + 1 if n % 4 in (2, 3) else n//2", "n",
        lambda n: _mod2((1, 1, 0)),
        lambda n: _need((n >= 6, "n >= 6 (smaller n duplicates A_0 and A_1)")),
        lambda n: 2 * _c110_layout(n)[0] + 2, lambda n: n, _c110),
    CatalogEntry(
        "C001", "A_0 = [2k+2, 4k+3], A_i = ([2k+1] - {i}) + {2k+1+i, 4k+3}; isolated elements pad n",
        (_mod2((0, 0, 1)),), ("n",), {},
        "n//2 + 1 if n % 4 == 3 else 2*((n-3)//4) + 2", "n",
        lambda n: _mod2((0, 0, 1)),
        lambda n: _need((n >= 7, "n >= 7 (smaller n duplicates A_0 and A_1)")),
        lambda n: 2 * _c001_layout(n)[0] + 2, lambda n: n, _c001),
    CatalogEntry(
        "STAR_EDGES_ODD", "for each vertex i of K_n, the edges at i (ground = edges)",
        (_mod2((0, 1, 0, 0)),), ("n",), {}, "n", "C(n,2)",
        lambda n: _mod2((0, 1, 0, 0)),
        lambda n: _need((n % 2 == 1, "n odd"), (n >= 5, "n >= 5")),
        lambda n: n, lambda n: comb(n, 2), _star_edges_odd),
    CatalogEntry(
        "STAR_EDGES_AUX", "edges at each vertex of K_n plus one auxiliary element",
        (_mod2((0, 0, 1, 1)),), ("n",), {}, "n", "C(n,2) + 1",
        lambda n: _mod2((0, 0, 1, 1)),
        lambda n: _need((n % 2 == 0, "n even"), (n >= 4, "n >= 4")),
        lambda n: n, lambda n: comb(n, 2) + 1, _star_edges_aux),
    CatalogEntry(
        "VERTEX_EDGE_STAR_ODD", "([n] - {i}) together with the edges of K_n at i",
        (_mod2((0, 0, 0, 1)),), ("n",), {}, "n", "n + C(n,2)",
        lambda n: _mod2((0, 0, 0, 1)),
        lambda n: _need((n % 2 == 1, "n odd"), (n >= 5, "n >= 5")),
        lambda n: n, lambda n: n + comb(n, 2), _vertex_edge_star),
    CatalogEntry(
        "VERTEX_EDGE_STAR_EVEN", "([n] - {i}) together with the edges of K_n at i, n even",
        (_mod2((0, 1, 1, 0)),), ("n",), {}, "n", "n + C(n,2)",
        lambda n: _mod2((0, 1, 1, 0)),
        lambda n: _need((n % 2 == 0, "n even"), (n >= 4, "n >= 4")),
        lambda n: n, lambda n: n + comb(n, 2), _vertex_edge_star),
    CatalogEntry(
        "STAR_3UNIFORM", "all 3-subsets of [n] containing 1",
        (Pattern(3, (0, STAR, STAR)),), ("n",), {}, "C(n-1,2)", "n",
        lambda n: Pattern(3, (0, STAR, STAR)),
        lambda n: _need((n >= 3, "n >= 3")),
        lambda n: comb(n - 1, 2), lambda n: n, _star_3uniform),
    CatalogEntry(
        "MATCHED_COMPLEMENT", "F_i = ([k] - {i}) + {k+i} on [2k]",
        (Pattern(3, (0, STAR, 0)),), ("k",), {}, "k", "2k",
        lambda k: Pattern(3, (0, STAR, 0)),
        lambda k: _need((k % 3 == 0, "k = 0 mod 3"), (k >= 3, "k >= 3")),
        lambda k: k, lambda k: 2 * k, _matched_complement),
    CatalogEntry(
        "MATCHING_BLOCKS", "F_i = ([3k-1] - {i}) + e_i with e_i a perfect matching of [3k, 9k-3]",
        (Pattern(3, (0, 0, STAR)),), ("k",), {}, "3k-1", "9k-3",
        lambda k: Pattern(3, (0, 0, STAR)),
        lambda k: _need((k >= 1, "k >= 1")),
        lambda k: 3 * k - 1, lambda k: 9 * k - 3, _matching_blocks),
    CatalogEntry(
        "ANM", "A_i = ([n] - {i}) + M_i with M_1..M_n disjoint m-blocks after [n]",
        (), ("n", "m"), {"modulus": 3}, "n", "n*(m+1)",
        lambda n, m, modulus: _residue_pattern([n + m - 1, n - 2, n - 3], modulus),
        lambda n, m, modulus: _need((n >= 3, "n >= 3"), (m >= 1, "m >= 1"), (modulus >= 2, "modulus >= 2")),
        lambda n, m, modulus: n, lambda n, m, modulus: n * (m + 1), _anm),
    CatalogEntry(
        "PARTITION_TRIPLES", "all unions of the triples {1,2,3}, {4,5,6}, ... (aux=1 adds element n to every set)",
        (Pattern(3, (0, 0, 0)), Pattern(3, (STAR, STAR, STAR))), ("n",), {"aux": 0, "k": 3},
        "2**((n-aux)//3)", "n",
        lambda n, aux, k: Pattern(3, ((STAR,) if aux else (0,)) * k),
        lambda n, aux, k: _need((aux in (0, 1), "aux in {0, 1}"), (n >= 1, "n >= 1"), _k_ok(k)),
        lambda n, aux, k: 2 ** ((n - aux) // 3), lambda n, aux, k: n, _partition_triples),
    CatalogEntry(
        "DELAYED_ALTERNATING", "A_i = ([n] - {i}) + {n+i} + {2n+1}, n odd",
        (_mod2((0, 0, 1, 0)), _mod2((0, 0, 1, 0, 1))), ("n",), {"k": 4}, "n", "2n+1",
        lambda n, k: _mod2(tuple(0 if i <= 2 else i % 2 for i in range(1, k + 1))),
        lambda n, k: _need((n % 2 == 1, "n odd"), (n >= 3, "n >= 3"), _k_ok(k)),
        lambda n, k: n, lambda n, k: 2 * n + 1, _delayed_alternating),
]

_BY_ID = {e.id: e for e in _ENTRIES}


def catalog() -> list[CatalogEntry]:
    """Every construction, in a fixed order."""
    return list(_ENTRIES)


def entry(id_: str) -> CatalogEntry:
    try:
        return _BY_ID[id_.upper()]
    except KeyError:
        raise UsageError(f"unknown construction {id_!r}; known: {', '.join(_BY_ID)}") from None


def entries_serving(pattern: Pattern) -> list[CatalogEntry]:
    return [e for e in _ENTRIES if pattern in e.serves]


def build(spec: ConstructionSpec) -> SetFamily:
    e = entry(spec.id)
    problem = e.violation(spec.params)
    if problem is not None:
        raise ParameterError(f"{e.id}: {problem}")
    full = e.resolve(spec.params)
    pad = full.pop("pad")
    sets, ground = e._build(**full)
    return SetFamily(ground + pad, tuple(sets))


def served_pattern(spec: ConstructionSpec) -> Pattern:
    return entry(spec.id).pattern(spec.params)


def cosingletons_shift(pattern: Pattern, n: int) -> Optional[int]:
    """Smallest ``t`` for which COSINGLETONS(n, t) serves ``pattern``, if any."""
    for t in range(0, min(pattern.modulus, n - 1) + 1):
        got = _residue_pattern([n - t - i for i in range(1, pattern.k + 1)], pattern.modulus)
        if got == pattern:
            return t
    return None


# ---------------------------------------------------------------------------
# the general A_{n,m} family


def solve_anm_params(pattern: Pattern, modulus: int):
    """Residue pairs ``(n mod l, m mod l)`` making A_{n,m} meet a 3-wise pattern mod ``l``.

    The member, pairwise and triple intersection sizes are exactly
    ``n+m-1``, ``n-2`` and ``n-3``.  Returns a sorted tuple of pairs, or
    None when no residue choice works (for instance all-zero, since ``n-2``
    and ``n-3`` are consecutive).
    """
    if modulus < 2:
        raise UsageError("modulus must be >= 2")
    if isinstance(pattern, Pattern):
        entries = pattern.entries
        if pattern.modulus not in (modulus,):
            raise UsageError(f"pattern modulus {pattern.modulus} differs from {modulus}")
    else:
        entries = tuple(pattern)
    if len(entries) != 3:
        raise UsageError("A_{n,m} patterns have exactly three entries")
    pat = Pattern(modulus, entries)
    sols = []
    for nr in range(modulus):
        if not (pat.accepts(2, nr - 2) and pat.accepts(3, nr - 3)):
            continue
        for mr in range(modulus):
            if pat.accepts(1, nr + mr - 1):
                sols.append((nr, mr))
    return tuple(sols) or None


def anm_params_for(pattern: Pattern, modulus: int):
    """Smallest concrete ``(n, m)`` with ``n >= 4`` and ``m >= 1`` solving the residues."""
    sols = solve_anm_params(pattern, modulus)
    if sols is None:
        return None
    best = None
    for nr, mr in sols:
        n = nr
        while n < 4:
            n += modulus
        m = mr if mr >= 1 else modulus
        if best is None or (n, m) < best:
            best = (n, m)
    return best
