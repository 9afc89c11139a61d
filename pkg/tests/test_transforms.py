import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from towns.constructions import ConstructionSpec, build, catalog
from towns.errors import DuplicateMembersError, GroundError, PreconditionError, UnsupportedPattern
from towns.family import Pattern, SetFamily, pattern_dual, pattern_sum, verify_pattern
from towns.transforms import complement_family, dualize, partition_sum, restrict_outside, trace

P = Pattern.parse


def fam(n, *members):
    return SetFamily.from_lists(n, members)


def catalog_families(max_ground=60):
    """(family, pattern) for a spread of valid catalog parameters."""
    out = []
    for e in catalog():
        for v in range(1, 30):
            if e.params == ("n", "t"):
                choices = [{"n": v, "t": t, "modulus": m} for t in (0, 1, 2) for m in (2, 3)]
            elif e.params == ("n", "m"):
                choices = [{"n": v, "m": m} for m in (1, 2)]
            else:
                choices = [{e.params[0]: v}]
            for params in choices:
                if e.violation(params) is None and e.ground(params) <= max_ground and e.size(params) <= 64:
                    out.append((build(ConstructionSpec(e.id, params)), e.pattern(params)))
    return out


CATALOG = catalog_families()


# -- trace ----------------------------------------------------------------------

def test_trace_examples():
    f = fam(6, *[list(c) for c in combinations(range(1, 7), 5)])
    r = trace(f, P("101"), [1])
    assert len(r.family) == 5 and r.family.n == 5
    assert r.pattern == P("01") and verify_pattern(r.family, r.pattern)

    s = fam(5, [1], [2], [3], [4], [5])
    r = trace(s, P("10"), [])
    assert r.family == s and r.pattern == P("10")

    c = build(ConstructionSpec("C001", {"n": 11}))
    r = trace(c, P("001"), [1])
    assert len(r.family) == 5 and r.family.n == c[0].bit_count()
    assert verify_pattern(r.family, P("01"))


def test_trace_relabel_is_increasing():
    f = fam(7, *[list(c) for c in combinations(range(2, 8), 5)])
    r = trace(f, P("101"), [1])
    assert r.relabel == (2, 3, 4, 5, 6)
    assert r.family.to_lists()[0] == [1, 2, 3, 4]


def test_trace_preconditions():
    f = fam(6, *[list(c) for c in combinations(range(1, 7), 5)])
    with pytest.raises(PreconditionError):
        trace(f, P("100"), [1])  # entries 2 and 3 agree
    with pytest.raises(PreconditionError):
        trace(f, P("10"), [1])  # no entry 3
    with pytest.raises(PreconditionError):
        trace(fam(3, [1]), P("101"), [1])  # t >= |family|
    with pytest.raises(PreconditionError):
        trace(fam(3, [1, 2]), P("101"), [])  # family breaks the pattern


def _traceable(family, pattern):
    t_options = [t for t in range(0, min(len(family), pattern.k - 1))
                 if t + 2 <= pattern.k and pattern.entries[t] != pattern.entries[t + 1]
                 and (pattern.modulus == 2 or 0 in (pattern.entries[t], pattern.entries[t + 1]))]
    return [t for t in t_options if t < len(family)]


def test_trace_size_law_randomised():
    rnd = random.Random(11)
    pool = [(f, p) for f, p in CATALOG if _traceable(f, p)]
    cases = 0
    while cases < 1000:
        f, p = rnd.choice(pool)
        t = rnd.choice(_traceable(f, p))
        chosen = rnd.sample(range(1, len(f) + 1), t)
        r = trace(f, p, chosen)
        assert len(r.family) == len(f) - t
        assert verify_pattern(r.family, r.pattern)
        assert r.pattern.entries == p.entries[t:]
        cases += 1


# -- dualize --------------------------------------------------------------------

def test_dualize_examples():
    d = dualize(fam(3, [1], [2], [3]))
    assert d.to_lists() == [[1, 4], [2, 4], [3, 4]] and verify_pattern(d, P("01"))
    e = dualize(build(ConstructionSpec("EVENTOWN_PAIRS", {"n": 4})))
    assert verify_pattern(e, P("11"))
    assert verify_pattern(dualize(dualize(fam(3, [1], [2], [3]))), P("10"))


def test_dualize_over_cap(monkeypatch):
    monkeypatch.setenv("TOWNS_GROUND_CAP", "3")
    with pytest.raises(GroundError):
        dualize(fam(3, [1]))


MOD2_CATALOG = [(f, p) for f, p in CATALOG if p.modulus == 2]


@pytest.mark.parametrize("i", range(len(MOD2_CATALOG)))
def test_dual_equivalence_on_catalog(i):
    f, p = MOD2_CATALOG[i]
    assert verify_pattern(dualize(f), pattern_dual(p))


def test_dual_equivalence_randomised():
    rnd = random.Random(5)
    for _ in range(1000):
        n = rnd.randint(1, 6)
        f = SetFamily(n, tuple(rnd.sample(range(1 << n), rnd.randint(0, min(6, 1 << n)))))
        p = Pattern(2, tuple(rnd.randint(0, 1) for _ in range(rnd.randint(1, 4))))
        assert verify_pattern(f, p) == verify_pattern(dualize(f), pattern_dual(p))


# -- partition sum ----------------------------------------------------------------

def test_partition_sum_examples():
    s = fam(3, [1], [2], [3])
    out = partition_sum(s, s, P("100"), P("100"))
    assert out.to_lists() == [[1, 4], [2, 5], [3, 6]]
    assert verify_pattern(out, P("000"))

    v = build(ConstructionSpec("VERTEX_EDGE_STAR_ODD", {"n": 7}))
    alt = build(ConstructionSpec("COSINGLETONS", {"n": 9, "t": 0, "k": 4}))
    assert verify_pattern(alt, P("0101"))
    out = partition_sum(v, alt, P("0001"), P("0101"))
    assert len(out) == 7 and verify_pattern(out, P("0100"))

    assert len(partition_sum(s, SetFamily(2, ()))) == 0
    with pytest.raises(UnsupportedPattern):
        partition_sum(s, s, P("10"), P("100"))


def test_partition_sum_law_randomised():
    rnd = random.Random(3)
    mod2 = [(f, p) for f, p in CATALOG if p.modulus == 2 and p.is_exact and f.n <= 30]
    by_k = {}
    for f, p in mod2:
        by_k.setdefault(p.k, []).append((f, p))
    for _ in range(1000):
        k = rnd.choice(sorted(by_k))
        (a, pa), (b, pb) = rnd.choice(by_k[k]), rnd.choice(by_k[k])
        out = partition_sum(a, b, pa, pb)
        assert len(out) == min(len(a), len(b))
        assert verify_pattern(out, pattern_sum(pa, pb))


# -- restriction and complement -----------------------------------------------------

def test_restrict_outside_examples():
    star = build(ConstructionSpec("STAR_2UNIFORM", {"n": 6}))
    r = restrict_outside(star, 1)
    assert r.family().to_lists() == [[1], [2], [3], [4]] and r.n == 4
    assert verify_pattern(r.family(), P("10"))

    c = build(ConstructionSpec("C110", {"n": 14}))
    r = restrict_outside(c, 1)
    assert len(r) == 7 and r.n == 14 - c[0].bit_count()
    assert verify_pattern(r.family(), P("01"))

    two = fam(6, [1, 2, 3], [4])
    assert restrict_outside(two, 1).family().to_lists() == [[1]]

    with pytest.raises(PreconditionError):
        restrict_outside(fam(3, [1]), 1)


def test_restrict_outside_keeps_duplicates():
    r = restrict_outside(fam(3, [1], [1, 2], [1, 2, 3], [3]), 3)
    assert r.has_duplicates and len(r) == 3
    with pytest.raises(DuplicateMembersError):
        r.family()
    assert len(r.deduplicated()) == 1


def test_restrict_outside_contracts():
    rnd = random.Random(2)
    pool = [(f, p) for f, p in CATALOG if p in (P("110"), P("011")) and len(f) >= 2]
    for _ in range(1000):
        f, p = rnd.choice(pool)
        r = restrict_outside(f, rnd.randint(1, len(f)))
        fam_ = r.family()  # the proofs make these distinct
        assert len(fam_) == len(f) - 1
        assert verify_pattern(fam_, P("01") if p == P("110") else P("10"))


def test_complement_examples():
    f = fam(7, *[list(c) for c in combinations(range(1, 8), 5)])
    g = complement_family(f)
    assert sorted(g.sizes()) == [2] * 21
    assert complement_family(g) == f

    # a (1,0,1) family of 5-sets on [7] complements to pairs that all meet in one point
    odd = build(ConstructionSpec("COSINGLETONS", {"n": 7, "t": 1}))
    assert verify_pattern(odd, P("101"))
    pairs = complement_family(odd)
    assert set(pairs.sizes()) == {2}
    assert all((a & b).bit_count() == 1 for a, b in combinations(pairs.sets, 2))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 8), st.data())
def test_complement_involution(n, data):
    masks = data.draw(st.lists(st.integers(0, (1 << n) - 1), unique=True, max_size=10))
    f = SetFamily(n, tuple(masks))
    assert complement_family(complement_family(f)) == f
