import random
from math import comb

import pytest

from towns.constructions import (ConstructionSpec, anm_params_for, build, catalog, cosingletons_shift,
                                 edge_label, entries_serving, entry, served_pattern, solve_anm_params)
from towns.errors import ParameterError, UsageError
from towns.family import STAR, Pattern, intersection_size, verify_pattern

P = Pattern.parse


def smallest_valid(e):
    """First valid parameter choice for a catalog entry."""
    for v in range(1, 40):
        if e.params == ("n", "t"):
            params = {"n": v, "t": 0}
        elif e.params == ("n", "m"):
            params = {"n": v, "m": 1}
        else:
            params = {e.params[0]: v}
        if e.violation(params) is None:
            return params
    raise AssertionError(e.id)


@pytest.mark.parametrize("e", catalog(), ids=lambda e: e.id)
def test_smallest_params_round_trip(e):
    params = smallest_valid(e)
    f = build(ConstructionSpec(e.id, params))
    assert len(f) == e.size(params)
    assert f.n == e.ground(params)
    assert verify_pattern(f, e.pattern(params))


def test_build_examples():
    f = build(ConstructionSpec("C110", {"n": 14}))
    assert (len(f), f.n) == (8, 14) and verify_pattern(f, P("110"))

    f = build(ConstructionSpec("STAR_EDGES_ODD", {"n": 7}))
    assert (len(f), f.n) == (7, 21) and verify_pattern(f, P("0100"))

    f = build(ConstructionSpec("ANM", {"n": 8, "m": 2}))
    assert (len(f), f.n) == (8, 24)
    assert set(f.sizes()) == {9}
    assert intersection_size(f.sets[:2]) == 6 and intersection_size(f.sets[:3]) == 5
    assert verify_pattern(f, P("00*", 3))

    f = build(ConstructionSpec("MATCHED_COMPLEMENT", {"k": 6}))
    assert (len(f), f.n) == (6, 12)
    assert set(f.sizes()) == {6}
    assert intersection_size(f.sets[:2]) == 4 and intersection_size(f.sets[:3]) == 3
    assert verify_pattern(f, P("0*0", 3))


@pytest.mark.parametrize("spec, needle", [
    (ConstructionSpec("C110", {"n": 5}), "n >= 6"),
    (ConstructionSpec("C001", {"n": 6}), "n >= 7"),
    (ConstructionSpec("STAR_EDGES_ODD", {"n": 6}), "n odd"),
    (ConstructionSpec("MATCHED_COMPLEMENT", {"k": 4}), "k = 0 mod 3"),
    (ConstructionSpec("ANM", {"n": 5, "m": 0}), "m >= 1"),
])
def test_invalid_params_name_predicate(spec, needle):
    with pytest.raises(ParameterError, match=needle):
        build(spec)


def test_unknown_and_missing_params():
    with pytest.raises(ParameterError):
        build(ConstructionSpec("C110", {"n": 8, "q": 1}))
    with pytest.raises(ParameterError):
        build(ConstructionSpec("ANM", {"n": 8}))
    with pytest.raises(UsageError):
        entry("NOPE")


def test_catalog_contents():
    ids = [e.id for e in catalog()]
    assert ids == [e.id for e in catalog()]  # stable
    c110 = entry("C110")
    assert {n: c110.size({"n": n}) for n in (12, 13, 14, 15)} == {12: 6, 13: 6, 14: 8, 15: 8}
    assert [e.id for e in entries_serving(P("0001"))] == ["VERTEX_EDGE_STAR_ODD"]


def test_edge_labels_are_colex():
    labels = [edge_label(a, b) for b in range(2, 6) for a in range(1, b)]
    assert labels == list(range(1, 11))


@pytest.mark.parametrize("n", range(6, 40))
def test_c110_odd_and_c001_even_sizes(n):
    assert all(s % 2 == 1 for s in build(ConstructionSpec("C110", {"n": n})).sizes())
    if n >= 7:
        assert all(s % 2 == 0 for s in build(ConstructionSpec("C001", {"n": n})).sizes())


def test_anm_exact_sizes():
    rnd = random.Random(7)
    for _ in range(40):
        n, m = rnd.randint(3, 15), rnd.randint(1, 5)
        f = build(ConstructionSpec("ANM", {"n": n, "m": m}))
        assert set(f.sizes()) == {n + m - 1}
        assert intersection_size(f.sets[:2]) == n - 2
        assert intersection_size(f.sets[:3]) == n - 3


def test_star_edges_meet_b2_exactly():
    for n in (5, 7, 9, 11):
        f = build(ConstructionSpec("STAR_EDGES_ODD", {"n": n}))
        assert comb(len(f), 2) == f.n


@pytest.mark.parametrize("e", catalog(), ids=lambda e: e.id)
def test_padding_never_changes_verification(e):
    params = smallest_valid(e)
    base = build(ConstructionSpec(e.id, params))
    padded = build(ConstructionSpec(e.id, dict(params, pad=3)))
    assert padded.sets == base.sets and padded.n == base.n + 3
    assert verify_pattern(padded, e.pattern(params))


def test_solve_anm_examples():
    assert solve_anm_params(P("00*", 3), 3) == ((2, 2),)
    assert solve_anm_params(P("000", 3), 3) is None
    assert solve_anm_params(P("**0", 3), 3) == ((0, 0), (0, 2))
    assert solve_anm_params(Pattern(4, (STAR,) * 3), 4) is not None
    n, m = anm_params_for(P("00*", 3), 3)
    assert verify_pattern(build(ConstructionSpec("ANM", {"n": n, "m": m})), P("00*", 3))
    with pytest.raises(UsageError):
        solve_anm_params(P("00", 3), 3)


def test_anm_solutions_all_verify():
    for text in ("00*", "0*0", "0**", "*00", "*0*", "**0", "***"):
        pat = P(text, 3)
        sols = solve_anm_params(pat, 3)
        if sols is None:
            continue
        for nr, mr in sols:
            n = nr + 3 * (1 + (nr < 4))
            m = mr or 3
            spec = ConstructionSpec("ANM", {"n": n, "m": m})
            assert served_pattern(spec) == pat
            assert verify_pattern(build(spec), pat)


def test_cosingletons_shift():
    assert cosingletons_shift(P("101"), 8) == 0
    assert cosingletons_shift(P("101"), 9) == 1
    assert cosingletons_shift(P("**0", 3), 7) == 1
    assert cosingletons_shift(P("000", 3), 7) is None
