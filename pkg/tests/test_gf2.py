import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from towns.constructions import ConstructionSpec, build
from towns.errors import CapExceeded
from towns.family import Pattern, SetFamily
from towns.gf2 import Gf2Matrix, characteristic_matrix, check_claim_a2, isotropic_count, rank, span_dims
from towns.search import max_family


def test_characteristic_matrix():
    m = characteristic_matrix(SetFamily.from_lists(3, [[1], [2], [3]]))
    assert m.to_lists() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    m = characteristic_matrix(SetFamily.from_lists(3, [[1, 2], [2, 3]]))
    assert m.to_lists() == [[1, 1, 0], [0, 1, 1]]
    assert characteristic_matrix(SetFamily(4, ())).shape == (0, 4)


def test_rank_examples():
    assert rank(Gf2Matrix((0b001, 0b010, 0b100), 3)) == 3
    assert rank(Gf2Matrix((0b011, 0b110, 0b101), 3)) == 2
    assert span_dims(Gf2Matrix((0b001, 0b010, 0b100), 3)) == (3, 0)
    assert span_dims(Gf2Matrix((), 5)) == (0, 5)


def test_dual_eventown_spans():
    d5 = build(ConstructionSpec("DUAL_EVENTOWN", {"n": 5}))
    assert span_dims(characteristic_matrix(d5)) == (3, 2)
    assert check_claim_a2(d5)
    d6 = build(ConstructionSpec("DUAL_EVENTOWN", {"n": 6}))
    assert span_dims(characteristic_matrix(d6))[0] <= 3 and check_claim_a2(d6)


def test_isotropic_examples():
    # element 5 alone, and elements 1, 2 together
    assert isotropic_count(Gf2Matrix((0b10000, 0b00011), 5)) == (4, 2)
    assert isotropic_count(Gf2Matrix((0b0011, 0b1100), 4)) == (4, 4)


def test_isotropic_cap():
    rows = tuple(1 << i for i in range(21))
    with pytest.raises(CapExceeded):
        isotropic_count(Gf2Matrix(rows, 21))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 12), st.data())
def test_rank_nullity(n, data):
    rows = tuple(data.draw(st.lists(st.integers(0, (1 << n) - 1), max_size=14)))
    m = Gf2Matrix(rows, n)
    r, perp = span_dims(m)
    assert r + perp == n and r <= min(n, len(rows))
    size, iso = isotropic_count(m)
    assert size == 2 ** r
    if any(x.bit_count() % 2 for x in rows):
        assert 2 * iso == size
    else:
        assert iso == size


@pytest.mark.parametrize("n", range(1, 9))
def test_oddtown_witnesses_are_independent(n):
    w = max_family(Pattern.parse("10"), n).witness
    assert rank(characteristic_matrix(w)) == len(w)


@pytest.mark.parametrize("n", range(1, 9))
def test_11_families(n):
    fams = [max_family(Pattern.parse("11"), n).witness]
    fams.append(build(ConstructionSpec("DUAL_EVENTOWN", {"n": n})))
    for f in fams:
        assert check_claim_a2(f)
        size, iso = isotropic_count(characteristic_matrix(f))
        if len(f):
            assert 2 * iso == size
            assert len(f) <= size - iso
