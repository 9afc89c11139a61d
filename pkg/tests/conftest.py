import itertools

import pytest
from hypothesis import strategies as st

from towns.family import STAR, Pattern, SetFamily


def all_patterns(modulus, k):
    alphabet = (0, 1) if modulus == 2 else (0, STAR)
    return [Pattern(modulus, e) for e in itertools.product(alphabet, repeat=k)]


@st.composite
def families(draw, max_n=7, max_size=8):
    n = draw(st.integers(1, max_n))
    masks = draw(st.lists(st.integers(0, (1 << n) - 1), unique=True, max_size=max_size))
    return SetFamily(n, tuple(masks))


@st.composite
def patterns(draw, moduli=(2, 3), max_k=4):
    modulus = draw(st.sampled_from(moduli))
    k = draw(st.integers(1, max_k))
    alphabet = [STAR] + list(range(modulus)) if modulus > 2 else [0, 1]
    return Pattern(modulus, tuple(draw(st.sampled_from(alphabet)) for _ in range(k)))


@pytest.fixture
def family_file(tmp_path):
    from towns.io import save_family

    def make(family, pattern=None, name="f.json"):
        path = tmp_path / name
        save_family(path, family, pattern)
        return str(path)

    return make
