import random

import pytest
from hypothesis import strategies as st

from acolen.monomial import MonomialIdeal, normalize


def random_m_primary(rng: random.Random, d: int, max_pure: int = 6, extra: int = 4) -> MonomialIdeal:
    """Pure powers on every axis plus a few random mixed generators."""
    pures = [rng.randint(1, max_pure) for _ in range(d)]
    gens = [tuple(a if j == i else 0 for j in range(d)) for i, a in enumerate(pures)]
    for _ in range(rng.randint(0, extra)):
        g = tuple(rng.randint(0, max(0, a - 1)) for a in pures)
        if any(g):
            gens.append(g)
    return normalize(gens, d)


@st.composite
def m_primary_ideals(draw, dims=(2, 3), max_pure=6, extra=5):
    d = draw(st.sampled_from(dims))
    pures = [draw(st.integers(1, max_pure)) for _ in range(d)]
    gens = [tuple(a if j == i else 0 for j in range(d)) for i, a in enumerate(pures)]
    k = draw(st.integers(0, extra))
    for _ in range(k):
        g = tuple(draw(st.integers(0, max(0, a - 1))) for a in pures)
        if any(g):
            gens.append(g)
    return normalize(gens, d)


@st.composite
def exponent_sets(draw, d=None, max_exp=5, max_size=7):
    d = d or draw(st.integers(1, 3))
    vecs = draw(st.lists(st.tuples(*[st.integers(0, max_exp)] * d), max_size=max_size))
    return d, vecs


@pytest.fixture
def rng():
    return random.Random(20240917)
