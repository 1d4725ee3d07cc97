import random

import pytest
from hypothesis import strategies as st

from fpsemi.elements import BooleanMatrix, Transformation, full_transformation_generators
from fpsemi.fropin import froidure_pin
from fpsemi.snapshot import minimal_snapshot


def brute_closure(gens):
    """Multiply until nothing new appears.  Independent of every engine."""
    seen = set(gens)
    todo = list(gens)
    while todo:
        x = todo.pop()
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def complete(gens):
    return froidure_pin(minimal_snapshot(gens))


def random_gens(rng, kind, n, count):
    from fpsemi.elements import random_element

    out = []
    while len(out) < count:
        x = random_element(kind, n, rng)
        if x not in out:
            out.append(x)
    return out


def transformations(n):
    return st.lists(st.integers(0, n - 1), min_size=n, max_size=n).map(Transformation)


def bmats(n):
    row = st.lists(st.integers(0, 1), min_size=n, max_size=n)
    return st.lists(row, min_size=n, max_size=n).map(BooleanMatrix)


def generator_sets(max_degree=4, max_gens=3):
    """Small distinct generator lists of one kind and size."""

    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_degree))
        elem = draw(st.sampled_from([transformations, bmats]))(n if n <= 3 else 3)
        return draw(st.lists(elem, min_size=1, max_size=max_gens, unique=True))

    return build()


@pytest.fixture(scope="session")
def tn_snapshots():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = complete(full_transformation_generators(n))
        return cache[n]

    return get


@pytest.fixture
def rng():
    return random.Random(20240611)
