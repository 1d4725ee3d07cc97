import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fpsemi.words import decompose, parse_word, render_word, shortlex_cmp, shortlex_key


def words(max_len, letters=3):
    for n in range(1, max_len + 1):
        yield from itertools.product(range(letters), repeat=n)


def test_examples():
    assert shortlex_cmp([1], [0, 1]) == -1
    assert shortlex_cmp([0, 1], [0, 2]) == -1
    assert shortlex_cmp([0, 1], [0, 1]) == 0
    assert shortlex_cmp([0, 2], [0, 1]) == 1


def test_decompose_examples():
    assert decompose([2]) == (2, (), (), 2)
    assert decompose([0, 1, 2]) == (0, (1, 2), (0, 1), 2)
    with pytest.raises(ValueError):
        decompose([])


def test_prefix_and_last_rebuild_every_short_word():
    ws = list(words(4))
    assert len(ws) == 120
    for w in ws:
        f, s, p, l = decompose(w)
        assert p + (l,) == tuple(w)
        assert (f,) + s == tuple(w)


def test_multiplication_compatible():
    ws = list(words(3))
    for u, v in itertools.product(ws, repeat=2):
        if shortlex_cmp(u, v) < 0:
            for a in range(3):
                assert shortlex_cmp((a,) + u, (a,) + v) < 0
                assert shortlex_cmp(u + (a,), v + (a,)) < 0


def test_last_letter_cancellation():
    ws = list(words(3))
    for u, v in itertools.product(ws, repeat=2):
        for a, b in itertools.product(range(3), repeat=2):
            if shortlex_cmp(u + (a,), v + (b,)) <= 0:
                assert shortlex_cmp(u, v) <= 0


def test_total_order():
    ws = list(words(3))
    for u, v in itertools.product(ws, repeat=2):
        assert shortlex_cmp(u, v) == -shortlex_cmp(v, u)
        assert (shortlex_cmp(u, v) == 0) == (u == v)
    ordered = sorted(ws, key=shortlex_key)
    for i in range(len(ordered) - 1):
        assert shortlex_cmp(ordered[i], ordered[i + 1]) < 0


@given(st.lists(st.integers(0, 20), min_size=1, max_size=8))
def test_render_round_trip(w):
    assert parse_word(render_word(w)) == tuple(w)


def test_render_format():
    assert render_word((1, 1)) == "a1.a1"
