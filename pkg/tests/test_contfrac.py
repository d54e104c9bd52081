import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from cwforest.contfrac import (cf_compare, cf_decode, cf_encode, cf_length, cf_long_form,
                               cf_prefix_bound, cf_short_form, common_prefix_index,
                               corbound_decay, format_cf, is_canonical, parse_cf,
                               representations)
from cwforest.rational import DomainError, rat_cmp


def nested(coeffs):
    # independent evaluation: q0 + 1/(q1 + 1/(...))
    x = Fraction(coeffs[-1])
    for q in reversed(coeffs[:-1]):
        x = q + 1 / x
    return x


@pytest.mark.parametrize("x, cf", [
    (Fraction(3, 5), (0, 1, 1, 2)),
    (Fraction(1), (1,)),
    (Fraction(2), (2,)),
    (Fraction(0), (0,)),
])
def test_encode(x, cf):
    assert cf_encode(x) == cf
    assert nested(cf) == x


@pytest.mark.parametrize("cf, x", [
    ((0, 1, 1, 2), Fraction(3, 5)),
    ((0, 1, 1, 1, 1), Fraction(3, 5)),
    ((1,), Fraction(1)),
])
def test_decode(cf, x):
    assert cf_decode(cf) == x


@pytest.mark.parametrize("bad", [(), (1, 0), (0, 2, -1), (-1,)])
def test_decode_rejects(bad):
    with pytest.raises(ValueError):
        cf_decode(bad)


def test_long_short():
    assert cf_long_form((0, 1, 1, 2)) == (0, 1, 1, 1, 1)
    assert cf_long_form((1,)) == (0, 1)
    assert cf_short_form((2, 1)) == (3,)
    assert cf_short_form((0, 1)) == (1,)
    with pytest.raises(ValueError):
        cf_long_form((0,))


def test_roundtrip_exhaustive():
    for a in range(0, 201):
        for b in range(1, 201):
            if gcd(a, b) != 1:
                continue
            x = Fraction(a, b)
            cf = cf_encode(x)
            assert is_canonical(cf)
            assert cf_decode(cf) == x == nested(cf)


@given(st.integers(1, 10**9), st.integers(1, 10**9))
def test_two_representations(a, b):
    x = Fraction(a, b)
    reps = representations(x)
    assert len(reps) == 2 and reps[0] != reps[1]
    assert is_canonical(reps[0]) and reps[1][-1] == 1
    assert all(cf_decode(r) == x for r in reps)


@pytest.mark.parametrize("a, b, c", [
    ((0, 2), (0, 3), 1),
    ((1, 2), (1, 2), 0),
    ((2,), (2, 2), -1),
    ((0, 1, 1, 1, 1), (0, 1, 1, 2), 0),
])
def test_compare_examples(a, b, c):
    assert cf_compare(a, b) == c


def test_compare_matches_rational_order_exhaustively():
    reps = []
    for a in range(0, 31):
        for b in range(1, 31):
            if gcd(a, b) == 1:
                x = Fraction(a, b)
                reps.extend((x, r) for r in representations(x))
    for x, r in reps:
        for y, s in reps:
            assert cf_compare(r, s) == rat_cmp(x, y)


def test_prefix_bound_examples():
    assert cf_prefix_bound((0, 2), (0, 2, 3)) == Fraction(1, 4)
    assert abs(Fraction(1, 2) - Fraction(3, 7)) <= Fraction(1, 4)
    assert cf_prefix_bound((1, 2), (1, 3)) == 1
    assert cf_prefix_bound((0, 2, 1, 2), (0, 2, 1, 4)) == Fraction(1, 4)
    with pytest.raises(ValueError):
        cf_prefix_bound((1, 2), (1, 2))
    with pytest.raises(ValueError):
        cf_prefix_bound((5,), (1,))


def _random_cf(rng, prefix):
    tail = [rng.randint(1, 9) for _ in range(rng.randint(0, 5))]
    return tuple(prefix) + tuple(tail)


def test_prefix_bound_dominates_random_pairs():
    rng = random.Random(7)
    checked = 0
    while checked < 10**4:
        prefix = [rng.randint(0, 5)] + [rng.randint(1, 6) for _ in range(rng.randint(0, 6))]
        a, b = _random_cf(rng, prefix), _random_cf(rng, prefix)
        if a == b:
            continue
        assert abs(cf_decode(a) - cf_decode(b)) <= cf_prefix_bound(a, b)
        checked += 1


@pytest.mark.parametrize("u, v", [(1, 2), (2, 1), (2, 3), (3, 1)])
def test_divisibility_decay(u, v):
    # shared prefixes with v | even-index and u | odd-index coefficients
    rng = random.Random(u * 10 + v)
    for _ in range(1000):
        k = rng.randint(0, 8)
        prefix = (rng.randint(0, 3) * v,) + tuple(
            rng.randint(1, 3) * (u if j % 2 else v) for j in range(1, k + 1))
        x, y = rng.sample(range(1, 12), 2)
        a = prefix + (x,) + tuple(rng.randint(1, 5) for _ in range(rng.randint(0, 3)))
        b = prefix + (y,) + tuple(rng.randint(1, 5) for _ in range(rng.randint(0, 3)))
        assert common_prefix_index(a, b) == k
        bound = cf_prefix_bound(a, b)
        assert abs(cf_decode(a) - cf_decode(b)) <= bound
        assert bound <= corbound_decay(k, u, v) <= Fraction(1, 2 ** max(k - 1, 0))


@pytest.mark.parametrize("x, n", [(Fraction(3, 5), 3), (Fraction(1), 0), (Fraction(2, 3), 2)])
def test_length(x, n):
    assert cf_length(x) == n


def test_length_rejects_zero():
    with pytest.raises(DomainError):
        cf_length(Fraction(0))


def test_text_forms():
    assert format_cf((0, 1, 1, 2)) == "[0,1,1,2]"
    assert parse_cf("[0, 1,1,2]") == (0, 1, 1, 2)
    for bad in ("[0,0]", "0,1", "[1.5]", "[]"):
        with pytest.raises(ValueError):
            parse_cf(bad)
