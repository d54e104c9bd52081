import random
from fractions import Fraction
from math import gcd

import pytest

from cwforest.contfrac import cf_decode, cf_encode
from cwforest.rational import DomainError
from cwforest.tree import (TreeParams, ancestor_distance, children, children_cf,
                           depth_from_cf, is_descendant, is_orphan, locate, parent,
                           vertex_at_path)

from conftest import GRID, brute_row

F = Fraction
P11 = TreeParams(1, 1)


def test_params_validation():
    with pytest.raises(ValueError):
        TreeParams(0, 1)
    with pytest.raises(ValueError):
        TreeParams(1, -2)


@pytest.mark.parametrize("x, p, expected", [
    (F(1, 2), P11, (F(1, 3), F(3, 2))),
    (F(1), P11, (F(1, 2), F(2))),
    (F(3, 2), TreeParams(2, 1), (F(3, 8), F(5, 2))),
])
def test_children(x, p, expected):
    assert children(x, p) == expected


def test_children_rejects_zero():
    with pytest.raises(DomainError):
        children(F(0), P11)


@pytest.mark.parametrize("cf, p, left, right", [
    ((0, 2), P11, (0, 3), (1, 2)),
    ((1, 2), TreeParams(2, 1), (0, 2, 1, 2), (2, 2)),
    ((1,), P11, (0, 2), (2,)),
])
def test_children_cf(cf, p, left, right):
    assert children_cf(cf, p) == (left, right)
    assert (cf_decode(left), cf_decode(right)) == children(cf_decode(cf), p)


def test_children_cf_agrees_with_children_random():
    rng = random.Random(3)
    for _ in range(10**4):
        p = rng.choice(GRID + [TreeParams(3, 2), TreeParams(5, 4)])
        x = F(rng.randint(1, 10**4), rng.randint(1, 10**4))
        left, right = children_cf(cf_encode(x), p)
        assert (cf_decode(left), cf_decode(right)) == children(x, p)
        assert left == cf_encode(cf_decode(left)) and right == cf_encode(cf_decode(right))


@pytest.mark.parametrize("x, expected", [(F(3, 2), F(1, 2)), (F(1, 3), F(1, 2)), (F(1), None)])
def test_parent_examples(x, expected):
    assert parent(x, P11) == expected


def test_parent_inverts_children_and_child_ranges():
    rng = random.Random(11)
    for _ in range(10**4):
        p = rng.choice(GRID)
        x = F(rng.randint(1, 10**5), rng.randint(1, 10**5))
        left, right = children(x, p)
        assert left < F(1, p.u) and right > p.v
        assert parent(left, p) == x and parent(right, p) == x


@pytest.mark.parametrize("q, expected", [
    (F(7, 5), (F(1), 4, "RLLR")),
    (F(1), (F(1), 0, "")),
    (F(5, 2), (F(1), 3, "LRR")),
])
def test_locate_examples(q, expected):
    assert locate(q, P11) == expected


@pytest.mark.parametrize("root, path, x", [
    (F(1), "RLLR", F(7, 5)),
    (F(1), "", F(1)),
    (F(1), "LL", F(1, 3)),
])
def test_vertex_at_path(root, path, x):
    assert vertex_at_path(root, path, P11) == x


def test_vertex_at_path_rejects_bad_step():
    with pytest.raises(ValueError):
        vertex_at_path(F(1), "LX", P11)


def test_partition_small_domain(params):
    p = params
    for a in range(1, 41):
        for b in range(1, 41):
            if gcd(a, b) != 1:
                continue
            q = F(a, b)
            root, depth, path = locate(q, p)
            assert F(1, p.u) <= root <= p.v
            assert vertex_at_path(root, path, p) == q and len(path) == depth
            assert (depth == 0) == is_orphan(q, p)
            assert ancestor_distance(root, q, p) == depth


@pytest.mark.parametrize("q, p, expected", [
    (F(1), P11, True),
    (F(1, 2), TreeParams(2, 3), True),
    (F(7, 5), P11, False),
    (F(3), TreeParams(2, 3), True),
    (F(1, 3), TreeParams(2, 3), False),
])
def test_is_orphan(q, p, expected):
    assert is_orphan(q, p) is expected


@pytest.mark.parametrize("z, zp, expected", [(F(1), F(3, 5), True), (F(1), F(2), True),
                                             (F(2), F(1), False)])
def test_is_descendant_examples(z, zp, expected):
    assert is_descendant(z, zp, P11) is expected


@pytest.mark.parametrize("z, zp, n", [(F(1), F(3, 5), 3), (F(1), F(2), 1), (F(1, 2), F(1, 2), 0)])
def test_depth_from_cf_examples(z, zp, n):
    assert depth_from_cf(z, zp, P11) == n


def test_depth_from_cf_rejects_non_descendant():
    with pytest.raises(ValueError):
        depth_from_cf(F(2), F(1), P11)


def test_cf_lemmas_against_ancestry_oracle(params):
    p = params
    for z in {F(1, p.u), F(1), F(p.v)}:
        for d in range(0, 9):
            for y in brute_row(z, d, p):
                assert is_descendant(z, y, p)
                assert depth_from_cf(z, y, p) == d == ancestor_distance(z, y, p)


def test_non_descendants_rejected(params):
    p = params
    rng = random.Random(p.u * 7 + p.v)
    found = 0
    while found < 10**3:
        z = F(rng.randint(1, 30), rng.randint(1, 30))
        zp = F(rng.randint(1, 60), rng.randint(1, 60))
        if ancestor_distance(z, zp, p) is not None:
            continue
        assert not is_descendant(z, zp, p)
        found += 1


def test_descendant_test_exhaustive_small(params):
    p = params
    anc = [F(a, b) for a in range(1, 9) for b in range(1, 9) if gcd(a, b) == 1]
    for a in range(1, 31):
        for b in range(1, 31):
            if gcd(a, b) != 1:
                continue
            zp = F(a, b)
            for z in anc:
                d = ancestor_distance(z, zp, p)
                assert is_descendant(z, zp, p) == (d is not None)
                if d is not None:
                    assert depth_from_cf(z, zp, p) == d
