import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from prgeom.ffgeom import (
    FieldPoint,
    PrimeField,
    dot,
    is_prime,
    multiplicative_subgroup,
    point_array,
    primitive_root,
    quadratic_distance,
)


def test_is_prime_matches_sieve():
    sieve = [True] * 500
    sieve[0] = sieve[1] = False
    for i in range(2, 500):
        if sieve[i]:
            for j in range(i * i, 500, i):
                sieve[j] = False
    assert [p for p in range(500) if is_prime(p)] == [p for p in range(500) if sieve[p]]


@pytest.mark.parametrize("bad", [0, 1, 2, 4, 9, 15, 91])
def test_field_rejects_non_odd_primes(bad):
    with pytest.raises(ValueError):
        PrimeField(bad)


def test_coordinates_are_canonical():
    F = PrimeField(7)
    assert F.point(-1, 15).coords == (6, 1)


def test_quadratic_distance_examples():
    F5, F13 = PrimeField(5), PrimeField(13)
    assert quadratic_distance(F5.point(0, 0), F5.point(1, 2)) == 0
    assert quadratic_distance(F13.point(2, 3), F13.point(7, 1)) == 29 % 13 == 3
    x = F13.point(4, 11)
    assert quadratic_distance(x, x) == 0


def test_dot_examples():
    F5, F13 = PrimeField(5), PrimeField(13)
    assert dot(F5.point(1, 2), F5.point(3, 4)) == 1
    assert dot(F5.point(0, 0), F5.point(3, 4)) == 0
    assert dot(F13.point(2, 3), F13.point(7, 1)) == 4


def test_mismatches_raise():
    F5, F7 = PrimeField(5), PrimeField(7)
    with pytest.raises(ValueError):
        quadratic_distance(F5.point(1, 2), F7.point(1, 2))
    with pytest.raises(ValueError):
        dot(F5.point(1, 2), F5.point(1, 2, 3))


def test_subgroup_examples():
    A = multiplicative_subgroup(PrimeField(13), 4)
    assert A.elements == (1, 5, 8, 12)
    assert A.symmetric
    assert multiplicative_subgroup(13, 1).elements == (1,)
    assert multiplicative_subgroup(13, 12).elements == tuple(range(1, 13))
    assert not multiplicative_subgroup(13, 3).symmetric


def test_subgroup_order_must_divide():
    with pytest.raises(ValueError):
        multiplicative_subgroup(13, 5)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 29, 101])
def test_subgroups_closed_and_sized(p):
    for h in range(1, p):
        if (p - 1) % h:
            continue
        A = set(multiplicative_subgroup(p, h))
        assert len(A) == h
        assert all(a * b % p in A for a, b in itertools.product(A, repeat=2))


@pytest.mark.parametrize("p, g", [(3, 2), (5, 2), (7, 3), (13, 2), (17, 3), (23, 5), (41, 6)])
def test_primitive_root_is_smallest_generator(p, g):
    assert primitive_root(p) == g
    assert len({pow(g, k, p) for k in range(p - 1)}) == p - 1


def test_index_roundtrip_and_point_array():
    F = PrimeField(5)
    arr = point_array(5, 3)
    for i, pt in enumerate(F.points(3)):
        assert pt.index() == i
        assert FieldPoint.from_index(F, 3, i) == pt
        assert tuple(arr[i]) == pt.coords
    assert arr.shape == (125, 3)


def test_is_square_matches_enumeration():
    F = PrimeField(29)
    squares = {x * x % 29 for x in range(29)}
    assert {a for a in range(29) if F.is_square(a)} == squares


coords = st.lists(st.integers(-50, 50), min_size=1, max_size=4)


@given(p=st.sampled_from([3, 5, 7, 13]), x=coords, y=coords)
def test_distance_symmetric_and_matches_numpy(p, x, y):
    y = (y * 4)[: len(x)]
    F = PrimeField(p)
    a, b = F.point(*x), F.point(*y)
    assert quadratic_distance(a, b) == quadratic_distance(b, a)
    diff = np.array(a.coords) - np.array(b.coords)
    assert quadratic_distance(a, b) == int((diff * diff).sum()) % p
