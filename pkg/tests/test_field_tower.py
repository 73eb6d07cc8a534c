import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dworkzeta.errors import CompositeP, TooLarge
from dworkzeta.field_tower import (ExtHandle, enumerate_field, is_irreducible, make_field,
                                   partition_range, trace_to_prime)

FIELDS = [(2, 1), (3, 1), (7, 1), (2, 2), (3, 2), (2, 3), (5, 2), (2, 4)]


def test_prime_field_convention():
    f = make_field(7)
    assert f.q == 7 and f.modulus == (0, 1)
    assert list(enumerate_field(f)) == list(range(7))


def test_f4_modulus_is_unique_quadratic():
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_f9_units_have_order_dividing_8():
    f = make_field(3, 2)
    assert is_irreducible(f.modulus, 3)
    assert all(f.pow(x, 8) == 1 for x in range(1, 9))


def test_deterministic():
    assert make_field(3, 4).modulus == make_field(3, 4).modulus


@pytest.mark.parametrize("p,a", [(4, 1), (1, 1), (9, 2)])
def test_composite_rejected(p, a):
    with pytest.raises(CompositeP):
        make_field(p, a)


def test_too_large():
    with pytest.raises(TooLarge):
        make_field(2, 41)


def test_trace_examples_f4():
    f = make_field(2, 2)
    z = f.gen
    assert f.trace_to_prime(0) == 0
    assert f.trace_to_prime(1) == 0
    assert f.mul(z, z) == f.add(z, 1)
    assert f.trace_to_prime(z) == 1


def test_enumeration_examples():
    assert list(enumerate_field(make_field(2))) == [0, 1]
    f5 = list(enumerate_field(make_field(5)))
    assert len(f5) == 5 and f5[0] == 0
    f9 = make_field(3, 2)
    elems = list(enumerate_field(f9))
    assert len(set(elems)) == 9
    total = 0
    for x in elems:
        total = f9.add(total, x)
    assert total == 0


@pytest.mark.parametrize("p,a", FIELDS)
def test_axioms_and_frobenius(p, a):
    f = make_field(p, a)
    rng = random.Random(p * 100 + a)
    for _ in range(60):
        x, y, z = (rng.randrange(f.q) for _ in range(3))
        assert f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z))
        assert f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))
        assert f.add(x, f.neg(x)) == 0
        assert f.pow(x, f.q) == x
        if x:
            assert f.mul(x, f.inv(x)) == 1
            assert f.pow(x, f.q - 1) == 1


@pytest.mark.parametrize("p,a", FIELDS)
def test_trace_linear_and_surjective(p, a):
    f = make_field(p, a)
    rng = random.Random(7)
    for _ in range(50):
        x, y = rng.randrange(f.q), rng.randrange(f.q)
        assert f.trace_to_prime(f.add(x, y)) == (f.trace_to_prime(x) + f.trace_to_prime(y)) % p
        c = rng.randrange(p)
        assert f.trace_to_prime(f.mul(c, x)) == c * f.trace_to_prime(x) % p
    assert {f.trace_to_prime(x) for x in range(f.q)} == set(range(p))


def test_trace_is_sum_of_conjugates():
    f = make_field(3, 3)
    for x in range(f.q):
        s = 0
        for k in range(f.a):
            s = f.add(s, f.pow(x, 3 ** k))
        assert s == f.trace_to_prime(x)


@pytest.mark.parametrize("p,a,m", [(2, 1, 3), (2, 2, 2), (3, 1, 2), (3, 2, 2), (2, 2, 3)])
def test_extension_embedding(p, a, m):
    base = make_field(p, a)
    ext = ExtHandle(base, m)
    big = ext.field
    assert big.q == base.q ** m
    rng = random.Random(1)
    for _ in range(40):
        x, y = rng.randrange(base.q), rng.randrange(base.q)
        assert ext.embed(base.add(x, y)) == big.add(ext.embed(x), ext.embed(y))
        assert ext.embed(base.mul(x, y)) == big.mul(ext.embed(x), ext.embed(y))
    for x in range(base.q):
        assert big.pow(ext.embed(x), base.q) == ext.embed(x)
    fixed = [x for x in range(big.q) if big.pow(x, base.q) == x]
    assert sorted(fixed) == sorted(ext.embed(x) for x in range(base.q))
    # relative trace lands in F_q and composes to the absolute trace
    for x in range(0, big.q, max(1, big.q // 50)):
        t = ext.relative_trace(x)
        assert big.pow(t, base.q) == t
        back = {ext.embed(y): y for y in range(base.q)}
        assert base.trace_to_prime(back[t]) == big.trace_to_prime(x)
    assert trace_to_prime(ext, 1) == big.trace_to_prime(1)


def test_modulus_over_base_has_generator_root():
    base = make_field(2, 2)
    ext = ExtHandle(base, 2)
    poly = ext.modulus_over_base
    assert len(poly) == 3 and poly[-1] == 1


@given(st.integers(0, 10 ** 6), st.integers(1, 40))
def test_partition_range_covers(size, k):
    parts = partition_range(size, k)
    assert len(parts) <= k
    flat = [i for r in parts for i in r] if size < 2000 else None
    if flat is not None:
        assert flat == list(range(size))
    assert sum(len(r) for r in parts) == size
    for a, b in zip(parts, parts[1:]):
        assert a.stop == b.start


@pytest.mark.parametrize("p,a", FIELDS)
def test_array_ops_match_scalar(p, a):
    f = make_field(p, a)
    ops = f.arrays
    xs = np.arange(f.q, dtype=np.int64).repeat(f.q)
    ys = np.tile(np.arange(f.q, dtype=np.int64), f.q)
    prod = ops.mul(xs, ys)
    summ = ops.add(xs, ys)
    for i in range(0, len(xs), max(1, len(xs) // 200)):
        x, y = int(xs[i]), int(ys[i])
        assert prod[i] == f.mul(x, y)
        assert summ[i] == f.add(x, y)
    tr = ops.trace(np.arange(f.q, dtype=np.int64))
    assert [int(t) for t in tr] == [f.trace_to_prime(x) for x in range(f.q)]
