import random

import pytest

from hasseorder import ff
from hasseorder.errors import NotInvertibleError, ParameterError


def test_is_prime():
    assert [n for n in range(2, 30) if ff.is_prime(n)] == \
        [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_bad_parameters():
    with pytest.raises(ParameterError):
        ff.field(4, 1)
    with pytest.raises(ParameterError):
        ff.field(3, 0)


def test_f9_polynomial_is_lex_least():
    # x^2 + 1 is the lexicographically least monic irreducible over F_3
    F = ff.field(3, 2)
    assert list(F.poly) == [1, 0, 1]


def test_f4_arithmetic():
    F = ff.field(2, 2)
    th = F.gen
    # x^2 + x + 1: th^2 = th + 1
    assert th * th == th + F.one
    assert th ** 3 == F.one


def test_frobenius_f9():
    # theta in F_9 (poly x^2+1): theta^3 = -theta
    F = ff.field(3, 2)
    th = F.gen
    assert th.frobenius() == -th
    assert th.frobenius(2) == th


def test_field_axioms_sampled():
    rng = random.Random(1)
    for (p, m) in ((2, 3), (3, 2), (5, 1), (3, 4)):
        F = ff.field(p, m)
        for _ in range(200):
            a, b, c = F.random(rng), F.random(rng), F.random(rng)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            if not a.is_zero():
                assert a * a.inv() == F.one
                assert a ** (F.order - 1) == F.one


def test_frobenius_hom_and_order():
    rng = random.Random(2)
    for (p, m) in ((2, 4), (3, 3), (5, 2)):
        F = ff.field(p, m)
        for _ in range(50):
            a, b = F.random(rng), F.random(rng)
            assert (a + b).frobenius() == a.frobenius() + b.frobenius()
            assert (a * b).frobenius() == a.frobenius() * b.frobenius()
        for i in range(m):
            e = F.elem([0] * i + [1])
            assert e.frobenius(m) == e


def test_zero_has_no_inverse():
    F = ff.field(3, 2)
    with pytest.raises(NotInvertibleError):
        F.zero.inv()


def test_embedding():
    small = ff.field(3, 2)
    big = ff.field(3, 4)
    rng = random.Random(3)
    for _ in range(20):
        a, b = small.random(rng), small.random(rng)
        assert ff.embed(a * b, big) == ff.embed(a, big) * ff.embed(b, big)
        assert ff.embed(a + b, big) == ff.embed(a, big) + ff.embed(b, big)
    root = ff.embedding_root(small, big)
    # the embedded generator satisfies the small defining polynomial
    acc = big.zero
    for c in reversed(small.poly):
        acc = acc * root + big.from_int(c)
    assert acc.is_zero()
