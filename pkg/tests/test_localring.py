import random

import pytest

from hasseorder import localring as lr
from hasseorder.errors import (NotInvertibleError, ParameterError,
                               PrecisionError)


def ctx_pair(p=3, f=1, d=2, N=4, mode=lr.MIXED):
    S = lr.base_ring(p, f, N, mode)
    return S, lr.unramified(S, d)


def test_bad_parameters():
    with pytest.raises(ParameterError):
        lr.base_ring(4, 1, 4, lr.MIXED)
    with pytest.raises(ParameterError):
        lr.base_ring(3, 1, 1, lr.MIXED)
    with pytest.raises(ParameterError):
        lr.base_ring(3, 0, 4, lr.MIXED)


def test_spec_example_theta_squared():
    # S = Z/81, d = 2: T = (Z/81)[theta]/(theta^2+1)
    S, T = ctx_pair()
    th = T.gen
    assert th * th == -T.one
    # sigma(theta) is a root of G and reduces to theta^3 = -theta mod 3
    s = T.frobenius(th, 1)
    assert T._eval_int_poly(T.poly, s).is_zero()
    assert T.residue_of(s) == T.residue_of(-th)
    # theta * sigma(theta) is the relative norm of theta (Galois-invariant)
    nm = T.norm_rel(th)
    assert th * s == nm
    assert T.frobenius(nm, 1) == nm


def test_sigma_is_ring_hom_of_order_d():
    rng = random.Random(0)
    for mode in (lr.MIXED, lr.EQUAL):
        for d in (2, 3):
            S, T = ctx_pair(p=3, d=d, N=5, mode=mode)
            for _ in range(50):
                x, y = T.random(rng), T.random(rng)
                assert T.frobenius(x + y, 1) == \
                    T.frobenius(x, 1) + T.frobenius(y, 1)
                assert T.frobenius(x * y, 1) == \
                    T.frobenius(x, 1) * T.frobenius(y, 1)
                assert T.frobenius(x, d) == x
            # sigma fixes exactly the embedded base
            s = S.random(rng)
            e = T.embed_base(s)
            assert T.frobenius(e, 1) == e


def test_ord_and_units():
    rng = random.Random(1)
    for mode in (lr.MIXED, lr.EQUAL):
        S, T = ctx_pair(N=6, mode=mode)
        pi = T.uniformizer
        assert pi.ord() == 1
        assert T.zero.ord() == T.prec
        for _ in range(60):
            x, y = T.random(rng), T.random(rng)
            assert (x * y).ord() == min(x.ord() + y.ord(), T.prec)
            assert (x + y).ord() >= min(x.ord(), y.ord())
            if x.is_unit():
                assert x * x.inv() == T.one
        with pytest.raises(NotInvertibleError):
            pi.inv()


def test_shift_down():
    S, T = ctx_pair(N=5)
    pi = T.uniformizer
    x = T.from_int(7)
    assert (x * pi ** 2).shift_down(2) == x
    with pytest.raises(PrecisionError):
        (T.one + pi).shift_down(1)
    # negative k multiplies
    assert x.shift_down(-1) == x * pi


def test_teichmueller():
    for mode in (lr.MIXED, lr.EQUAL):
        S, T = ctx_pair(p=3, d=2, N=5, mode=mode)
        q = T.p ** T.m
        for a in (T.residue.gen, T.residue.one, T.residue.from_int(2)):
            y = T.teich(a)
            assert T.residue_of(y) == a
            assert y ** q == y


def test_trace_norm_in_base():
    rng = random.Random(2)
    S, T = ctx_pair(p=5, d=3, N=4)
    for _ in range(30):
        x = T.random(rng)
        tr, nm = T.trace_rel(x), T.norm_rel(x)
        # values are Galois-invariant and coerce into S
        for v in (tr, nm):
            assert T.frobenius(v, 1) == v
            assert T.to_base(v).ctx is S
            assert T.embed_base(T.to_base(v)) == v
        conj = [T.frobenius(x, k) for k in range(3)]
        assert tr == conj[0] + conj[1] + conj[2]
        assert nm == conj[0] * conj[1] * conj[2]


def test_rel_coords_roundtrip():
    rng = random.Random(3)
    for mode in (lr.MIXED, lr.EQUAL):
        S, T = ctx_pair(p=3, f=2, d=2, N=4, mode=mode)
        for _ in range(20):
            x = T.random(rng)
            coords = T.rel_coords(x)
            assert len(coords) == T.d
            acc = T.zero
            for j, s in enumerate(coords):
                assert s.ctx is S
                acc = acc + T.embed_base(s) * T.gen ** j
            assert acc == x


def test_frobenius_p_lift():
    # frobenius_p lifts a |-> a^p on the residue ring
    rng = random.Random(4)
    S, T = ctx_pair(p=3, d=2, N=4)
    for _ in range(20):
        x = T.random(rng)
        y = T.frobenius_p(x, 1)
        assert T.residue_of(y) == T.residue_of(x) ** T.p
    # and is a ring homomorphism
    a, b = T.random(rng), T.random(rng)
    assert T.frobenius_p(a * b, 1) == T.frobenius_p(a, 1) * T.frobenius_p(b, 1)
    assert T.frobenius_p(a + b, 1) == T.frobenius_p(a, 1) + T.frobenius_p(b, 1)


def test_equal_char_structure():
    S, T = ctx_pair(p=2, f=1, d=3, N=4, mode=lr.EQUAL)
    t = T.uniformizer
    assert (t ** 4).is_zero()
    # Frobenius acts on coefficients, fixing t
    assert T.frobenius(t, 1) == t
