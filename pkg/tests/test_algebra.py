import random

import pytest

from hasseorder import algebra, linalg
from hasseorder import localring as lr
from hasseorder.errors import (NotInvertibleError, ParameterError,
                               PrecisionError)


def make(p=3, f=1, d=2, r=1, N=8, mode=lr.MIXED):
    S = lr.base_ring(p, f, N, mode)
    T = lr.unramified(S, d)
    return S, T, algebra.make(T, r if d > 1 else 0)


def test_bad_twist():
    S = lr.base_ring(3, 1, 4, lr.MIXED)
    T = lr.unramified(S, 4)
    with pytest.raises(ParameterError):
        algebra.make(T, 2)
    with pytest.raises(ParameterError):
        algebra.make(T, 0)
    with pytest.raises(ParameterError):
        algebra.make(T, 4)


def test_d1_is_base_ring():
    S, T, A = make(d=1, r=0)
    assert A.pi_D == A.from_T(T.uniformizer)
    a = A.from_int(7)
    assert a.ord() == 0
    trd, nrd = a.trd_nrd()
    assert nrd == S.from_int(7)


def test_quaternion_type_relation():
    # (3,2,1): pi_D^2 = 3
    S, T, A = make()
    assert A.pi_D * A.pi_D == A.from_int(3)


def test_spec_product():
    # (3+x)*(3-x) = 9 - pi_K = 6
    S, T, A = make()
    a = A.from_int(3) + A.pi_D
    b = A.from_int(3) - A.pi_D
    assert a * b == A.from_int(6)
    assert b * a == A.from_int(6)


def test_twisted_relation():
    # x * y = sigma_r(y) * x for y in T
    rng = random.Random(0)
    for (d, r) in ((2, 1), (3, 1), (3, 2)):
        S, T, A = make(p=5, d=d, r=r)
        for _ in range(20):
            t = T.random(rng)
            lhs = A.pi_D * A.from_T(t)
            rhs = A.from_T(T.frobenius(t, r)) * A.pi_D
            assert lhs == rhs


def test_ring_axioms_sampled():
    rng = random.Random(1)
    for (p, d, r, mode) in ((3, 2, 1, lr.MIXED), (5, 3, 2, lr.MIXED),
                            (3, 2, 1, lr.EQUAL)):
        S, T, A = make(p=p, d=d, r=r, mode=mode)
        for _ in range(200):
            a, b, c = A.random(rng), A.random(rng), A.random(rng)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert (a + b) * c == a * c + b * c


def test_ord():
    S, T, A = make()
    assert A.pi_D.ord() == 1
    assert A.from_T(T.uniformizer).ord() == 2
    assert A.one.ord() == 0
    assert A.zero.ord() == A.ord_cap
    rng = random.Random(2)
    for _ in range(50):
        a, b = A.random(rng), A.random(rng)
        if a.is_zero() or b.is_zero():
            continue
        if a.ord() + b.ord() <= A.d * (A.prec - 1):
            assert (a * b).ord() == a.ord() + b.ord()


def test_embed_is_multiplicative_and_additive():
    rng = random.Random(3)
    for (p, d, r) in ((3, 2, 1), (5, 3, 2)):
        S, T, A = make(p=p, d=d, r=r)
        for _ in range(30):
            a, b = A.random(rng), A.random(rng)
            assert linalg.rmat_eq((a * b).embed(),
                                  linalg.rmat_mul(a.embed(), b.embed(), T))
            assert linalg.rmat_eq((a + b).embed(),
                                  linalg.rmat_add(a.embed(), b.embed()))


def test_embed_pi_d_spec_matrix():
    # l(pi_D) at (3,2,1,N=4): [[0, 3], [1, 0]]
    S, T, A = make(N=4)
    M = A.pi_D.embed()
    assert M[0][0].is_zero() and M[1][1].is_zero()
    assert M[0][1] == T.from_int(3)
    assert M[1][0] == T.one


def test_trd_nrd_values():
    S, T, A = make(N=4)
    trd, nrd = A.pi_D.trd_nrd()
    assert trd.is_zero()
    assert nrd == S.from_int(-3)
    trd1, nrd1 = A.one.trd_nrd()
    assert trd1 == S.from_int(2)
    assert nrd1 == S.one


def test_norm_trace_identities():
    rng = random.Random(4)
    for (p, d, r, mode) in ((3, 2, 1, lr.MIXED), (5, 3, 1, lr.MIXED),
                            (3, 2, 1, lr.EQUAL)):
        S, T, A = make(p=p, d=d, r=r)
        for _ in range(25):
            a = A.random(rng)
            trd, nrd = a.trd_nrd()
            tr, nm = a.full_norm_trace()
            assert nm == nrd ** d
            prod = S.zero
            for _ in range(d):
                prod = prod + trd
            assert tr == prod


def test_ord_is_valuation_of_nrd():
    rng = random.Random(5)
    for (p, d, r) in ((3, 2, 1), (5, 3, 2), (3, 4, 1)):
        S, T, A = make(p=p, d=d, r=r)
        for _ in range(40):
            a = A.random(rng)
            if a.ord() <= d * (A.prec - 2):
                _, nrd = a.trd_nrd()
                assert a.ord() == nrd.ord()


def test_inverse():
    rng = random.Random(6)
    S, T, A = make()
    assert A.one.inv() == A.one
    # inv(pi_D) = pK^{-1} * pi_D^{d-1}
    ipi = A.pi_D.inv()
    assert ipi.shift == -1
    assert ipi * A.pi_D == A.one
    assert A.pi_D * ipi == A.one
    # spec: inv(3 + pi_D) * (3 + pi_D) = 1
    a = A.from_int(3) + A.pi_D
    assert a.inv() * a == A.one
    for _ in range(30):
        a = A.random(rng)
        if a.is_zero() or a.ord() > A.d * (A.prec - 2):
            continue
        assert a * a.inv() == A.one
        assert a.inv() * a == A.one
    with pytest.raises(NotInvertibleError):
        A.zero.inv()


def test_inverse_precision_guard():
    S, T, A = make(N=3)
    deep = A.from_T(T.uniformizer ** 2)  # ord = 2*d > d*(N-2)
    with pytest.raises(PrecisionError):
        deep.inv()


def test_conjugation():
    rng = random.Random(7)
    for (p, d, r) in ((3, 2, 1), (5, 3, 2)):
        S, T, A = make(p=p, d=d, r=r)
        # pi_D t pi_D^{-1} = sigma^r(t) on every T-basis element
        for j in range(T.m):
            v = [0] * T.zp_rank
            v[j * (T.zp_rank // T.m)] = 1
            t = T.gen ** j
            got = A.from_T(t).conjugate_by(A.pi_D)
            assert got == A.from_T(T.frobenius(t, r))
        # central elements are fixed
        s = A.from_S(S.random(rng))
        a = A.random(rng)
        if not a.is_zero() and a.ord() <= d * (A.prec - 2):
            assert s.conjugate_by(a) == s
            # conjugation preserves ord
            b = A.random(rng)
            if not b.is_zero():
                assert b.conjugate_by(a).ord() == b.ord()
        # conjugation action has exact order d on T
        t = A.from_T(T.gen)
        cur = t
        first_return = 0
        for k in range(1, d + 1):
            cur = cur.conjugate_by(A.pi_D)
            if cur == t:
                first_return = k
                break
        assert first_return == d


def test_hasse_invariant():
    S, T, A = make(p=5, d=3, r=2)
    assert A.hasse_invariant == (2, 3)
