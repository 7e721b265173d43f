import random

import pytest

from hasseorder import algebra, linalg, tensor
from hasseorder import localring as lr
from hasseorder.errors import ParameterError


def make(p=3, f=1, d=2, r=1, N=8, mode=lr.MIXED):
    S = lr.base_ring(p, f, N, mode)
    T = lr.unramified(S, d)
    r = r if d > 1 else 0
    return S, T, algebra.make(T, r), tensor.make(T, r)


CONFIGS = ((3, 2, 1, lr.MIXED), (5, 3, 1, lr.MIXED), (5, 3, 2, lr.MIXED),
           (3, 4, 1, lr.MIXED), (3, 2, 1, lr.EQUAL))


def test_bad_twist():
    S = lr.base_ring(3, 1, 4, lr.MIXED)
    T = lr.unramified(S, 4)
    with pytest.raises(ParameterError):
        tensor.make(T, 2)


def test_spec_idempotents_321():
    # (3,2,1): e_id = (u+theta)/(2 theta), e_sigma = (u-theta)/(-2 theta)
    S, T, A, TO = make()
    th = T.gen
    inv2th = (th + th).inv()
    e_id = TO.elem([th * inv2th, inv2th])
    e_sig = TO.elem([th * inv2th, -inv2th])
    assert TO.idempotents[0] == e_id
    assert TO.idempotents[1] == e_sig


def test_idempotent_algebra():
    for (p, d, r, mode) in CONFIGS:
        S, T, A, TO = make(p=p, d=d, r=r, mode=mode)
        total = TO.zero
        for k, e in enumerate(TO.idempotents):
            assert e * e == e
            total = total + e
            # w-components: w_g(e_h) = delta_{g,h}
            comps = e.components()
            for j, c in enumerate(comps):
                assert c == (T.one if j == k else T.zero)
        assert total == TO.one
        for j in range(d):
            for k in range(j + 1, d):
                assert (TO.idempotents[j] * TO.idempotents[k]).is_zero()


def test_u_components_are_conjugate_roots():
    # x = u (= theta (x) 1): components (sigma^k(theta))_k
    for (p, d, r, mode) in CONFIGS[:3]:
        S, T, A, TO = make(p=p, d=d, r=r, mode=mode)
        comps = TO.u_elem.components()
        for k in range(d):
            assert comps[k] == T.frobenius(T.gen, k)


def test_w_is_ring_isomorphism():
    rng = random.Random(0)
    for (p, d, r, mode) in CONFIGS:
        S, T, A, TO = make(p=p, d=d, r=r, mode=mode)
        for _ in range(20):
            x, y = TO.random(rng), TO.random(rng)
            assert TO.from_components(x.components()) == x
            cxy = (x * y).components()
            assert all(c == a * b for c, a, b in
                       zip(cxy, x.components(), y.components()))
            cs = (x + y).components()
            assert all(c == a + b for c, a, b in
                       zip(cs, x.components(), y.components()))


def test_sigma_actions_permute_idempotents():
    for (p, d, r, mode) in CONFIGS:
        S, T, A, TO = make(p=p, d=d, r=r, mode=mode)
        for k in range(d):
            assert TO.idempotents[k].sigma_left() == \
                TO.idempotents[(k - 1) % d]
            assert TO.idempotents[k].sigma_right(1) == \
                TO.idempotents[(k + 1) % d]


def test_order_relations():
    for (p, d, r, mode) in CONFIGS:
        S, T, A, TO = make(p=p, d=d, r=r, mode=mode)
        # (pi_D (x) 1)^d = pi_K (x) 1
        assert TO.x_pow(d) == TO.order_scalar(TO.right(T.uniformizer))
        # (pi_D (x) 1) e_h = (sigma_r (x) 1)(e_h) (pi_D (x) 1)
        for h in range(d):
            assert TO.x_elem * TO.order_idempotent(h) == \
                TO.order_idempotent((h - TO.r) % d) * TO.x_elem


def test_embedding_compatible_with_algebra():
    rng = random.Random(1)
    for (p, d, r, mode) in CONFIGS[:3]:
        S, T, A, TO = make(p=p, d=d, r=r, mode=mode)
        for _ in range(20):
            a, b = A.random(rng), A.random(rng)
            assert TO.order_from_D(a) * TO.order_from_D(b) == \
                TO.order_from_D(a * b)
            assert TO.order_from_D(a) + TO.order_from_D(b) == \
                TO.order_from_D(a + b)


def test_embed_l_extends_da_embed():
    rng = random.Random(2)
    for (p, d, r, mode) in CONFIGS[:3]:
        S, T, A, TO = make(p=p, d=d, r=r, mode=mode)
        for _ in range(10):
            a = A.random(rng)
            assert linalg.rmat_eq(TO.embed_l(TO.order_from_D(a)), a.embed())


def test_embed_l_is_ring_hom():
    rng = random.Random(3)
    for (p, d, r, mode) in CONFIGS:
        S, T, A, TO = make(p=p, d=d, r=r, mode=mode)
        for _ in range(15):
            z, w = TO.order_random(rng), TO.order_random(rng)
            assert linalg.rmat_eq(
                TO.embed_l(z * w),
                linalg.rmat_mul(TO.embed_l(z), TO.embed_l(w), T))


def test_milnor_membership_and_roundtrip():
    rng = random.Random(4)
    for (p, d, r, mode) in CONFIGS:
        S, T, A, TO = make(p=p, d=d, r=r, mode=mode)
        for _ in range(15):
            z = TO.order_random(rng)
            M = TO.embed_l(z)
            assert TO.milnor_member(M)
            back = TO.milnor_preimage(M)
            assert linalg.rmat_eq(TO.embed_l(back), M)
        # a matrix with a unit strictly above the diagonal is not in the image
        if d > 1:
            M = linalg.rmat_id(T, d)
            M[0][1] = T.one
            assert not TO.milnor_member(M)


def test_milnor_dimensions():
    for (p, d, r, mode) in CONFIGS:
        S, T, A, TO = make(p=p, d=d, r=r, mode=mode)
        span_rows, rad_rows = [], []
        for a_pow in range(d):
            for i in range(d):
                coeffs = [TO.zero] * d
                coeffs[i] = TO.u_elem ** a_pow
                b = TO.order_elem(coeffs)
                M = TO.embed_l(b)
                span_rows.append([T.residue_of(e) for row in M for e in row])
                Mx = TO.embed_l(TO.x_elem * b)
                rad_rows.append([T.residue_of(e) for row in Mx for e in row])
        assert linalg.ff_rank(span_rows) == d * (d + 1) // 2
        assert linalg.ff_rank(rad_rows) == d * (d - 1) // 2


def test_peirce_pattern():
    for (p, d, r, mode) in CONFIGS:
        S, T, A, TO = make(p=p, d=d, r=r, mode=mode)
        for h in range(d):
            nontrivial = [g for g in range(d)
                          if TO.peirce(g, h)["cokernel_length"] == 1]
            assert nontrivial == [(h + TO.r) % d]
