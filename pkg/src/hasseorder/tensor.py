"""The ring T (x)_S T as T[u]/(G), its Galois idempotents, and the order
A (x)_S T with its twisted presentation and matrix embedding.

The LEFT tensor factor is carried by u (so u = theta (x) 1 and sigma (x) id
acts on the u-side), matching w_g(t1 (x) t2) = g(t1) t2.  The Galois group
is enumerated by Frobenius exponents: component k of the w-isomorphism is
evaluation at sigma^k(theta), i.e. the component of g = sigma^k.

G(u) factors as prod_k (u - sigma^k(theta)); the pairwise differences of
roots are units because T/S is unramified, which makes the Lagrange
idempotents e_g exact at precision N.
"""

from __future__ import annotations

import math

from .errors import (CtxMismatchError, InternalError, ParameterError,
                     PrecisionError)
from .localring import LocalRingCtx


class TensorRingCtx:
    """T (x)_S T = T[u]/(G) together with the twist r of the order."""

    def __init__(self, T: LocalRingCtx, r: int):
        d = T.d
        if d == 1:
            if r != 0:
                raise ParameterError("d = 1 requires twist r = 0")
        elif not (0 < r < d) or math.gcd(r, d) != 1:
            raise ParameterError(
                f"twist r = {r} must satisfy 0 < r < d and gcd(r, d) = 1")
        self.T = T
        self.S = T.base if T.base is not None else T
        self.d = d
        self.r = r
        self.r_inv = pow(r, -1, d) if d > 1 else 0
        self.prec = T.prec
        self.roots = [T.frobenius(T.gen, k) for k in range(d)]
        # G(u) = prod (u - sigma^k(theta)), monic of degree d, coefficients
        # Galois-invariant (they lie in the embedded S)
        G = [T.one]
        for rt in self.roots:
            nxt = [T.zero] * (len(G) + 1)
            for i, c in enumerate(G):
                nxt[i + 1] = nxt[i + 1] + c
                nxt[i] = nxt[i] - c * rt
            G = nxt
        self.G = G
        for c in G:
            if T.frobenius(c, 1) != c:
                raise InternalError("defining polynomial of T (x)_S T is not "
                                    "Galois-invariant; factorization residual")
        for j in range(d):
            for k in range(j + 1, d):
                if not (self.roots[j] - self.roots[k]).is_unit():
                    raise InternalError("conjugate roots are not separated by "
                                        "units; extension is not unramified")
        self.idempotents = self._make_idempotents()

    def _make_idempotents(self):
        T, d = self.T, self.d
        out = []
        for k in range(d):
            num = self.elem([T.one])
            den = T.one
            for j in range(d):
                if j == k:
                    continue
                num = num * self.elem([-self.roots[j], T.one])
                den = den * (self.roots[k] - self.roots[j])
            e = num * self.elem([den.inv()])
            out.append(e)
        total = self.zero
        for e in out:
            total = total + e
            if e * e != e:
                raise InternalError("Lagrange idempotent is not idempotent")
        if total != self.one:
            raise InternalError("Galois idempotents do not sum to 1")
        for j in range(d):
            for k in range(j + 1, d):
                if not (out[j] * out[k]).is_zero():
                    raise InternalError("Galois idempotents are not orthogonal")
        return out

    # -- T (x)_S T elements ------------------------------------------------

    def elem(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.d:
            coeffs = self._reduce(coeffs)
        coeffs += [self.T.zero] * (self.d - len(coeffs))
        return TensorElem(self, tuple(coeffs))

    def _reduce(self, coeffs):
        d = self.d
        for k in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[k]
            if not c.is_zero():
                for i in range(d + 1):
                    coeffs[k - d + i] = coeffs[k - d + i] - c * self.G[i]
        return coeffs[:d]

    @property
    def zero(self):
        return self.elem([])

    @property
    def one(self):
        return self.elem([self.T.one])

    @property
    def u_elem(self):
        """theta (x) 1."""
        if self.d == 1:
            return self.elem([self.T.gen])
        return self.elem([self.T.zero, self.T.one])

    def right(self, t):
        """1 (x) t for t in T."""
        return self.elem([t])

    def left(self, t):
        """t (x) 1: rewrite t with S-coefficients in the basis theta^j."""
        coords = self.T.rel_coords(t)
        return self.elem([self.T.embed_base(s) for s in coords])

    def from_components(self, comps):
        """Inverse of the w-isomorphism: sum_k comps[k] * e_{sigma^k}."""
        if len(comps) != self.d:
            raise ParameterError(f"expected {self.d} components")
        acc = self.zero
        for c, e in zip(comps, self.idempotents):
            acc = acc + self.right(c) * e
        return acc

    def random(self, rng):
        return TensorElem(self, tuple(self.T.random(rng) for _ in range(self.d)))

    # -- the order A (x)_S T ----------------------------------------------

    def order_elem(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) != self.d:
            raise ParameterError(f"expected {self.d} x-coefficients")
        for c in coeffs:
            if not isinstance(c, TensorElem) or c.ctx is not self:
                raise CtxMismatchError("x-coefficients must lie in T (x)_S T")
        return TensorOrderElem(self, tuple(coeffs))

    @property
    def order_zero(self):
        return self.order_elem([self.zero] * self.d)

    @property
    def order_one(self):
        return self.order_scalar(self.one)

    def order_scalar(self, z):
        coeffs = [self.zero] * self.d
        coeffs[0] = z
        return self.order_elem(coeffs)

    @property
    def x_elem(self):
        """pi_D (x) 1."""
        if self.d == 1:
            return self.order_scalar(self.right(self.T.uniformizer))
        coeffs = [self.zero] * self.d
        coeffs[1] = self.one
        return self.order_elem(coeffs)

    def x_pow(self, i):
        a = self.order_one
        for _ in range(i):
            a = a * self.x_elem
        return a

    def order_from_D(self, a):
        """A -> A (x)_S T, y_i x^i -> (y_i (x) 1) x^i; requires a in A."""
        if a.shift < 0:
            raise PrecisionError("element lies outside the order A")
        piK = self.right(self.T.uniformizer ** a.shift)
        return self.order_elem([self.left(y) * piK for y in a.coeffs])

    def order_idempotent(self, k):
        """e_{sigma^k} viewed inside A (x)_S T."""
        return self.order_scalar(self.idempotents[k % self.d])

    def order_random(self, rng):
        return self.order_elem([self.random(rng) for _ in range(self.d)])

    # -- embedding into M_d(T) and the Milnor square -----------------------

    def embed_l(self, z):
        """Matrix of l(z) on D as a right T-module in the basis (pi_D^s).

        Entry (j, s) = pi_K^{floor((i+s)/d)} * w_{sigma^{-rj}}(z_i) with
        i = (j - s) mod d; extends DElem.embed() (x)-linearly.
        """
        T, d = self.T, self.d
        piK = T.uniformizer
        comps = [c.components() for c in z.coeffs]
        out = []
        for j in range(d):
            row = []
            gidx = (-self.r * j) % d
            for s in range(d):
                i = (j - s) % d
                entry = comps[i][gidx]
                if (i + s) // d:
                    entry = entry * piK
                row.append(entry)
            out.append(row)
        return out

    def milnor_member(self, M):
        """True iff M mod m_T is lower triangular (the image of l)."""
        for j in range(self.d):
            for s in range(self.d):
                if M[j][s].ord() < 0:
                    raise ParameterError("matrix entries must be integral")
                if s > j and M[j][s].ord() < 1:
                    return False
        return True

    def milnor_preimage(self, M):
        """The unique z with l(z) = M, for M in the Milnor-square image.

        Closed form from the position bijection: component sigma^{-rj} of
        z_i is entry (j, (j - i) mod d), divided by pi_K when that position
        sits above the diagonal.
        """
        if not self.milnor_member(M):
            raise ParameterError("matrix is not lower triangular mod m_T")
        d = self.d
        coeffs = []
        for i in range(d):
            comps = [self.T.zero] * d
            for j in range(d):
                s = (j - i) % d
                entry = M[j][s]
                if (i + s) // d:
                    entry = entry.shift_down(1)
                comps[(-self.r * j) % d] = entry
            coeffs.append(self.from_components(comps))
        z = self.order_elem(coeffs)
        got = self.embed_l(z)
        for j in range(d):
            for s in range(d):
                if got[j][s] != M[j][s]:
                    raise InternalError("Milnor preimage failed to re-embed; "
                                        "contradicts the cartesian square")
        return z

    # -- Peirce pieces -----------------------------------------------------

    def peirce(self, g, h):
        """The piece e_g (A (x)_S T) e_h = T * (e_g x^i) with g = h o s^{-i},
        s = sigma^r; reports the cokernel of left multiplication by
        (pi_D (x) 1) into the (g o s^{-1}, h) piece."""
        g %= self.d
        h %= self.d
        i = ((h - g) * self.r_inv) % self.d if self.d > 1 else 0
        gen = self.order_idempotent(g) * self.x_pow(i) * self.order_idempotent(h)
        expect = self.x_pow(i).coeffs[i % self.d] if self.d > 1 else None
        # honest scalar comparison: x * gen against the target generator
        tgt_g = (g - self.r) % self.d
        i2 = ((h - tgt_g) * self.r_inv) % self.d if self.d > 1 else 0
        tgt = (self.order_idempotent(tgt_g) * self.x_pow(i2)
               * self.order_idempotent(h))
        prod = self.x_elem * gen
        lam = self.T.uniformizer if i2 == (i + 1) - self.d else self.T.one
        scaled = self.order_elem([self.right(lam) * c for c in tgt.coeffs])
        if prod != scaled:
            raise InternalError("Peirce transition scalar mismatch")
        return {"generator": gen, "i": i, "target": (tgt_g, h),
                "cokernel_length": lam.ord()}


class TensorElem:
    """Element of T (x)_S T: a u-polynomial of degree < d over T."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, TensorElem) or other.ctx is not self.ctx:
            raise CtxMismatchError("operands from different tensor contexts")

    def __add__(self, other):
        self._check(other)
        return TensorElem(self.ctx, tuple(a + b for a, b in
                                          zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return TensorElem(self.ctx, tuple(a - b for a, b in
                                          zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return TensorElem(self.ctx, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        ctx = self.ctx
        d = ctx.d
        out = [ctx.T.zero] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return ctx.elem(ctx._reduce(out))

    def __pow__(self, e):
        r = self.ctx.one
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def components(self):
        """(w_{sigma^k}(x))_k: evaluation at the conjugate roots."""
        out = []
        for rt in self.ctx.roots:
            acc = self.ctx.T.zero
            for c in reversed(self.coeffs):
                acc = acc * rt + c
            out.append(acc)
        return out

    def sigma_left(self, j=1):
        """(sigma (x) id)^j: permutes w-components by g -> g o sigma^{-1}."""
        comps = self.components()
        d = self.ctx.d
        return self.ctx.from_components([comps[(k + j) % d] for k in range(d)])

    def sigma_right(self, j=1):
        """(id (x) sigma)^j: applies sigma to the right-factor coefficients."""
        T = self.ctx.T
        return TensorElem(self.ctx, tuple(T.frobenius(c, j) for c in self.coeffs))

    def __eq__(self, other):
        return (isinstance(other, TensorElem) and other.ctx is self.ctx
                and other.coeffs == self.coeffs)

    def __repr__(self):
        return f"Tensor{[c.serialize() for c in self.coeffs]}"

    def serialize(self):
        return [c.serialize() for c in self.coeffs]


class TensorOrderElem:
    """Element of A (x)_S T = (T (x)_S T)^{sigma_r (x) id}{x}/(x^d - pi_K)."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, TensorOrderElem) or other.ctx is not self.ctx:
            raise CtxMismatchError("operands from different tensor contexts")

    def __add__(self, other):
        self._check(other)
        return TensorOrderElem(self.ctx, tuple(a + b for a, b in
                                               zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return TensorOrderElem(self.ctx, tuple(a - b for a, b in
                                               zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return TensorOrderElem(self.ctx, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        ctx = self.ctx
        d = ctx.d
        piK = ctx.right(ctx.T.uniformizer)
        out = [ctx.zero] * d
        for i, zi in enumerate(self.coeffs):
            if zi.is_zero():
                continue
            for j, wj in enumerate(other.coeffs):
                if wj.is_zero():
                    continue
                term = zi * wj.sigma_left(ctx.r * i)
                k, s = divmod(i + j, d)
                if k:
                    term = term * piK
                out[s] = out[s] + term
        return TensorOrderElem(ctx, tuple(out))

    def __pow__(self, e):
        r = self.ctx.order_one
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, TensorOrderElem) and other.ctx is self.ctx
                and other.coeffs == self.coeffs)

    def __repr__(self):
        return f"Order{[c.serialize() for c in self.coeffs]}"

    def serialize(self):
        return [c.serialize() for c in self.coeffs]


def make(T: LocalRingCtx, r: int) -> TensorRingCtx:
    return TensorRingCtx(T, r)
