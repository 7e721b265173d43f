"""The cyclic division algebra D of index d and twist r over K, and its
maximal order A = T^{sigma_r}{x}/(x^d - pi_K).

Elements are stored as a pi_K-power shift m together with a d-vector
(y_0, ..., y_{d-1}) over T, meaning pi_K^m * sum_i y_i pi_D^i.  The twisted
relation is pi_D * y = sigma_r(y) * pi_D with sigma_r = sigma^r, and
pi_D^d = pi_K.  The valuation is normalized by ord_D(pi_D) = 1, so
ord_D(pi_K) = d and ord_D = v_K(Nrd) on the nose.
"""

from __future__ import annotations

import math

from . import linalg
from .errors import (CtxMismatchError, InternalError, NotInvertibleError,
                     ParameterError, PrecisionError)
from .localring import EQUAL, MIXED, LocalRingCtx


class AlgebraCtx:
    """The order A inside D = T^{sigma_r}{x}/(x^d - pi_K)."""

    def __init__(self, T: LocalRingCtx, r: int):
        d = T.d
        if d == 1:
            if r != 0:
                raise ParameterError("d = 1 requires twist r = 0 (D = K)")
        elif not (0 < r < d) or math.gcd(r, d) != 1:
            raise ParameterError(
                f"twist r = {r} must satisfy 0 < r < d and gcd(r, d) = 1")
        self.T = T
        self.S = T.base if T.base is not None else T
        self.d = d
        self.r = r
        self.prec = T.prec
        # convention flag: sigma_twist = (q-power Frobenius)^r, so the Hasse
        # invariant label attached to this ctx is r/d
        self.hasse_invariant = (r, d)
        self.ord_cap = d * T.prec

    # -- element constructors ---------------------------------------------

    def elem(self, shift, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) != self.d:
            raise ParameterError(f"expected {self.d} coefficients")
        for c in coeffs:
            if c.ctx is not self.T:
                raise CtxMismatchError("coefficients must lie in T")
        v = min(c.ord() for c in coeffs)
        if v >= self.prec:
            return DElem(self, 0, tuple(self.T.zero for _ in range(self.d)))
        if v:
            coeffs = [c.shift_down(v) for c in coeffs]
            shift += v
        return DElem(self, shift, tuple(coeffs))

    @property
    def zero(self):
        return DElem(self, 0, tuple(self.T.zero for _ in range(self.d)))

    @property
    def one(self):
        return self.from_T(self.T.one)

    def from_T(self, t):
        coeffs = [self.T.zero] * self.d
        coeffs[0] = t
        return self.elem(0, coeffs)

    def from_S(self, s):
        return self.from_T(self.T.embed_base(s))

    def from_int(self, a):
        return self.from_T(self.T.from_int(a))

    @property
    def pi_D(self):
        return self.pi_D_pow(1)

    def pi_D_pow(self, e: int):
        """pi_D^e for any integer e, as a shift plus a single x-power."""
        q, s = divmod(e, self.d)
        coeffs = [self.T.zero] * self.d
        coeffs[s] = self.T.one
        return DElem(self, q, tuple(coeffs))

    def random(self, rng):
        """A random element of the order A (shift 0)."""
        return self.elem(0, [self.T.random(rng) for _ in range(self.d)])

    def random_unit(self, rng):
        while True:
            a = self.random(rng)
            if a.ord() == 0:
                return a

    def __repr__(self):
        return f"Algebra(d={self.d}, r={self.r}, T={self.T!r})"


class DElem:
    """pi_K^shift * sum_i coeffs[i] * pi_D^i with coeffs over T."""

    __slots__ = ("ctx", "shift", "coeffs")

    def __init__(self, ctx, shift, coeffs):
        self.ctx = ctx
        self.shift = shift
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, DElem) or other.ctx is not self.ctx:
            raise CtxMismatchError("operands from different algebra contexts")

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other):
        self._check(other)
        ctx = self.ctx
        a, b = self, other
        if a.shift > b.shift:
            a, b = b, a
        piK = ctx.T.uniformizer
        scale = piK ** (b.shift - a.shift)
        return ctx.elem(a.shift, [x + scale * y
                                  for x, y in zip(a.coeffs, b.coeffs)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return DElem(self.ctx, self.shift, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        ctx = self.ctx
        d, T = ctx.d, ctx.T
        piK = T.uniformizer
        out = [T.zero] * d
        for i, yi in enumerate(self.coeffs):
            if yi.is_zero():
                continue
            for j, zj in enumerate(other.coeffs):
                if zj.is_zero():
                    continue
                term = yi * T.frobenius(zj, ctx.r * i)
                k, s = divmod(i + j, d)
                if k:
                    term = term * piK
                out[s] = out[s] + term
        return ctx.elem(self.shift + other.shift, out)

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        r = self.ctx.one
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def ord(self) -> int:
        """ord_D with ord_D(pi_D) = 1; ctx.ord_cap (+ d*shift) means zero."""
        ctx = self.ctx
        if self.is_zero():
            return ctx.ord_cap
        return ctx.d * self.shift + min(ctx.d * c.ord() + i
                                        for i, c in enumerate(self.coeffs)
                                        if not c.is_zero())

    def _left_div_x(self):
        """Exact pi_D^{-1} * self; requires ord_D >= 1 (no precision loss)."""
        ctx = self.ctx
        T, d, r = ctx.T, ctx.d, ctx.r
        y0 = self.coeffs[0]
        if not y0.is_zero() and y0.ord() < 1:
            raise PrecisionError("left division by pi_D needs ord_D >= 1")
        out = [T.frobenius(c, -r) for c in self.coeffs[1:]]
        out.append(T.frobenius(y0.shift_down(1), -r))
        return DElem(ctx, self.shift, tuple(out))

    def sigma_conj(self, k: int = 1):
        """Exact conjugation pi_D^k * self * pi_D^{-k} = sum sigma_r^k(y_i) x^i."""
        ctx = self.ctx
        return DElem(ctx, self.shift,
                     tuple(ctx.T.frobenius(c, ctx.r * k) for c in self.coeffs))

    def inv(self):
        """Two-sided inverse via residue inversion and Newton iteration."""
        ctx = self.ctx
        if self.is_zero():
            raise NotInvertibleError("inverse of 0 in D", ord=None)
        v = self.ord()
        if v > ctx.d * (ctx.prec - 2):
            raise PrecisionError(
                f"ord_D = {v} leaves no precision margin for inversion")
        # peel pi_D off on the left exactly: self = pi_D^v * u with u a unit,
        # so self^{-1} = u^{-1} * pi_D^{-v}
        u = DElem(ctx, 0, self.coeffs)
        for _ in range(v % ctx.d):
            u = u._left_div_x()
        u = DElem(ctx, 0, tuple(c.shift_down(v // ctx.d - self.shift)
                                for c in u.coeffs))
        if u.ord() != 0:
            raise InternalError("unit part of inversion input is not a unit")
        rbar = ctx.T.residue_of(u.coeffs[0]).inv()
        if ctx.T.mode == MIXED:
            b = ctx.from_T(ctx.T.elem(rbar.coeffs))
        else:
            b = ctx.from_T(ctx.T.elem([rbar]))
        two = ctx.from_int(2)
        for _ in range(max(1, math.ceil(math.log2(ctx.d * ctx.prec))) + 1):
            b = b * (two - u * b)
        if not (u * b - ctx.one).is_zero() or not (b * u - ctx.one).is_zero():
            raise InternalError("Newton inversion failed to converge in D")
        return b * ctx.pi_D_pow(-v)

    def conjugate_by(self, pi):
        """pi * self * pi^{-1}: an ord-preserving ring automorphism of D.

        Decomposed as pi = u * pi_D^v with u a unit, so the pi_D^v part acts
        by the exact twist formula and only the unit part needs arithmetic.
        """
        self._check(pi)
        ctx = self.ctx
        if pi.is_zero():
            raise NotInvertibleError("conjugation by 0", ord=None)
        v = pi.ord()
        b = self.sigma_conj(v)
        u = pi * ctx.pi_D_pow(-v)
        if u == ctx.one:
            return b
        return u * b * u.inv()

    # -- embedding, reduced and full norm/trace ---------------------------

    def embed(self, t=None):
        """Matrix of l(a (x) t) on D as a right T-module in basis (pi_D^s).

        Entry (j, s) = pi_K^{floor((i+s)/d) + shift} * sigma_r^{-j}(y_i) * t
        with i = (j - s) mod d.
        """
        ctx = self.ctx
        d, T = ctx.d, ctx.T
        if t is None:
            t = T.one
        piK = T.uniformizer
        out = []
        for j in range(d):
            row = []
            for s in range(d):
                i = (j - s) % d
                y = self.coeffs[i]
                if y.is_zero():
                    row.append(T.zero)
                    continue
                e = (i + s) // d + self.shift
                entry = T.frobenius(y, -ctx.r * j) * t
                if e >= 0:
                    if e:
                        entry = entry * piK ** e
                else:
                    entry = entry.shift_down(-e)
                row.append(entry)
            out.append(row)
        return out

    def trd_nrd(self):
        """Reduced trace and norm in S: trace and determinant of embed()."""
        ctx = self.ctx
        T, d = ctx.T, ctx.d
        M = self.embed()
        trd = T.zero
        for j in range(d):
            trd = trd + M[j][j]
        if d <= 5:
            nrd = linalg.det_leibniz(M, T.zero)
        else:
            nrd = linalg.det_berkowitz(M, T.zero, T.one)
        for val in (trd, nrd):
            if T.frobenius(val, 1) != val:
                raise InternalError("reduced trace/norm is not Galois-invariant")
        return T.to_base(trd), T.to_base(nrd)

    def _left_mult_matrix(self):
        """Matrix of left multiplication on D as an S-module of rank d^2,
        in the basis (theta^j * pi_D^i)."""
        ctx = self.ctx
        T, S, d = ctx.T, ctx.S, ctx.d
        piK = T.uniformizer
        cols = []
        for i in range(d):
            for j in range(d):
                basis = [T.zero] * d
                basis[i] = T.gen ** j
                b = DElem(ctx, 0, tuple(basis))
                c = self * b
                if c.shift < 0:
                    raise PrecisionError("left multiplication left the order A")
                scale = piK ** c.shift
                col = []
                for k in range(d):
                    col.extend(T.rel_coords(c.coeffs[k] * scale))
                cols.append(col)
        # cols[i*d+j][k*d+j'] is the (theta^{j'} pi_D^k)-coordinate of
        # a * theta^j pi_D^i; transpose to act on coordinate columns
        n = d * d
        return [[cols[cidx][ridx] for cidx in range(n)] for ridx in range(n)]

    def full_norm_trace(self):
        """Trace and determinant of left multiplication on the d^2-dimensional
        S-module D: the independent oracle for N = Nrd^d, Tr = d*Trd."""
        ctx = self.ctx
        S = ctx.S
        M = self._left_mult_matrix()
        n = len(M)
        tr = S.zero
        for i in range(n):
            tr = tr + M[i][i]
        if S.mode == MIXED and S.m == 1:
            ints = [[row[i].coeffs[0] for i in range(n)] for row in M]
            det = S.from_int(linalg.det_bareiss(ints) % S.modulus)
        elif n <= 5:
            det = linalg.det_leibniz(M, S.zero)
        else:
            det = linalg.det_berkowitz(M, S.zero, S.one)
        return tr, det

    def __eq__(self, other):
        """Equality at working precision.

        Coefficients are exact mod pi_K^N, so an element of shift s is
        determined mod pi_K^{N + min(s, 0)} only: canonicalization after a
        cancelling addition divides out pi_K-content, and the digits it
        exposes above that bound depend on the computation route.  Two
        elements are equal iff their difference vanishes to the guaranteed
        precision d*(N + min(shift, 0)).
        """
        if not (isinstance(other, DElem) and other.ctx is self.ctx):
            return False
        if other.shift == self.shift and other.coeffs == self.coeffs:
            return True
        ctx = self.ctx
        bound = ctx.d * (ctx.prec + min(self.shift, other.shift, 0))
        return (self - other).ord() >= bound

    def __repr__(self):
        return f"D(shift={self.shift}, {[c.serialize() for c in self.coeffs]})"

    def serialize(self):
        return {"shift": self.shift,
                "coeffs": [c.serialize() for c in self.coeffs]}


def make(T: LocalRingCtx, r: int) -> AlgebraCtx:
    """The maximal order A in the cyclic algebra of twist r over T's base."""
    return AlgebraCtx(T, r)
