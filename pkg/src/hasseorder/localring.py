"""Truncated complete discrete valuation rings and their unramified extensions.

Two families are supported, both at a fixed global precision N:

* mixed characteristic: (Z/p^N)[theta]/(G) where G is a monic lift, with
  coefficients in {0, ..., p-1}, of the deterministic irreducible defining
  polynomial of the residue field; the uniformizer is p;
* equal characteristic: k[[t]]/(t^N) for a finite field k; the uniformizer
  is t.

An unramified extension T of relative degree d over a base ring S carries a
distinguished generator sigma of Gal(T/S): in mixed characteristic it is
computed by Hensel/Newton lifting of the residue q-power map, in equal
characteristic it acts coefficientwise by the q-power Frobenius of the
residue field.  Contexts are immutable after construction and all element
operations are pure.
"""

from __future__ import annotations

import math

from . import ff as ffmod
from . import linalg
from .errors import (CtxMismatchError, InternalError, NotInvertibleError,
                     ParameterError, PrecisionError)

MIXED = "mixed"
EQUAL = "equal"


def _val_int(c: int, p: int, cap: int) -> int:
    if c == 0:
        return cap
    v = 0
    while c % p == 0 and v < cap:
        c //= p
        v += 1
    return v


class LocalRingCtx:
    """S or its unramified extension T, truncated at precision N."""

    def __init__(self, mode, p, f, d, prec, base=None, _check_budget=True):
        if not ffmod.is_prime(p):
            raise ParameterError(f"p = {p} is not prime")
        if f < 1 or d < 1:
            raise ParameterError("degrees must be >= 1")
        if prec < 2:
            raise ParameterError("precision N must be >= 2")
        if _check_budget and p ** prec >= 1 << 63:
            raise ParameterError(f"coefficient modulus p^N = {p}^{prec} exceeds 64 bits")
        self.mode = mode
        self.p = p
        self.f = f
        self.d = d
        self.prec = prec
        self.base = base  # None when this ring is the base S
        self.m = f * d  # absolute residue degree
        self.residue = ffmod.field(p, self.m)
        if mode == MIXED:
            self.modulus = p ** prec
            self.poly = tuple(self.residue.poly)  # lift with coefficients {0..p-1}
            self._red_table = self._make_red_table()
        elif mode == EQUAL:
            self.k = self.residue
        else:
            raise ParameterError(f"unknown mode {mode!r}")
        self._sigma_images = None
        self._frobp_images = None
        self._rel_solver = None
        self._base_inverse_table = None
        self._setup_base_embedding()
        if mode == MIXED and d > 1:
            self._setup_sigma()
        self._verify()

    # -- construction internals -------------------------------------------

    def _make_red_table(self):
        # theta^(m+j), 0 <= j <= m-2, reduced: used by multiplication
        m, mod = self.m, self.modulus
        table = []
        cur = [(-self.poly[i]) % mod for i in range(m)]  # theta^m
        table.append(tuple(cur))
        for _ in range(m - 2):
            nxt = [0] + cur[:-1]
            lead = cur[-1]
            if lead:
                top = table[0]
                nxt = [(nxt[i] + lead * top[i]) % mod for i in range(m)]
                nxt[0] %= mod
            cur = [c % mod for c in nxt[:m]]
            table.append(tuple(cur))
        return table

    def _setup_sigma(self):
        q = self.p ** self.f
        z = self.gen ** q
        z = self._newton_root(self.poly, z)
        self._sigma_images = [self.gen]
        for _ in range(1, self.d):
            self._sigma_images.append(self._eval_poly_elem(self._sigma_images[-1], z))
        # consistency: applying sigma to sigma^{d-1}(theta) must return theta
        if self._eval_poly_elem(self._sigma_images[-1], z) != self.gen:
            raise InternalError("sigma does not have order d on the generator")
        self._sigma_images[0] = self.gen
        self._sigma_of_gen = z

    def _newton_root(self, int_poly, start):
        """Unique root of int_poly congruent to start mod p, by Newton iteration."""
        steps = max(1, math.ceil(math.log2(self.prec))) + 1
        z = start
        dpoly = tuple(i * int_poly[i] for i in range(1, len(int_poly)))
        for _ in range(steps):
            fz = self._eval_int_poly(int_poly, z)
            dz = self._eval_int_poly(dpoly, z)
            if not dz.is_unit():
                raise InternalError("Newton derivative is not a unit; "
                                    "unramified defining data is corrupt")
            z = z - fz * dz.inv()
        if not self._eval_int_poly(int_poly, z).is_zero():
            raise InternalError("Newton iteration failed to converge")
        return z

    def _eval_int_poly(self, int_poly, z):
        acc = self.zero
        for c in reversed(int_poly):
            acc = acc * z + self.from_int(c)
        return acc

    def _eval_poly_elem(self, x, img):
        """Evaluate the theta-polynomial of x at img (mixed mode)."""
        acc = self.zero
        for c in reversed(x.coeffs):
            acc = acc * img
            if c:
                acc = acc + self.from_int(c)
        return acc

    def _setup_base_embedding(self):
        base = self.base
        if base is None:
            self.base_gen_image = self.gen
            return
        if self.mode == MIXED:
            # root of the base defining polynomial, Newton-lifted from the
            # residue-field embedding root
            r = ffmod.embedding_root(base.residue, self.residue)
            start = self.elem(r.coeffs)
            self.base_gen_image = self._newton_root(base.poly, start)
        else:
            self.base_gen_image = ffmod.embedding_root(base.residue, self.residue)

    def _verify(self):
        if self.mode == MIXED and self.d > 1:
            if not self._eval_int_poly(self.poly, self._sigma_images[1]).is_zero():
                raise InternalError("sigma(theta) is not a root of G")
            for k in range(1, self.d):
                if self._sigma_images[k] == self.gen:
                    raise InternalError("sigma has order smaller than d")
        if self.base is not None:
            img = self.embed_base(self.base.gen)
            if self.frobenius(img, 1) != img:
                raise InternalError("sigma does not fix the embedded base ring")

    # -- element constructors ---------------------------------------------

    def elem(self, coeffs):
        if self.mode == MIXED:
            coeffs = list(coeffs)
            if len(coeffs) > self.m:
                raise ParameterError("coefficient vector too long")
            coeffs += [0] * (self.m - len(coeffs))
            return RingElem(self, tuple(c % self.modulus for c in coeffs))
        coeffs = list(coeffs)
        if len(coeffs) > self.prec:
            raise ParameterError("coefficient vector too long")
        out = []
        for c in coeffs:
            out.append(c if isinstance(c, ffmod.FFElem) else self.k.elem(c))
        out += [self.k.zero] * (self.prec - len(out))
        return RingElem(self, tuple(out))

    def from_int(self, a: int):
        if self.mode == MIXED:
            return self.elem([a])
        return self.elem([self.k.from_int(a)])

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    @property
    def gen(self):
        """theta: generator over the prime ring (mixed) / of k (equal, constant)."""
        if self.mode == MIXED:
            return self.elem([0, 1]) if self.m > 1 else self.elem([0])
        return self.elem([self.k.gen])

    @property
    def uniformizer(self):
        if self.mode == MIXED:
            return self.from_int(self.p)
        return self.elem([self.k.zero, self.k.one])

    def random(self, rng):
        if self.mode == MIXED:
            return RingElem(self, tuple(rng.randrange(self.modulus) for _ in range(self.m)))
        return RingElem(self, tuple(self.k.random(rng) for _ in range(self.prec)))

    def random_unit(self, rng):
        while True:
            x = self.random(rng)
            if x.is_unit():
                return x

    # -- ring-level maps ---------------------------------------------------

    def frobenius(self, x, k=1):
        """sigma^{k mod d}(x): the relative Frobenius generator of Gal(T/S)."""
        k %= self.d
        if k == 0 or self.d == 1:
            return x
        if self.mode == MIXED:
            return self._eval_poly_elem(x, self._sigma_images[k])
        shift = (self.f * k) % self.m
        return RingElem(self, tuple(c.frobenius(shift) for c in x.coeffs))

    def frobenius_p(self, x, k=1):
        """Absolute p-power Frobenius lift phi^k; phi^{f} = sigma on T (mixed)."""
        k %= self.m
        if k == 0:
            return x
        if self.mode == MIXED:
            if self._frobp_images is None:
                z = self._newton_root(self.poly, self.gen ** self.p)
                imgs = [self.gen]
                for _ in range(1, self.m):
                    imgs.append(self._eval_poly_elem(imgs[-1], z))
                self._frobp_images = imgs
            return self._eval_poly_elem(x, self._frobp_images[k])
        raise ParameterError("p-power Frobenius lift is a mixed-mode notion")

    def embed_base(self, x):
        """Image of a base-ring element under the stored embedding S -> T."""
        if self.base is None:
            return x
        if x.ctx is not self.base:
            raise CtxMismatchError("element does not belong to the base ring")
        if self.mode == MIXED:
            acc = self.zero
            for c in reversed(x.coeffs):
                acc = acc * self.base_gen_image
                if c:
                    acc = acc + self.from_int(c)
            return acc
        return RingElem(self, tuple(ffmod.embed(c, self.residue) for c in x.coeffs))

    def to_base(self, x):
        """Preimage in S of an element of the embedded base ring.

        Raises InternalError when x does not lie in the embedded image.
        """
        base = self.base
        if base is None:
            return x
        if self.mode == EQUAL:
            if self._base_inverse_table is None:
                self._base_inverse_table = {
                    ffmod.embed(y, self.residue): y for y in base.residue.elements()
                }
            out = []
            for c in x.coeffs:
                y = self._base_inverse_table.get(c)
                if y is None:
                    raise InternalError("element does not lie in the embedded base ring")
                out.append(y)
            return base.elem(out)
        # mixed: solve sum_j a_j * base_gen_image^j = x over Z/p^N
        cols = []
        img_pow = self.one
        for _ in range(base.m):
            cols.append(self.to_vec(img_pow))
            img_pow = img_pow * self.base_gen_image
        sol = linalg.solve_columns(cols, self.to_vec(x), self.p, self.prec)
        if sol is None:
            raise InternalError("element does not lie in the embedded base ring")
        return base.elem(sol)

    def rel_coords(self, x):
        """Coordinates of x in the S-basis (theta^j)_{j<d}: list of d base elements."""
        base = self.base
        if base is None:
            return [x]
        if self._rel_solver is None:
            cols = []
            for j in range(self.d):
                tj = self.gen ** j
                for sb in self._base_zp_basis():
                    cols.append(self.to_vec(tj * self.embed_base(sb)))
            self._rel_solver = linalg.ColumnSolver(cols, self.p, self.zp_exp)
        sol = self._rel_solver.solve(self.to_vec(x))
        if sol is None:
            raise InternalError("relative coordinate solve failed")
        r = self._base_zp_rank()
        out = []
        for j in range(self.d):
            out.append(base.from_vec(sol[j * r:(j + 1) * r]))
        return out

    def _base_zp_basis(self):
        base = self.base
        elems = []
        for i in range(base.zp_rank):
            v = [0] * base.zp_rank
            v[i] = 1
            elems.append(base.from_vec(v))
        return elems

    def _base_zp_rank(self):
        return self.base.zp_rank

    # -- Z/p^e module structure (shared linear-algebra interface) ----------

    @property
    def zp_exp(self):
        """All elements are vectors over Z/p^zp_exp of length zp_rank."""
        return self.prec if self.mode == MIXED else 1

    @property
    def zp_rank(self):
        return self.m if self.mode == MIXED else self.m * self.prec

    def to_vec(self, x):
        if self.mode == MIXED:
            return list(x.coeffs)
        out = []
        for c in x.coeffs:
            out.extend(c.coeffs)
        return out

    def from_vec(self, v):
        if self.mode == MIXED:
            return self.elem(v)
        out = []
        for i in range(self.prec):
            out.append(self.k.elem(v[i * self.m:(i + 1) * self.m]))
        return RingElem(self, tuple(out))

    # -- residue field and Teichmueller section ----------------------------

    def residue_of(self, x):
        if self.mode == MIXED:
            return self.residue.elem([c % self.p for c in x.coeffs])
        return x.coeffs[0]

    def teich(self, a):
        """Unique lift y of a with y^{q^d} = y (multiplicative section)."""
        if not isinstance(a, ffmod.FFElem) or a.ctx != self.residue:
            raise CtxMismatchError("Teichmueller argument must lie in the residue field")
        if self.mode == EQUAL:
            return self.elem([a])
        y = self.elem(a.coeffs)
        q_full = self.p ** self.m
        for _ in range(self.prec):
            y2 = y ** q_full
            if y2 == y:
                break
            y = y2
        return y

    # -- relative trace and norm ------------------------------------------

    def trace_rel(self, x):
        acc = self.zero
        for k in range(self.d):
            acc = acc + self.frobenius(x, k)
        return acc

    def norm_rel(self, x):
        acc = self.one
        for k in range(self.d):
            acc = acc * self.frobenius(x, k)
        return acc

    def __repr__(self):
        return (f"LocalRing({self.mode}, p={self.p}, f={self.f}, d={self.d}, "
                f"N={self.prec})")


class RingElem:
    """Element of a LocalRingCtx in canonical coefficient form."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, RingElem) or other.ctx is not self.ctx:
            raise CtxMismatchError("operands from different ring contexts")

    def __add__(self, other):
        self._check(other)
        ctx = self.ctx
        if ctx.mode == MIXED:
            mod = ctx.modulus
            return RingElem(ctx, tuple((a + b) % mod
                                       for a, b in zip(self.coeffs, other.coeffs)))
        return RingElem(ctx, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        ctx = self.ctx
        if ctx.mode == MIXED:
            mod = ctx.modulus
            return RingElem(ctx, tuple((a - b) % mod
                                       for a, b in zip(self.coeffs, other.coeffs)))
        return RingElem(ctx, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        ctx = self.ctx
        if ctx.mode == MIXED:
            mod = ctx.modulus
            return RingElem(ctx, tuple(-a % mod for a in self.coeffs))
        return RingElem(ctx, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        ctx = self.ctx
        if ctx.mode == MIXED:
            m, mod = ctx.m, ctx.modulus
            out = [0] * (2 * m - 1)
            for i, ai in enumerate(self.coeffs):
                if ai:
                    for j, bj in enumerate(other.coeffs):
                        out[i + j] += ai * bj
            res = [c % mod for c in out[:m]]
            for j in range(m - 1):
                c = out[m + j] % mod
                if c:
                    row = ctx._red_table[j]
                    for i in range(m):
                        res[i] = (res[i] + c * row[i]) % mod
            return RingElem(ctx, tuple(res))
        n, k = ctx.prec, ctx.k
        out = [k.zero] * n
        for i, ai in enumerate(self.coeffs):
            if not ai.is_zero():
                for j in range(n - i):
                    bj = other.coeffs[j]
                    if not bj.is_zero():
                        out[i + j] = out[i + j] + ai * bj
        return RingElem(ctx, tuple(out))

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

    def is_zero(self):
        if self.ctx.mode == MIXED:
            return all(c == 0 for c in self.coeffs)
        return all(c.is_zero() for c in self.coeffs)

    def ord(self) -> int:
        """Uniformizer-adic valuation; ctx.prec means zero at this precision."""
        ctx = self.ctx
        if ctx.mode == MIXED:
            return min(_val_int(c, ctx.p, ctx.prec) for c in self.coeffs)
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return ctx.prec

    def is_unit(self):
        return self.ord() == 0

    def inv(self):
        """Newton inverse b <- b(2 - xb) from the residue inverse."""
        ctx = self.ctx
        v = self.ord()
        if v > 0:
            raise NotInvertibleError(f"element of valuation {v} is not a unit", ord=v)
        rbar = ctx.residue_of(self).inv()
        if ctx.mode == MIXED:
            b = ctx.elem(rbar.coeffs)
        else:
            b = ctx.elem([rbar])
        two = ctx.from_int(2)
        for _ in range(max(1, math.ceil(math.log2(ctx.prec))) + 1):
            b = b * (two - self * b)
        if not (self * b - ctx.one).is_zero():
            raise InternalError("Newton inversion failed to converge")
        return b

    def shift_down(self, k: int):
        """Exact division by the k-th power of the uniformizer."""
        if k == 0:
            return self
        ctx = self.ctx
        if k < 0:
            return self * ctx.uniformizer ** (-k)
        if ctx.mode == MIXED:
            pk = ctx.p ** k
            if any(c % pk for c in self.coeffs):
                raise PrecisionError(f"element is not divisible by p^{k}")
            return RingElem(ctx, tuple(c // pk for c in self.coeffs))
        if any(not c.is_zero() for c in self.coeffs[:k]):
            raise PrecisionError(f"element is not divisible by t^{k}")
        return RingElem(ctx, self.coeffs[k:] + (ctx.k.zero,) * k)

    def __eq__(self, other):
        return (isinstance(other, RingElem) and other.ctx is self.ctx
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def __repr__(self):
        return f"Elem{self.serialize()}"

    def serialize(self):
        if self.ctx.mode == MIXED:
            return list(self.coeffs)
        return [c.serialize() for c in self.coeffs]


def base_ring(p: int, f: int, prec: int, mode: str = MIXED) -> LocalRingCtx:
    """The base ring S with residue field F_{p^f} at precision N."""
    return LocalRingCtx(mode, p, f, 1, prec)


def unramified(S: LocalRingCtx, d: int) -> LocalRingCtx:
    """Unramified extension T/S of relative degree d with its Frobenius sigma."""
    if d < 1:
        raise ParameterError("relative degree d must be >= 1")
    if S.d != 1:
        raise ParameterError("base of an unramified extension must be a base ring")
    if d == 1:
        return S
    return LocalRingCtx(S.mode, S.p, S.f, d, S.prec, base=S)
