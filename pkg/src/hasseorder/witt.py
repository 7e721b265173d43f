"""p-typical Witt vectors W_n over Z/p^M, F_q, and truncated local rings.

All ring laws are computed by the ghost-lift method: coordinates are lifted
into a p-torsion-free ring carrying a Frobenius lift, the ghost components
w_i = sum_{j<=i} p^j a_j^{p^{i-j}} are combined there, and the resulting
coordinates are solved top-down with exact divisions by p^i.  The lift ring
carries n extra digits of p-adic precision so every division is exact before
the final reduction back to the coefficient ring.
"""

from __future__ import annotations

from . import localring as lr
from .errors import CtxMismatchError, InternalError, ParameterError

MAX_N = 6
MAX_P = 13


# ---------------------------------------------------------------------------
# lift-ring adapters

class _ZmodLift:
    """Z/p^K lifting Z/p^M; the identity is already a Frobenius lift."""

    def __init__(self, p, M, K):
        self.p = p
        self.M = M
        self.K = K
        self.pK = p ** K
        self.pM = p ** M

    def lift(self, a):
        return a % self.pK

    def reduce(self, y):
        return y % self.pM

    def zero(self):
        return 0

    def add(self, a, b):
        return (a + b) % self.pK

    def sub(self, a, b):
        return (a - b) % self.pK

    def mul(self, a, b):
        return (a * b) % self.pK

    def mul_int(self, a, c):
        return (a * c) % self.pK

    def pow(self, a, e):
        return pow(a, e, self.pK)

    def divp(self, a, i):
        pi = self.p ** i
        if a % pi:
            raise InternalError("inexact division by p^i in Witt ghost solve")
        return a // pi

    def phi(self, a):
        return a

    def phi_check(self):
        return True


class _MixedLift:
    """A mixed-characteristic local ring at raised precision, with the
    p-power Frobenius lift computed by Newton iteration."""

    def __init__(self, coeff_kind, coeff_ctx, K):
        # coeff_kind: "ff" (reduce mod p) or "local" (reduce mod p^N)
        self.kind = coeff_kind
        self.coeff = coeff_ctx
        if coeff_kind == "ff":
            p, f, d = coeff_ctx.p, coeff_ctx.m, 1
            self.red_exp = 1
        else:
            p, f, d = coeff_ctx.p, coeff_ctx.f, coeff_ctx.d
            self.red_exp = coeff_ctx.prec
        self.p = p
        self.K = K
        self.ring = lr.LocalRingCtx(lr.MIXED, p, f, d, K)

    def lift(self, a):
        if self.kind == "ff":
            return self.ring.elem(a.coeffs)
        return self.ring.elem(a.coeffs)

    def reduce(self, y):
        if self.kind == "ff":
            return self.coeff.elem([c % self.p for c in y.coeffs])
        mod = self.p ** self.red_exp
        return self.coeff.elem([c % mod for c in y.coeffs])

    def zero(self):
        return self.ring.zero

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def mul_int(self, a, c):
        return a * self.ring.from_int(c)

    def pow(self, a, e):
        return a ** e

    def divp(self, a, i):
        pi = self.p ** i
        if any(c % pi for c in a.coeffs):
            raise InternalError("inexact division by p^i in Witt ghost solve")
        return lr.RingElem(self.ring, tuple(c // pi for c in a.coeffs))

    def phi(self, a):
        return self.ring.frobenius_p(a, 1)

    def phi_check(self):
        g = self.ring.gen
        diff = self.phi(g) - g ** self.p
        return diff.ord() >= 1


class _EqualLift:
    """Lift of k[[t]]/(t^N): truncated polynomials in t over the mixed lift
    of k, with Frobenius acting as phi on coefficients and t -> t^p."""

    def __init__(self, coeff_ctx, K):
        self.coeff = coeff_ctx
        self.p = coeff_ctx.p
        self.N = coeff_ctx.prec
        self.K = K
        self.ring = lr.LocalRingCtx(lr.MIXED, self.p, coeff_ctx.m, 1, K)

    def lift(self, a):
        return tuple(self.ring.elem(c.coeffs) for c in a.coeffs)

    def reduce(self, y):
        k = self.coeff.residue
        return self.coeff.elem([k.elem([c % self.p for c in e.coeffs]) for e in y])

    def zero(self):
        return (self.ring.zero,) * self.N

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def mul(self, a, b):
        out = [self.ring.zero] * self.N
        for i, ai in enumerate(a):
            if not ai.is_zero():
                for j in range(self.N - i):
                    bj = b[j]
                    if not bj.is_zero():
                        out[i + j] = out[i + j] + ai * bj
        return tuple(out)

    def mul_int(self, a, c):
        s = self.ring.from_int(c)
        return tuple(x * s for x in a)

    def pow(self, a, e):
        r = (self.ring.one,) + (self.ring.zero,) * (self.N - 1)
        b = a
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r

    def divp(self, a, i):
        pi = self.p ** i
        out = []
        for e in a:
            if any(c % pi for c in e.coeffs):
                raise InternalError("inexact division by p^i in Witt ghost solve")
            out.append(lr.RingElem(self.ring, tuple(c // pi for c in e.coeffs)))
        return tuple(out)

    def phi(self, a):
        out = [self.ring.zero] * self.N
        for i, c in enumerate(a):
            if i * self.p >= self.N:
                break
            out[i * self.p] = self.ring.frobenius_p(c, 1)
        return tuple(out)

    def phi_check(self):
        g = self.ring.gen
        if (self.ring.frobenius_p(g, 1) - g ** self.p).ord() < 1:
            return False
        t = (self.ring.zero, self.ring.one) + (self.ring.zero,) * (self.N - 2)
        diff = self.sub(self.phi(t), self.pow(t, self.p))
        return all(c.is_zero() for c in diff)


class WittCtx:
    """Length-n p-typical Witt vectors over a supported coefficient ring."""

    def __init__(self, p, n, coeff, _adapter=None):
        if n < 1 or n > MAX_N:
            raise ParameterError(f"Witt length n = {n} out of range [1, {MAX_N}]")
        if p > MAX_P:
            raise ParameterError(f"p = {p} exceeds the supported cap {MAX_P}")
        self.p = p
        self.n = n
        self.coeff = coeff  # ("zmod", M) | ("ff", FieldCtx) | ("local", LocalRingCtx)
        kind = coeff[0]
        if _adapter is not None:
            self.lift = _adapter
        else:
            headroom = n + 2
            if kind == "zmod":
                M = coeff[1]
                self.lift = _ZmodLift(p, M, M + headroom)
            elif kind == "ff":
                F = coeff[1]
                if F.p != p:
                    raise ParameterError("coefficient field characteristic mismatch")
                self.lift = _MixedLift("ff", F, 1 + headroom)
            elif kind == "local":
                R = coeff[1]
                if R.p != p:
                    raise ParameterError("coefficient ring characteristic mismatch")
                if R.mode == lr.MIXED:
                    self.lift = _MixedLift("local", R, R.prec + headroom)
                else:
                    self.lift = _EqualLift(R, 1 + headroom)
            else:
                raise ParameterError(f"unsupported coefficient ring kind {kind!r}")
            if not self.lift.phi_check():
                raise InternalError("Frobenius lift fails phi(a) = a^p mod p")

    # -- coefficient-ring helpers -----------------------------------------

    def _min_lift_prec(self, n):
        kind = self.coeff[0]
        if kind == "zmod":
            return self.coeff[1] + n
        if kind == "ff":
            return 1 + n
        R = self.coeff[1]
        return (R.prec + n) if R.mode == lr.MIXED else 1 + n

    def resize(self, n2):
        if n2 == self.n:
            return self
        adapter = self.lift if self.lift.K >= self._min_lift_prec(n2) else None
        return WittCtx(self.p, n2, self.coeff, _adapter=adapter)

    def coeff_zero(self):
        kind = self.coeff[0]
        if kind == "zmod":
            return 0
        if kind == "ff":
            return self.coeff[1].zero
        return self.coeff[1].zero

    def coeff_one(self):
        kind = self.coeff[0]
        if kind == "zmod":
            return 1
        return self.coeff[1].one

    def coeff_random(self, rng):
        kind = self.coeff[0]
        if kind == "zmod":
            return rng.randrange(self.p ** self.coeff[1])
        return self.coeff[1].random(rng)

    def coeff_eq(self, a, b):
        if self.coeff[0] == "zmod":
            M = self.p ** self.coeff[1]
            return (a - b) % M == 0
        return a == b

    # -- vectors -----------------------------------------------------------

    def vec(self, coords):
        coords = list(coords)
        if len(coords) != self.n:
            raise ParameterError(f"expected {self.n} coordinates, got {len(coords)}")
        return WittVec(self, tuple(coords))

    @property
    def zero(self):
        return WittVec(self, tuple(self.coeff_zero() for _ in range(self.n)))

    @property
    def one(self):
        return self.teich(self.coeff_one())

    def teich(self, a):
        return WittVec(self, (a,) + tuple(self.coeff_zero() for _ in range(self.n - 1)))

    def random(self, rng):
        return WittVec(self, tuple(self.coeff_random(rng) for _ in range(self.n)))

    # -- ghost machinery ---------------------------------------------------

    def ghost_lift(self, v):
        """Ghost components in the lift ring (exact)."""
        L = self.lift
        lifted = [L.lift(a) for a in v.coords]
        out = []
        for i in range(len(lifted)):
            acc = L.zero()
            for j in range(i + 1):
                acc = L.add(acc, L.mul_int(L.pow(lifted[j], self.p ** (i - j)),
                                           self.p ** j))
            out.append(acc)
        return out

    def ghost(self, v):
        """Ghost components reduced back into the coefficient ring."""
        return [self.lift.reduce(g) for g in self.ghost_lift(v)]

    def _solve_ghost(self, targets, n_out):
        """Witt coordinates whose ghost equals the given lift-ring targets."""
        L = self.lift
        coords_lift = []
        for i in range(n_out):
            acc = L.zero()
            for j in range(i):
                acc = L.add(acc, L.mul_int(L.pow(coords_lift[j], self.p ** (i - j)),
                                           self.p ** j))
            # keep the full-precision lift-ring coordinate: re-lifting the
            # reduced value would corrupt the remaining divisions
            coords_lift.append(L.divp(L.sub(targets[i], acc), i))
        return [L.reduce(c) for c in coords_lift]


class WittVec:
    """A length-n Witt vector: coordinates (a_0, ..., a_{n-1})."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx, coords):
        self.ctx = ctx
        self.coords = coords

    def _check(self, other):
        if not isinstance(other, WittVec) or other.ctx.coeff != self.ctx.coeff \
                or other.ctx.n != self.ctx.n:
            raise CtxMismatchError("Witt vectors from different contexts")

    def _binop(self, other, combine):
        self._check(other)
        ctx = self.ctx
        gx = ctx.ghost_lift(self)
        gy = ctx.ghost_lift(other)
        targets = [combine(a, b) for a, b in zip(gx, gy)]
        return WittVec(ctx, tuple(ctx._solve_ghost(targets, ctx.n)))

    def __add__(self, other):
        return self._binop(other, self.ctx.lift.add)

    def __sub__(self, other):
        return self._binop(other, self.ctx.lift.sub)

    def __mul__(self, other):
        return self._binop(other, self.ctx.lift.mul)

    def __neg__(self):
        ctx = self.ctx
        L = ctx.lift
        targets = [L.sub(L.zero(), g) for g in ctx.ghost_lift(self)]
        return WittVec(ctx, tuple(ctx._solve_ghost(targets, ctx.n)))

    def frobenius(self):
        """F: W_n -> W_{n-1}, the unique map shifting ghost components."""
        ctx = self.ctx
        if ctx.n < 2:
            raise ParameterError("F needs Witt length >= 2")
        targets = ctx.ghost_lift(self)[1:]
        short = ctx.resize(ctx.n - 1)
        return WittVec(short, tuple(short._solve_ghost(targets, short.n)))

    def verschiebung(self):
        """V: W_n -> W_{n+1}, prepend a zero coordinate."""
        ctx = self.ctx.resize(self.ctx.n + 1)
        return WittVec(ctx, (self.ctx.coeff_zero(),) + self.coords)

    def restriction(self):
        """R: W_n -> W_{n-1}, drop the last coordinate."""
        if self.ctx.n < 2:
            raise ParameterError("R needs Witt length >= 2")
        ctx = self.ctx.resize(self.ctx.n - 1)
        return WittVec(ctx, self.coords[:-1])

    def map_coords(self, fn):
        """Coordinatewise map (e.g. a Galois action on the coefficient ring)."""
        return WittVec(self.ctx, tuple(fn(a) for a in self.coords))

    def __eq__(self, other):
        if not isinstance(other, WittVec) or other.ctx.n != self.ctx.n:
            return False
        return all(self.ctx.coeff_eq(a, b) for a, b in zip(self.coords, other.coords))

    def __repr__(self):
        return f"W{list(self.coords)}"

    def serialize(self):
        out = []
        for a in self.coords:
            out.append(a if isinstance(a, int) else a.serialize())
        return out
