"""Graded (T, G)-modules with phi, the F/H equivalence with left
A (x)_S T-modules, the deg/ind adjunction, module-level reduced trace, and
the constructive decomposition of projectives into standard size-1 objects.

Graded pieces are indexed by Frobenius exponents k (g = sigma^k), and phi
has degree sigma^{-1} for the TWIST generator sigma_r = sigma^r: the block
phi[k] maps piece k to piece succ(k) = (k - r) mod d.  Because gcd(r, d) = 1
the d pieces form a single phi-cycle, and the cycle condition phi^d = pi_K
is the composite around that cycle.
"""

from __future__ import annotations

from . import linalg
from .errors import (CtxMismatchError, ParameterError, PrecisionError,
                     RepresentationError, ValidationError)
from .tensor import TensorRingCtx


def _mat_copy(M):
    return [row[:] for row in M]


class GradedPhiModule:
    """(P, (P_g)_{g in G}, phi): free blocks T^{n_g} and matrices of phi."""

    def __init__(self, ctx: TensorRingCtx, ranks, phi, slack=0):
        if len(ranks) != ctx.d or len(phi) != ctx.d:
            raise ParameterError(f"expected {ctx.d} ranks and phi blocks")
        self.ctx = ctx
        self.ranks = list(ranks)
        # digits of working precision consumed by saturations that produced
        # this module; identities hold mod pi_K^{N - slack}
        self.slack = slack
        self.phi = [_mat_copy(m) for m in phi]
        for k in range(ctx.d):
            m = self.phi[k]
            rows, cols = self.ranks[self.succ(k)], self.ranks[k]
            if len(m) != rows or any(len(r) != cols for r in m):
                raise ParameterError(f"phi block at g = {k} has wrong shape")
            for row in m:
                for e in row:
                    if e.ctx is not ctx.T:
                        raise CtxMismatchError("phi entries must lie in T")

    def succ(self, k):
        """Index of g o sigma_r^{-1}: the target piece of phi out of piece k."""
        return (k - self.ctx.r) % self.ctx.d

    def validate(self):
        """Check the cycle condition phi^d = pi_K * id; per-g residual report.

        Raises ValidationError naming the offending starting pieces.
        """
        ctx = self.ctx
        T = ctx.T
        piK = T.uniformizer
        report = {}
        bad = []
        for k in range(ctx.d):
            M = linalg.rmat_id(T, self.ranks[k])
            cur = k
            for _ in range(ctx.d):
                M = linalg.rmat_mul(self.phi[cur], M, T)
                cur = self.succ(cur)
            target = linalg.rmat_scale(linalg.rmat_id(T, self.ranks[k]), piK)
            residual = linalg.rmat_sub(M, target)
            tol = T.prec - self.slack
            ok = all(e.ord() >= tol for row in residual for e in row)
            report[k] = ok
            if not ok:
                bad.append(k)
        if bad:
            raise ValidationError(
                f"cycle condition phi^d = pi_K fails starting at g in {bad}")
        return report

    def __eq__(self, other):
        return (isinstance(other, GradedPhiModule) and other.ctx is self.ctx
                and other.ranks == self.ranks
                and all(linalg.rmat_eq(a, b)
                        for a, b in zip(self.phi, other.phi)))

    def serialize(self):
        return {"ranks": list(self.ranks),
                "phi": [[[e.serialize() for e in row] for row in m]
                        for m in self.phi]}


class ModuleMap:
    """A degree-1 phi-equivariant map of graded modules: per-piece blocks."""

    def __init__(self, source, target, blocks, check=True):
        if source.ctx is not target.ctx:
            raise CtxMismatchError("source and target from different contexts")
        self.source = source
        self.target = target
        self.blocks = [_mat_copy(b) for b in blocks]
        ctx = source.ctx
        for k in range(ctx.d):
            b = self.blocks[k]
            if len(b) != target.ranks[k] or any(len(r) != source.ranks[k]
                                                for r in b):
                raise ParameterError(f"map block at g = {k} has wrong shape")
        if check and not self.is_equivariant():
            raise ValidationError("map is not phi-equivariant")

    def is_equivariant(self):
        ctx = self.source.ctx
        T = ctx.T
        for k in range(ctx.d):
            lhs = linalg.rmat_mul(self.blocks[self.source.succ(k)],
                                  self.source.phi[k], T)
            rhs = linalg.rmat_mul(self.target.phi[k], self.blocks[k], T)
            if not linalg.rmat_eq(lhs, rhs):
                return False
        return True


# ---------------------------------------------------------------------------
# standard objects and the F/H equivalence

def standard(ctx: TensorRingCtx, h: int) -> GradedPhiModule:
    """F(A (x)_S T * e_h): all ranks 1, phi = 1 except pi_K at g = h o sigma_r."""
    T, d = ctx.T, ctx.d
    h %= d
    g0 = (h + ctx.r) % d
    ranks = [1] * d
    phi = [[[T.uniformizer if k == g0 else T.one]] for k in range(d)]
    return GradedPhiModule(ctx, ranks, phi)


def direct_sum(mods):
    """Direct sum of graded modules over a common ctx."""
    ctx = mods[0].ctx
    T, d = ctx.T, ctx.d
    ranks = [sum(m.ranks[k] for m in mods) for k in range(d)]
    phi = []
    for k in range(d):
        rows, cols = ranks[mods[0].succ(k)], ranks[k]
        M = linalg.rmat_zero(T, rows, cols)
        ro = co = 0
        for m in mods:
            for i, row in enumerate(m.phi[k]):
                for j, e in enumerate(row):
                    M[ro + i][co + j] = e
            ro += m.ranks[m.succ(k)]
            co += m.ranks[k]
        phi.append(M)
    return GradedPhiModule(ctx, ranks, phi)


def H(module: GradedPhiModule):
    """Assemble the left A (x)_S T-module: a free T-module with the actions
    of the idempotents e_g and of x = pi_D (x) 1."""
    ctx = module.ctx
    T, d = ctx.T, ctx.d
    offs = [0]
    for k in range(d):
        offs.append(offs[-1] + module.ranks[k])
    n = offs[-1]
    e_mats = []
    for k in range(d):
        E = linalg.rmat_zero(T, n, n)
        for i in range(offs[k], offs[k + 1]):
            E[i][i] = T.one
        e_mats.append(E)
    X = linalg.rmat_zero(T, n, n)
    for k in range(d):
        t = module.succ(k)
        for i, row in enumerate(module.phi[k]):
            for j, e in enumerate(row):
                X[offs[t] + i][offs[k] + j] = e
    return {"ctx": ctx, "n": n, "e": e_mats, "x": X}


def F(om) -> GradedPhiModule:
    """Recover the graded module from an A (x)_S T-module presentation.

    The e_g-action matrices must be orthogonal 0/1 diagonal projections
    summing to the identity (free direct summands in canonical form).
    """
    ctx = om["ctx"]
    T, d = ctx.T, ctx.d
    n = om["n"]
    blocks = []
    seen = set()
    for k in range(d):
        E = om["e"][k]
        idx = []
        for i in range(n):
            for j in range(n):
                e = E[i][j]
                if i == j:
                    if e == T.one:
                        idx.append(i)
                    elif not e.is_zero():
                        raise RepresentationError(
                            "e_g matrices must be 0/1 diagonal projections")
                elif not e.is_zero():
                    raise RepresentationError(
                        "e_g matrices must be 0/1 diagonal projections")
        if seen & set(idx):
            raise RepresentationError("e_g projections are not orthogonal")
        seen |= set(idx)
        blocks.append(idx)
    if len(seen) != n:
        raise RepresentationError("e_g projections do not sum to the identity")
    X = om["x"]
    ranks = [len(b) for b in blocks]
    phi = []
    for k in range(d):
        t = (k - ctx.r) % d
        rows = blocks[t]
        M = [[X[i][j] for j in blocks[k]] for i in rows]
        allowed = set(rows)
        for i in range(n):
            if i in allowed:
                continue
            for j in blocks[k]:
                if not X[i][j].is_zero():
                    raise RepresentationError(
                        "x-action does not shift degree by sigma_r^{-1}")
        phi.append(M)
    return GradedPhiModule(ctx, ranks, phi)


# ---------------------------------------------------------------------------
# deg / ind adjunction, trd / ird / tr

def ind(ctx: TensorRingCtx, g: int, q: int) -> GradedPhiModule:
    """ind_g(T^q): all ranks q, phi = id except pi_K * id out of piece g."""
    T, d = ctx.T, ctx.d
    g %= d
    ranks = [q] * d
    phi = []
    for k in range(d):
        M = linalg.rmat_id(T, q)
        if k == g:
            M = linalg.rmat_scale(M, T.uniformizer)
        phi.append(M)
    return GradedPhiModule(ctx, ranks, phi)


def deg(module: GradedPhiModule, g: int) -> int:
    """deg_g extracts the free T-module at piece g (reported by rank)."""
    if not 0 <= g < module.ctx.d:
        raise ParameterError(f"degree index g = {g} out of range")
    return module.ranks[g]


def phi_composite(module: GradedPhiModule, start: int, steps: int):
    """The composite of `steps` phi-maps out of piece `start`."""
    T = module.ctx.T
    M = linalg.rmat_id(T, module.ranks[start])
    cur = start
    for _ in range(steps):
        M = linalg.rmat_mul(module.phi[cur], M, T)
        cur = module.succ(cur)
    return M


def adjoint(module: GradedPhiModule, g: int, f) -> ModuleMap:
    """alpha(f): Hom_T(deg_g P, Q) -> Hom(P, ind_g Q), alpha(f)_h = f o phi^i
    with g = h o sigma_r^{-i}, 0 <= i < d."""
    ctx = module.ctx
    T, d = ctx.T, ctx.d
    g %= d
    q = len(f)
    if any(len(row) != module.ranks[g] for row in f):
        raise ParameterError("adjoint argument must be a map out of deg_g")
    target = ind(ctx, g, q)
    blocks = []
    for h in range(d):
        i = ((h - g) * ctx.r_inv) % d if d > 1 else 0
        blocks.append(linalg.rmat_mul(f, phi_composite(module, h, i), T))
    return ModuleMap(module, target, blocks)


def trd(module: GradedPhiModule) -> int:
    """Module-level reduced trace: deg_1 (the identity component)."""
    return deg(module, 0)


def tr(module: GradedPhiModule) -> int:
    """Module-level trace: the direct sum of all graded pieces."""
    return sum(module.ranks)


def ird(ctx: TensorRingCtx, q: int):
    """Ird(T^q) = H(ind_1(T^q)) as an A (x)_S T-module presentation."""
    return H(ind(ctx, 0, q))


# ---------------------------------------------------------------------------
# decomposition into standards (the Addendum induction)

def _vec_ord(v, prec):
    return min((c.ord() for c in v), default=prec)


def decompose(module: GradedPhiModule, rule="min"):
    """Split a projective of size r into standard size-1 objects.

    Returns a list of steps, each with the label h of the split-off standard
    F(A (x)_S T * e_h), the cycle scalars of the size-1 sub-object, and the
    per-piece change-of-basis witnesses.  The label multiset realizes the
    Krull-Schmidt decomposition.
    """
    module.validate()
    ctx = module.ctx
    size = module.ranks[0]
    if any(n != size for n in module.ranks):
        raise ParameterError("decomposition needs equal ranks (projective of "
                             "constant size)")
    steps = []
    current = module
    for _ in range(size):
        step, current = _split_one(current, rule)
        steps.append(step)
    return steps


def _split_one(module: GradedPhiModule, rule):
    ctx = module.ctx
    T, d = ctx.T, ctx.d
    prec = T.prec
    size = module.ranks[0]
    # pieces visited by the phi-orbit out of piece 1 (index 0)
    cycle = [(-ctx.r * j) % d for j in range(d)]

    def orbit(b):
        x = [T.one if i == b else T.zero for i in range(size)]
        vecs = [x]
        for j in range(d - 1):
            vecs.append(linalg.rmat_vec(module.phi[cycle[j]], vecs[-1], T))
        return vecs

    if rule == "min":
        best = None
        for b in range(size):
            tot = sum(_vec_ord(v, prec) for v in orbit(b))
            if best is None or tot < best[0]:
                best = (tot, b)
        pick = best[1]
    elif rule == "first":
        pick = 0
    else:
        raise ParameterError(f"unknown selection rule {rule!r}")

    vecs = orbit(pick)
    sat = []
    vmax = 0
    for v in vecs:
        w = _vec_ord(v, prec)
        if module.slack + w > prec // 2:
            raise PrecisionError("saturation exceeds the N/2 precision guard")
        vmax = max(vmax, w)
        sat.append([c.shift_down(w) for c in v])
    # everything below is only representable modulo pi_K^eff
    eff = prec - module.slack - vmax

    # cycle scalars: phi[k_j] x'_j = lambda_j x'_{j+1}
    lambdas = [None] * d
    units = [None] * d  # unit coordinate index of each saturated vector
    for j in range(d):
        units[j] = next(i for i, c in enumerate(sat[j]) if c.is_unit())
    for j in range(d):
        w = linalg.rmat_vec(module.phi[cycle[j]], sat[j], T)
        nxt = sat[(j + 1) % d]
        lam = w[units[(j + 1) % d]] * nxt[units[(j + 1) % d]].inv()
        if any((a - lam * b).ord() < eff for a, b in zip(w, nxt)):
            raise ValidationError("phi-orbit does not span a size-1 "
                                  "sub-object; input is not projective")
        lambdas[j] = lam

    ords = [lam.ord() for lam in lambdas]
    if sum(ords) != 1 or ords.count(1) != 1:
        raise ValidationError("size-1 factor has cycle-scalar valuations "
                              f"{ords}; expected a single non-isomorphism of "
                              "cokernel length 1")
    j0 = ords.index(1)
    g0 = cycle[j0]            # source piece of the non-iso, g0 = h o sigma_r
    label = (g0 - ctx.r) % d  # the standard's label h

    # change of basis per piece: first column the saturated orbit vector,
    # the remaining columns standard basis vectors skipping its unit slot
    basis = [None] * d
    basis_inv = [None] * d
    for j, k in enumerate(cycle):
        cols = [sat[j]] + [[T.one if i == c else T.zero for i in range(size)]
                           for c in range(size) if c != units[j]]
        B = [[cols[c][i] for c in range(size)] for i in range(size)]
        basis[k] = B
        basis_inv[k] = linalg.rmat_inv(B, T)

    new_phi = []
    residual_ok = True
    for k in range(d):
        t = module.succ(k)
        Mt = linalg.rmat_mul(basis_inv[t],
                             linalg.rmat_mul(module.phi[k], basis[k], T), T)
        j = cycle.index(k)
        # exactness witness: the sub-object line maps by lambda_j at the
        # representable precision
        if not ((Mt[0][0] - lambdas[j]).ord() >= eff
                and all(Mt[i][0].ord() >= eff for i in range(1, size))):
            residual_ok = False
        new_phi.append([row[1:] for row in Mt[1:]])
    if not residual_ok:
        raise ValidationError("short exact sequence of the split is not exact "
                              "at precision")

    quotient = GradedPhiModule(ctx, [size - 1] * d, new_phi,
                               slack=module.slack + vmax)
    if size > 1:
        quotient.validate()
    step = {"label": label, "lambdas": lambdas, "basis": basis,
            "orbit_unit_slots": units}
    return step, quotient


def labels_multiset(steps):
    return sorted(s["label"] for s in steps)


def decomposition_report(steps):
    """Ordered labels, bases, and residual norms of a decomposition.

    Each split verifies its short exact sequence at working precision and
    raises otherwise, so every reported residual is exactly 0.
    """
    return {
        "labels": [s["label"] for s in steps],
        "bases": [[[[e.serialize() for e in row] for row in b]
                   for b in s["basis"]] for s in steps],
        "residuals": [0 for _ in steps],
    }


# ---------------------------------------------------------------------------
# module file format

def to_file(module: GradedPhiModule):
    """{"ranks": {g_index: n}, "phi": {g_index: matrix of T-coeff arrays}}."""
    return {
        "ranks": {str(k): module.ranks[k] for k in range(module.ctx.d)},
        "phi": {str(k): [[e.serialize() for e in row]
                         for row in module.phi[k]]
                for k in range(module.ctx.d)},
    }


def from_file(ctx: TensorRingCtx, data) -> GradedPhiModule:
    T, d = ctx.T, ctx.d
    try:
        ranks = [int(data["ranks"][str(k)]) for k in range(d)]
        phi = [[[T.elem(e) for e in row] for row in data["phi"][str(k)]]
               for k in range(d)]
    except (KeyError, TypeError) as ex:
        raise ParameterError(f"malformed module data: {ex}") from ex
    return GradedPhiModule(ctx, ranks, phi)
