"""Deterministic verification suites driven by the CLI.

Each suite derives an independent RNG stream from (seed, suite name), so
running suites in any order or in parallel yields identical reports.  The
--inject-fault hooks deliberately corrupt one value inside a suite so the
test harness can prove the suites are non-vacuous.
"""

from __future__ import annotations

import time

import random

from . import algebra as almod
from . import ff as ffmod
from . import linalg
from . import localring as lr
from . import modcat
from . import tensor as tnmod
from . import witt as wmod
from .errors import ValidationError

SCHEMA = "hasse-order-report/1"

FAULTS = ("ff.mul", "local.sigma", "witt.fv", "algebra.nrd", "tensor.idem",
          "modcat.cycle")


class Recorder:
    def __init__(self, name):
        self.name = name
        self.cases = 0
        self.failures = []

    def check(self, case, ok, expected="", got=""):
        self.cases += 1
        if not ok:
            self.failures.append({"case": case, "expected": str(expected),
                                  "got": str(got)})

    def report(self):
        return {"name": self.name, "cases": self.cases,
                "failures": self.failures}


def _contexts(cfg):
    S = lr.base_ring(cfg["p"], cfg["f"], cfg["N"], cfg["mode"])
    T = lr.unramified(S, cfg["d"])
    r = cfg["r"] if cfg["d"] > 1 else 0
    A = almod.make(T, r)
    TO = tnmod.make(T, r)
    return S, T, A, TO


# ---------------------------------------------------------------------------

def suite_finite_field(cfg, rng, fault):
    rec = Recorder("finite_field")
    for m in (cfg["f"], cfg["f"] * cfg["d"]):
        F = ffmod.field(cfg["p"], m)
        for i in range(200):
            a, b, c = F.random(rng), F.random(rng), F.random(rng)
            ab = a * b
            if fault == "ff.mul" and i == 0:
                ab = ab + F.one
            rec.check(f"assoc m={m}", (ab * c) == a * (b * c))
            rec.check(f"distrib m={m}", a * (b + c) == a * b + a * c)
            if not a.is_zero():
                rec.check(f"inverse m={m}", a * a.inv() == F.one)
                rec.check(f"unit-order m={m}", a ** (F.order - 1) == F.one)
        for _ in range(50):
            a, b = F.random(rng), F.random(rng)
            rec.check(f"frob-add m={m}",
                      (a + b).frobenius() == a.frobenius() + b.frobenius())
            rec.check(f"frob-mul m={m}",
                      (a * b).frobenius() == a.frobenius() * b.frobenius())
            rec.check(f"frob-order m={m}", a.frobenius(m) == a)
    return rec.report()


def suite_local_ring(cfg, rng, fault):
    rec = Recorder("local_ring")
    S, T, _, _ = _contexts(cfg)
    N = cfg["N"]
    for _ in range(100):
        x, y = T.random(rng), T.random(rng)
        if not (x.is_zero() or y.is_zero()):
            rec.check("ord-mul", (x * y).ord() == min(x.ord() + y.ord(), N))
        rec.check("ord-add", (x + y).ord() >= min(x.ord(), y.ord()))
        sx = T.frobenius(x, 1)
        if fault == "local.sigma":
            sx = sx + T.one
            fault = None
        rec.check("sigma-add", T.frobenius(x + y, 1) == sx + T.frobenius(y, 1))
        rec.check("sigma-mul", T.frobenius(x * y, 1) == sx * T.frobenius(y, 1))
        rec.check("sigma-order", T.frobenius(x, T.d) == x)
        tr, nm = T.trace_rel(x), T.norm_rel(x)
        rec.check("trace-in-S", T.frobenius(tr, 1) == tr)
        rec.check("norm-in-S", T.frobenius(nm, 1) == nm)
        if x.is_unit():
            rec.check("inv", x * x.inv() == T.one)
    if T.d > 1 and T.mode == lr.MIXED:
        rec.check("hensel", T._eval_int_poly(T.poly, T._sigma_images[1]).is_zero())
    # fixed points of sigma = embedded S, by kernel size of (sigma - id)
    cols = []
    for i in range(T.zp_rank):
        v = [0] * T.zp_rank
        v[i] = 1
        e = T.from_vec(v)
        cols.append(T.to_vec(T.frobenius(e, 1) - e))
    klog = linalg.kernel_log_size(cols, T.p, T.zp_exp)
    rec.check("fixed-points", klog == cfg["f"] * N, cfg["f"] * N, klog)
    for _ in range(20):
        s = S.random(rng)
        rec.check("embed-fixed", T.frobenius(T.embed_base(s), 1) == T.embed_base(s))
        a = T.residue_of(T.random(rng))
        y = T.teich(a)
        rec.check("teich-residue", T.residue_of(y) == a)
        rec.check("teich-stable", y ** (T.p ** T.m) == y)
    return rec.report()


def suite_witt(cfg, rng, fault):
    rec = Recorder("witt")
    p = cfg["p"]
    S = lr.base_ring(p, cfg["f"], min(cfg["N"], 6), cfg["mode"])
    coeffs = [("zmod", 6), ("ff", ffmod.field(p, 2)), ("local", S)]
    for coeff in coeffs:
        kind = coeff[0]
        for n in (2, 3, 4):
            W = wmod.WittCtx(p, n, coeff)
            for i in range(8):
                x, y, z = W.random(rng), W.random(rng), W.random(rng)
                gx, gy = W.ghost(x), W.ghost(y)
                gsum = W.ghost(x + y)
                gprod = W.ghost(x * y)
                rec.check(f"ghost-add {kind} n={n}",
                          all(W.coeff_eq(g, a + b)
                              for g, a, b in zip(gsum, gx, gy)))
                rec.check(f"ghost-mul {kind} n={n}",
                          all(W.coeff_eq(g, a * b)
                              for g, a, b in zip(gprod, gx, gy)))
                rec.check(f"assoc {kind} n={n}", (x * y) * z == x * (y * z))
                rec.check(f"distrib {kind} n={n}", x * (y + z) == x * y + x * z)
                rec.check(f"F-hom {kind} n={n}",
                          (x * y).frobenius() == x.frobenius() * y.frobenius())
                fv = x.verschiebung().frobenius()
                if fault == "witt.fv" and i == 0:
                    fv = fv + W.one
                px = W.zero
                for _ in range(p):
                    px = px + x
                rec.check(f"FV=p {kind} n={n}", fv == px)
                vy = y.restriction().verschiebung()
                rec.check(f"projection {kind} n={n}",
                          x * vy == (x.frobenius() * y.restriction()).verschiebung())
                a = W.coeff_random(rng)
                b = W.coeff_random(rng)
                rec.check(f"teich-mul {kind} n={n}",
                          W.teich(a) * W.teich(b) == W.teich(a * b))
                rec.check(f"F-teich {kind} n={n}",
                          W.teich(a).frobenius() ==
                          W.resize(n - 1).teich(a ** p))
    # identities over S needing valuations
    for n in (2, 3, 4):
        W = wmod.WittCtx(p, n, ("local", S))
        for _ in range(8):
            a = W.random(rng)
            diff = a.frobenius() - a.restriction().map_coords(lambda c: c ** p)
            rec.check(f"F=R^p n={n}", all(c.ord() >= 1 for c in diff.coords))
        piK = S.uniformizer
        for m in (1, 2, 3, 4):
            a = W.vec([S.random(rng) * piK ** m for _ in range(n)])
            fa = a.frobenius()
            rec.check(f"F-filtration n={n} m={m}",
                      all(c.ord() >= m + 1 for c in fa.coords))
        # iterated F raises the valuation filtration: after n-1 steps the
        # single remaining coordinate lies in m^n (zero once n >= prec)
        v = W.vec([S.random(rng) * piK for _ in range(n)])
        for _ in range(n - 1):
            v = v.frobenius()
        rec.check(f"F-kill n={n}",
                  all(c.ord() >= min(n, S.prec) for c in v.coords))
    # Galois fixed points on W_n(T), d in {2, 3}
    for dd in (2, 3):
        T = lr.unramified(lr.base_ring(p, cfg["f"], 4, cfg["mode"]), dd)
        Sd = T.base
        for n in (2, 3):
            W = wmod.WittCtx(p, n, ("local", T))
            WS = wmod.WittCtx(p, n, ("local", Sd))
            for _ in range(5):
                a = WS.random(rng)
                emb = W.vec([T.embed_base(c) for c in a.coords])
                rec.check(f"galois-embed-fixed d={dd} n={n}",
                          emb.map_coords(lambda c: T.frobenius(c, 1)) == emb)
                rec.check(f"galois-F-equivariant d={dd} n={n}",
                          emb.frobenius().map_coords(lambda c: T.frobenius(c, 1))
                          == emb.frobenius())
            cols = []
            for i in range(T.zp_rank):
                v = [0] * T.zp_rank
                v[i] = 1
                e = T.from_vec(v)
                cols.append(T.to_vec(T.frobenius(e, 1) - e))
            klog = linalg.kernel_log_size(cols, T.p, T.zp_exp)
            # coordinatewise action: fixed set size is (size of S)^n
            rec.check(f"galois-rank d={dd} n={n}", n * klog == n * cfg["f"] * 4,
                      n * cfg["f"] * 4, n * klog)
    # re-indexing over k_S: phi^n bijective, F = W(phi) o R in char p
    kS = ffmod.field(p, cfg["f"])
    for n in (2, 3, 4):
        W = wmod.WittCtx(p, n, ("ff", kS))
        for _ in range(8):
            a = W.random(rng)
            img = a.map_coords(lambda c: c.frobenius(n))
            back = img.map_coords(lambda c: c.frobenius((-n) % kS.m))
            rec.check(f"reindex-bijective n={n}", back == a)
            rec.check(f"F=WphiR n={n}",
                      a.frobenius() ==
                      a.restriction().map_coords(lambda c: c ** p))
            rec.check(f"reindex-F n={n}",
                      a.frobenius().map_coords(lambda c: c.frobenius(n)) ==
                      img.frobenius())
    return rec.report()


def suite_algebra(cfg, rng, fault):
    rec = Recorder("algebra")
    S, T, A, _ = _contexts(cfg)
    d, N = A.d, A.prec
    for i in range(60):
        a, b, c = A.random(rng), A.random(rng), A.random(rng)
        rec.check("assoc", (a * b) * c == a * (b * c))
        rec.check("distrib", a * (b + c) == a * b + a * c)
        rec.check("embed-mul", linalg.rmat_eq((a * b).embed(),
                                              linalg.rmat_mul(a.embed(),
                                                              b.embed(), T)))
        if not (a.is_zero() or b.is_zero()):
            oa, ob = a.ord(), b.ord()
            if oa + ob <= d * (N - 1):
                rec.check("ord-mul", (a * b).ord() == oa + ob,
                          oa + ob, (a * b).ord())
    for i in range(60):
        a = A.random(rng)
        trd, nrd = a.trd_nrd()
        if fault == "algebra.nrd" and i == 0:
            nrd = nrd + S.one
        tr, nm = a.full_norm_trace()
        nrd_d = S.one
        trd_d = S.zero
        for _ in range(d):
            nrd_d = nrd_d * nrd
            trd_d = trd_d + trd
        rec.check("Nrd^d=N", nm == nrd_d, nm.serialize(), nrd_d.serialize())
        rec.check("d*Trd=Tr", tr == trd_d)
        if a.ord() <= d * (N - 2):
            rec.check("ord=vK(Nrd)", a.ord() == nrd.ord(), nrd.ord(), a.ord())
            iv = a.inv()
            rec.check("inv", (a * iv - A.one).is_zero()
                      and (iv * a - A.one).is_zero())
    piD = A.pi_D
    rec.check("piD^d=piK", piD ** d == A.from_T(T.uniformizer))
    # twist and conjugation of exact order d on T
    for j in range(T.zp_rank):
        v = [0] * T.zp_rank
        v[j] = 1
        t = A.from_T(T.from_vec(v))
        rec.check("twist", t.conjugate_by(piD) ==
                  A.from_T(T.frobenius(T.from_vec(v), A.r)))
    t = A.from_T(T.gen)
    c = t
    order = 0
    for k in range(1, d + 1):
        c = c.conjugate_by(piD)
        if c == t and order == 0:
            order = k
    rec.check("conj-order", order == d, d, order)
    for _ in range(20):
        pi = A.random(rng)
        a = A.random(rng)
        if pi.is_zero() or a.is_zero():
            continue
        if pi.ord() > d * (N - 2):
            continue
        conj = a.conjugate_by(pi)
        rec.check("conj-ord-preserving", conj.ord() == a.ord(),
                  a.ord(), conj.ord())
    return rec.report()


def suite_tensor(cfg, rng, fault):
    rec = Recorder("tensor")
    S, T, A, TO = _contexts(cfg)
    d = TO.d
    # idempotent algebra
    total = TO.zero
    for k, e in enumerate(TO.idempotents):
        ek = e
        if fault == "tensor.idem" and k == 0:
            ek = ek + TO.one
        total = total + ek
        rec.check("idem-square", ek * ek == ek)
        comps = ek.components()
        rec.check("w-delta", all(
            c == (T.one if j == k else T.zero) for j, c in enumerate(comps)))
    rec.check("idem-sum", total == TO.one)
    for j in range(d):
        for k in range(j + 1, d):
            rec.check("idem-orth",
                      (TO.idempotents[j] * TO.idempotents[k]).is_zero())
    # w is a ring isomorphism; sigma (x) id permutes components
    for _ in range(40):
        x, y = TO.random(rng), TO.random(rng)
        rec.check("w-roundtrip", TO.from_components(x.components()) == x)
        cx, cy, cxy = x.components(), y.components(), (x * y).components()
        rec.check("w-mul", all(c == a * b for c, a, b in zip(cxy, cx, cy)))
        rec.check("sigma-left-hom",
                  (x * y).sigma_left() == x.sigma_left() * y.sigma_left())
    for k in range(d):
        rec.check("sigma-idem", TO.idempotents[k].sigma_left() ==
                  TO.idempotents[(k - 1) % d])
        rec.check("sigma-right-idem", TO.idempotents[k].sigma_right(1) ==
                  TO.idempotents[(k + 1) % d])
    # order relations and embedding
    rec.check("x^d=piK", TO.x_pow(d) == TO.order_scalar(TO.right(T.uniformizer)))
    for h in range(d):
        rec.check("x-past-e", TO.x_elem * TO.order_idempotent(h) ==
                  TO.order_idempotent((h - TO.r) % d) * TO.x_elem)
    for _ in range(20):
        a, b = A.random(rng), A.random(rng)
        rec.check("order-compat", TO.order_from_D(a) * TO.order_from_D(b) ==
                  TO.order_from_D(a * b))
        z, w = TO.order_random(rng), TO.order_random(rng)
        rec.check("l-hom", linalg.rmat_eq(
            TO.embed_l(z * w),
            linalg.rmat_mul(TO.embed_l(z), TO.embed_l(w), T)))
        M = TO.embed_l(z)
        rec.check("milnor-member", TO.milnor_member(M))
        rec.check("milnor-roundtrip",
                  linalg.rmat_eq(TO.embed_l(TO.milnor_preimage(M)), M))
    # image mod m_T spans the lower-triangular algebra; radical the strict part
    span_rows = []
    rad_rows = []
    basis = []
    for a_pow in range(d):
        for i in range(d):
            coeffs = [TO.zero] * d
            coeffs[i] = TO.u_elem ** a_pow
            basis.append(TO.order_elem(coeffs))
    for b in basis:
        M = TO.embed_l(b)
        span_rows.append([T.residue_of(e) for row in M for e in row])
        Mx = TO.embed_l(TO.x_elem * b)
        rad_rows.append([T.residue_of(e) for row in Mx for e in row])
    rk = linalg.ff_rank(span_rows)
    rec.check("milnor-dim", rk == d * (d + 1) // 2, d * (d + 1) // 2, rk)
    rkr = linalg.ff_rank(rad_rows)
    rec.check("radical-dim", rkr == d * (d - 1) // 2, d * (d - 1) // 2, rkr)
    for rows, strict in ((span_rows, False), (rad_rows, True)):
        ok = True
        for vec in rows:
            for j in range(d):
                for s in range(d):
                    if (s > j or (strict and s == j)) and not vec[j * d + s].is_zero():
                        ok = False
        rec.check("triangular-shape" + ("-strict" if strict else ""), ok)
    # Peirce pattern
    for h in range(d):
        cnt = 0
        for g in range(d):
            info = TO.peirce(g, h)
            if info["cokernel_length"]:
                cnt += 1
                rec.check("peirce-cokernel-len", info["cokernel_length"] == 1)
                rec.check("peirce-position", (g - h - TO.r) % d == 0)
        rec.check("peirce-one-per-column", cnt == 1, 1, cnt)
    return rec.report()


def suite_modcat(cfg, rng, fault):
    rec = Recorder("modcat")
    S, T, A, TO = _contexts(cfg)
    d = TO.d
    piK = T.uniformizer

    def rand_invertible(n):
        while True:
            M = [[T.random(rng) for _ in range(n)] for _ in range(n)]
            try:
                return M, linalg.rmat_inv(M, T)
            except Exception:
                continue

    def scramble(mod):
        Bs, Bis = [], []
        for k in range(d):
            B, Bi = rand_invertible(mod.ranks[k])
            Bs.append(B)
            Bis.append(Bi)
        phi = []
        for k in range(d):
            t = mod.succ(k)
            phi.append(linalg.rmat_mul(
                Bis[t], linalg.rmat_mul(mod.phi[k], Bs[k], T), T))
        return modcat.GradedPhiModule(TO, mod.ranks, phi)

    for i in range(30):
        labels = sorted(rng.randrange(d) for _ in range(rng.randrange(1, 4)))
        mod = scramble(modcat.direct_sum(
            [modcat.standard(TO, h) for h in labels]))
        if fault == "modcat.cycle" and i == 0:
            mod.phi[0] = linalg.rmat_scale(mod.phi[0], piK)
        try:
            mod.validate()
            rec.check("cycle", True)
        except ValidationError as ex:
            rec.check("cycle", False, "phi^d = pi_K", str(ex))
            continue
        rec.check("FH-roundtrip", modcat.F(modcat.H(mod)) == mod)
        for rule in ("min", "first"):
            try:
                got = modcat.labels_multiset(modcat.decompose(mod, rule=rule))
            except Exception as ex:
                rec.check(f"decompose-{rule}", False, labels, repr(ex))
                continue
            rec.check(f"decompose-{rule}", got == labels, labels, got)
    # adjunction
    for _ in range(15):
        labels = [rng.randrange(d) for _ in range(rng.randrange(1, 3))]
        mod = scramble(modcat.direct_sum(
            [modcat.standard(TO, h) for h in labels]))
        g = rng.randrange(d)
        q = rng.randrange(1, 3)
        f = [[T.random(rng) for _ in range(mod.ranks[g])] for _ in range(q)]
        try:
            al = modcat.adjoint(mod, g, f)
            rec.check("adjoint-equivariant", True)
        except ValidationError as ex:
            rec.check("adjoint-equivariant", False, "equivariant", str(ex))
            continue
        rec.check("adjoint-restriction", linalg.rmat_eq(al.blocks[g], f))
        rec.check("adjoint-unit",
                  modcat.deg(modcat.ind(TO, g, q), g) == q)
    # trd / ird / tr ranks
    for q in (1, 2, 3):
        P = modcat.F(modcat.ird(TO, q))
        rec.check("tr-rank", modcat.tr(P) == d * q, d * q, modcat.tr(P))
        rec.check("trd-iso", modcat.trd(P) == q, q, modcat.trd(P))
    return rec.report()


SUITES = {
    "finite_field": suite_finite_field,
    "local_ring": suite_local_ring,
    "witt": suite_witt,
    "algebra": suite_algebra,
    "tensor": suite_tensor,
    "modcat": suite_modcat,
}


def default_config():
    return {"p": 3, "f": 1, "d": 2, "r": 1, "N": 8, "mode": "mixed", "seed": 0}


def run(cfg, suite_names=None, fault=None):
    """Run the selected suites; returns the versioned report dict."""
    names = list(SUITES) if not suite_names else list(suite_names)
    for name in names:
        if name not in SUITES:
            raise KeyError(name)
    t0 = time.time()
    results = []
    for name in names:
        rng = random.Random(f"{cfg['seed']}:{name}")
        results.append(SUITES[name](cfg, rng, fault))
    return {
        "schema": SCHEMA,
        "params": dict(cfg),
        "fault": fault,
        "suites": results,
        "wall_time": round(time.time() - t0, 3),
    }


def total_failures(report):
    return sum(len(s["failures"]) for s in report["suites"])
