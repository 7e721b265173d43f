"""Command-line front end: eval / verify / dump.

Exit codes: 0 success, 1 suite failures, 2 parameter or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import algebra as almod
from . import linalg
from . import localring as lr
from . import suites as suitemod
from . import tensor as tnmod
from .errors import HasseOrderError, ParameterError, ParseError
from .parser import evaluate


# ---------------------------------------------------------------------------
# pretty-printing of ring elements (balanced integer representatives)

def _bal(c, modulus):
    return c - modulus if c > modulus // 2 else c


def _fmt_poly(terms):
    """terms: list of (coeff_str, monomial) with zero coefficients dropped."""
    if not terms:
        return "0"
    return " + ".join(f"{c}*{m}" if m and c != "1" else (m or c)
                      for c, m in terms).replace("+ -", "- ")


def _fmt_ff(a):
    """FFElem as a polynomial in th over F_p."""
    terms = []
    for i, c in enumerate(a.coeffs):
        if c:
            mon = "" if i == 0 else ("th" if i == 1 else f"th^{i}")
            terms.append((str(c), mon))
    return _fmt_poly(terms)


def fmt_ring(x):
    """RingElem in a readable canonical form."""
    ctx = x.ctx
    if ctx.mode == lr.MIXED:
        terms = []
        for i, c in enumerate(x.coeffs):
            if c:
                mon = "" if i == 0 else ("th" if i == 1 else f"th^{i}")
                terms.append((str(_bal(c, ctx.modulus)), mon))
        return _fmt_poly(terms)
    terms = []
    for i, c in enumerate(x.coeffs):
        if not c.is_zero():
            mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            cs = _fmt_ff(c)
            if "+" in cs or "-" in cs[1:]:
                cs = f"({cs})"
            terms.append((cs, mon))
    return _fmt_poly(terms)


def fmt_delem(a):
    """DElem canonical form: optional pi_K-power times a twisted polynomial."""
    terms = []
    for i, c in enumerate(a.coeffs):
        if not c.is_zero():
            cs = fmt_ring(c)
            if " " in cs:
                cs = f"({cs})"
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append((cs, mon))
    body = _fmt_poly(terms)
    if a.shift == 0 or not terms:
        return body
    pref = "pK" if a.shift == 1 else f"pK^{a.shift}"
    return f"{pref} * ({body})"


def fmt_matrix(M):
    return "[" + ", ".join(
        "[" + ", ".join(fmt_ring(e) for e in row) + "]" for row in M) + "]"


# ---------------------------------------------------------------------------

def build_contexts(args):
    S = lr.base_ring(args.p, args.f, args.N, args.mode)
    T = lr.unramified(S, args.d)
    r = args.r if args.d > 1 else 0
    return S, T, almod.make(T, r), tnmod.make(T, r)


def config_dict(args):
    return {"p": args.p, "f": args.f, "d": args.d, "r": args.r, "N": args.N,
            "mode": args.mode, "seed": args.seed}


def cmd_eval(args):
    S, T, A, TO = build_contexts(args)
    a = evaluate(A, args.expr)
    trd, nrd = a.trd_nrd()
    ord_d = a.ord()
    out = {
        "canonical": fmt_delem(a),
        "ord_D": "inf" if ord_d >= A.ord_cap else ord_d,
        "Trd": fmt_ring(trd),
        "Nrd": fmt_ring(nrd),
        "embed": [[fmt_ring(e) for e in row] for row in a.embed()],
    }
    if args.output == "json":
        print(json.dumps(out, indent=2))
    else:
        print(f"canonical: {out['canonical']}")
        print(f"ord_D: {out['ord_D']}")
        print(f"Trd: {out['Trd']}")
        print(f"Nrd: {out['Nrd']}")
        print(f"embed: {fmt_matrix(a.embed())}")
    return 0


def cmd_verify(args):
    cfg = config_dict(args)
    names = args.suites.split(",") if args.suites else None
    if names:
        for n in names:
            if n not in suitemod.SUITES:
                raise ParameterError(f"unknown suite {n!r}")
    if args.inject_fault and args.inject_fault not in suitemod.FAULTS:
        raise ParameterError(f"unknown fault {args.inject_fault!r}")
    # contexts are constructed eagerly so parameter errors precede any suite
    build_contexts(args)
    report = suitemod.run(cfg, names, args.inject_fault)
    nfail = suitemod.total_failures(report)
    if args.output == "json":
        print(json.dumps(report, indent=2))
    else:
        for s in report["suites"]:
            status = "ok" if not s["failures"] else f"{len(s['failures'])} FAILED"
            print(f"{s['name']}: {s['cases']} cases, {status}")
            for fl in s["failures"]:
                print(f"  {fl['case']}: expected {fl['expected']}, "
                      f"got {fl['got']}")
        print(f"total failures: {nfail} ({report['wall_time']}s)")
    return 0 if nfail == 0 else 1


def _dump_idempotents(S, T, A, TO):
    return [[c.serialize() for c in e.coeffs] for e in TO.idempotents]


def _dump_peirce(S, T, A, TO):
    out = []
    for g in range(TO.d):
        for h in range(TO.d):
            info = TO.peirce(g, h)
            out.append({"g": g, "h": h, "i": info["i"],
                        "generator": info["generator"].serialize(),
                        "cokernel_length": info["cokernel_length"]})
    return out


def _dump_milnor_basis(S, T, A, TO):
    d = TO.d
    rows = []
    for a_pow in range(d):
        for i in range(d):
            coeffs = [TO.zero] * d
            coeffs[i] = TO.u_elem ** a_pow
            M = TO.embed_l(TO.order_elem(coeffs))
            rows.append([T.residue_of(e) for row in M for e in row])
    # row-reduce over k_T to extract an actual basis of the image mod m_T
    basis = []
    pivots = []
    for vec in rows:
        v = list(vec)
        for b, piv in zip(basis, pivots):
            if not v[piv].is_zero():
                f = v[piv]
                v = [a - f * c for a, c in zip(v, b)]
        piv = next((j for j, c in enumerate(v) if not c.is_zero()), None)
        if piv is not None:
            inv = v[piv].inv()
            basis.append([inv * c for c in v])
            pivots.append(piv)
    m = T.residue.m
    return {"dimension_kT": len(basis), "dimension_Fp": len(basis) * m,
            "basis": [[c.serialize() for c in v] for v in basis]}


def _dump_witt_laws(S, T, A, TO):
    import sympy

    p = S.p
    a0, a1, b0, b1 = sympy.symbols("a0 a1 b0 b1")
    add_c1 = sympy.expand(a1 + b1 - ((a0 + b0) ** p - a0 ** p - b0 ** p) / p)
    mul_c1 = sympy.expand(a0 ** p * b1 + a1 * b0 ** p + p * a1 * b1)
    return {"p": p, "n": 2,
            "add": ["a0 + b0", str(add_c1)],
            "mul": [str(sympy.expand(a0 * b0)), str(mul_c1)]}


DUMPS = {
    "idempotents": _dump_idempotents,
    "peirce": _dump_peirce,
    "milnor-basis": _dump_milnor_basis,
    "witt-laws": _dump_witt_laws,
}


def cmd_dump(args):
    ctxs = build_contexts(args)
    print(json.dumps(DUMPS[args.what](*ctxs), indent=2))
    return 0


# ---------------------------------------------------------------------------

def _add_common(ap, suppress=False):
    dv = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    ap.add_argument("--p", type=int, default=dv(3), help="residue characteristic")
    ap.add_argument("--f", type=int, default=dv(1), help="residue degree of K")
    ap.add_argument("--d", type=int, default=dv(2), help="index of the algebra")
    ap.add_argument("--r", type=int, default=dv(1),
                    help="twist (Hasse invariant r/d)")
    ap.add_argument("--N", type=int, default=dv(8), help="working precision")
    ap.add_argument("--mode", choices=("mixed", "equal"), default=dv("mixed"))
    ap.add_argument("--seed", type=int, default=dv(0), help="RNG seed")
    ap.add_argument("--output", choices=("text", "json"), default=dv("text"))


def make_arg_parser():
    ap = argparse.ArgumentParser(
        prog="hasse-order",
        description="Maximal orders in cyclic division algebras over local "
                    "fields: exact construction and verification.")
    _add_common(ap)
    # the same flags are accepted after the subcommand; suppressed defaults
    # keep them from clobbering values parsed at the top level
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)
    sub = ap.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate an element expression",
                        parents=[common])
    pe.add_argument("expr", help="expression over {integers, th, t, x, pK}")
    pe.set_defaults(func=cmd_eval)

    pv = sub.add_parser("verify", help="run the verification suites",
                        parents=[common])
    pv.add_argument("--suites", default=None,
                    help="comma-separated suite names (default: all)")
    pv.add_argument("--inject-fault", default=None,
                    help=f"corrupt one value; one of {', '.join(suitemod.FAULTS)}")
    pv.set_defaults(func=cmd_verify)

    pd = sub.add_parser("dump", help="dump structure constants",
                        parents=[common])
    pd.add_argument("what", choices=sorted(DUMPS))
    pd.set_defaults(func=cmd_dump)
    return ap


def main(argv=None):
    ap = make_arg_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as ex:
        print(f"parse error: {ex}", file=sys.stderr)
        return 2
    except ParameterError as ex:
        print(f"parameter error: {ex}", file=sys.stderr)
        return 2
    except HasseOrderError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
