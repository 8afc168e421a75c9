"""Command-line entry point.

Every command prints one JSON document (sorted keys) to stdout.  Exit codes:
0 success, 1 domain error, 2 bad arguments, 3 a verification failed.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import cones, orbits, quadrature as Q, roots, suite, weights, zeta

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3

DEFAULTS = {
    "seed": 0,
    "samples": 10000,
    "vol_M0": 1.0,
    "vol_M21": 1.0,
    "vol_G": 1.0,
    "c_Q": 1.0,
    "C": 0.0,
    "precision": 1e-12,
    "quad_tol": 1e-6,
    "sigma": 1.0,
    "json_indent": 2,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def load_config(path) -> dict:
    """Plain key=value lines; '#' starts a comment."""
    cfg = {}
    if not path:
        return cfg
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key=value")
            k, v = (s.strip() for s in line.split("=", 1))
            if k not in DEFAULTS:
                raise UsageError(f"{path}:{n}: unknown key {k!r}")
            cfg[k] = type(DEFAULTS[k])(float(v)) if isinstance(DEFAULTS[k], int) else float(v)
    return cfg


def _pick(args, cfg, name, attr=None):
    v = getattr(args, attr or name, None)
    if v is not None:
        return v
    return cfg.get(name, DEFAULTS[name])


def _matrix(text):
    try:
        return orbits.RationalMatrix3.parse(text)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad matrix {text!r}: {e}")


def _triple(text, conv=Fraction):
    parts = [p for p in str(text).split(",") if p.strip()]
    if len(parts) != 3:
        raise UsageError(f"expected three comma-separated numbers, got {text!r}")
    try:
        return tuple(conv(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad number in {text!r}: {e}")


def _globals(parser, seed=True, top=False):
    """Global flags, accepted before or after the subcommand."""
    kw = {} if top else {"default": argparse.SUPPRESS}
    parser.add_argument("--config", help="key=value configuration file", **kw)
    parser.add_argument("--json-indent", type=int, dest="json_indent", **kw)
    if seed:
        parser.add_argument("--seed", type=int, **kw)
    parser.add_argument("--timing", action="store_true",
                        help="include wall-time (output no longer reproducible)", **kw)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gl3trace", description="GL(3) trace formula geometric-side toolkit")
    _globals(p, top=True)
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    rd = sub.add_parser("rootdata")
    rd.add_argument("action", choices=["dump"])

    v = sub.add_parser("verify")
    v.add_argument("what", choices=["lemmas"])
    v.add_argument("--which", choices=["sigma", "tau-hat-prime", "moebius", "all"], default="all")
    v.add_argument("--samples", type=int)
    v.add_argument("--seed", type=int, dest="seed_local")
    v.add_argument("--wall-radius", type=int, default=8)

    w = sub.add_parser("weight")
    wsub = w.add_subparsers(dest="wcmd", required=True, parser_class=_Parser)
    wh = wsub.add_parser("hull")
    wh.add_argument("--T", required=True, help="a,b,c")
    wh.add_argument("--H", default="", help='per-chamber H_s as "s:x,y,z;..." with s a label like 132')
    wh.add_argument("--method", choices=["direct", "limit", "both"], default="direct")
    wc = wsub.add_parser("cm0")
    wc.add_argument("--n", required=True, help="n1,n2,n3")
    wc.add_argument("--aP0", type=float)
    wi = wsub.add_parser("interval")
    wi.add_argument("--Hm", default="0,0,0")
    wi.add_argument("--Hn", default="0,0,0")
    wi.add_argument("--T", required=True)

    o = sub.add_parser("orbit")
    osub = o.add_subparsers(dest="ocmd", required=True, parser_class=_Parser)
    oc = osub.add_parser("classify")
    g = oc.add_mutually_exclusive_group(required=True)
    g.add_argument("--matrix")
    g.add_argument("--file", help="one matrix per line")
    oj = osub.add_parser("jordan")
    oj.add_argument("--matrix", required=True)
    op = osub.add_parser("probe")
    op.add_argument("--a", required=True)
    op.add_argument("--b", required=True)
    op.add_argument("--search-bound", type=int, default=2)

    q = sub.add_parser("woi")
    q.add_argument("kind", choices=["jm0", "jm21", "jm0T", "jm21T", "jgmin", "jgreg"])
    q.add_argument("--z", default="1")
    q.add_argument("--sigma", type=float)
    q.add_argument("--T1", type=float, default=0.0)
    q.add_argument("--T2", type=float, default=0.0)
    q.add_argument("--tol", type=float)
    q.add_argument("--constant", type=float, help="replace the dropped O(1) / C term by this constant")
    q.add_argument("--with-u", action="store_true")
    q.add_argument("--center", help="nine comma-separated entries; default z*I")

    zc = sub.add_parser("zeta")
    zc.add_argument("--s", help="real or complex, e.g. 2 or 0.5+14j")
    zc.add_argument("--S", default="")
    zc.add_argument("--prec", type=float)
    zc.add_argument("--derivative", action="store_true")
    zc.add_argument("--laurent", action="store_true", help="also report the Laurent data at s=1")

    c = sub.add_parser("coeff")
    c.add_argument("--S", default="")
    c.add_argument("--prec", type=float)
    c.add_argument("--volM0", type=float)
    c.add_argument("--volM21", type=float)
    c.add_argument("--volG", type=float)
    c.add_argument("--cQ", type=float)
    c.add_argument("--C", type=float)
    c.add_argument("--ln2-placement", choices=["inside", "outside"], default="outside")

    li = sub.add_parser("locint")
    li.add_argument("--p", type=int, required=True)
    li.add_argument("--oracle-depth", type=int, default=10)

    s = sub.add_parser("suite")
    s.add_argument("--samples", type=int)
    s.add_argument("--tol", type=float, help="quadrature tolerance for criterion 9")
    s.add_argument("--only", help="comma-separated criterion numbers")

    for leaf in (rd, v, wh, wc, wi, oc, oj, op, q, zc, c, li, s):
        _globals(leaf, seed=leaf is not v)
    return p


# -- command handlers: return (exit code, outputs, provenance) ---------------------------

def _cmd_rootdata(args, cfg):
    return EXIT_OK, roots.root_data(), {"all": "computed (exact)"}


def _cmd_verify(args, cfg):
    samples = _pick(args, cfg, "samples")
    seed = args.seed_local if args.seed_local is not None else _pick(args, cfg, "seed")
    reps = []
    if args.which in ("sigma", "all"):
        reps.append(cones.verify_sigma_equivalence(samples, seed, args.wall_radius))
    if args.which in ("tau-hat-prime", "all"):
        reps.append(cones.verify_tau_hat_prime_identity(None, samples, seed, args.wall_radius))
    if args.which in ("moebius", "all"):
        reps.append(cones.verify_parabolic_moebius())
    ok = all(r.passed for r in reps)
    out = {"reports": [r.to_dict() for r in reps], "passed": ok,
           "failures": [f for r in reps for f in r.failures[:50]]}
    return (EXIT_OK if ok else EXIT_VERIFY), out, {"all": "computed (exact rational arithmetic)"}


def _parse_H(text):
    labels = {s.label: s for s in roots.weyl_group()}
    out = {}
    for chunk in [c for c in text.split(";") if c.strip()]:
        if ":" not in chunk:
            raise UsageError(f"bad --H entry {chunk!r}, expected s:x,y,z")
        lab, vec = chunk.split(":", 1)
        lab = lab.strip()
        if lab not in labels:
            raise UsageError(f"unknown Weyl element {lab!r}; use one of {sorted(labels)}")
        out[labels[lab]] = _triple(vec, float)
    return out


def _cmd_weight(args, cfg):
    if args.wcmd == "hull":
        T = _triple(args.T, float)
        Hs = _parse_H(args.H)
        verts = {}
        for s in roots.weyl_group():
            h = Hs.get(s, (0.0, 0.0, 0.0))
            y = s.inverse().apply_float([t - x for t, x in zip(T, h)])
            m = sum(y) / 3.0
            verts[s] = tuple(c - m for c in y)
        spec = weights.HullSpec.from_mapping(verts)
        out = {"vertices": {s.label: list(v) for s, v in spec.vertices}}
        if args.method in ("direct", "both"):
            out["volume"] = out["volume_direct"] = weights.hull_volume_direct(spec)
        if args.method in ("limit", "both"):
            out["volume_limit"] = weights.hull_volume_limit(spec)
            out.setdefault("volume", out["volume_limit"])
        return EXIT_OK, out, {"volume": f"computed ({args.method})",
                              "normalization": "Euclidean area in the sum-zero plane"}
    if args.wcmd == "cm0":
        n = _triple(args.n, float)
        inp = weights.NormWeightInput(*n)
        A, B, C, D = inp.norms()
        aP0 = args.aP0 if args.aP0 is not None else roots.gram_constant(roots.P0)
        return EXIT_OK, {"value": weights.c_m0_weight(inp, aP0), "A": A, "B": B, "C": C, "D": D, "a_P0": aP0}, \
            {"a_P0": "configured" if args.aP0 is not None else "computed (Gram constant)"}
    lo, hi = weights.interval_m21(_triple(args.Hm), _triple(args.Hn), _triple(args.T))
    length = max(hi - lo, Fraction(0))
    return EXIT_OK, {"lo": str(lo), "hi": str(hi), "length": str(length), "value": float(length)}, \
        {"all": "computed (exact)"}


def _orbit_out(g):
    c = orbits.classify(g)
    return {**c.to_dict(), "matrix": g.to_strings()}


def _cmd_orbit(args, cfg):
    prov = {"all": "computed (exact rational arithmetic)"}
    if args.ocmd == "classify":
        if args.matrix:
            return EXIT_OK, _orbit_out(_matrix(args.matrix)), prov
        rows = []
        with open(args.file) as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if line:
                    rows.append(_orbit_out(_matrix(line)))
        return EXIT_OK, {"results": rows, "count": len(rows)}, prov
    if args.ocmd == "jordan":
        g = _matrix(args.matrix)
        jp = orbits.jordan_decompose(g)
        return EXIT_OK, {"semisimple": jp.semisimple.to_strings(), "unipotent": jp.unipotent.to_strings(),
                         "checks": jp.check(g)}, prov
    a, b = _matrix(args.a), _matrix(args.b)
    return EXIT_OK, {"result": orbits.conjugacy_probe(a, b, args.search_bound)}, prov


def _cmd_woi(args, cfg):
    z = float(Fraction(args.z))
    if z == 0:
        raise ValueError("z must be nonzero")
    sigma = _pick(args, cfg, "sigma")
    tol = args.tol if args.tol is not None else cfg.get("quad_tol", DEFAULTS["quad_tol"])
    if args.center:
        parts = [float(Fraction(x)) for x in args.center.split(",")]
        if len(parts) != 9:
            raise UsageError("--center needs nine entries")
        f = Q.TestFunction(tuple(parts), sigma)
    else:
        f = Q.TestFunction.scalar(z, sigma)
    spec = Q.QuadratureSpec(abs_tol=tol, rel_tol=tol)
    params = Q.WeightParams(args.T1, args.T2, args.constant)
    k = args.kind
    try:
        if k == "jm0":
            r = Q.j_m0(f, spec, params, z)
        elif k == "jm21":
            r = Q.j_m21(f, spec, z)
        elif k == "jm0T":
            r = Q.j_m0_T(z, f, spec, params)
        elif k == "jm21T":
            r = Q.j_m21_T(z, f, spec, params, with_u=int(args.with_u))
        elif k == "jgmin":
            r = Q.j_g_unipotent(z, "Min", f, spec)
        else:
            r = Q.j_g_unipotent(z, "Reg", f, spec)
    except Q.QuadratureToleranceError as e:
        return EXIT_DOMAIN, {"error": str(e), "value": e.value, "error_estimate": e.error_estimate}, {}
    return EXIT_OK, r.to_dict(), {"value": "computed (tensor Gauss-Legendre with log substitution)",
                          "constant_mode": params.constant_mode}


def _cmd_zeta(args, cfg):
    S = zeta.PrimeSet.parse(args.S)
    prec = _pick(args, cfg, "precision", "prec")
    out = {"S": S.label()}
    if args.s is None:
        if not args.laurent:
            raise UsageError("zeta: --s is required unless --laurent is given")
        out["laurent"] = zeta.laurent_at_one(S, prec).to_dict()
        return EXIT_OK, out, {"laurent": f"computed (Euler-Maclaurin, precision {prec})"}
    try:
        s = complex(args.s.replace("i", "j")) if ("j" in args.s or "i" in args.s) else float(Fraction(args.s))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"zeta: cannot read s = {args.s!r}")
    out["s"] = str(args.s)
    val = zeta.zeta_partial(s, S, prec)
    out["value"] = [val.real, val.imag] if isinstance(val, complex) else val
    if args.derivative:
        d = zeta.zeta_partial_derivative(s, S, prec)
        out["derivative"] = [d.real, d.imag] if isinstance(d, complex) else d
    if args.laurent:
        out["laurent"] = zeta.laurent_at_one(S, prec).to_dict()
    return EXIT_OK, out, {"value": f"computed (Euler-Maclaurin, precision {prec})"}


def _cmd_coeff(args, cfg):
    S = zeta.PrimeSet.parse(args.S)
    vols = {"vol_M0": _pick(args, cfg, "vol_M0", "volM0"), "vol_M21": _pick(args, cfg, "vol_M21", "volM21"),
            "vol_G": _pick(args, cfg, "vol_G", "volG")}
    cs = zeta.assemble_coefficients(S, vols, _pick(args, cfg, "c_Q", "cQ"), _pick(args, cfg, "C"),
                                    _pick(args, cfg, "precision", "prec"), args.ln2_placement)
    return EXIT_OK, cs.to_dict(), cs.config_echo["provenance"]


def _cmd_locint(args, cfg):
    li = zeta.local_log_norm_integral(args.p)
    orc = zeta.local_integral_enumeration(args.p, args.oracle_depth)
    return EXIT_OK, {**li.to_dict(), "oracle": orc, "oracle_depth": args.oracle_depth,
                     "difference": abs(li.value - orc)}, \
        {"closed_form": "computed (exact rational times log p)", "oracle": "computed (residue classes)"}


def _cmd_suite(args, cfg):
    scfg = suite.SuiteConfig(seed=_pick(args, cfg, "seed"), samples=_pick(args, cfg, "samples"),
                             quad_tol=args.tol if args.tol is not None else cfg.get("quad_tol", DEFAULTS["quad_tol"]),
                             sigma=cfg.get("sigma", DEFAULTS["sigma"]))
    only = None
    if args.only:
        only = {int(x) for x in args.only.split(",") if x.strip()}
    res = suite.run_suite(scfg, only)
    rep = suite.suite_report(res, scfg, timing=args.timing)
    return (EXIT_OK if rep["passed"] else EXIT_VERIFY), rep, {"all": "computed"}


HANDLERS = {"rootdata": _cmd_rootdata, "verify": _cmd_verify, "weight": _cmd_weight, "orbit": _cmd_orbit,
            "woi": _cmd_woi, "zeta": _cmd_zeta, "coeff": _cmd_coeff, "locint": _cmd_locint, "suite": _cmd_suite}


def _run(argv):
    t0 = time.perf_counter()
    indent = DEFAULTS["json_indent"]
    try:
        args = build_parser().parse_args(argv)
        cfg = load_config(args.config)
    except UsageError as e:
        return EXIT_USAGE, {"command": argv, "error": str(e)}, indent
    except OSError as e:
        return EXIT_USAGE, {"command": argv, "error": f"cannot read config: {e}"}, indent
    indent = _pick(args, cfg, "json_indent")
    try:
        code, out, prov = HANDLERS[args.cmd](args, cfg)
    except UsageError as e:
        return EXIT_USAGE, {"command": argv, "error": str(e)}, indent
    except (ValueError, ArithmeticError, ZeroDivisionError, OSError) as e:
        return EXIT_DOMAIN, {"command": argv, "error": f"{type(e).__name__}: {e}"}, indent
    report = {"command": argv, "outputs": out, "provenance": prov,
              "config": {k: _pick(args, cfg, k) for k in sorted(DEFAULTS)}}
    if args.timing:
        report["wall_time_s"] = round(time.perf_counter() - t0, 4)
    return code, report, indent


def run(argv=None):
    """Parse and dispatch; returns (exit code, report dict)."""
    code, report, _ = _run(list(sys.argv[1:] if argv is None else argv))
    return code, report


def dumps(report, indent=2) -> str:
    """Sorted keys; indent <= 0 gives a single line."""
    if indent is not None and indent <= 0:
        return json.dumps(report, sort_keys=True, separators=(",", ":"), default=str)
    return json.dumps(report, sort_keys=True, indent=indent, default=str)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    code, report, indent = _run(argv)
    text = dumps(report, indent)
    print(text)
    if code != EXIT_OK and "error" in report:
        print(report["error"], file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
