"""JSON-lines command-line front end.

Every invocation prints one JSON object per request. ``moduli-kit batch``
reads requests from stdin (or ``--input``), one per line, each a JSON array
of argv tokens or an object ``{"argv": [...]}``.

Exit codes: 0 success, 1 usage or parse error, 2 a checked identity did
not hold, 3 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import elliptic, genus0, levels, mcg, periods, qseries
from .errors import ModuliError
from .exact import QComplex, parse_qcomplex

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)

    def exit(self, status=0, message=None):
        raise UsageError(message or f"exit {status}")


# ---------------------------------------------------------------- output

def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if x == 0:
        x = 0.0
    s = format(x, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def to_jsonable(obj):
    if isinstance(obj, genus0.ProjectivePoint):
        return genus0.point_to_json(obj)
    if isinstance(obj, QComplex):
        return [str(obj.re), str(obj.im)]
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, elliptic.IntegerMatrix2):
        return list(obj.entries)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def dumps(obj) -> str:
    """Compact JSON with floats fixed at 17 significant digits."""
    obj = to_jsonable(obj)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, (int, str)):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, list):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(k)}:{dumps(v)}" for k, v in obj.items()) + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# ----------------------------------------------------------------- input

def parse_complex(text: str) -> complex:
    text = text.strip()
    if "," in text:
        re, im = text.split(",")
        return complex(float(Fraction(re)), float(Fraction(im)))
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        return complex(float(Fraction(text)))


def parse_point(text: str, exact: bool) -> genus0.ProjectivePoint:
    if text.strip().lower() in ("inf", "infinity", "∞"):
        return genus0.INF
    if exact:
        return genus0.ProjectivePoint(parse_qcomplex(text))
    return genus0.ProjectivePoint(parse_complex(text))


def _tau(re: str, im: str) -> complex:
    return complex(float(Fraction(re)), float(Fraction(im)))


def _int_vector(text: str):
    v = json.loads(text)
    if not isinstance(v, list) or not all(isinstance(x, int) for x in v):
        raise ValueError(f"expected a JSON integer array, got {text!r}")
    return v


# -------------------------------------------------------------- commands

class Outcome:
    def __init__(self, record, code=EXIT_OK):
        self.record = record
        self.code = code


def cmd_xratio(a):
    pts = [parse_point(p, a.exact) for p in a.points]
    return Outcome({"cross_ratio": genus0.ProjectivePoint(genus0.cross_ratio(*pts))})


def cmd_normalize(a):
    pts = [parse_point(p, a.exact) for p in a.points]
    cfg = genus0.PointedConfig(tuple(pts))
    if cfg.n < 3:
        return Outcome({"n": cfg.n, "coords": [], "note": f"M_(0,{cfg.n}) is a single point"})
    nc = genus0.normalize(cfg)
    return Outcome({"n": nc.n, "coords": [genus0.ProjectivePoint(y) for y in nc.coords]})


def cmd_orbit(a):
    lam = parse_point(a.lam, a.exact)
    orbit = genus0.cross_ratio_orbit(lam, a.tol)
    return Outcome({"lambda": lam, "size": len(orbit),
                    "orbit": [genus0.ProjectivePoint(y) for y in orbit]})


def cmd_reduce_tau(a):
    r = elliptic.reduce_tau(_tau(a.re, a.im), a.tol)
    return Outcome({"tau": r.tau, "gamma": r.gamma, "word": r.word_str})


def cmd_iso(a):
    g = elliptic.elliptic_isomorphic(_tau(a.re1, a.im1), _tau(a.re2, a.im2), a.tol)
    return Outcome({"isomorphic": g is not None, "gamma": g})


def cmd_homothetic(a):
    b1 = (parse_complex(a.w11), parse_complex(a.w12))
    b2 = (parse_complex(a.w21), parse_complex(a.w22))
    lam = elliptic.lattices_homothetic(b1, b2, a.tol)
    return Outcome({"homothetic": lam is not None, "lambda": lam})


def cmd_aut(a):
    tau = _tau(a.re, a.im)
    return Outcome({
        "tau": tau,
        "reduced": elliptic.reduce_tau(tau, a.tol).tau,
        "stabilizer_order": elliptic.stabilizer_order(tau, a.tol),
        "aut_order": elliptic.aut_group_order(tau, a.tol),
    })


def cmd_classify(a):
    m = elliptic.IntegerMatrix2(a.a, a.b, a.c, a.d)
    c = elliptic.classify_sl2(m)
    fps = [fp if isinstance(fp, genus0.ProjectivePoint) else complex(fp) for fp in c.fixed_points]
    return Outcome({"matrix": m, "kind": c.kind.value, "trace": c.trace,
                    "fixed_points": fps, "order": c.order})


def cmd_j(a):
    return Outcome({"j": qseries.j_invariant(_tau(a.re, a.im))})


def cmd_series(a):
    if a.from_file:
        with open(a.from_file) as fh:
            s = qseries.QSeries.from_text(fh.read())
        name = None
    else:
        if a.name is None:
            raise UsageError("series needs a form name or --from FILE")
        name = a.name
        n = a.terms or qseries.DEFAULT_TERMS
        if name == "Delta":
            s = qseries.delta_series(n, a.mode)
        else:
            s = qseries.named_series(name, n)
    if a.format == "text":
        return Outcome(s.to_text())
    return Outcome({"name": name, "lead": s.lead, "prec": s.prec,
                    "prefactor": s.prefactor, "coeffs": list(s.coeffs)})


def cmd_weight_check(a):
    gamma = elliptic.IntegerMatrix2(a.a, a.b, a.c, a.d)
    res = qseries.weight_check(a.form, a.k, gamma, _tau(a.re, a.im))
    ok = res <= a.tol
    return Outcome({"form": a.form, "k": a.k, "gamma": gamma, "residual": res, "holds": ok},
                   EXIT_OK if ok else EXIT_FAILED)


def _lambda_record(a, with_periods):
    lam = parse_complex(a.lam)
    p = periods.legendre_periods(lam, warn=False)
    tau = elliptic.tau_from_basis(p.w1, p.w2)
    rec = {"lambda": lam}
    if with_periods:
        rec.update({"omega1": p.w1, "omega2": p.w2, "tau": tau})
    rec["j"] = qseries.j_invariant(tau)
    rec["mode"] = "guaranteed" if p.guaranteed else "best-effort"
    return rec


def cmd_periods(a):
    return Outcome(_lambda_record(a, True))


def cmd_j_lambda(a):
    return Outcome(_lambda_record(a, False))


def cmd_mcg_verify(a):
    rel, args = a.relation, a.classes
    need = {"braid": 2, "conj": 2, "chain1": 0, "chain2": 0, "lantern": 0}[rel]
    if len(args) != need:
        raise UsageError(f"mcg verify {rel} takes {need} arguments")
    if rel == "braid":
        holds = mcg.verify_braid(_int_vector(args[0]), _int_vector(args[1]))
    elif rel == "conj":
        phi = np.array(json.loads(args[1]), dtype=np.int64)
        holds = mcg.dehn_conjugation_check(_int_vector(args[0]), phi)
    elif rel == "chain1":
        holds = mcg.verify_chain_one_boundary()
    elif rel == "chain2":
        holds = mcg.verify_chain_two_boundary()
    else:
        holds = mcg.verify_lantern()
    return Outcome({"relation": rel, "holds": holds}, EXIT_OK if holds else EXIT_FAILED)


def cmd_mcg_h1(a):
    r = mcg.h1_mapping_class_group(a.genus)
    return Outcome({"genus": r.genus, "order": r.order, "group": r.group,
                    "derivation": [[name, eq] for name, eq, _ in r.derivation]})


def cmd_tables(a):
    t = mcg.cited_tables(a.genus)
    return Outcome({"genus": t.genus, "H2": t.h2, "Pic_orb": t.pic_orb,
                    "H2_rational_rank": t.h2_rational_rank, "citations": t.citations})


def cmd_pants(a):
    n, m = mcg.pants_counts(a.genus)
    return Outcome({"genus": a.genus, "curves": n, "pants": m})


def cmd_dims(a):
    t = mcg.dimension_table(a.genus, a.n)
    return Outcome({"g": t.g, "n": t.n, "stable": t.stable,
                    "euler_characteristic": t.euler_characteristic,
                    "teichmuller_real_dim": t.teichmuller_real_dim,
                    "rep_variety_dim": t.rep_variety_dim})


def cmd_rh(a):
    g = mcg.riemann_hurwitz(a.d, a.g_quotient, a.orbits)
    return Outcome({"d": a.d, "g_quotient": a.g_quotient, "orbits": a.orbits, "g_cover": g})


def cmd_levels(a):
    kind, l = a.kind, a.modulus
    if kind == "order":
        if a.genus == 1:
            order = levels.sl2_mod_order(l, a.method)
            method = a.method
        else:
            order = levels.sp_mod_order(a.genus, l)
            method = "enumerate"
        return Outcome({"l": l, "g": a.genus, "order": order, "method": method, "witnesses": []})
    if kind == "degree":
        return Outcome({"l": l, "g": 1, "degree": levels.level_cover_degree(l),
                        "order": levels.sl2_mod_order(l), "method": "enumerate"})
    if kind == "surjective":
        ok = levels.reduction_surjectivity_check(l)
        return Outcome({"l": l, "g": 1, "surjective": ok, "order": levels.sl2_mod_order(l),
                        "method": "closure"}, EXIT_OK if ok else EXIT_FAILED)
    found = levels.torsion_search(l, a.bound)
    return Outcome({"l": l, "g": 1, "bound": a.bound, "method": "search",
                    "witnesses": [list(m) for m in found]})


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--exact", action="store_true", help="rational arithmetic where supported")
    common.add_argument("--terms", type=int, default=None, help="series truncation N")
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--mode", choices=("arithmetic", "paper"), default="arithmetic")
    common.add_argument("--bound", type=int, default=50)

    p = _Parser(prog="moduli-kit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, *args, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=func)
        return sp

    sp = add("xratio", cmd_xratio)
    sp.add_argument("points", nargs=4)
    sp = add("normalize", cmd_normalize)
    sp.add_argument("points", nargs="+")
    sp = add("orbit", cmd_orbit)
    sp.add_argument("lam")
    for name, func in (("reduce-tau", cmd_reduce_tau), ("aut", cmd_aut), ("j", cmd_j)):
        sp = add(name, func)
        sp.add_argument("re")
        sp.add_argument("im")
    sp = add("iso", cmd_iso)
    for x in ("re1", "im1", "re2", "im2"):
        sp.add_argument(x)
    sp = add("homothetic", cmd_homothetic)
    for x in ("w11", "w12", "w21", "w22"):
        sp.add_argument(x)
    sp = add("classify", cmd_classify)
    for x in "abcd":
        sp.add_argument(x, type=int)
    sp = add("series", cmd_series)
    sp.add_argument("name", nargs="?", choices=("E4", "E6", "Delta", "j"))
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--from", dest="from_file", default=None, help="ingest a term file")
    sp = add("weight-check", cmd_weight_check)
    sp.add_argument("form", choices=sorted(qseries.FORM_WEIGHTS))
    sp.add_argument("k", type=int)
    for x in "abcd":
        sp.add_argument(x, type=int)
    sp.add_argument("re")
    sp.add_argument("im")
    sp = add("periods", cmd_periods)
    sp.add_argument("lam")
    sp = add("j-lambda", cmd_j_lambda)
    sp.add_argument("lam")

    sp = sub.add_parser("mcg")
    msub = sp.add_subparsers(dest="mcg_command", required=True, parser_class=_Parser)
    v = msub.add_parser("verify", parents=[common])
    v.add_argument("relation", choices=("braid", "chain1", "chain2", "lantern", "conj"))
    v.add_argument("classes", nargs="*")
    v.set_defaults(func=cmd_mcg_verify)
    h = msub.add_parser("h1", parents=[common])
    h.add_argument("genus", type=int)
    h.set_defaults(func=cmd_mcg_h1)

    sp = add("tables", cmd_tables)
    sp.add_argument("genus", type=int)
    sp = add("pants", cmd_pants)
    sp.add_argument("genus", type=int)
    sp = add("dims", cmd_dims)
    sp.add_argument("genus", type=int)
    sp.add_argument("n", type=int)
    sp = add("rh", cmd_rh)
    sp.add_argument("d", type=int)
    sp.add_argument("g_quotient", type=int)
    sp.add_argument("orbits", type=int, nargs="*")
    sp = add("levels", cmd_levels)
    sp.add_argument("kind", choices=("order", "degree", "surjective", "torsion"))
    sp.add_argument("modulus", type=int)
    sp.add_argument("--genus", type=int, default=1)
    sp.add_argument("--method", choices=("enumerate", "formula"), default="enumerate")

    sp = sub.add_parser("batch", help="JSON-lines requests from stdin")
    sp.add_argument("--input", default=None)
    sp.set_defaults(func=None)
    return p


_DEFAULT_TOL = {"orbit": genus0.REL_TOL, "weight-check": 1e-6}


def run(argv) -> tuple:
    """Execute one request; returns ``(exit_code, output_line)``."""
    try:
        args = build_parser().parse_args(list(argv))
        if args.command == "batch":
            raise UsageError("batch cannot be nested")
        if args.tol is None:
            args.tol = _DEFAULT_TOL.get(args.command, elliptic.TOL)
        out = args.func(args)
    except UsageError as e:
        return EXIT_USAGE, dumps({"error": "UsageError", "detail": str(e).strip()})
    except ModuliError as e:
        return e.exit_code, dumps({"error": e.name, "detail": str(e)})
    except (ValueError, TypeError, ZeroDivisionError, json.JSONDecodeError, OSError) as e:
        return EXIT_USAGE, dumps({"error": type(e).__name__, "detail": str(e)})
    if isinstance(out.record, str):
        return out.code, out.record.rstrip("\n")
    return out.code, dumps(out.record)


def _request_argv(line: str):
    obj = json.loads(line)
    if isinstance(obj, dict):
        obj = obj.get("argv")
    if not isinstance(obj, list):
        raise ValueError("batch lines must be a JSON array or {\"argv\": [...]}")
    return [str(x) for x in obj]


def _run_line(line: str) -> tuple:
    try:
        argv = _request_argv(line)
    except (ValueError, json.JSONDecodeError) as e:
        return EXIT_USAGE, dumps({"error": "UsageError", "detail": str(e)})
    return run(argv)


def run_batch(lines, threads: int | None = None) -> tuple:
    lines = [ln for ln in lines if ln.strip()]
    threads = threads or int(os.environ.get("MODULI_KIT_THREADS", "1"))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_run_line, lines))
    else:
        results = [_run_line(ln) for ln in lines]
    code = max((c for c, _ in results), default=EXIT_OK)
    return code, [out for _, out in results]


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if argv and argv[0] == "batch":
        try:
            args = build_parser().parse_args(argv)
        except UsageError as e:
            print(dumps({"error": "UsageError", "detail": str(e).strip()}))
            return EXIT_USAGE
        if args.input:
            with open(args.input) as fh:
                lines = fh.readlines()
        else:
            lines = sys.stdin.readlines()
        code, outs = run_batch(lines)
        for out in outs:
            print(out)
        return code
    code, out = run(argv)
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
