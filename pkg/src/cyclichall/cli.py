"""Command-line front end.

    cyclichall roots --quiver A3-linear
    cyclichall hallnum CP2 CP2 2CP2 --quiver A2 --primes 2,3
    cyclichall verify all --quiver quiver.txt --format json --out report.json
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import sympy

from . import cyclic as cy
from . import hall as hl
from . import pbw
from .hall import HallElement
from .quiver import PRESETS, DynkinQuiver, load_quiver, preset

SUITES = {
    "all": pbw.GROUPS,
    "6.1": ("6.1",), "6.3": ("6.3",), "7.4": ("7.4",), "7.5": ("7.5",),
    "4.2": ("4.2",), "2.11": ("2.11",), "5.1": ("5.1",), "7.3": ("7.3",),
}
PRODUCTS = ("plain", "degenerate", "twisted", "module", "module-twisted")


def _quiver(spec: str) -> DynkinQuiver:
    if spec in PRESETS:
        return preset(spec)
    return load_quiver(spec)


def _primes(text: str) -> list[int]:
    out = [int(x) for x in text.split(",") if x.strip()]
    for p in out:
        if not sympy.isprime(p):
            raise argparse.ArgumentTypeError(f"{p} is not prime")
    return out


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("threshold must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", default="A2", help="quiver file or preset name (%s)" % ", ".join(PRESETS))
    common.add_argument("--primes", type=_primes, default=[2, 3, 5], help="comma-separated primes")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", type=Path, default=None, help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="recorded in every output")
    common.add_argument("--threshold-submodule", type=_positive, default=24, help="max total dimension for subobject search")
    common.add_argument("--threshold-end", type=_positive, default=14, help="End enumeration bound (bits at p=2)")

    parser = argparse.ArgumentParser(prog="cyclichall", description="Hall algebras of 1-cyclic complexes over Dynkin quivers")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("roots", parents=[common], help="positive roots and projective marks")
    sub.add_parser("indecs", parents=[common], help="indecomposable isoclasses in canonical order")
    for name in ("hallnum", "hallpoly"):
        p = sub.add_parser(name, parents=[common], help="Hall number / Hall polynomial F^Z_{XY}")
        p.add_argument("x")
        p.add_argument("y")
        p.add_argument("z")
    p = sub.add_parser("mul", parents=[common], help="product of two basis classes")
    p.add_argument("kind", choices=PRODUCTS)
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--generic", action="store_true", help="plain/twisted: Hall-polynomial coefficients")
    p = sub.add_parser("bracket", parents=[common], help="Lie bracket of indecomposables")
    p.add_argument("mu")
    p.add_argument("nu")
    p = sub.add_parser("express", parents=[common], help="express a class in the generators")
    p.add_argument("lam")
    p = sub.add_parser("pbw-check", parents=[common], help="ordered-monomial triangularity sweep")
    p.add_argument("--bound", type=int, default=4, help="max total underlying dimension")
    p.add_argument("--degenerate", action="store_true", help="use psi(1) structure constants")
    p = sub.add_parser("verify", parents=[common], help="relation suites")
    p.add_argument("suite", choices=sorted(SUITES))
    return parser


def _meta(args, q: DynkinQuiver) -> dict:
    return {"command": args.command, "quiver": q.describe().strip().replace("\n", "; "),
            "primes": args.primes, "seed": args.seed}


def _emit(args, meta: dict, rows: list[dict], result=None) -> str:
    if args.format == "json":
        payload = dict(meta)
        payload["rows"] = rows
        if result is not None:
            payload["result"] = result
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    header = " ".join(f"{k}={json.dumps(v) if not isinstance(v, str) else v}" for k, v in meta.items())
    if args.format == "csv":
        buf.write(f"# {header}\n")
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: v if isinstance(v, (str, int)) else json.dumps(v) for k, v in r.items()})
        return buf.getvalue()
    buf.write(f"# {header}\n")
    for r in rows:
        buf.write("\t".join(f"{k}={v if isinstance(v, (str, int)) else json.dumps(v)}" for k, v in r.items()) + "\n")
    return buf.getvalue()


def _element_rows(elem: HallElement, prime) -> list[dict]:
    return [{"prime": prime, "basis": str(t), "coeff": str(elem.terms[t])} for t in sorted(elem.terms)]


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    q = _quiver(args.quiver)
    meta = _meta(args, q)
    sub_t, end_t = args.threshold_submodule, args.threshold_end
    gh = hl.GenericHall(q, submodule_threshold=sub_t, end_threshold=end_t)
    status = 0
    result = None
    rows: list[dict] = []
    if args.command == "roots":
        cat = gh.ctx(args.primes[0]).cat
        for k, r in enumerate(cat.roots):
            proj = [i + 1 for i in range(q.n) if cat.projective_roots[i] == r]
            rows.append({"index": k + 1, "root": ",".join(map(str, r)), "projective": f"beta{proj[0]}" if proj else ""})
    elif args.command == "indecs":
        cat = gh.ctx(args.primes[0]).cat
        for c in cy.indecomposables(cat):
            rows.append({"class": str(c), "underlying": ",".join(map(str, cy.underlying_multiplicities(c, cat))),
                         "homology_dim": ",".join(map(str, c.homology_dim(q.n)))})
    elif args.command == "hallnum":
        x, y, z = (cy.parse_c1(s, q) for s in (args.x, args.y, args.z))
        for p in args.primes:
            rows.append({"prime": p, "x": str(x), "y": str(y), "z": str(z), "value": gh.ctx(p).hall_number(x, y, z)})
    elif args.command == "hallpoly":
        x, y, z = (cy.parse_c1(s, q) for s in (args.x, args.y, args.z))
        poly, used = hl.fit_stabilized(lambda p: gh.ctx(p).hall_number(x, y, z))
        rows.append({"x": str(x), "y": str(y), "z": str(z), "poly": str(poly), "primes_used": ",".join(map(str, used))})
    elif args.command == "mul":
        rows, result = _cmd_mul(args, q, gh)
    elif args.command == "bracket":
        mu, nu = cy.parse_c1(args.mu, q), cy.parse_c1(args.nu, q)
        elem = hl.lie_bracket(gh, mu, nu)
        rows, result = _element_rows(elem, None), elem.to_json()
    elif args.command == "express":
        lam = cy.parse_c1(args.lam, q)
        for p in args.primes:
            poly = pbw.express_in_generators(gh.ctx(p), lam)
            for w, c in sorted(poly.terms.items()):
                rows.append({"prime": p, "word": str(w), "coeff": str(c)})
    elif args.command == "pbw-check":
        if args.degenerate:
            res = pbw.pbw_triangularity_check(gh, args.bound, degenerate=True)
            rows.append({"prime": None, "checked": res.checked, "violations": len(res.violations)})
            status |= int(not res.ok)
        else:
            for p in args.primes:
                res = pbw.pbw_triangularity_check(gh.ctx(p), args.bound)
                rows.append({"prime": p, "checked": res.checked, "violations": len(res.violations)})
                status |= int(not res.ok)
    elif args.command == "verify":
        report = pbw.verify_relation_suite(gh, args.primes, SUITES[args.suite])
        for e in report:
            rows.append({"identity": e["identity"], "pair": e["pair"], "prime": e["prime"], "status": e["status"]})
        result = report
        status = int(any(e["status"] == "fail" for e in report))
    text = _emit(args, meta, rows, result)
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return status


def _cmd_mul(args, q, gh):
    kind = args.kind
    if kind in ("module", "module-twisted"):
        a, b = HallElement.basis(cy.parse_mod(args.a, q)), HallElement.basis(cy.parse_mod(args.b, q))
        fn = hl.multiply_module if kind == "module" else hl.twisted_multiply_module
        rows, last = [], None
        for p in args.primes:
            last = fn(gh.ctx(p), a, b)
            rows += _element_rows(last, p)
        return rows, None
    a, b = cy.parse_c1(args.a, q), cy.parse_c1(args.b, q)
    if kind == "degenerate":
        elem = hl.degenerate_multiply(gh, HallElement.basis(a), HallElement.basis(b))
        return _element_rows(elem, None), elem.to_json()
    if args.generic:
        if kind == "plain":
            elem = hl.generic_multiply(gh, HallElement.basis(a, "intpoly"), HallElement.basis(b, "intpoly"))
        else:
            elem = hl.generic_twisted_multiply(gh, HallElement.basis(a, "laurent"), HallElement.basis(b, "laurent"))
        return _element_rows(elem, None), elem.to_json()
    fn = hl.multiply if kind == "plain" else hl.twisted_multiply
    rows = []
    for p in args.primes:
        rows += _element_rows(fn(gh.ctx(p), HallElement.basis(a), HallElement.basis(b)), p)
    return rows, None


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
