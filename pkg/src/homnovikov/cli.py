"""Command-line front end: check, construct, cohomology, deform, selftest.

Exit codes: 0 when the predicate holds or the action succeeds, 1 when it
fails (the first violating basis tuple goes to stdout), 2 on input errors.
Diagnostics go to stderr; stdout carries documents and reports only.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from . import cohomology as coh
from . import constructions as cons
from . import deformation as dfm
from . import documents as docs
from . import exactlin as el
from . import superalgebra as sa
from .errors import InputError, PreconditionError

CHECKS = ["hom-novikov", "hom-lie", "hom-assoc", "supercomm", "derivation", "rota-baxter", "quadratic"]
CONSTRUCTIONS = [
    "sub-adjacent", "untwist", "alpha-inv-bracket", "yau-square", "deriv-product",
    "twisted-deriv-product", "xi-family", "rota-baxter", "form-twist", "half-bracket",
]

PASS, FAIL, INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise InputError(f"{path}: not UTF-8 text") from None


def _load_algebra(path: str) -> docs.AlgebraDocument:
    try:
        return docs.parse_algebra(_read(path))
    except docs.DocumentError as exc:
        raise InputError(f"{path}: {exc}") from None


def _named_map(doc: docs.AlgebraDocument, name: str) -> np.ndarray:
    if name not in doc.maps:
        raise InputError(f"document has no map named {name!r} (use --map to choose one)")
    return doc.maps[name]


def _option_rational(flag_value, doc_value, what: str):
    if flag_value is not None:
        return el.scalar(flag_value)
    if doc_value is not None:
        return doc_value
    raise InputError(f"no {what} given (pass --{what} or set it in the document)")


def _report(verdict, subject: str, machine: bool) -> int:
    if machine:
        out = {"subject": subject, "ok": bool(verdict), "check": verdict.check}
        if not verdict:
            out["witness"] = list(verdict.witness) if verdict.witness is not None else None
            out["residual"] = None if verdict.residual is None else [str(x) for x in np.ravel(verdict.residual)]
        print(json.dumps(out))
    else:
        print(f"{subject}: {'pass' if verdict else 'FAIL'}")
        if not verdict:
            print(verdict.describe())
    return PASS if verdict else FAIL


# -- commands ----------------------------------------------------------------

def cmd_check(args) -> int:
    doc = _load_algebra(args.file)
    a = doc.algebra
    subject = args.subject
    if subject == "hom-novikov":
        v = sa.is_hom_novikov(a)
    elif subject == "hom-lie":
        v = sa.is_hom_lie(a)
    elif subject == "hom-assoc":
        v = sa.is_hom_associative(a)
    elif subject == "supercomm":
        v = sa.is_supercommutative(a)
    elif subject == "derivation":
        v = sa.is_derivation(a, _named_map(doc, args.map or "D"))
    elif subject == "rota-baxter":
        lam = _option_rational(args.weight, doc.weight, "weight")
        v = sa.is_rota_baxter(a, _named_map(doc, args.map or "P"), lam)
    else:
        if doc.form is None:
            raise InputError("quadratic check needs a \"form\" in the document")
        v = sa.is_quadratic_hom_novikov(a, doc.bilinear_form())
    return _report(v, subject, args.machine)


def cmd_construct(args) -> int:
    doc = _load_algebra(args.file)
    a = doc.algebra
    kind = args.kind
    form = None
    if kind == "sub-adjacent":
        out = cons.sub_adjacent_hom_lie(a)
    elif kind == "untwist":
        out = cons.involutive_untwist(a)
    elif kind == "alpha-inv-bracket":
        out = cons.alpha_inverse_bracket(a)
    elif kind == "yau-square":
        out = cons.yau_square_twist(a)
    elif kind == "deriv-product":
        out = cons.derivation_product(a, _named_map(doc, args.map or "D"))
    elif kind == "twisted-deriv-product":
        out = cons.twisted_derivation_product(a, _named_map(doc, args.map or "D"))
    elif kind == "xi-family":
        xi = _option_rational(args.xi, doc.xi, "xi")
        out = cons.xi_family(a, _named_map(doc, args.map or "D"), xi)
    elif kind == "rota-baxter":
        lam = _option_rational(args.weight, doc.weight, "weight")
        out = cons.rota_baxter_product(a, _named_map(doc, args.map or "P"), lam)
    elif kind == "form-twist":
        if doc.form is None:
            raise InputError("form-twist needs a \"form\" in the document")
        out = a
        form = cons.form_twist(doc.bilinear_form(), a.alpha, args.power).gram
    else:
        out = cons.half_bracket_algebra(a)
        form = doc.form
    sys.stdout.write(docs.emit_algebra(docs.AlgebraDocument(sa.SuperAlgebra(out.space, out.mul, out.alpha), form)))
    return PASS


def cmd_cohomology(args) -> int:
    a = _load_algebra(args.file).algebra
    parities = {"even": [0], "odd": [1], "both": [0, 1]}[args.parity]
    reports = [coh.h2(a, p) for p in parities]
    if args.machine:
        print(json.dumps([r.as_dict() for r in reports]))
    else:
        for r in reports:
            name = "odd" if r.parity else "even"
            print(
                f"H2({name})={r.dim_h2}  "
                f"(dim C2={r.dim_cochains}, dim Z2={r.dim_cocycles}, dim B2={r.dim_coboundaries})"
            )
    return PASS


def _load_deformation(args) -> dfm.TruncatedDeformation:
    base = _load_algebra(args.algebra).algebra
    try:
        ddoc = docs.parse_deformation(_read(args.deformation))
        tensors = ddoc.tensors(base.dim)
    except docs.DocumentError as exc:
        raise InputError(f"{args.deformation}: {exc}") from None
    order = ddoc.order if args.order is None else args.order
    if order < 1 or order > ddoc.order:
        raise InputError(f"--order must lie in [1, {ddoc.order}], got {order}")
    return dfm.TruncatedDeformation(base, order, tuple(tensors[:order]))


def cmd_deform(args) -> int:
    d = _load_deformation(args)
    if args.action == "check":
        results = []
        for n in range(1, d.order + 1):
            results.append(dfm.check_deformation(dfm.TruncatedDeformation(d.base, n, d.terms[:n])))
            if not results[-1]:
                break
        if args.machine:
            print(json.dumps([{"order": n, "ok": bool(v)} for n, v in enumerate(results, start=1)]))
        else:
            for n, v in enumerate(results, start=1):
                print(f"order {n}: {'pass' if v else 'FAIL'}")
            if not results[-1]:
                print(results[-1].describe())
        return PASS if results[-1] else FAIL
    if args.action == "infinitesimal":
        return _report(dfm.is_infinitesimal(d.base, d.terms[0]), "infinitesimal", args.machine)
    reduced, rigid = dfm.rigidity_reduce(d)
    out = docs.deformation_to_dict(reduced)
    if args.machine:
        print(json.dumps({"trivialized": rigid, "deformation": out}))
    else:
        sys.stdout.write(docs.emit(out))
        print(f"trivialized: {'yes' if rigid else 'no (not reducible)'}", file=sys.stderr)
    return PASS if rigid else FAIL


def cmd_selftest(args) -> int:
    """Randomized spot checks of the main identities, reproducible by seed."""
    from . import families as fam

    rng = np.random.default_rng(args.seed)
    results = {}
    algebras = [fam.random_hom_novikov(rng, 3) for _ in range(args.count)]
    results["random algebras are Hom-Novikov"] = all(sa.is_hom_novikov(a) for a in algebras)
    ok = True
    for a in algebras:
        for p in (0, 1):
            for b in coh.cochain_basis(a, 1, p):
                ok &= coh.delta2(coh.delta1(b)).is_zero()
    results["delta^2 delta^1 = 0"] = ok
    results["sub-adjacent brackets are Hom-Lie"] = all(
        sa.is_hom_lie(cons.sub_adjacent_hom_lie(a)) for a in algebras
    )
    ok = True
    for _ in range(args.count):
        d = fam.random_deformation(rng, 2, 3)
        ok &= bool(dfm.check_deformation(d))
    results["equivalent deformations stay valid"] = ok
    if args.machine:
        print(json.dumps({"seed": args.seed, "results": results}))
    else:
        for name, good in results.items():
            print(f"{'pass' if good else 'FAIL'}  {name}")
    return PASS if all(results.values()) else FAIL


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--machine", action="store_true", help="machine-readable JSON output")
    parser = _Parser(prog="homnovikov", description="Exact checks and constructions for Hom-Novikov superalgebras.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="test an algebra against a predicate")
    p.add_argument("subject", choices=CHECKS)
    p.add_argument("file")
    p.add_argument("--map", help="name of the map in the document (default D or P)")
    p.add_argument("--weight", help="Rota-Baxter weight p/q")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("construct", parents=[common], help="build a new algebra document")
    p.add_argument("kind", choices=CONSTRUCTIONS)
    p.add_argument("file")
    p.add_argument("--map")
    p.add_argument("--weight")
    p.add_argument("--xi")
    p.add_argument("--power", type=int, default=1, help="exponent n of alpha^n for form-twist")
    p.set_defaults(run=cmd_construct)

    p = sub.add_parser("cohomology", parents=[common], help="dimensions of C2, Z2, B2 and H2")
    p.add_argument("file")
    p.add_argument("--parity", choices=["even", "odd", "both"], default="both")
    p.set_defaults(run=cmd_cohomology)

    p = sub.add_parser("deform", parents=[common], help="truncated formal deformations")
    p.add_argument("action", choices=["check", "infinitesimal", "trivialize"])
    p.add_argument("algebra")
    p.add_argument("deformation")
    p.add_argument("--order", type=int)
    p.set_defaults(run=cmd_deform)

    p = sub.add_parser("selftest", parents=[common], help="randomized spot checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=5)
    p.set_defaults(run=cmd_selftest)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.run(args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"failed predicate: {exc.predicate}")
        return FAIL
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
