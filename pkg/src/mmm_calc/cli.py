"""mmm-calc command line."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any

from .algebra import GradedPolynomial, ParseError, format_poly, format_rational
from .characteristic import SubspaceSpec, closed_form_kernel, coordinates, kernel_intersection, pont_basis, so_ring
from .gysin import composite_pushforward_holomorphic, ch_pushforward, kappa, kappa_table, projectivize
from .loops import LoopChain, iterate_trg
from .specfiles import SpecError, parse_algebra, parse_bundle
from .suites import SUITES, SuiteReport, run_suite, truncation
from . import weyl

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- rendering ---------------------------------------------------------------------------

def plain(obj: Any) -> Any:
    """Convert results to JSON-ready values with rationals as strings."""
    if isinstance(obj, GradedPolynomial):
        return format_poly(obj)
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    return str(obj)


def _text_value(v: Any) -> str:
    if isinstance(v, list):
        if not v:
            return "[]"
        if all(not isinstance(x, (list, dict)) for x in v):
            return "[" + ", ".join(str(x) for x in v) + "]"
        return json.dumps(v)
    if isinstance(v, dict):
        return json.dumps(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render(result: dict, fmt: str) -> str:
    data = plain(result)
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    lines = []
    for k, v in data.items():
        if isinstance(v, list) and v and all(isinstance(x, str) for x in v) and k in ("basis", "kernel"):
            lines.append(f"{k}:")
            lines.extend(f"  {x}" for x in v)
        else:
            lines.append(f"{k}: {_text_value(v)}")
    return "\n".join(lines) + "\n"


def render_report(rep: SuiteReport, fmt: str) -> str:
    checks = [{"id": c.id, "claim": c.claim, "status": c.status, "witness": plain(c.witness)} for c in rep.ordered()]
    if fmt == "json":
        return json.dumps({"suite": rep.name, "passed": rep.passed, "checks": checks, "notes": rep.notes}, indent=2) + "\n"
    lines = [f"suite {rep.name}"]
    for c in checks:
        lines.append(f"  [{c['status'].upper()}] {c['id']}: {c['claim']}")
        if c["status"] == "fail":
            lines.append(f"         witness: {json.dumps(c['witness'])}")
    for n in rep.notes:
        lines.append(f"  note: {n}")
    passed = sum(c["status"] == "pass" for c in checks)
    lines.append(f"  {passed}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"


def _space(space: SubspaceSpec, pont_only: bool = True) -> dict:
    out: dict[str, Any] = {"dimension": space.dimension, "basis": space.basis}
    if pont_only:
        pb = pont_basis(space.n, space.degree)
        out["pont_basis"] = pb
        out["vectors"] = [coordinates(b, pb) for b in space.basis]
    return out


# -- commands --------------------------------------------------------------------------

def cmd_kernel(args) -> tuple[dict, int]:
    n, D = args.fiber_dim, args.degree
    res: dict[str, Any] = {"fiber_dim": n, "degree": D}
    if args.mode in ("oracle", "compare"):
        oracle = kernel_intersection(n, D)
    if args.mode in ("closed-form", "compare"):
        closed = closed_form_kernel(n, D)
    if args.mode == "oracle":
        res.update(_space(oracle))
        return res, EXIT_OK
    if args.mode == "closed-form":
        res.update(_space(closed))
        return res, EXIT_OK
    agree = oracle.same_as(closed)
    res["oracle"] = _space(oracle)
    res["closed_form"] = _space(closed)
    res["agree"] = agree
    return res, EXIT_OK if agree else EXIT_FAIL


def _bundle(path: str):
    return projectivize(parse_bundle(path))


def cmd_kappa(args) -> tuple[dict, int]:
    P = _bundle(args.bundle)
    R = so_ring(P.fibre_dimension) if P.m else None
    if R is None:
        raise UsageError("the bundle has rank 1: its fibre is a point")
    try:
        c = R.reduce(R.parse(args.cls))
    except ParseError as exc:
        raise UsageError(f"--class: {exc}") from None
    return {"bundle": repr(P), "class": c, "kappa": kappa(P, c)}, EXIT_OK


def cmd_kappa_kernel(args) -> tuple[dict, int]:
    P = _bundle(args.bundle)
    T = kappa_table(P, args.fiber_dim, args.degree, args.domain)
    ker = T.kernel()
    res = {"bundle": repr(P), "fiber_dim": T.n, "degree": T.degree, "domain": T.domain,
           "shape": list(T.shape), "domain_basis": T.domain_basis, "target_basis": T.target_basis,
           "matrix": T.matrix, "dimension": ker.dimension, "kernel": ker.basis}
    return res, EXIT_OK


def cmd_ch_pushforward(args) -> tuple[dict, int]:
    K = args.trunc if args.trunc is not None else truncation()
    return {"m": args.m, "trunc": K, "coefficients": ch_pushforward(args.m, K)}, EXIT_OK


def cmd_holo(args) -> tuple[dict, int]:
    K = args.trunc if args.trunc is not None else truncation()
    return {"m": args.m, "r": args.r, "trunc": K,
            "coefficients": composite_pushforward_holomorphic(args.r, args.m, K)}, EXIT_OK


def cmd_trg(args) -> tuple[dict, int]:
    A = parse_algebra(args.algebra)
    chain = LoopChain(A, args.iterate)
    try:
        p = A.parse(args.expr)
    except ParseError as exc:
        raise UsageError(f"--expr: {exc}") from None
    return {"expr": p, "iterate": args.iterate, "result": iterate_trg(chain, args.iterate, p)}, EXIT_OK


def cmd_weyl_kernel(args) -> tuple[dict, int]:
    ker = weyl.kernel_via_weyl(args.d)
    res: dict[str, Any] = {"d": args.d, "degree": ker.degree, "dimension": ker.dimension, "basis": ker.basis,
                           "pont_part": weyl.pont_intersection(ker).basis}
    code = EXIT_OK
    if args.compare_gysin:
        from .suites import _full_kernel
        g = _full_kernel(args.d)
        res["gysin"] = g.basis
        res["agree"] = ker.same_as(g)
        code = EXIT_OK if res["agree"] else EXIT_FAIL
    return res, code


def _positive(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if k < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return k


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mmm-calc", description="Exact computations of generalized MMM classes.")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", parents=[fmt], help="intersection of restriction kernels on Pont(n)")
    p.add_argument("--fiber-dim", type=_positive, required=True)
    p.add_argument("--degree", type=_positive, required=True, help="cohomological degree (multiple of 4)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--oracle", dest="mode", action="store_const", const="oracle")
    g.add_argument("--closed-form", dest="mode", action="store_const", const="closed-form")
    g.add_argument("--compare", dest="mode", action="store_const", const="compare")
    p.set_defaults(mode="oracle", func=cmd_kernel)

    p = sub.add_parser("kappa", parents=[fmt], help="kappa of one class on a projective bundle")
    p.add_argument("--bundle", required=True)
    p.add_argument("--class", dest="cls", required=True)
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("kappa-kernel", parents=[fmt], help="kappa table and its kernel")
    p.add_argument("--bundle", required=True)
    p.add_argument("--fiber-dim", type=_positive, required=True)
    p.add_argument("--degree", type=_positive, required=True)
    p.add_argument("--domain", choices=("pont", "full"), default="pont")
    p.set_defaults(func=cmd_kappa_kernel)

    p = sub.add_parser("ch-pushforward", parents=[fmt], help="Chern character pushforward over BSU(2)")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--trunc", type=_positive)
    p.set_defaults(func=cmd_ch_pushforward)

    p = sub.add_parser("holo", parents=[fmt], help="composite pushforward over CP^1 x CP^r")
    p.add_argument("--m", type=_positive, default=2)
    p.add_argument("--trunc", type=_positive)
    p.add_argument("--r", type=_positive, default=20)
    p.set_defaults(func=cmd_holo)

    p = sub.add_parser("trg", parents=[fmt], help="transgression into the loop algebra")
    p.add_argument("--algebra", required=True)
    p.add_argument("--expr", required=True)
    p.add_argument("--iterate", type=_positive, default=1)
    p.set_defaults(func=cmd_trg)

    p = sub.add_parser("weyl-kernel", parents=[fmt], help="CP^2 kernel through Weyl averaging")
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--compare-gysin", action="store_true")
    p.set_defaults(func=cmd_weyl_kernel)

    p = sub.add_parser("verify", parents=[fmt], help="run verification suites")
    p.add_argument("suites", nargs="*", metavar="SUITE", help=f"one of: {', '.join(SUITES)} (default: all)")
    p.set_defaults(func=None)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "verify":
            names = args.suites or list(SUITES)
            unknown = [s for s in names if s not in SUITES]
            if unknown:
                raise UsageError(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)}")
            reports = [run_suite(s) for s in names]
            if args.format == "json" and len(reports) > 1:
                out.write("[\n" + ",\n".join(render_report(r, "json").rstrip("\n") for r in reports) + "\n]\n")
            else:
                for r in reports:
                    out.write(render_report(r, args.format))
            return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
        result, code = args.func(args)
    except (UsageError, SpecError, ParseError) as exc:
        print(f"mmm-calc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"mmm-calc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.write(render(result, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
