"""Command line entry point: ``kimloci <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import _backend
from .moebius import orbit
from .padic import PAdic, PAdicDomainError, PrecisionError, PrecisionPolicy, is_prime, iwasawa_log, padic_log, teichmuller
from .points import compatible_conditions, enumerate_integral_points, kummer_coordinates
from .polylog import finite_li_eval, li1, modified_polylog_mod_p, polylog_series
from .selmer import (
    RefinementCondition,
    build_localisation,
    restrict_refinement,
    selmer_dimension,
    specialize_single_letter,
    vanishing_coordinates,
)
from .verifier import (
    LocusPoint,
    LocusResult,
    depth1_consistent,
    depth1_locus,
    emit_report,
    refined_locus_sigma1_s2,
    verify_refined_kim,
    verify_unrefined_empty,
)

EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _odd_prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an odd prime, got {text!r}")
    if p < 3 or not is_prime(p):
        raise argparse.ArgumentTypeError(f"expected an odd prime, got {p}")
    return p


def _prime_set(text: str) -> tuple[int, ...]:
    try:
        return tuple(sorted({int(t) for t in text.split(",") if t.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated primes, got {text!r}")


def _fake_counterexample(p: int, N: int) -> LocusResult:
    # test hook: a spurious pair {omega(3), omega(3)^-1} at p = 7, closed under z -> 1/z
    res = refined_locus_sigma1_s2(p, N)
    if p == 7:
        res.points.extend(LocusPoint(teichmuller(a, p, N), a) for a in (3, 5))
    return res


def _zero_li1(a: int, p: int, n: int) -> PAdic:
    return PAdic.zero(p, n)


def _cmd_verify(args) -> int:
    if args.theorem == "refined":
        locus_fn = _fake_counterexample if args.inject == "counterexample" else None
        kwargs = {"locus_fn": locus_fn} if locus_fn else {}
        report = verify_refined_kim(args.pmin, args.pmax, args.precision, args.s, args.jobs,
                                    cross_check_direct_below=args.cross_check_below, **kwargs)
    else:
        policy = PrecisionPolicy(default=args.precision, max_prec=max(args.max_precision, args.precision))
        kwargs = {"li1_fn": _zero_li1} if args.inject == "precision-failure" else {}
        report = verify_unrefined_empty(args.pmin, args.pmax, args.precision, args.jobs, policy,
                                        depth1_trace=args.depth1_trace, **kwargs)
    code = emit_report(report, args.out, args.format)
    if args.out and args.out != "-":
        print(f"{report.status.value}: {report.message} -> {args.out}", file=sys.stderr)
    return code


def _cmd_depth1(args) -> int:
    res = depth1_locus(args.p, args.precision)
    ok = depth1_consistent(res)
    print(f"p = {res.p}: depth-1 locus {{{', '.join(res.labels)}}}")
    for x in res.points:
        print(f"  omega({x.residue}) = {x.lift}")
    for line in res.trace:
        print(f"  {line}")
    return 0 if ok else 1


def _cmd_equations(args) -> int:
    m = build_localisation(args.s, args.depth)
    if args.sigma is not None:
        m = restrict_refinement(m, RefinementCondition.parse(args.sigma))
    if args.specialize is not None:
        m = specialize_single_letter(m, args.specialize, args.precision)
    if args.json:
        doc = m.to_json()
        doc["dimension"] = selmer_dimension(args.s, args.depth)
        doc["vanishing"] = vanishing_coordinates(m)
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        print(m.render())
        print(f"# Selmer dimension {selmer_dimension(args.s, args.depth)}; "
              f"vanishing: {', '.join(vanishing_coordinates(m)) or 'none'}")
    return 0


def _cmd_points(args) -> int:
    pts = enumerate_integral_points(args.s, args.bound)
    for z in pts:
        conds = " ".join(str(c) for c in compatible_conditions(z, args.s))
        print(f"{str(z):>12}  {kummer_coordinates(z, args.s)}  Sigma: {conds}")
    print(f"# {len(pts)} points with exponents bounded by {args.bound}; "
          "points outside the bound are not searched")
    return 0


def _cmd_eval(args) -> int:
    p, N = args.p, args.precision
    q = Fraction(args.z)
    if args.func == "teich":
        a = (q.numerator * pow(q.denominator, -1, p)) % p
        print(teichmuller(a, p, N))
        return 0
    z = PAdic.from_fraction(q, p, N)
    if args.func == "log":
        print(iwasawa_log(z) if not z.is_zero() and z.val == 0 else padic_log(z))
        return 0
    n = args.n
    if not z.is_zero() and z.val >= 1 or z.is_zero():
        print(polylog_series(n, z, N))
    elif n == 1:
        print(li1(z))
    else:
        zbar = z.reduce()
        print(f"li_{n}({zbar}) = {int(finite_li_eval(n, zbar, p))} mod {p}")
        print(f"Li^(p)_{n}(z) = {int(modified_polylog_mod_p(n, zbar, p))} mod {p}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kimloci", description="Chabauty-Kim loci for P^1 minus {0, 1, oo}")
    parser.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({_backend.BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="sweep a prime range and check a theorem")
    v.add_argument("theorem", choices=["refined", "unrefined"])
    v.add_argument("--s", type=_prime_set, default=(2,), help="prime set S (refined only), e.g. 2 or 2,3")
    v.add_argument("--pmin", type=int, default=3)
    v.add_argument("--pmax", type=int, default=10_000)
    v.add_argument("--precision", type=int, default=8)
    v.add_argument("--max-precision", type=int, default=64)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out", default=None, help="report file (default stdout)")
    v.add_argument("--format", choices=["json", "text"], default="json")
    v.add_argument("--cross-check-below", type=int, default=0,
                   help="recompute Sigma = (0), (oo) loci directly for p below this bound")
    v.add_argument("--depth1-trace", action="store_true")
    v.add_argument("--inject", choices=["counterexample", "precision-failure"], help=argparse.SUPPRESS)
    v.set_defaults(handler=_cmd_verify)

    d = sub.add_parser("depth1", help="depth-one locus for S empty")
    d.add_argument("--p", type=_odd_prime, required=True)
    d.add_argument("--precision", type=int, default=8)
    d.set_defaults(handler=_cmd_depth1)

    e = sub.add_parser("equations", help="print the (restricted) localisation map")
    e.add_argument("--s", type=_prime_set, default=(2,))
    e.add_argument("--depth", type=int, required=True)
    e.add_argument("--sigma", default=None, help="refinement condition, e.g. 1 or 0,inf")
    e.add_argument("--specialize", type=_odd_prime, default=None, metavar="P",
                   help="substitute a[t_l] = log_P(l)")
    e.add_argument("--precision", type=int, default=8)
    e.add_argument("--json", action="store_true")
    e.set_defaults(handler=_cmd_equations)

    pt = sub.add_parser("points", help="bounded enumeration of S-integral points")
    pt.add_argument("--s", type=_prime_set, default=(2,))
    pt.add_argument("--bound", type=int, default=20)
    pt.set_defaults(handler=_cmd_points)

    ev = sub.add_parser("eval", help="evaluate log, Li_n or the Teichmuller lift")
    ev.add_argument("func", choices=["log", "li", "teich"])
    ev.add_argument("--p", type=_odd_prime, required=True)
    ev.add_argument("--precision", type=int, default=8)
    ev.add_argument("--z", required=True, help="integer or fraction, e.g. -1 or 1/2")
    ev.add_argument("--n", type=int, default=1)
    ev.set_defaults(handler=_cmd_eval)

    o = sub.add_parser("orbit", help="S3-orbit of a rational point")
    o.add_argument("--z", required=True)
    o.set_defaults(handler=lambda a: print(" ".join(str(x) for x in orbit(Fraction(a.z)))) or 0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, ZeroDivisionError, PAdicDomainError) as exc:
        print(f"kimloci: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"kimloci: precision failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
