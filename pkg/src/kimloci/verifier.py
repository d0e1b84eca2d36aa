"""Theorem-level drivers: refined and unrefined Chabauty-Kim loci over prime ranges."""

from __future__ import annotations

import enum
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import _backend
from .moebius import Moebius, act_on_refinement, apply_moebius
from .padic import PAdic, PrecisionError, PrecisionPolicy, certify_nonzero, iwasawa_log, teichmuller
from .points import RationalPoint, enumerate_integral_points, kummer_coordinates, refinement_membership
from .polylog import finite_li_eval, finite_li_roots, li1
from .selmer import Cusp, RefinementCondition

# bound for the known-answer enumeration of S-integral points
KNOWN_POINTS_BOUND = 4


class Method(str, enum.Enum):
    FINITE_POLYLOG = "finite-polylog"
    ROOT_OF_UNITY = "root-of-unity-only"
    S3 = "derived-by-S3"
    EMPTY_SELMER = "empty-refined-selmer"


class Status(str, enum.Enum):
    VERIFIED = "verified"
    COUNTEREXAMPLE = "counterexample"
    PRECISION_FAILURE = "precision-failure"

    @property
    def exit_code(self) -> int:
        return {"verified": 0, "counterexample": 1, "precision-failure": 2}[self.value]


@dataclass(frozen=True)
class LocusPoint:
    """A point of a p-adic locus: Teichmuller residue (if any), lift, and label."""

    lift: PAdic
    residue: int | None = None
    label: str | None = None

    def __str__(self):
        if self.label is not None:
            return self.label
        return f"omega({self.residue})" if self.residue is not None else str(self.lift)


@dataclass
class LocusResult:
    p: int
    sigma: RefinementCondition | None
    points: list[LocusPoint]
    method: Method
    trace: list[str] = field(default_factory=list)
    components: list[LocusResult] = field(default_factory=list)
    millis: float = 0.0

    @property
    def labels(self) -> list[str]:
        return [str(x) for x in self.points]

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "sigma": None if self.sigma is None else str(self.sigma),
            "locus": self.labels,
            "method": self.method.value,
            "millis": round(self.millis, 3),
        }
        if self.trace:
            out["trace"] = list(self.trace)
        if self.components:
            out["components"] = [c.to_json() for c in self.components]
        return out


@dataclass
class VerificationReport:
    theorem: str
    S: tuple[int, ...]
    p_min: int
    p_max: int
    precision: int
    results: list[LocusResult] = field(default_factory=list)
    status: Status = Status.VERIFIED
    message: str = ""
    caveats: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def exit_code(self) -> int:
        return self.status.exit_code

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "s": list(self.S),
            "p_min": self.p_min,
            "p_max": self.p_max,
            "precision": self.precision,
            "results": [r.to_json() for r in self.results],
            "status": self.status.value,
            "message": self.message,
            "caveats": list(self.caveats),
            "backend": _backend.BACKEND,
            "seconds": round(self.seconds, 3),
        }


def odd_primes(lo: int, hi: int) -> list[int]:
    """Odd primes in [lo, hi] by a sieve."""
    if hi < 3:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(hi**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, hi + 1, i)))
    return [q for q in range(max(lo, 3), hi + 1) if sieve[q]]


def _label(lift: PAdic, known: Iterable[RationalPoint], N: int) -> str | None:
    for pt in known:
        if pt.to_padic(lift.p, N) == lift:
            return str(pt)
    return None


def _sorted_points(points: Iterable[LocusPoint]) -> list[LocusPoint]:
    def key(x: LocusPoint):
        if x.label is not None:
            return (0, RationalPoint.of(x.label).sort_key(), 0)
        return (1, (0, 0), x.lift.residue())

    return sorted(points, key=key)


# -- refined locus, S = {2} ---------------------------------------------------------


def _torsion_candidates(p: int) -> list[int]:
    # roots of unity in Y(Z_p) are the Teichmuller lifts of residues other than 0, 1
    return list(range(2, p))


def refined_locus_sigma1_s2(p: int, N: int = 8) -> LocusResult:
    """The polylogarithmic refined locus for S = {2} and Sigma = (1).

    log(z) = 0 leaves the Teichmuller points; li_{p-3} on their residues
    leaves only -1.  For p = 3 the only root of unity in Y(Z_3) is -1.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd prime, got {p}")
    t0 = time.perf_counter()
    known = [RationalPoint(-1)]
    trace = []
    if p == 3:
        survivors = _torsion_candidates(p)
        method = Method.ROOT_OF_UNITY
        trace.append("log(z) = 0: roots of unity in Y(Z_3) = {omega(2)} = {-1}")
    else:
        roots = finite_li_roots(p - 3, p)
        survivors = [a for a in _torsion_candidates(p) if a in roots]
        method = Method.FINITE_POLYLOG
        trace.append(f"li_{p - 3} roots in F_{p} minus {{0,1}}: {sorted(int(r) for r in roots)}")
    points = []
    for a in survivors:
        lift = teichmuller(a, p, N)
        # recheck, independent of how the survivor was found
        if p >= 5 and finite_li_eval(p - 3, a, p) != 0:
            raise AssertionError(f"li_{p - 3}({a}) != 0 mod {p}")
        if not iwasawa_log(lift).is_zero():
            raise AssertionError(f"log(omega({a})) != 0 mod {p}^{N}")
        points.append(LocusPoint(lift, a, _label(lift, known, N)))
    trace.append("log(omega(a)) = 0 proven: Teichmuller lifts are torsion")
    return LocusResult(p, RefinementCondition((Cusp.ONE,)), points, method, trace,
                       millis=1000 * (time.perf_counter() - t0))


def _transport(sigma: Moebius, loc: LocusResult, target: RefinementCondition,
               known: list[RationalPoint], N: int) -> LocusResult:
    points = {}
    for pt in loc.points:
        lift = apply_moebius(sigma, pt.lift)
        label = _label(lift, known, N)
        points[(lift.residue(), lift.absprec)] = LocusPoint(lift, None, label)
    return LocusResult(loc.p, target, _sorted_points(points.values()), Method.S3,
                       [f"{sigma.label} maps {loc.sigma} to {target}"])


def _movers(source: RefinementCondition, target: RefinementCondition) -> list[Moebius]:
    return [s for s in Moebius if act_on_refinement(s, source) == target]


def refined_locus_direct(p: int, cusp: Cusp, N: int = 8) -> list[PAdic]:
    """The Sigma = (cusp) locus computed without the group action on loci.

    Residues b of Y(F_p) are pulled back by a Moebius map sigma with
    sigma(1) = cusp; the pulled-back point must be torsion and pass the
    li_{p-3} filter, and the lift is sigma(omega(sigma^-1(b))).
    """
    sigma = next(s for s in Moebius if s.cusp_image(Cusp.ONE) is cusp)
    back = sigma.inverse
    a, b_, c, d = back.value
    roots = None if p == 3 else finite_li_roots(p - 3, p)
    out = []
    for b in range(2, p):
        den = (c * b + d) % p
        if den == 0:
            continue
        w = (a * b + b_) * pow(den, -1, p) % p
        if w in (0, 1):
            continue
        if roots is not None and w not in roots:
            continue
        out.append(apply_moebius(sigma, teichmuller(w, p, N)))
    return sorted(out, key=PAdic.residue)


def refined_locus_s2(p: int, N: int = 8,
                     locus_fn: Callable[[int, int], LocusResult] = refined_locus_sigma1_s2,
                     cross_check_direct: bool = False) -> LocusResult:
    """The full refined locus for S = {2}: Sigma = (1) directly, (0) and (oo) by S_3."""
    t0 = time.perf_counter()
    S = (2,)
    known = enumerate_integral_points(S, KNOWN_POINTS_BOUND)
    base = locus_fn(p, N)
    base = LocusResult(base.p, base.sigma, [LocusPoint(x.lift, x.residue, _label(x.lift, known, N))
                                            for x in base.points], base.method, base.trace)
    components = [base]
    for c in (Cusp.ZERO, Cusp.INF):
        target = RefinementCondition((c,))
        movers = _movers(base.sigma, target)
        derived = [_transport(s, base, target, known, N) for s in movers]
        first = derived[0]
        for other in derived[1:]:
            if {x.lift for x in other.points} != {x.lift for x in first.points}:
                raise AssertionError(f"coset representatives disagree on {target} at p = {p}")
        if cross_check_direct:
            direct = refined_locus_direct(p, c, N)
            if sorted(x.lift.residue() for x in first.points) != [x.residue() for x in direct]:
                raise AssertionError(f"direct and S3-derived loci differ for {target} at p = {p}")
            first.trace.append("matches direct computation")
        components.append(first)
    # every labelled point must sit in its refinement condition
    for comp in components:
        for x in comp.points:
            if x.label is None:
                continue
            kv = kummer_coordinates(x.label, S)
            if comp.sigma.entries[0] not in kv.regions(2):
                raise AssertionError(f"{x.label}: {kv} outside R_{comp.sigma}")
            if not refinement_membership(x.label, comp.sigma, S):
                raise AssertionError(f"{x.label} does not reduce into {comp.sigma}")
    union = {}
    for comp in components:
        for x in comp.points:
            union.setdefault(str(x), x)
    return LocusResult(p, None, _sorted_points(union.values()), Method.S3, [], components,
                       millis=1000 * (time.perf_counter() - t0))


def _sweep(primes: list[int], work: Callable[[int], LocusResult], jobs: int):
    if jobs <= 1:
        for q in primes:
            yield work(q)
        return
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        # map yields in submission order, so the merge is deterministic
        yield from pool.map(work, primes)


def verify_refined_kim(p_min: int, p_max: int, N: int = 8, S: Iterable[int] = (2,), jobs: int = 1,
                       locus_fn: Callable[[int, int], LocusResult] = refined_locus_sigma1_s2,
                       cross_check_direct_below: int = 0) -> VerificationReport:
    """Check that the refined locus equals Y(Z_S) for every odd prime in range."""
    S = tuple(sorted(set(S)))
    t0 = time.perf_counter()
    report = VerificationReport("refined-kim", S, p_min, p_max, N)
    primes = [q for q in odd_primes(p_min, p_max) if q not in S]
    if 2 not in S:
        report.caveats.append("2 not in S: the refined Selmer scheme is empty, so every refined locus is empty")
        for q in primes:
            report.results.append(LocusResult(q, None, [], Method.EMPTY_SELMER))
        report.message = f"refined locus empty for all {len(primes)} primes"
        report.seconds = time.perf_counter() - t0
        return report
    if S != (2,):
        raise ValueError(f"the refined theorem path covers S = {{2}} only, got S = {set(S)}")
    expected = {str(x) for x in enumerate_integral_points(S, KNOWN_POINTS_BOUND)}
    report.caveats.append(f"Y(Z_S) taken from exponent-bounded enumeration (B = {KNOWN_POINTS_BOUND})")

    def work(q: int) -> LocusResult:
        return refined_locus_s2(q, N, locus_fn, cross_check_direct=q <= cross_check_direct_below)

    for res in _sweep(primes, work, jobs):
        report.results.append(res)
        got = set(res.labels)
        if got != expected:
            report.status = Status.COUNTEREXAMPLE
            report.message = (f"p = {res.p}: extra {sorted(got - expected)}, "
                              f"missing {sorted(expected - got)}")
            break
    else:
        report.message = f"locus = {{2, -1, 1/2}} for all {len(primes)} primes"
    report.seconds = time.perf_counter() - t0
    return report


# -- unrefined locus, S = {} ----------------------------------------------------------


def _li1_at_teichmuller(a: int, p: int, n: int) -> PAdic:
    return li1(teichmuller(a, p, n))


def unrefined_locus(p: int, N: int = 8, policy: PrecisionPolicy | None = None,
                    li1_fn: Callable[[int, int, int], PAdic] = _li1_at_teichmuller) -> LocusResult:
    """Depth-(p-3) locus for S empty: log = 0, Li_1 = 0, li_{p-3} filter.

    Raises PrecisionError when a survivor's Li_1 stays zero up to the
    maximum precision of the policy.
    """
    policy = policy or PrecisionPolicy(default=N, max_prec=max(64, N))
    t0 = time.perf_counter()
    trace = []
    if p == 3:
        survivors = _torsion_candidates(p)
        method = Method.ROOT_OF_UNITY
        trace.append("log(z) = 0: roots of unity in Y(Z_3) = {-1}")
    else:
        roots = finite_li_roots(p - 3, p)
        survivors = [a for a in _torsion_candidates(p) if a in roots]
        method = Method.FINITE_POLYLOG
        trace.append(f"li_{p - 3} roots: {sorted(int(r) for r in roots)}")
    remaining = []
    for a in survivors:
        name = "-log(2)" if a == p - 1 else f"-log(1 - omega({a}))"
        try:
            value, used = certify_nonzero(lambda n: li1_fn(a, p, n), policy, start=N)
        except PrecisionError:
            lift = teichmuller(a, p, policy.max_prec)
            if a != p - 1 and iwasawa_log(1 - lift).is_zero():
                # 1 - omega(a) is torsion as well: a genuine depth-one point
                trace.append(f"Li_1(omega({a})) = {name} vanishes: 1 - omega({a}) is torsion")
                remaining.append(LocusPoint(teichmuller(a, p, N), a))
                continue
            raise
        trace.append(f"Li_1(omega({a})) = {name} = {value} nonzero at precision {used} (numeric)")
    return LocusResult(p, None, remaining, method, trace, millis=1000 * (time.perf_counter() - t0))


def verify_unrefined_empty(p_min: int, p_max: int, N: int = 8, jobs: int = 1,
                           policy: PrecisionPolicy | None = None,
                           li1_fn: Callable[[int, int, int], PAdic] = _li1_at_teichmuller,
                           depth1_trace: bool = False) -> VerificationReport:
    """Check that the depth-(p-3) locus for S empty is empty for each odd prime."""
    t0 = time.perf_counter()
    report = VerificationReport("unrefined-kim-empty", (), p_min, p_max, N)
    primes = odd_primes(p_min, p_max)

    def work(q: int):
        try:
            res = unrefined_locus(q, N, policy, li1_fn)
        except PrecisionError as exc:
            return q, exc
        if depth1_trace:
            d1 = depth1_locus(q, N)
            res.trace.insert(0, f"depth-1 survivors: {[str(x) for x in d1.points]}")
        return q, res

    for q, res in _sweep(primes, work, jobs):
        if isinstance(res, PrecisionError):
            report.status = Status.PRECISION_FAILURE
            report.message = (f"p = {q}: Li_1 could not be certified nonzero ({res}); "
                              "log(2) vanishes only if 2 were a root of unity, which it is not")
            break
        report.results.append(res)
        if res.points:
            report.status = Status.COUNTEREXAMPLE
            report.message = f"p = {q}: locus {res.labels} is not empty"
            break
    else:
        report.message = f"locus empty for all {len(primes)} primes"
    report.seconds = time.perf_counter() - t0
    return report


# -- depth one -----------------------------------------------------------------------------


def depth1_expected(p: int) -> list[int]:
    """Roots of a^2 - a + 1 mod p, i.e. the primitive sixth roots of unity in F_p.

    At p = 3 the polynomial degenerates to (a + 1)^2 and Z_3 has no primitive
    sixth roots, so the expected set is empty.
    """
    if p == 3:
        return []
    return [a for a in range(2, p) if (a * a - a + 1) % p == 0]


def depth1_locus(p: int, N: int = 8) -> LocusResult:
    """Residues a with both omega(a) and 1 - omega(a) roots of unity."""
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd prime, got {p}")
    t0 = time.perf_counter()
    mod, mod2 = p**N, p * p
    points = []
    for a in range(2, p):
        # necessary condition mod p^2 first; omega(a) = a^p mod p^2
        w2 = (1 - pow(a, p, mod2)) % mod2
        if pow(w2, p - 1, mod2) != 1:
            continue
        lift = teichmuller(a, p, N)
        w = (1 - lift.unit) % mod
        if pow(w, p - 1, mod) == 1:
            points.append(LocusPoint(lift, a))
    got = [x.residue for x in points]
    expected = depth1_expected(p)
    trace = [f"p mod 3 = {p % 3}; roots of a^2 - a + 1: {expected}"]
    if got != expected or (bool(got) != (p % 3 == 1)):
        trace.append("MISMATCH with the sixth-roots-of-unity criterion")
    return LocusResult(p, None, points, Method.ROOT_OF_UNITY, trace,
                       millis=1000 * (time.perf_counter() - t0))


def depth1_consistent(res: LocusResult) -> bool:
    got = [x.residue for x in res.points]
    return got == depth1_expected(res.p) and bool(got) == (res.p % 3 == 1)


# -- reports -----------------------------------------------------------------------------------


def render_text(report: VerificationReport) -> str:
    lines = [f"theorem: {report.theorem}  S = {set(report.S) or '{}'}  "
             f"p in [{report.p_min}, {report.p_max}]  precision {report.precision}"]
    for r in report.results:
        lines.append(f"  p = {r.p:>6}  locus = {{{', '.join(r.labels)}}}  [{r.method.value}]")
    for c in report.caveats:
        lines.append(f"caveat: {c}")
    lines.append(f"status: {report.status.value}  {report.message}")
    return "\n".join(lines)


def emit_report(report: VerificationReport, path: str | None = None, fmt: str = "json") -> int:
    """Write the report (stdout when path is None) and return its exit code."""
    if fmt == "json":
        text = json.dumps(report.to_json(), indent=2, ensure_ascii=False) + "\n"
    elif fmt == "text":
        text = render_text(report) + "\n"
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return report.exit_code
