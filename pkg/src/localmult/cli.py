"""Command-line front end: single checks, sweep atlases, identity verification.

Exit codes: 0 when the criterion holds (or a verification suite passes),
2 when a check is inconclusive, 1 for usage and validation errors.  Reports
are canonical JSON (fixed key order, integers and strings only), so parsing
and re-serializing is byte-identical.  Atlas sweeps may run points in
parallel (LMC_THREADS caps the worker count) but the output file is produced
after a deterministic sort, so runs at any parallelism agree byte for byte.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .criteria import (
    FAMILIES,
    CriterionReport,
    HypothesisError,
    VERDICT_HOLDS,
    check_local_multiplicity,
    family_instance,
    validate_k,
)
from .fpring import RingError, format_poly
from .manifolds import (
    ManifoldSpecError,
    parse_manifold_spec,
    parse_total_class,
)
from .symfun import (
    Partition,
    SymPoly,
    chern_euler_crosscheck,
    dual_cauchy_check,
    elementary_symmetric,
    partitions_in_box,
    schur_monomial_oracle,
    schur_via_nk,
)

_USER_ERRORS = (HypothesisError, ManifoldSpecError, RingError, ValueError, OSError)


@dataclass(frozen=True)
class AtlasEntry:
    """One evaluated sweep point: parameters, report, wall time."""

    a: int
    ell: int
    k: int
    report: CriterionReport
    wall_time_ms: float


def report_to_dict(report: CriterionReport) -> dict:
    return {
        "verdict": report.verdict,
        "s": report.witness_s,
        "class": None if report.witness_class is None else format_poly(report.witness_class),
        "path": report.path,
        "searched_s_max": report.searched_s_max,
        "notes": list(report.notes),
    }


def report_to_json(report: CriterionReport) -> str:
    """Canonical one-line JSON for a report (stable key order, no floats)."""
    return json.dumps(report_to_dict(report))


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; 2 is reserved for
    # inconclusive verdicts here, so route usage errors to exit code 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _parse_int_list(text: str, what: str) -> list[int]:
    """Parse '2,4,8' or '2..5' (inclusive range) into a sorted int list."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return sorted({int(part) for part in text.split(",") if part.strip()})
    except ValueError:
        raise ValueError(f"cannot parse {what} specification {text!r}; use 'lo..hi' or 'a,b,c'")


def _threads() -> int:
    raw = os.environ.get("LMC_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"LMC_THREADS must be an integer, got {raw!r}")
    return max(1, n)


def _cmd_check(args) -> int:
    source = parse_manifold_spec(args.source)
    target = parse_manifold_spec(args.target)
    pullback = None
    if args.pullback_class:
        with open(args.pullback_class, "r", encoding="utf-8") as fh:
            document = json.load(fh)
        p = validate_k(args.k, args.path)
        ring, _ = source.realize(p)
        pullback = parse_total_class(document, ring)
    report = check_local_multiplicity(source, target, args.k, args.path, pullback)
    print(report_to_json(report))
    return 0 if report.verdict == VERDICT_HOLDS else 2


def _default_a_values(family: str, ell: int, k: int) -> list[int]:
    # the widest a-range for which the source manifold exists; admissibility
    # of each point is decided (and reported) separately
    if family in ("rp-euclidean", "rp-sphere"):
        return list(range(1, max(2, 2**ell - 2)))
    if family == "cp-euclidean":
        return list(range(1, 2**ell))
    return list(range(2, (k**ell + 1) // 2 + 1))


def _atlas_point(family: str, point: tuple[int, int, int]):
    a, ell, k = point
    start = time.perf_counter()
    try:
        source, target, path = family_instance(family, a, ell, k)
    except HypothesisError as exc:
        return ("inadmissible", point, str(exc))
    report = check_local_multiplicity(source, target, k, path)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return ("entry", point, AtlasEntry(a, ell, k, report, elapsed_ms))


def _cmd_atlas(args) -> int:
    family = args.family
    ells = _parse_int_list(args.ell, "--ell")
    ks = _parse_int_list(args.k, "--k")
    explicit_a = _parse_int_list(args.a, "--a") if args.a else None

    points: set[tuple[int, int, int]] = set()
    for ell in ells:
        for k in ks:
            for a in (explicit_a if explicit_a is not None else _default_a_values(family, ell, k)):
                points.add((a, ell, k))
    ordered = sorted(points)
    if not ordered:
        print("warning: empty parameter range; nothing to do", file=sys.stderr)
        return 0

    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda pt: _atlas_point(family, pt), ordered))
    else:
        results = [_atlas_point(family, pt) for pt in ordered]

    entries: list[AtlasEntry] = []
    inadmissible: list[tuple[tuple[int, int, int], str]] = []
    for kind, point, payload in results:
        if kind == "entry":
            entries.append(payload)
        else:
            inadmissible.append((point, payload))
    entries.sort(key=lambda e: (e.a, e.ell, e.k))
    inadmissible.sort(key=lambda item: item[0])

    document = {
        "family": family,
        "entries": [
            {"a": e.a, "ell": e.ell, "k": e.k, "report": report_to_dict(e.report)}
            for e in entries
        ],
        "inadmissible": [
            {"a": a, "ell": ell, "k": k, "violated": message}
            for (a, ell, k), message in inadmissible
        ],
    }
    text = json.dumps(document, indent=2) + "\n"

    holds = sum(1 for e in entries if e.report.verdict == VERDICT_HOLDS)
    for e in entries:
        cls = "-" if e.report.witness_class is None else format_poly(e.report.witness_class)
        print(
            f"a={e.a} ell={e.ell} k={e.k} verdict={e.report.verdict} "
            f"s={e.report.witness_s} class={cls} ms={e.wall_time_ms:.1f}"
        )
    for (a, ell, k), message in inadmissible:
        print(f"a={a} ell={ell} k={k} inadmissible: {message}")
    print(
        f"family={family} admissible={len(entries)} holds={holds} "
        f"inconclusive={len(entries) - holds} inadmissible={len(inadmissible)}"
    )
    if not entries:
        print("warning: no admissible points in the requested range", file=sys.stderr)

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return 0


def _verify_dual_cauchy(args) -> int:
    if not 1 <= args.max_a <= 5 or not 1 <= args.max_b <= 4:
        print("error: desk-scale caps are --max-a <= 5 and --max-b <= 4", file=sys.stderr)
        return 1
    primes = _parse_int_list(args.p, "--p")
    ok = True
    for p in primes:
        for A in range(1, args.max_a + 1):
            for B in range(1, args.max_b + 1):
                good = dual_cauchy_check(A, B, p)
                ok = ok and good
                print(f"{'PASS' if good else 'FAIL'} dual-cauchy A={A} B={B} p={p}")
    return 0 if ok else 1


def _verify_nk_schur(args) -> int:
    if not 1 <= args.rows <= 5 or not 1 <= args.height <= 4:
        print("error: desk-scale caps are --rows <= 5 and --height <= 4", file=sys.stderr)
        return 1
    primes = _parse_int_list(args.p, "--p")
    ok = True
    for p in primes:
        bad: list[Partition] = []
        for lam in partitions_in_box(args.rows, args.height):
            elems = [elementary_symmetric(i, args.rows, p) for i in range(1, args.rows + 1)]
            via_det = schur_via_nk(lam, args.rows).evaluate(
                elems, [], SymPoly.one(p, args.rows)
            )
            if via_det != schur_monomial_oracle(lam, args.rows, p):
                bad.append(lam)
        good = not bad
        ok = ok and good
        count = len(partitions_in_box(args.rows, args.height))
        suffix = "" if good else f" mismatches={bad}"
        print(
            f"{'PASS' if good else 'FAIL'} nk-schur box={args.rows}x{args.height} "
            f"p={p} partitions={count}{suffix}"
        )
    return 0 if ok else 1


def _verify_euler_crosscheck(args) -> int:
    if not 1 <= args.m <= 10:
        print("error: desk-scale cap is --m <= 10", file=sys.stderr)
        return 1
    from .manifolds import dual_total_class, total_chern_cp

    n = args.n if args.n is not None else args.m + 1
    if args.m_prime is not None:
        m_prime = args.m_prime
    else:
        dual = dual_total_class(total_chern_cp(args.m, args.k))
        m_prime = max(1, dual.max_class_index("chern") or 0)
    good = chern_euler_crosscheck(args.m, n, args.k, m_prime)
    print(f"{'PASS' if good else 'FAIL'} euler-crosscheck m={args.m} n={n} k={args.k} m_prime={m_prime}")
    return 0 if good else 1


def _cmd_verify(args) -> int:
    if args.identity == "dual-cauchy":
        return _verify_dual_cauchy(args)
    if args.identity == "nk-schur":
        return _verify_nk_schur(args)
    if args.identity == "euler-crosscheck":
        if args.m is None or args.k is None:
            print("error: euler-crosscheck needs --m and --k", file=sys.stderr)
            return 1
        return _verify_euler_crosscheck(args)
    print(f"error: unknown identity {args.identity!r}; "
          "expected dual-cauchy, nk-schur, or euler-crosscheck", file=sys.stderr)
    return 1


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="lmc",
        description=(
            "Exact checker for the determinant criteria that certify local "
            "k-multiplicity of continuous maps between manifolds."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("check", help="run one criterion check")
    pc.add_argument("--source", required=True,
                    help="source manifold (shorthand like rp:13 or a spec JSON file/string)")
    pc.add_argument("--target", required=True, help="target manifold")
    pc.add_argument("--k", type=int, required=True, help="multiplicity parameter")
    pc.add_argument("--path", required=True, choices=("sw", "chern"),
                    help="sw: Stiefel-Whitney classes, k a power of 2; "
                         "chern: Chern classes mod an odd prime k")
    pc.add_argument("--pullback-class", metavar="FILE",
                    help="JSON file with the total class of the pulled-back target "
                         "tangent bundle (defaults to 1)")

    pa = sub.add_parser("atlas", help="sweep a parameter family and write a report atlas")
    pa.add_argument("--family", required=True, choices=FAMILIES,
                    help="rp-euclidean: rp:(2^ell-2-a) -> R^(2^ell-2); "
                         "rp-sphere: same into S^(2^ell-2); "
                         "cp-euclidean: cp:(2^ell-a) -> R^(2^(ell+1)-3); "
                         "cp-complex: cp:(k^ell-a) -> C^(k^ell-2)")
    pa.add_argument("--ell", required=True, help="'2..5' or '2,3,4'")
    pa.add_argument("--k", required=True, help="'2,4,8' or '2..8'")
    pa.add_argument("--a", default=None, help="optional a-range; defaults to every a "
                                              "for which the source manifold exists")
    pa.add_argument("--out", default=None, help="write the atlas JSON here "
                                                "(default: print to stdout)")

    pv = sub.add_parser("verify", help="run one of the identity verification suites")
    pv.add_argument("identity", help="dual-cauchy | nk-schur | euler-crosscheck")
    pv.add_argument("--max-a", type=int, default=4, help="dual-cauchy: largest A (<= 5)")
    pv.add_argument("--max-b", type=int, default=3, help="dual-cauchy: largest B (<= 4)")
    pv.add_argument("--rows", type=int, default=4, help="nk-schur: box rows (<= 5)")
    pv.add_argument("--height", type=int, default=3, help="nk-schur: box height (<= 4)")
    pv.add_argument("--p", default="2,3,5", help="comma list of primes")
    pv.add_argument("--m", type=int, default=None, help="euler-crosscheck: cp:m source (<= 10)")
    pv.add_argument("--k", type=int, default=None, help="euler-crosscheck: odd prime k")
    pv.add_argument("--n", type=int, default=None,
                    help="euler-crosscheck: target complex dimension (default m+1)")
    pv.add_argument("--m-prime", type=int, default=None,
                    help="euler-crosscheck: stand-in rank of the inverse tangent bundle "
                         "(default: smallest admissible)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "atlas":
            return _cmd_atlas(args)
        return _cmd_verify(args)
    except _USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
